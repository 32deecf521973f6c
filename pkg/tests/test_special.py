import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from unibessel import DomainError, PoleError, extended_gamma, gamma, gen_pochhammer, pochhammer
from unibessel.special import RatioSequence, extended_gamma_ratios


def ext_gamma_oracle(x, rho):
    # ∫ t^{x-1} e^{-t-ρ/t} dt = 2 ρ^{x/2} K_x(2√ρ)
    return float(2 * mpmath.mpf(rho) ** (x / 2) * mpmath.besselk(x, 2 * mpmath.sqrt(rho)))


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 7.0, -0.5, -2.7])
def test_gamma_matches_mpmath(x):
    assert gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -4.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


@pytest.mark.parametrize("x,rho", [(0.7, 0.1), (1.0, 1.0), (2.5, 0.4), (5.3, 3.0),
                                   (12.0, 0.5), (0.2, 2.0), (-1.3, 0.8), (3.0, 50.0)])
def test_extended_gamma_matches_bessel_k_form(x, rho):
    assert extended_gamma(x, rho) == pytest.approx(ext_gamma_oracle(x, rho), rel=1e-10)


def test_extended_gamma_reduces_to_gamma_at_zero_rho():
    assert extended_gamma(4.5, 0.0) == math.gamma(4.5)


def test_extended_gamma_tiny_rho_approaches_gamma():
    assert extended_gamma(1.7, 1e-12) == pytest.approx(math.gamma(1.7), rel=1e-9)


def test_extended_gamma_large_rho_does_not_underflow():
    value = extended_gamma(2.5, 1e5)
    assert 0 < value < 1e-250
    assert value == pytest.approx(ext_gamma_oracle(2.5, 1e5), rel=1e-8)


def test_extended_gamma_domain():
    with pytest.raises(DomainError):
        extended_gamma(1.0, -0.1)
    with pytest.raises(DomainError):
        extended_gamma(-0.5, 0.0)


@given(st.floats(0.1, 6.0), st.floats(0.05, 5.0))
@settings(max_examples=40, deadline=None)
def test_extended_gamma_reflection(x, rho):
    # Γ_ρ(-x) = ρ^{-x} Γ_ρ(x)
    assert extended_gamma(-x, rho) == pytest.approx(rho ** -x * extended_gamma(x, rho), rel=1e-9)


@given(st.floats(0.2, 8.0), st.floats(0.05, 4.0))
@settings(max_examples=40, deadline=None)
def test_extended_gamma_ratio_recurrence(x, rho):
    # Γ_ρ(x+1) = x Γ_ρ(x) + ρ Γ_ρ(x-1)
    lhs = extended_gamma(x + 1, rho)
    rhs = x * extended_gamma(x, rho) + rho * extended_gamma(x - 1, rho)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_extended_gamma_ratios_against_direct_values():
    x, rho = 0.8, 0.6
    ratios = extended_gamma_ratios(x, rho, 10)
    for k, r in enumerate(ratios):
        expected = ext_gamma_oracle(x + k + 1, rho) / ext_gamma_oracle(x + k, rho)
        assert r == pytest.approx(expected, rel=1e-10)


def test_ratio_sequence_extends_lazily():
    seq = RatioSequence(1.3, 0.5)
    for j in (0, 5, 40):
        expected = ext_gamma_oracle(1.3 + j + 1, 0.5) / ext_gamma_oracle(1.3 + j, 0.5)
        assert seq[j] == pytest.approx(expected, rel=1e-10)


def test_pochhammer():
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
    assert pochhammer(1.0, 40) == pytest.approx(math.factorial(40), rel=1e-13)
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_gen_pochhammer():
    assert gen_pochhammer(1.5, 0.0, 2.5) == pytest.approx(math.gamma(4.0) / math.gamma(1.5))
    expected = ext_gamma_oracle(3.2, 0.7) / math.gamma(1.2)
    assert gen_pochhammer(1.2, 0.7, 2.0) == pytest.approx(expected, rel=1e-10)


def test_gamma_cache_hits_are_bit_identical_and_thread_safe():
    from concurrent.futures import ThreadPoolExecutor
    from unibessel.special import GAMMA_CACHE

    GAMMA_CACHE.clear()
    args = [(0.5 + 0.01 * k, 0.3) for k in range(40)]
    fresh = [extended_gamma(x, r) for x, r in args]
    with ThreadPoolExecutor(8) as pool:
        again = list(pool.map(lambda a: extended_gamma(*a), args * 4))
    assert again == fresh * 4
    assert GAMMA_CACHE.hits > 0
