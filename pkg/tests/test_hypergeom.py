import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from unibessel import DomainError, NotConverged, PfqArgs, hyp, pfq, pfq_extended
from unibessel.hypergeom import pfq_array
from unibessel.special import extended_gamma
from unibessel.summation import CompensatedSum, levin_u, sum_ratio_series


@pytest.mark.parametrize("a,b,z", [
    ([], [1.5], -3.0),
    ([0.5], [1.5], 2.0),
    ([1.0, 2.0], [3.0], 0.5),
    ([1.0, 2.0], [3.0], -0.9),
    ([], [1.0, 0.5, 1.0], -20.0),
    ([2.5, 3.0], [1.0, 0.5, 1.0], -4.0),
    ([-3.0, 2.0], [1.5], 5.0),
])
def test_pfq_matches_mpmath(a, b, z):
    assert hyp(a, b, z) == pytest.approx(float(mpmath.hyper(a, b, z)), rel=1e-12)


def test_gauss_boundary_convergent():
    # 2F1(a,b;c;1) = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b)) when c > a + b
    a, b, c = 0.3, 0.4, 1.5
    closed = math.gamma(c) * math.gamma(c - a - b) / (math.gamma(c - a) * math.gamma(c - b))
    assert hyp([a, b], [c], 1.0) == pytest.approx(closed, rel=1e-12)


def test_gauss_boundary_divergent():
    with pytest.raises(NotConverged):
        hyp([0.5, 1.0], [1.0], 1.0)


def test_alternating_boundary_uses_levin():
    value = pfq(PfqArgs([0.75, 1.25], [1.0], -1.0))
    assert value.value == pytest.approx(float(mpmath.hyp2f1(0.75, 1.25, 1, -1)), rel=1e-10)


def test_divergent_argument_rejected():
    with pytest.raises(DomainError):
        PfqArgs([1.0, 1.0], [1.0], 1.5)
    with pytest.raises(DomainError):
        PfqArgs([1.0, 1.0, 1.0], [2.0], 0.1)


def test_nonpositive_denominator_rejected():
    with pytest.raises(DomainError):
        PfqArgs([1.0], [-2.0], 0.5)


def test_terminating_series_any_argument():
    args = PfqArgs([-2.0, 1.0, 1.0], [2.0], 10.0)
    assert args.terminating
    assert pfq(args).value == pytest.approx(float(mpmath.hyper([-2, 1, 1], [2], 10)))


def test_pfq_array_vectorised():
    import numpy as np
    zs = np.linspace(-5, 5, 7)
    out = pfq_array([], [1.0], zs)
    for z, v in zip(zs, out):
        assert v == pytest.approx(hyp([], [1.0], z), rel=1e-13)


def test_pfq_extended_zero_rho_is_classical():
    assert pfq_extended(1.5, 0.0, [2.0], 0.7).value == pytest.approx(
        float(mpmath.hyp1f1(1.5, 2.0, 0.7)), rel=1e-13)


def test_pfq_extended_positive_rho_direct_sum():
    a0, rho, b, z = 1.2, 0.5, 1.0, -1.3
    total = mpmath.mpf(0)
    for n in range(60):
        poch = mpmath.mpf(extended_gamma(a0 + n, rho)) / mpmath.gamma(a0)
        total += poch / mpmath.rf(b, n) * mpmath.mpf(z) ** n / mpmath.factorial(n)
    assert pfq_extended(a0, rho, [b], z).value == pytest.approx(float(total), rel=1e-10)


def test_compensated_sum_beats_naive():
    acc = CompensatedSum()
    for x in (1.0, 1e100, 1.0, -1e100):
        acc.add(x)
    assert acc.value == 2.0


def test_levin_on_log2():
    terms = [(-1.0) ** k / (k + 1) for k in range(30)]
    est, err, _ = levin_u(terms)
    assert est == pytest.approx(math.log(2.0), rel=1e-12)
    assert err < 1e-10


def test_not_converged_carries_partial():
    def factory(num):
        return lambda k: num(3)
    with pytest.raises(NotConverged) as info:
        sum_ratio_series(factory)
    assert info.value.partial is not None
    assert not info.value.partial.converged


def test_decimal_resum_after_cancellation():
    # e^{-30} from its Taylor series loses all float digits
    def factory(num):
        return lambda k: num(-30) / (k + 1)
    out = sum_ratio_series(factory, exact=True)
    assert out.method == "decimal"
    assert out.value == pytest.approx(math.exp(-30), rel=1e-12)


@given(st.floats(-30.0, 30.0), st.floats(0.3, 4.0))
@settings(max_examples=50, deadline=None)
def test_0f1_property(z, b):
    assert hyp([], [b], z) == pytest.approx(float(mpmath.hyp0f1(b, z)), rel=1e-10, abs=1e-14)
