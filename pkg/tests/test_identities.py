import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from unibessel import (DomainError, FamilyParams, IdentityId, check_identity, drho_shift,
                       evaluate, pfq_extended)
from unibessel.identities import TABLE_ROWS, pde35_residual, relative_residual, table_row
from test_bessel import g_direct


@pytest.mark.parametrize("ident", list(IdentityId), ids=lambda i: i.value)
def test_identity_holds_at_catalogue_points(ident):
    report = check_identity(ident)
    assert report.passed, report.to_dict()
    assert report.max_relative_residual <= report.tolerance
    assert len(report.residuals) == len(report.sample_points) > 0


def test_report_serialises():
    d = check_identity(IdentityId.Recur31).to_dict()
    assert d["id"] == "Recur31"
    assert {"family", "b", "c", "nu", "rho", "z"} <= set(d["sample_points"][0])


def test_tolerance_override_can_fail():
    report = check_identity(IdentityId.Recur31, tolerance=1e-30)
    assert not report.passed


def test_pde_coefficient_four_minus_nu_squared():
    p = FamilyParams.unified(1.0, 3.0, 1.5, 0.4)
    assert pde35_residual(p, 1.2) < 1e-10
    # the coefficient (ν - 2)² agrees with 4 - ν² only at ν ∈ {0, 2}
    assert pde35_residual(p, 1.2, lambda v: (v - 2.0) ** 2) > 1e-2


def test_pde36_scaled_argument():
    pt = dict(b=-0.5, c=2.8, nu=0.7, rho=0.6, z=0.9, alpha=1.7)
    assert check_identity(IdentityId.PDE36, [pt], tolerance=1e-6).passed


_recurrence_point = st.fixed_dictionaries({
    "b": st.floats(0.2, 1.5).flatmap(lambda v: st.sampled_from([v, -v])),
    "c": st.floats(2.2, 4.0),
    "nu": st.floats(1.1, 2.5),
    "rho": st.floats(0.0, 1.5),
    "z": st.floats(0.3, 3.0),
})


@pytest.mark.parametrize("ident", [
    IdentityId.Recur31, IdentityId.Recur32, IdentityId.Recur34,
    IdentityId.SphRecur68, IdentityId.SphRecur69, IdentityId.SphRecur611,
    IdentityId.CliffRecur68c, IdentityId.CliffRecur69c, IdentityId.CliffRecur611c,
], ids=lambda i: i.value)
@given(pt=_recurrence_point)
@settings(max_examples=15, deadline=None)
def test_recurrences_at_random_points(ident, pt):
    assert check_identity(ident, [pt], tolerance=1e-8).passed


@given(b=st.floats(-1.5, 1.5), c=st.floats(0.5, 3.0), rho=st.floats(0.0, 1.0),
       n=st.integers(1, 5), z=st.floats(0.2, 3.0))
@settings(max_examples=25, deadline=None)
def test_reflection_at_random_points(b, c, rho, n, z):
    pt = dict(b=b, c=c, rho=rho, n=n, z=z)
    assert check_identity(IdentityId.Reflect21, [pt], tolerance=1e-8).passed
    assert check_identity(IdentityId.Reflect61, [pt], tolerance=1e-8).passed


def test_clifford_generating_function():
    b, lam, rho, z, t = 0.7, 1.5, 0.3, 0.9, 1.2
    lhs = pfq_extended(lam, rho, [1.0], t - b * z / t).value
    rhs = math.fsum(evaluate(FamilyParams.clifford(b, lam, float(n), rho), z).value * t ** n
                    for n in range(-30, 31))
    assert relative_residual(lhs, rhs) < 1e-12


def test_drho_shift():
    shifted, factor = drho_shift(FamilyParams.unified(1.0, 2.5, 0.5, 0.2))
    assert (shifted.c, factor) == (1.5, pytest.approx(-1 / 1.5))
    _, sph = drho_shift(FamilyParams.spherical(1.0, 3.0, 0.5))
    assert sph == pytest.approx(-1 / 1.5)
    with pytest.raises(DomainError):
        drho_shift(FamilyParams.unified(1.0, 1.0, 0.5))
    with pytest.raises(DomainError):
        drho_shift(FamilyParams.spherical(1.0, 1.5, 0.5))


def test_identity_id_parsing():
    assert IdentityId.parse("TableRow(XIII)") is IdentityId.TableRowXIII
    assert IdentityId.TableRowIV.row == "IV"
    assert IdentityId.Recur31.row is None
    with pytest.raises(DomainError):
        IdentityId.parse("Recur99")


@pytest.mark.parametrize("row", TABLE_ROWS)
def test_table_closed_forms_against_direct_sum(row):
    for nu, z in ((0.5, 0.7), (1.5, 3.0)):
        params, series, closed = table_row(row, nu, z)
        direct = g_direct(params.b, params.c, params.nu, params.rho, z)
        assert closed == pytest.approx(direct, rel=1e-11, abs=1e-14)
        assert series == pytest.approx(direct, rel=1e-11, abs=1e-14)


def test_table_elementary_rows():
    z = 1.3
    assert table_row("XI", 0.0, z)[2] == pytest.approx(math.sqrt(2 / (math.pi * z)) * math.sin(z))
    assert table_row("IX", 0.0, z)[1] == pytest.approx(float(mpmath.besseli(0, z)), rel=1e-13)
    assert table_row("XIV", 2.0, z)[2] == pytest.approx(float(mpmath.besseli(2, z)), rel=1e-12)


def test_table_row_domain():
    with pytest.raises(DomainError):
        table_row("XII", 0.0, 0.0)
    with pytest.raises(DomainError):
        table_row("XV", 0.0, 1.0)


@pytest.mark.parametrize("b,nu,z", [(1, 1.0, 1.3), (1, 2.5, 4.0), (-1, 1.5, 2.0)])
def test_recur34_classical_reduction_with_mpmath(b, nu, z):
    # at c = 2, ρ = 0 the shifted functions are classical J (b = 1) or I (b = -1)
    f = mpmath.besselj if b == 1 else mpmath.besseli
    d = lambda order, k: mpmath.diff(lambda x: f(order, x), z, k)
    lhs = (2 - nu) * d(nu - 1, 1) + z * (d(nu - 1, 2) + b * d(nu + 1, 2))
    rhs = -b * (nu + 2) * d(nu + 1, 1)
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-12, abs=1e-14)
    pt = dict(b=b, c=2.0, nu=nu, rho=0.0, z=z)
    assert check_identity(IdentityId.Recur34, [pt], tolerance=1e-10).passed
