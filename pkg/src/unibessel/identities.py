"""Identities of the unified Bessel family as residual checks.

Each identity is registered under an :class:`IdentityId` with a checker that
takes one sample point (a mapping of named reals) and returns both sides of
the identity.  Both sides are computed by routes that share as little as
possible: z-derivatives are taken term-wise on the power series, and
ρ-derivatives are replaced by the exact parameter shift c → c-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

from .bessel import Family, FamilyParams, bessel_oracle, evaluate
from .errors import DomainError, NotConverged
from .hypergeom import hyp, pfq_extended
from .special import gamma, gen_pochhammer
from .transforms import product_integral_rep, triple_integral

__all__ = [
    "IdentityId",
    "SamplePoint",
    "IdentityReport",
    "drho_shift",
    "check_identity",
    "relative_residual",
    "pde35_residual",
    "table_row",
    "TABLE_ROWS",
    "ALGEBRAIC_TOL",
    "PDE_TOL",
]

ALGEBRAIC_TOL = 1e-8
PDE_TOL = 1e-6
_EVAL_TOL = 1e-14

TABLE_ROWS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X",
              "XI", "XII", "XIII", "XIV")


class IdentityId(str, Enum):
    GenFunc22 = "GenFunc22"
    Recur31 = "Recur31"
    Recur32 = "Recur32"
    RhoDeriv33 = "RhoDeriv33"
    Recur34 = "Recur34"
    PDE35 = "PDE35"
    PDE36 = "PDE36"
    ProdRep41 = "ProdRep41"
    Triple51 = "Triple51"
    SphRecur68 = "SphRecur68"
    SphRecur69 = "SphRecur69"
    SphRhoDeriv610 = "SphRhoDeriv610"
    SphRecur611 = "SphRecur611"
    SphPDE612 = "SphPDE612"
    CliffRecur68c = "CliffRecur68c"
    CliffRecur69c = "CliffRecur69c"
    CliffRhoDeriv610c = "CliffRhoDeriv610c"
    CliffRecur611c = "CliffRecur611c"
    CliffPDE612c = "CliffPDE612c"
    Reflect21 = "Reflect21"
    Reflect61 = "Reflect61"
    TableRowI = "TableRow(I)"
    TableRowII = "TableRow(II)"
    TableRowIII = "TableRow(III)"
    TableRowIV = "TableRow(IV)"
    TableRowV = "TableRow(V)"
    TableRowVI = "TableRow(VI)"
    TableRowVII = "TableRow(VII)"
    TableRowVIII = "TableRow(VIII)"
    TableRowIX = "TableRow(IX)"
    TableRowX = "TableRow(X)"
    TableRowXI = "TableRow(XI)"
    TableRowXII = "TableRow(XII)"
    TableRowXIII = "TableRow(XIII)"
    TableRowXIV = "TableRow(XIV)"

    @classmethod
    def parse(cls, text: str) -> "IdentityId":
        try:
            return cls(text.strip())
        except ValueError:
            raise DomainError(f"unknown identity id {text!r}") from None

    @property
    def row(self) -> str | None:
        """Roman numeral of a table-row id, else None."""
        v = self.value
        return v[len("TableRow("):-1] if v.startswith("TableRow(") else None


@dataclass(frozen=True)
class SamplePoint:
    """Where an identity was checked: the main parameter set, the argument
    and any auxiliary values (t, α, w, ...)."""

    params: FamilyParams
    z: float
    aux: Mapping[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        p = self.params
        return {"family": p.family.value, "b": p.b, "c": p.c, "nu": p.nu, "rho": p.rho,
                "z": self.z, **{k: float(v) for k, v in self.aux.items()}}


@dataclass(frozen=True)
class IdentityReport:
    id: IdentityId
    sample_points: list[SamplePoint]
    residuals: list[float]
    max_relative_residual: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "id": self.id.value,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_relative_residual": self.max_relative_residual,
            "residuals": list(self.residuals),
            "sample_points": [p.to_dict() for p in self.sample_points],
        }


def drho_shift(params: FamilyParams) -> tuple[FamilyParams, float]:
    """Parameter shift that replaces a ρ-derivative.

    Returns ``(shifted, factor)`` with ∂/∂ρ f(params) = factor · f(shifted),
    where ``shifted`` lowers c (λ for Bessel-Clifford) by one.  The factor
    is -1/(c-1), or -1/(c-3/2) for the spherical family.

    Examples
    --------
    >>> shifted, factor = drho_shift(FamilyParams.unified(1, 3, 1, 0.5))
    >>> shifted.c, factor
    (2.0, -0.5)
    """
    pole = 1.5 if params.family == Family.SphericalG else 1.0
    if params.c == pole:
        raise DomainError(f"no ρ-shift at c = {pole}")
    try:
        shifted = params.replace(c=params.c - 1.0)
    except DomainError as exc:
        raise DomainError(f"ρ-shift leaves the domain: {exc}") from None
    return shifted, -1.0 / (params.c - pole)


# ---------------------------------------------------------------------------
# helpers

def _val(params: FamilyParams, z: float, derivative: int = 0) -> float:
    return evaluate(params, z, _EVAL_TOL, derivative).value


def _get(pt: Mapping[str, float], key: str, default: float | None = None) -> float:
    if key in pt:
        return float(pt[key])
    if default is None:
        raise DomainError(f"sample point is missing {key!r}")
    return default


def _params(pt: Mapping[str, float], family: Family) -> FamilyParams:
    return FamilyParams(family, _get(pt, "b"), _get(pt, "c"), _get(pt, "nu"),
                        _get(pt, "rho", 0.0))


def _rho_derivative(params: FamilyParams, z: float) -> float:
    """Richardson-extrapolated central difference in ρ (oracle only)."""
    rho = params.rho
    h = min(1e-3, rho / 4.0)
    if h <= 0:
        raise DomainError("the ρ-difference check needs rho > 0")

    def central(step: float) -> float:
        up = _val(params.replace(rho=rho + step), z)
        down = _val(params.replace(rho=rho - step), z)
        return (up - down) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def _double_shift(params: FamilyParams) -> tuple[FamilyParams, float]:
    once, f1 = drho_shift(params)
    twice, f2 = drho_shift(once)
    return twice, f1 * f2


def _negative_order_series(b: float, c: float, n: int, rho: float, z: float) -> float:
    """The defining G-series at order -n summed directly; terms with a
    reciprocal-Gamma zero are dropped, so the sum starts at k = n."""
    total, k = 0.0, n
    small = 0
    while k < n + 400:
        term = ((-b) ** k * gen_pochhammer(c, rho, 2 * k - n) * (z / 2.0) ** (2 * k - n)
                / (math.factorial(k - n) * math.factorial(2 * k - n) * math.factorial(k)))
        total += term
        small = small + 1 if abs(term) <= 1e-17 * abs(total) else 0
        if small >= 3:
            return total
        k += 1
    raise NotConverged("negative-order series did not converge")


# ---------------------------------------------------------------------------
# checkers: each returns (sample point, lhs, rhs)

Check = Callable[[Mapping[str, float]], tuple[SamplePoint, float, float]]
_CHECKS: dict[IdentityId, Check] = {}


def _register(ident: IdentityId):
    def wrap(fn: Check) -> Check:
        _CHECKS[ident] = fn
        return fn
    return wrap


@_register(IdentityId.GenFunc22)
def _gen_func(pt):
    b, c, rho = _get(pt, "b"), _get(pt, "c"), _get(pt, "rho", 0.0)
    z, t, n_max = _get(pt, "z"), _get(pt, "t"), int(_get(pt, "N", 25))
    lhs = pfq_extended(c, rho, [1.0], (t - b / t) * z / 2.0).value
    rhs = sum(_val(FamilyParams.unified(b, c, float(n), rho), z) * t ** n
              for n in range(-n_max, n_max + 1))
    point = SamplePoint(FamilyParams.unified(b, c, 0.0, rho), z, {"t": t, "N": n_max})
    return point, lhs, rhs


@_register(IdentityId.Recur31)
def _recur31(pt):
    p = _params(pt, Family.UnifiedG)
    z, nu = _get(pt, "z"), p.nu
    h = p.replace(c=p.c - 1.0)
    lhs = z * _val(h, z, 2) + (nu + 1.0) * _val(h, z, 1)
    rhs = (p.c - 1.0) * _val(p.replace(nu=nu - 1.0), z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.Recur32)
def _recur32(pt):
    p = _params(pt, Family.UnifiedG)
    z, nu = _get(pt, "z"), p.nu
    h = p.replace(c=p.c - 1.0)
    lhs = z * _val(h, z, 2) + (1.0 - nu) * _val(h, z, 1)
    rhs = -p.b * (p.c - 1.0) * _val(p.replace(nu=nu + 1.0), z)
    return SamplePoint(p, z), lhs, rhs


def _rho_deriv(pt, family: Family):
    p = _params(pt, family)
    z = _get(pt, "z")
    shifted, factor = drho_shift(p)
    return SamplePoint(p, z), _rho_derivative(p, z), factor * _val(shifted, z)


@_register(IdentityId.RhoDeriv33)
def _rho33(pt):
    return _rho_deriv(pt, Family.UnifiedG)


@_register(IdentityId.SphRhoDeriv610)
def _rho610(pt):
    return _rho_deriv(pt, Family.SphericalG)


@_register(IdentityId.CliffRhoDeriv610c)
def _rho610c(pt):
    return _rho_deriv(pt, Family.CliffordC)


@_register(IdentityId.Recur34)
def _recur34(pt):
    p = _params(pt, Family.UnifiedG)
    z, nu, b = _get(pt, "z"), p.nu, p.b
    lo = p.replace(c=p.c - 1.0, nu=nu - 1.0)
    hi = p.replace(c=p.c - 1.0, nu=nu + 1.0)
    lhs = (2.0 - nu) * _val(lo, z, 1) + z * (_val(lo, z, 2) + b * _val(hi, z, 2))
    rhs = -b * (nu + 2.0) * _val(hi, z, 1)
    return SamplePoint(p, z), lhs, rhs


def _pde_terms(p: FamilyParams, w: float) -> tuple[float, float, float, float]:
    """(H'', H''', H'''', G) at w, with H = ∂²G/∂ρ² via two parameter shifts."""
    twice, factor = _double_shift(p)
    h2, h3, h4 = (factor * _val(twice, w, d) for d in (2, 3, 4))
    return h2, h3, h4, _val(p, w)


def pde35_residual(p: FamilyParams, z: float,
                   coefficient: Callable[[float], float] | None = None) -> float:
    """|LHS + (b/z²)G| / (|b|/z²·|G|) for the fourth-order equation in z
    satisfied by H = ∂²G/∂ρ²:

        H'''' + (5/z) H''' + (k(ν)/z²) H'' = -(b/z²) G.

    ``coefficient`` is k(ν), by default 4 - ν².
    """
    coef = (lambda v: 4.0 - v * v) if coefficient is None else coefficient
    z = float(z)
    h2, h3, h4, g = _pde_terms(p, z)
    lhs = h4 + 5.0 / z * h3 + coef(p.nu) / (z * z) * h2
    scale = abs(p.b) / (z * z) * abs(g)
    return abs(lhs + p.b / (z * z) * g) / scale


@_register(IdentityId.PDE35)
def _pde35(pt):
    p = _params(pt, Family.UnifiedG)
    z, nu = _get(pt, "z"), p.nu
    h2, h3, h4, g = _pde_terms(p, z)
    lhs = h4 + 5.0 / z * h3 + (4.0 - nu * nu) / (z * z) * h2
    rhs = -p.b / (z * z) * g
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.PDE36)
def _pde36(pt):
    p = _params(pt, Family.UnifiedG)
    z, alpha, nu = _get(pt, "z"), _get(pt, "alpha"), p.nu
    h2, h3, h4, g = _pde_terms(p, alpha * z)
    u2, u3, u4 = alpha ** 2 * h2, alpha ** 3 * h3, alpha ** 4 * h4
    lhs = z ** 4 * u4 + 5.0 * z ** 3 * u3 + (4.0 - nu * nu) * z * z * u2
    rhs = -p.b * alpha * alpha * z * z * g
    return SamplePoint(p, z, {"alpha": alpha}), lhs, rhs


@_register(IdentityId.ProdRep41)
def _prod41(pt):
    p = _params(pt, Family.UnifiedG)
    q = p.replace(nu=_get(pt, "w"))
    z, alpha, beta = _get(pt, "z"), _get(pt, "alpha"), _get(pt, "beta")
    res = product_integral_rep(p, q, alpha, beta, z)
    if not res.converged:
        raise NotConverged("product double integral missed its target")
    rhs = _val(p, alpha * z) * _val(q, beta * z)
    aux = {"w": q.nu, "alpha": alpha, "beta": beta}
    return SamplePoint(p, z, aux), res.value, rhs


@_register(IdentityId.Triple51)
def _triple51(pt):
    p = _params(pt, Family.UnifiedG)
    z = _get(pt, "z")
    res = triple_integral(p, z)
    if not res.converged:
        raise NotConverged("three-fold integral missed its target")
    return SamplePoint(p, z), res.value, _val(p, z)


@_register(IdentityId.SphRecur68)
def _sph68(pt):
    p = _params(pt, Family.SphericalG)
    z, nu = _get(pt, "z"), p.nu
    g = p.replace(c=p.c - 1.0)
    lhs = (z ** 1.5 * _val(g, z, 2) + (1.5 - nu) * z ** 0.5 * _val(g, z, 1)
           - nu / 2.0 * z ** -0.5 * _val(g, z))
    rhs = -p.b * z ** 0.5 * (p.c - 1.5) * _val(p.replace(nu=nu + 1.0), z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.SphRecur69)
def _sph69(pt):
    p = _params(pt, Family.SphericalG)
    z, nu = _get(pt, "z"), p.nu
    g = p.replace(c=p.c - 1.0)
    lhs = (z ** 1.5 * _val(g, z, 2) + (nu + 2.5) * z ** 0.5 * _val(g, z, 1)
           + (nu + 1.0) / 2.0 * z ** -0.5 * _val(g, z))
    rhs = z ** 0.5 * (p.c - 1.5) * _val(p.replace(nu=nu - 1.0), z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.SphRecur611)
def _sph611(pt):
    p = _params(pt, Family.SphericalG)
    z, nu, b = _get(pt, "z"), p.nu, p.b
    lo = p.replace(c=p.c - 1.0, nu=nu - 1.0)
    hi = p.replace(c=p.c - 1.0, nu=nu + 1.0)
    lhs = (z * z * (_val(lo, z, 2) + b * _val(hi, z, 2))
           + z * ((2.5 - nu) * _val(lo, z, 1) + b * (nu + 3.5) * _val(hi, z, 1)))
    rhs = -(1.0 - nu) / 2.0 * _val(lo, z) - b * (2.0 + nu) / 2.0 * _val(hi, z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.SphPDE612)
def _sph612(pt):
    p = _params(pt, Family.SphericalG)
    z, nu = _get(pt, "z"), p.nu
    twice, factor = _double_shift(p)
    h = [factor * _val(twice, z, d) for d in range(5)]
    q = nu * nu + nu
    lhs = ((6.0 - 4.0 * q) * z * h[1] + (39.0 - 4.0 * q) * z ** 2 * h[2]
           + 28.0 * z ** 3 * h[3] + 4.0 * z ** 4 * h[4] + q * h[0])
    rhs = -4.0 * p.b * z * z * _val(p, z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.CliffRecur68c)
def _cliff68(pt):
    p = _params(pt, Family.CliffordC)
    z, nu, lam = _get(pt, "z"), p.nu, p.c
    cm = p.replace(c=lam - 1.0)
    lhs = ((nu + 2.0) / 2.0 * z ** (nu / 2.0) * _val(cm, z, 1)
           + z ** ((nu + 2.0) / 2.0) * _val(cm, z, 2))
    rhs = -p.b * (lam - 1.0) / 2.0 * z ** (nu / 2.0) * _val(p.replace(nu=nu + 1.0), z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.CliffRecur69c)
def _cliff69(pt):
    p = _params(pt, Family.CliffordC)
    z, nu, lam = _get(pt, "z"), p.nu, p.c
    cm = p.replace(c=lam - 1.0)
    lhs = (z ** (nu / 2.0 + 1.0) * _val(cm, z, 2)
           + (1.5 * nu + 1.0) * z ** (nu / 2.0) * _val(cm, z, 1)
           + nu * nu / 2.0 * z ** (nu / 2.0 - 1.0) * _val(cm, z))
    rhs = z ** (nu / 2.0 - 1.0) * (lam - 1.0) / 2.0 * _val(p.replace(nu=nu - 1.0), z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.CliffRecur611c)
def _cliff611(pt):
    p = _params(pt, Family.CliffordC)
    z, nu, b = _get(pt, "z"), p.nu, p.b
    lo = p.replace(c=p.c - 1.0, nu=nu - 1.0)
    hi = p.replace(c=p.c - 1.0, nu=nu + 1.0)
    lhs = (-b * (3.0 * nu + 5.0) * z * _val(hi, z, 1) - b * (nu + 1.0) ** 2 * _val(hi, z)
           - 2.0 * b * z * z * _val(hi, z, 2))
    rhs = (nu + 1.0) * _val(lo, z, 1) + 2.0 * z * _val(lo, z, 2)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.CliffPDE612c)
def _cliff612(pt):
    p = _params(pt, Family.CliffordC)
    z, nu = _get(pt, "z"), p.nu
    twice, factor = _double_shift(p)
    h = [factor * _val(twice, z, d) for d in range(5)]
    lhs = ((nu ** 3 + 4.0 * nu ** 2 + 5.0 * nu + 2.0) * h[1]
           + (5.0 * nu ** 2 + 21.0 * nu + 22.0) * z * h[2]
           + (8.0 * nu + 22.0) * z * z * h[3] + 4.0 * z ** 3 * h[4])
    rhs = -p.b * _val(p, z)
    return SamplePoint(p, z), lhs, rhs


def _order_n(pt) -> int:
    n = _get(pt, "n")
    if n != int(n) or n < 1:
        raise DomainError("reflection checks need a positive integer n")
    return int(n)


@_register(IdentityId.Reflect21)
def _reflect21(pt):
    b, c, rho, z, n = _get(pt, "b"), _get(pt, "c"), _get(pt, "rho", 0.0), _get(pt, "z"), _order_n(pt)
    p = FamilyParams.unified(b, c, -float(n), rho)
    lhs = _negative_order_series(b, c, n, rho, z)
    rhs = (-b) ** n * _val(p.replace(nu=float(n)), z)
    return SamplePoint(p, z), lhs, rhs


@_register(IdentityId.Reflect61)
def _reflect61(pt):
    b, lam, rho, z, n = _get(pt, "b"), _get(pt, "c"), _get(pt, "rho", 0.0), _get(pt, "z"), _order_n(pt)
    p = FamilyParams.clifford(b, lam, -float(n), rho)
    lhs = z ** (n / 2.0) * _negative_order_series(b, lam, n, rho, 2.0 * math.sqrt(z))
    rhs = (-b) ** n * z ** n * _val(p.replace(nu=float(n)), z)
    return SamplePoint(p, z), lhs, rhs


# ---------------------------------------------------------------------------
# special-case table

_ROW_PARAMS = {
    # row: (b, c, order as a function of ν)
    "I": (-1, 0.5, lambda nu: nu + 0.5), "II": (1, 0.5, lambda nu: nu + 0.5),
    "III": (-1, 1, lambda nu: nu + 0.5), "IV": (1, 1, lambda nu: nu + 0.5),
    "V": (-1, 1.5, lambda nu: nu - 0.5), "VI": (1, 1.5, lambda nu: nu - 0.5),
    "VII": (-1, 1, lambda nu: nu - 0.5), "VIII": (1, 1, lambda nu: nu - 0.5),
    "IX": (-1, 1, lambda nu: 0.0), "X": (1, 1, lambda nu: 0.0),
    "XI": (1, 1, lambda nu: 0.5), "XII": (1, 1, lambda nu: -0.5),
    "XIII": (1, 1, lambda nu: nu), "XIV": (-1, 1, lambda nu: nu),
}


def _closed_form(row: str, nu: float, z: float) -> float:
    sq = z * z / 4.0
    sign = 1.0 if row in ("I", "III", "V", "VII") else -1.0
    if row in ("I", "II"):
        pref = gamma(nu + 1.0) * (z / 2.0) ** (nu + 0.5) / (math.sqrt(math.pi) * gamma(nu + 1.5) ** 2)
        return pref * hyp([(nu + 1) / 2, (nu + 2) / 2],
                          [(2 * nu + 3) / 2, (2 * nu + 3) / 4, (2 * nu + 5) / 4], sign * sq)
    if row in ("III", "IV"):
        return (z / 2.0) ** (nu + 0.5) / gamma(nu + 1.5) * hyp([], [nu + 1.5], sign * sq)
    if row in ("V", "VI"):
        pref = (z ** (nu - 0.5) * gamma(nu + 1.0)
                / (math.sqrt(math.pi) * gamma(nu + 0.5) ** 2 * 2.0 ** (nu - 1.5)))
        return pref * hyp([(nu + 1) / 2, (nu + 2) / 2],
                          [(2 * nu + 1) / 2, (2 * nu + 1) / 4, (2 * nu + 3) / 4], sign * sq)
    if row in ("VII", "VIII"):
        return (z / 2.0) ** (nu - 0.5) / gamma(nu + 0.5) * hyp([], [nu + 0.5], sign * sq)
    if row == "IX":
        return hyp([], [1.0], sq)
    if row == "X":
        return hyp([], [1.0], -sq)
    if row == "XI":
        return math.sqrt(2.0 / (math.pi * z)) * math.sin(z)
    if row == "XII":
        return math.sqrt(2.0 / (math.pi * z)) * math.cos(z)
    if row == "XIII":
        return bessel_oracle(nu, z)
    # XIV: I_ν through Kummer's relation with 1F1
    return (math.exp(-z) * (z / 2.0) ** nu / gamma(nu + 1.0)
            * hyp([nu + 0.5], [2 * nu + 1.0], 2.0 * z))


def table_row(row: str, nu: float, z: float) -> tuple[FamilyParams, float, float]:
    """One entry of the special-case table at (ν, z).

    Returns ``(params, series_value, closed_form_value)``; rows IX-XII do
    not depend on ν.
    """
    row = row.strip().upper()
    if row not in _ROW_PARAMS:
        raise DomainError(f"unknown table row {row!r}")
    z, nu = float(z), float(nu)
    if row in ("XI", "XII") and z <= 0:
        raise DomainError("rows XI and XII need z > 0")
    b, c, order = _ROW_PARAMS[row]
    params = FamilyParams.unified(b, c, order(nu))
    return params, _val(params, z), _closed_form(row, nu, z)


def _make_row_check(row: str) -> Check:
    def check(pt):
        nu, z = _get(pt, "nu", 0.0), _get(pt, "z")
        params, lhs, rhs = table_row(row, nu, z)
        return SamplePoint(params, z, {"table_nu": nu}), lhs, rhs
    return check


for _row in TABLE_ROWS:
    _CHECKS[IdentityId(f"TableRow({_row})")] = _make_row_check(_row)


# ---------------------------------------------------------------------------

def relative_residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def check_identity(ident: IdentityId | str, points: Sequence[Mapping[str, float]] | None = None,
                   tolerance: float | None = None) -> IdentityReport:
    """Evaluate both sides of an identity at sample points.

    Parameters
    ----------
    ident : IdentityId or str
        The identity.
    points : sequence of mappings, optional
        Sample points as ``{name: value}``; defaults to the shipped catalogue.
    tolerance : float, optional
        Pass threshold on the maximum residual; defaults to the catalogue
        value.

    The residual is |L - R| / max(1, |L|, |R|), except for ``PDE35`` where it
    is |L - R| / |R|.

    Raises
    ------
    DomainError
        For a sample point outside the identity's domain.
    NotConverged
        If either side cannot be computed to its target.
    """
    ident = ident if isinstance(ident, IdentityId) else IdentityId.parse(ident)
    if points is None or tolerance is None:
        from .catalogue import default_entry

        entry = default_entry(ident)
        points = entry.samples if points is None else points
        tolerance = entry.tolerance if tolerance is None else tolerance
    if not tolerance > 0:
        raise DomainError("tolerance must be > 0")
    checker = _CHECKS[ident]
    used, residuals = [], []
    for pt in points:
        point, lhs, rhs = checker(pt)
        if ident == IdentityId.PDE35:
            r = abs(lhs - rhs) / abs(rhs)
        else:
            r = relative_residual(lhs, rhs)
        used.append(point)
        residuals.append(r)
    worst = max(residuals) if residuals else 0.0
    return IdentityReport(ident, used, residuals, worst, float(tolerance), worst <= tolerance)
