"""Laplace and Mellin transforms of the unified Bessel family as series, and
quadrature evaluation of its integral representations.

The series routines are the fast primary routes; the quadrature routines
evaluate the defining integrals and serve as independent cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bessel import Family, FamilyParams, bessel_oracle, _g_coefficient_ratio, _g_lead
from .errors import DomainError, NotConverged
from .hypergeom import PfqArgs, pfq, pfq_array
from .quadrature import (QuadratureOpts, QuadratureResult, integrate_semi_infinite,
                         integrate_tensor, integrate_unit)
from .special import RatioSequence, gamma, gen_pochhammer, pochhammer
from .summation import CompensatedSum, SeriesValue, sum_ratio_series

__all__ = [
    "IntegralVariant",
    "ProductArgs",
    "laplace_series",
    "mellin_z_series",
    "mellin_rho_series",
    "integral_rep",
    "triple_integral",
    "product_integral_rep",
    "mellin_product_series",
]

_G_TYPE = (Family.UnifiedG, Family.GenBesselJ, Family.GenModifiedI)
_LOG_TINY = -700.0

INTEGRAL_OPTS = QuadratureOpts(abs_tol=1e-16, rel_tol=1e-12, max_evals=200_000)
TRIPLE_OPTS = QuadratureOpts(abs_tol=1e-12, rel_tol=1e-7, max_evals=2_000_000)
PRODUCT_OPTS = QuadratureOpts(abs_tol=1e-14, rel_tol=1e-10, max_evals=200_000)


class IntegralVariant(str, Enum):
    SemiInfinite = "SemiInfinite"
    UnitInterval = "UnitInterval"


@dataclass(frozen=True)
class ProductArgs:
    """Scales and orders of a product G_ν(αz) G_w(βz)."""

    alpha: float
    beta: float
    nu: float
    w: float

    def __post_init__(self):
        for name in ("alpha", "beta", "nu", "w"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("alpha and beta must be >= 0 (arguments stay on z >= 0)")
        if self.nu <= -1 or self.w <= -1:
            raise DomainError("orders nu and w must exceed -1")


def _require_nonnegative_order(params: FamilyParams) -> None:
    floor = -1.5 if params.family == Family.SphericalG else -1.0
    if params.nu <= floor:
        raise DomainError("transforms need the order above its lower bound (no reflection)")


def _require_same_kind(a: FamilyParams, b: FamilyParams) -> None:
    if a.family not in _G_TYPE or b.family not in _G_TYPE:
        raise DomainError("products are defined for the G, J and I families")
    if (a.b, a.c, a.rho) != (b.b, b.c, b.rho):
        raise DomainError("both factors must share b, c and rho")


def _g_ratio_parts(c: float, nu: float, rho: float):
    """R_k = Γ_ρ(c+ν+2k+2)/Γ_ρ(c+ν+2k) as a function of (num, k), plus exactness."""
    x0 = c + nu
    if rho == 0:
        return (lambda num, k: (num(x0) + 2 * k) * (num(x0) + 2 * k + 1)), True
    steps = RatioSequence(x0, rho)
    return (lambda num, k: num(steps[2 * k]) * num(steps[2 * k + 1])), False


# ---------------------------------------------------------------- Laplace

def laplace_series(params: FamilyParams, s: float, rel_tol: float = 1e-13) -> SeriesValue:
    """Laplace transform ∫₀^∞ e^{-st} f(t) dt of a family member, as a series.

    G-type:     (1/s) Σ (-b)^k (c;ρ)_{2k+ν} / (k! Γ(ν+k+1)) (2s)^{-2k-ν}
    spherical:  (√π/2s) Σ (-b)^k (c-½;ρ)_{2k+ν+½} Γ(ν+2k+1)
                / (k! Γ(k+ν+3/2) Γ(2k+ν+3/2)) (2s)^{-2k-ν}
    Clifford:   Σ (-b)^k (λ;ρ)_{2k+ν} / (Γ(ν+k+1) Γ(ν+2k+1) s^{k+1})

    The G-type and spherical series converge for s² > |b| and on the
    boundary s² = |b| when alternating; geometric divergence is reported as
    ``NotConverged``.
    """
    s = float(s)
    if not s > 0:
        raise DomainError("the Laplace variable must be > 0")
    _require_nonnegative_order(params)
    b, c, nu, rho = params.b, params.c, params.nu, params.rho
    fam = params.family
    what = f"{fam.value} Laplace series"
    if fam in _G_TYPE:
        r_k, exact = _g_ratio_parts(c, nu, rho)
        lead = gen_pochhammer(c, rho, nu) / gamma(nu + 1.0) * (2.0 * s) ** (-nu) / s

        def factory(num):
            nb, nn, ns = num(b), num(nu), num(s)
            return lambda k: -nb * r_k(num, k) / ((k + 1) * (nn + k + 1) * 4 * ns * ns)

        return sum_ratio_series(factory, rel_tol, lead=lead, exact=exact, what=what)
    if fam == Family.SphericalG:
        r_k, exact = _g_ratio_parts(c - 0.5, nu + 0.5, rho)
        lead = (math.sqrt(math.pi) / (2.0 * s) * gen_pochhammer(c - 0.5, rho, nu + 0.5)
                * gamma(nu + 1.0) / gamma(nu + 1.5) ** 2 * (2.0 * s) ** (-nu))

        def factory(num):
            nb, nn, ns = num(b), num(nu), num(s)
            half = num(0.5)

            def ratio(k):
                up = (nn + 2 * k + 1) * (nn + 2 * k + 2)
                down = ((k + 1) * (nn + k + 1 + half) * (nn + 2 * k + 1 + half)
                        * (nn + 2 * k + 2 + half) * 4 * ns * ns)
                return -nb * r_k(num, k) * up / down

            return ratio

        return sum_ratio_series(factory, rel_tol, lead=lead, exact=exact, what=what)
    r_k, exact = _g_ratio_parts(c, nu, rho)
    lead = gen_pochhammer(c, rho, nu) / (gamma(nu + 1.0) ** 2 * s)

    def factory(num):
        nb, nn, ns = num(b), num(nu), num(s)
        return lambda k: -nb * r_k(num, k) / (
            (nn + k + 1) * (nn + 2 * k + 1) * (nn + 2 * k + 2) * ns)

    return sum_ratio_series(factory, rel_tol, lead=lead, exact=exact, what=what)


# ---------------------------------------------------------------- Mellin in z

def _mellin_z_g(b: float, c: float, nu: float, rho: float, s: float, rel_tol: float,
                what: str) -> SeriesValue:
    if s + nu <= 0 and s + nu == math.floor(s + nu):
        raise DomainError("s + nu must not be a non-positive integer")
    r_k, exact = _g_ratio_parts(c, nu, rho)
    lead = gen_pochhammer(c, rho, nu) * gamma(s + nu) / (2.0 ** nu * gamma(nu + 1.0) ** 2)

    def factory(num):
        nb, nn, ns = num(b), num(nu), num(s)

        def ratio(k):
            e = ns + nn + 2 * k
            down = ((nn + 1 + k) * ((nn + 1) / 2 + k) * ((nn + 2) / 2 + k) * 16 * (k + 1))
            return -nb * r_k(num, k) * e * (e + 1) / down

        return ratio

    return sum_ratio_series(factory, rel_tol, lead=lead, exact=exact, what=what)


def mellin_z_series(params: FamilyParams, s: float, rel_tol: float = 1e-13) -> SeriesValue:
    """Mellin transform ∫₀^∞ z^{s-1} e^{-z} f(z) dz of a family member.

    G-type: (1/(2^ν Γ(ν+1)²)) Σ (-b)^k (c;ρ)_{ν+2k} Γ(s+ν+2k)
            / [(ν+1)_k ((ν+1)/2)_k ((ν+2)/2)_k 16^k k!].
    The spherical transform is √(π/2) times the G-type one at
    (s-½; ν+½, c-½); the Clifford transform is
    Σ (-b)^k (λ;ρ)_{2k+ν} Γ(s+k) / (Γ(ν+k+1) Γ(ν+2k+1) k!).

    For |b| = 1 the G-type series sits on its circle of convergence and is
    summed with the Levin transform when it alternates.
    """
    s = float(s)
    _require_nonnegative_order(params)
    b, c, nu, rho = params.b, params.c, params.nu, params.rho
    fam = params.family
    what = f"{fam.value} Mellin series"
    if fam in _G_TYPE:
        return _mellin_z_g(b, c, nu, rho, s, rel_tol, what)
    if fam == Family.SphericalG:
        inner = _mellin_z_g(b, c - 0.5, nu + 0.5, rho, s - 0.5, rel_tol, what)
        return inner.scaled(math.sqrt(math.pi / 2.0))
    if s <= 0 and s == math.floor(s):
        raise DomainError("s must not be a non-positive integer")
    r_k, exact = _g_ratio_parts(c, nu, rho)
    lead = gen_pochhammer(c, rho, nu) * gamma(s) / gamma(nu + 1.0) ** 2

    def factory(num):
        nb, nn, ns = num(b), num(nu), num(s)
        return lambda k: -nb * r_k(num, k) * (ns + k) / (
            (nn + k + 1) * (nn + 2 * k + 1) * (nn + 2 * k + 2) * (k + 1))

    return sum_ratio_series(factory, rel_tol, lead=lead, exact=exact, what=what)


# ---------------------------------------------------------------- Mellin in rho

def bessel_power_bracket(nu: float, z: float, rel_tol: float = 1e-15) -> SeriesValue:
    """Σ_m (ν+2m) Γ(ν+m)/m! · J_{ν+2m}(z), which reproduces (z/2)^ν.

    The m = 0 coefficient is read as its limit Γ(ν+1), so ν = 0 is allowed.
    """
    nu, z = float(nu), float(z)
    if nu <= -1:
        raise DomainError("order must exceed -1")
    acc = CompensatedSum()
    small = 0
    for m in range(400):
        coeff = gamma(nu + 1.0) if m == 0 else (nu + 2 * m) * gamma(nu + m) / math.factorial(m)
        term = coeff * bessel_oracle(nu + 2 * m, z)
        acc.add(term)
        small = small + 1 if abs(term) <= rel_tol * abs(acc.value) or term == 0 else 0
        if small >= 3 and 2 * m > z:
            return SeriesValue(acc.value, m + 1, abs(term), True)
    raise NotConverged("Bessel-power bracket did not settle")


def mellin_rho_series(params: FamilyParams, z: float, s: float,
                      rel_tol: float = 1e-13) -> SeriesValue:
    """Mellin transform over ρ, ∫₀^∞ ρ^{s-1} f(z;ρ) dρ, at fixed z.

    G-type: Γ(s)Γ(c+ν+s)/(Γ(ν+1)² Γ(c)) · [Σ_m (ν+2m)Γ(ν+m)/m! J_{ν+2m}(z)]
            · 2F3((c+ν+s)/2, (c+ν+s+1)/2; ν+1, (ν+1)/2, (ν+2)/2; -bz²/4).
    Spherical: √(π/2z) times the G-type transform at (ν+½, c-½).
    Clifford: Γ(s)Γ(λ+ν+s)/(Γ(ν+1)² Γ(λ)) · 2F3(same numerators; -bz).
    """
    s, z = float(s), float(z)
    if not s > 0:
        raise DomainError("s must be > 0")
    if z < 0:
        raise DomainError("z must be >= 0")
    _require_nonnegative_order(params)
    b, c, nu = params.b, params.c, params.nu
    fam = params.family
    scale = 1.0
    if fam == Family.SphericalG:
        if not z > 0:
            raise DomainError("the spherical family needs z > 0")
        scale = math.sqrt(math.pi / (2.0 * z))
        c, nu = c - 0.5, nu + 0.5
    a = c + nu + s
    if a <= 0 and a == math.floor(a):
        raise DomainError("c + nu + s must not be a non-positive integer")
    pref = gamma(s) * gamma(a) / (gamma(nu + 1.0) ** 2 * gamma(c))
    denoms = [nu + 1.0, (nu + 1.0) / 2.0, (nu + 2.0) / 2.0]
    if fam == Family.CliffordC:
        f = pfq(PfqArgs([a / 2.0, (a + 1.0) / 2.0], denoms, -b * z), rel_tol)
        return f.scaled(pref)
    f = pfq(PfqArgs([a / 2.0, (a + 1.0) / 2.0], denoms, -b * z * z / 4.0), rel_tol)
    bracket = bessel_power_bracket(nu, z)
    factor = scale * pref
    return SeriesValue(
        value=factor * bracket.value * f.value,
        terms_used=bracket.terms_used + f.terms_used,
        tail_estimate=abs(factor) * (abs(bracket.value) * f.tail_estimate
                                     + abs(f.value) * bracket.tail_estimate),
        converged=True,
        rounding_estimate=abs(factor * bracket.value) * f.rounding_estimate,
        method=f.method,
    )


# ---------------------------------------------------------------- integral representations

def _kernel(x0: float, rho: float, denoms: list[float], kappa: float):
    """t ↦ t^{x0-1} e^{-t-ρ/t} 0F3(-; denoms; κ t²), vectorised.

    Points whose weight is negligible even against the largest possible
    growth of the 0F3 factor are set to zero without evaluating it.
    """

    def f(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            logw = (x0 - 1.0) * np.log(t) - t - (rho / t if rho else 0.0)
            arg = kappa * t * t
            growth = 4.0 * np.abs(arg) ** 0.25
            live = (t > 0) & np.isfinite(logw) & (logw + growth > _LOG_TINY)
            out = np.zeros_like(t)
            if live.any():
                out[live] = np.exp(logw[live]) * pfq_array([], denoms, arg[live])
        return out

    return f


def _representation_data(params: FamilyParams, z: float):
    """(prefactor, c+ν, ρ, 0F3 denominators, κ) for a family's integral formula."""
    b, c, nu, rho = params.b, params.c, params.nu, params.rho
    fam = params.family
    if fam == Family.SphericalG:
        pref = (math.sqrt(math.pi) * (z / 2.0) ** nu
                / (2.0 * gamma(nu + 1.5) ** 2 * gamma(c - 0.5)))
        denoms = [(2 * nu + 3) / 2.0, (2 * nu + 3) / 4.0, (2 * nu + 5) / 4.0]
        return pref, c + nu, rho, denoms, -b * z * z / 16.0
    denoms = [nu + 1.0, (nu + 1.0) / 2.0, (nu + 2.0) / 2.0]
    if fam == Family.CliffordC:
        return 1.0 / (gamma(nu + 1.0) ** 2 * gamma(c)), c + nu, rho, denoms, -b * z / 4.0
    pref = (z / 2.0) ** nu / (gamma(nu + 1.0) ** 2 * gamma(c))
    return pref, c + nu, rho, denoms, -b * z * z / 16.0


def _scaled_result(res: QuadratureResult, factor: float, what: str) -> QuadratureResult:
    out = QuadratureResult(res.value * factor, res.error_estimate * abs(factor),
                           res.evaluations, res.converged)
    if not res.converged:
        raise NotConverged(f"{what}: quadrature did not reach its target", partial=out)
    return out


def integral_rep(params: FamilyParams, z: float,
                 variant: IntegralVariant | str = IntegralVariant.SemiInfinite,
                 opts: QuadratureOpts = INTEGRAL_OPTS) -> QuadratureResult:
    """Evaluate a family member through its single-integral representation.

    G-type: (z/2)^ν/(Γ(ν+1)² Γ(c)) ∫₀^∞ t^{c+ν-1} e^{-t-ρ/t}
            0F3(-; ν+1, (ν+1)/2, (ν+2)/2; -bz²t²/16) dt,
    with the spherical and Clifford analogues obtained from their defining
    relations.  ``SemiInfinite`` splits the half line at the weight's peak
    scale; ``UnitInterval`` integrates the t = u/(1-u) transformed integrand
    over (0, 1) as a single piece.
    """
    variant = IntegralVariant(variant)
    z = float(z)
    if z < 0 or (params.family == Family.SphericalG and not z > 0):
        raise DomainError("z outside the family's domain")
    _require_nonnegative_order(params)
    pref, x0, rho, denoms, kappa = _representation_data(params, z)
    f = _kernel(x0, rho, denoms, kappa)
    what = f"{params.family.value} integral representation"
    if variant == IntegralVariant.UnitInterval:
        def g(u: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore", invalid="ignore"):
                one_minus = 1.0 - u
                out = f(u / one_minus) / (one_minus * one_minus)
            return np.where(one_minus > 0, out, 0.0)

        return _scaled_result(integrate_unit(g, opts), pref, what)
    sigma = max(1.0, x0)
    lower = integrate_unit(lambda v: sigma * f(sigma * v), opts)
    upper = integrate_semi_infinite(lambda w: sigma * f(sigma * (1.0 + w)), opts)
    total = QuadratureResult(lower.value + upper.value,
                             lower.error_estimate + upper.error_estimate,
                             lower.evaluations + upper.evaluations,
                             lower.converged and upper.converged)
    return _scaled_result(total, pref, what)


def triple_integral(params: FamilyParams, z: float,
                    opts: QuadratureOpts = TRIPLE_OPTS) -> QuadratureResult:
    """Three-fold integral over (0,1)³ representing G-type members.

    (z/2)^ν/(Γ(c) π Γ(ν+½)²) ∫∫∫ t^{-½} u^{-½} s^{c+ν-1} (1-t)^{ν-½} (1-u)^{ν-½}
    (1-s)^{-c-ν-1} exp(-(s² + ρ(1-s)²)/(s(1-s)))
    0F3(-; ¼, ¾, ½; -b z² s² u² t / (16 (1-s)²)) dt du ds,   ν > -½.
    """
    if params.family not in _G_TYPE:
        raise DomainError("the three-fold integral is defined for the G, J and I families")
    b, c, nu, rho = params.b, params.c, params.nu, params.rho
    z = float(z)
    if nu <= -0.5:
        raise DomainError("the three-fold integral needs nu > -1/2")
    if z < 0:
        raise DomainError("z must be >= 0")
    pref = (z / 2.0) ** nu / (gamma(c) * math.pi * gamma(nu + 0.5) ** 2)
    kappa = -b * z * z / 16.0
    denoms = [0.25, 0.75, 0.5]

    def integrand(s: np.ndarray, u: np.ndarray, t: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            one_s = 1.0 - s
            logw = ((c + nu - 1.0) * np.log(s) - (c + nu + 1.0) * np.log(one_s)
                    - s / one_s - (rho * one_s / s if rho else 0.0)
                    + (nu - 0.5) * (np.log1p(-t) + np.log1p(-u))
                    - 0.5 * (np.log(t) + np.log(u)))
            arg = kappa * (s * u / one_s) ** 2 * t
            growth = 4.0 * np.abs(arg) ** 0.25
            live = np.isfinite(logw) & (logw + growth > _LOG_TINY)
            out = np.zeros_like(t)
            if live.any():
                out[live] = np.exp(logw[live]) * pfq_array([], denoms, arg[live])
        return out

    res = integrate_tensor(integrand, ("unit", "unit", "unit"), opts)
    return _scaled_result(res, pref, "three-fold integral")


def product_integral_rep(params_a: FamilyParams, params_b: FamilyParams, alpha: float,
                         beta: float, z: float,
                         opts: QuadratureOpts = PRODUCT_OPTS) -> QuadratureResult:
    """G_ν(αz;ρ)·G_w(βz;ρ) through its double integral over (0,∞)².

    (αz)^ν (βz)^w / (2^{ν+w} Γ(c)² Γ(ν+1)² Γ(w+1)²) ∫∫ t^{c+ν-1} u^{c+w-1}
    e^{-t-u-ρ/t-ρ/u} 0F3(-; ν+1, (ν+1)/2, (ν+2)/2; -bα²z²t²/16)
    0F3(-; w+1, (w+1)/2, (w+2)/2; -bβ²z²u²/16) dt du.
    """
    _require_same_kind(params_a, params_b)
    prod = ProductArgs(alpha, beta, params_a.nu, params_b.nu)
    b, c, rho = params_a.b, params_a.c, params_a.rho
    nu, w, z = prod.nu, prod.w, float(z)
    if z < 0:
        raise DomainError("z must be >= 0")
    pref = ((prod.alpha * z) ** nu * (prod.beta * z) ** w
            / (2.0 ** (nu + w) * gamma(c) ** 2 * gamma(nu + 1.0) ** 2 * gamma(w + 1.0) ** 2))
    if pref == 0.0:
        return QuadratureResult(0.0, 0.0, 0, True)
    f_t = _kernel(c + nu, rho, [nu + 1.0, (nu + 1.0) / 2.0, (nu + 2.0) / 2.0],
                  -b * (prod.alpha * z) ** 2 / 16.0)
    f_u = _kernel(c + w, rho, [w + 1.0, (w + 1.0) / 2.0, (w + 2.0) / 2.0],
                  -b * (prod.beta * z) ** 2 / 16.0)

    def integrand(t: np.ndarray, u: np.ndarray) -> np.ndarray:
        return f_t(t) * f_u(u)

    res = integrate_tensor(integrand, ("semi_infinite", "semi_infinite"), opts)
    return _scaled_result(res, pref, "product double integral")


def mellin_product_series(params_a: FamilyParams, params_b: FamilyParams, alpha: float,
                          beta: float, s: float, rel_tol: float = 1e-13,
                          max_shells: int = 400) -> SeriesValue:
    """Mellin transform ∫₀^∞ z^{s-1} · z e^{-z} G_ν(αz;ρ) G_w(βz;ρ) dz as a double series.

    α^ν β^w / (2^{ν+w} Γ(ν+1)² Γ(w+1)²) Σ_{k,l} (-b)^{k+l} α^{2k} β^{2l}
    (c;ρ)_{ν+2k} (c;ρ)_{w+2l} Γ(s+ν+w+2k+2l+1)
    / [(ν+1)_k (w+1)_l ((ν+1)/2)_k ((w+1)/2)_l ((ν+2)/2)_k ((w+2)/2)_l k! l! 2^{4k+4l}],

    summed over diagonal shells k + l = N.  The Γ(…+2k+2l) growth limits
    convergence to small α, β; divergence is reported as ``NotConverged``.
    """
    _require_same_kind(params_a, params_b)
    prod = ProductArgs(alpha, beta, params_a.nu, params_b.nu)
    b, c, rho = params_a.b, params_a.c, params_a.rho
    nu, w, s = prod.nu, prod.w, float(s)
    x = s + nu + w + 1.0
    if x <= 0 and x == math.floor(x):
        raise DomainError("s + nu + w + 1 must not be a non-positive integer")
    pref = (prod.alpha ** nu * prod.beta ** w * gen_pochhammer(c, rho, nu)
            * gen_pochhammer(c, rho, w) * gamma(x)
            / (2.0 ** (nu + w) * gamma(nu + 1.0) ** 2 * gamma(w + 1.0) ** 2))
    if pref == 0.0:
        return SeriesValue(0.0, 1, 0.0, True, 0.0, "closed")

    def coefficients(order: float, scale: float, count: int) -> list[float]:
        r_k, _ = _g_ratio_parts(c, order, rho)
        out = [1.0]
        for k in range(count - 1):
            out.append(out[-1] * (-b) * scale * scale * r_k(float, k)
                       / ((order + 1 + k) * ((order + 1) / 2 + k) * ((order + 2) / 2 + k)
                          * 16 * (k + 1)))
        return out

    a_k = coefficients(nu, prod.alpha, max_shells + 1)
    b_l = coefficients(w, prod.beta, max_shells + 1)
    acc = CompensatedSum()
    gam = 1.0  # Γ(x+2N)/Γ(x)
    small = growth = 0
    prev_shell = math.inf
    for n in range(max_shells + 1):
        if n:
            gam *= (x + 2 * n - 2) * (x + 2 * n - 1)
        shell = [a_k[k] * b_l[n - k] * gam for k in range(n + 1)]
        shell_sum = math.fsum(shell)
        shell_abs = math.fsum(abs(v) for v in shell)
        if not math.isfinite(shell_abs):
            break
        acc.add(shell_sum)
        total = acc.value
        small = small + 1 if shell_abs <= rel_tol * abs(total) else 0
        if small >= 3:
            return SeriesValue(total, (n + 1) * (n + 2) // 2, shell_abs, True).scaled(pref)
        growth = growth + 1 if (shell_abs > prev_shell and n > 2) else 0
        prev_shell = shell_abs
        if growth >= 5 and shell_abs > abs(total):
            break
    partial = SeriesValue(acc.value, 0, math.inf, False).scaled(pref)
    raise NotConverged("product Mellin series diverges at these scales", partial=partial)
