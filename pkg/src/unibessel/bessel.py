"""The unified four-parameter Bessel function and its named families.

The unified function is the power series

    G_ν^{(b,c)}(z;ρ) = Σ_k (-b)^k (c;ρ)_{2k+ν} (z/2)^{2k+ν}
                       / [Γ(ν+k+1) Γ(ν+2k+1) k!]

and the families are obtained from it as follows:

* ``GenBesselJ``  J_ν^{(c)}(z;ρ) = G with b = 1
* ``GenModifiedI`` I_ν^{(c)}(z;ρ) = G with b = -1
* ``SphericalG``  g_ν^{(b,c)}(z;ρ) = √(π/2z) G_{ν+1/2}^{(b,c-1/2)}(z;ρ)
* ``CliffordC``   C_ν^{(b,λ)}(z;ρ) = z^{-ν/2} G_ν^{(b,λ)}(2√z;ρ)

Every family member is a power series Σ a_k z^{p+s·k}; evaluation and
term-wise differentiation both go through :class:`PowerSeries`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from enum import Enum

from .errors import DomainError, NotConverged
from .special import RatioSequence, gamma, gen_pochhammer, pochhammer
from .summation import RatioFactory, SeriesValue, sum_ratio_series

__all__ = [
    "Family",
    "FamilyParams",
    "PowerSeries",
    "power_series",
    "evaluate",
    "dz_series",
    "reflect_negative_order",
    "bessel_oracle",
    "neumann_expansion",
]

ORACLE_ENVELOPE = 40.0


class Family(str, Enum):
    UnifiedG = "UnifiedG"
    GenBesselJ = "GenBesselJ"
    GenModifiedI = "GenModifiedI"
    SphericalG = "SphericalG"
    CliffordC = "CliffordC"


_G_TYPE = (Family.UnifiedG, Family.GenBesselJ, Family.GenModifiedI)
_PINNED_B = {Family.GenBesselJ: 1.0, Family.GenModifiedI: -1.0}


def _is_negative_integer(x: float) -> bool:
    return x < 0 and x == math.floor(x)


@dataclass(frozen=True)
class FamilyParams:
    """One member of the unified family.

    ``c`` is the parameter written c for the G, J, I and spherical families
    and λ for the Bessel-Clifford family.  For ``GenBesselJ`` and
    ``GenModifiedI`` the value of ``b`` is fixed (+1 and -1) and may be
    omitted.
    """

    family: Family
    b: float | None
    c: float
    nu: float
    rho: float = 0.0

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        b = self.b
        if fam in _PINNED_B:
            if b is None:
                b = _PINNED_B[fam]
            elif float(b) != _PINNED_B[fam]:
                raise DomainError(f"{fam.value} requires b = {_PINNED_B[fam]:+g}")
        if b is None:
            raise DomainError(f"{fam.value} requires a value for b")
        object.__setattr__(self, "b", float(b))
        for name in ("c", "nu", "rho"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not all(math.isfinite(v) for v in (self.b, self.c, self.nu, self.rho)):
            raise DomainError("parameters must be finite")
        if self.rho < 0:
            raise DomainError(f"rho must be >= 0, got {self.rho}")
        if fam == Family.SphericalG:
            if self.nu <= -1.5:
                raise DomainError(f"spherical order must exceed -3/2, got {self.nu}")
            if self.c <= 0.5:
                raise DomainError(f"spherical c must exceed 1/2, got {self.c}")
            shifted_order, shifted_c = self.nu + 0.5, self.c - 0.5
        else:
            if self.nu <= -1 and not _is_negative_integer(self.nu):
                raise DomainError(f"order {self.nu} is neither > -1 nor a negative integer")
            if self.c <= 0:
                raise DomainError(f"c must be > 0, got {self.c}")
            # negative integer orders are evaluated through their reflection
            order = abs(self.nu) if _is_negative_integer(self.nu) else self.nu
            shifted_order, shifted_c = order, self.c
        if self.rho == 0 and shifted_c + shifted_order <= 0:
            raise DomainError("c + nu must be > 0 when rho = 0")

    @classmethod
    def unified(cls, b: float, c: float, nu: float, rho: float = 0.0) -> "FamilyParams":
        return cls(Family.UnifiedG, b, c, nu, rho)

    @classmethod
    def bessel_j(cls, c: float, nu: float, rho: float = 0.0) -> "FamilyParams":
        return cls(Family.GenBesselJ, None, c, nu, rho)

    @classmethod
    def modified_i(cls, c: float, nu: float, rho: float = 0.0) -> "FamilyParams":
        return cls(Family.GenModifiedI, None, c, nu, rho)

    @classmethod
    def spherical(cls, b: float, c: float, nu: float, rho: float = 0.0) -> "FamilyParams":
        return cls(Family.SphericalG, b, c, nu, rho)

    @classmethod
    def clifford(cls, b: float, lam: float, nu: float, rho: float = 0.0) -> "FamilyParams":
        return cls(Family.CliffordC, b, lam, nu, rho)

    def replace(self, **changes) -> "FamilyParams":
        fields = dict(family=self.family, b=self.b, c=self.c, nu=self.nu, rho=self.rho)
        fields.update(changes)
        return FamilyParams(**fields)


def reflect_negative_order(params: FamilyParams) -> tuple[FamilyParams, float, int]:
    """Map a negative integer order onto the positive one.

    Returns ``(positive_params, multiplier, power_of_z)`` such that the
    function at ``params`` equals ``multiplier * z**power_of_z`` times the
    function at ``positive_params``.  The z-power is non-zero only for the
    Bessel-Clifford family.

    Examples
    --------
    >>> reflect_negative_order(FamilyParams.bessel_j(1.0, -1))[1:]
    (-1.0, 0)
    """
    if params.family == Family.SphericalG:
        raise DomainError("no reflection law for the spherical family")
    if not _is_negative_integer(params.nu):
        raise DomainError(f"reflection needs a negative integer order, got {params.nu}")
    n = int(-params.nu)
    multiplier = (-params.b) ** n
    power = n if params.family == Family.CliffordC else 0
    return params.replace(nu=float(n)), float(multiplier), power


def _g_coefficient_ratio(b: float, c: float, nu: float, rho: float) -> tuple[RatioFactory, bool]:
    """Ratio a_{k+1}/a_k of the z-power coefficients of G_ν^{(b,c)}(z;ρ).

    a_{k+1}/a_k = -b R_k / [4 (ν+k+1)(ν+2k+1)(ν+2k+2)(k+1)], where
    R_k = Γ_ρ(c+ν+2k+2)/Γ_ρ(c+ν+2k).
    """
    x0 = c + nu
    if rho == 0:
        def factory(num):
            nb, nx, nn = num(b), num(x0), num(nu)

            def ratio(k):
                two_k = 2 * k
                r_k = (nx + two_k) * (nx + two_k + 1)
                return -nb * r_k / (4 * (nn + k + 1) * (nn + two_k + 1) * (nn + two_k + 2) * (k + 1))

            return ratio

        return factory, True

    steps = RatioSequence(x0, rho)

    def factory(num):
        nb, nn = num(b), num(nu)

        def ratio(k):
            two_k = 2 * k
            r_k = num(steps[two_k]) * num(steps[two_k + 1])
            return -nb * r_k / (4 * (nn + k + 1) * (nn + two_k + 1) * (nn + two_k + 2) * (k + 1))

        return ratio

    return factory, False


def _g_lead(c: float, nu: float, rho: float) -> float:
    """Coefficient of z^ν in G: (c;ρ)_ν / (2^ν Γ(ν+1)²)."""
    return gen_pochhammer(c, rho, nu) / (2.0 ** nu * gamma(nu + 1.0) ** 2)


@dataclass(frozen=True)
class PowerSeries:
    """f(z) = lead · Σ_k (Π_{j<k} ratio(j)) z^{power + step·k}.

    ``ratio_factory(num)`` returns the coefficient ratio a_{k+1}/a_k in the
    numeric type ``num``; ``exact`` says whether that ratio is exact in
    decimal arithmetic.
    """

    lead: float
    power: float
    step: int
    ratio_factory: RatioFactory
    exact: bool

    def exponent(self, k: int) -> float:
        return self.power + self.step * k

    def evaluate(self, z: float, derivative: int = 0, rel_tol: float = 1e-13,
                 what: str = "series") -> SeriesValue:
        """Value of the ``derivative``-th z-derivative, summed term-wise."""
        d = int(derivative)
        if d < 0:
            raise DomainError("derivative order must be >= 0")
        z = float(z)
        if z < 0:
            raise DomainError(f"z must be >= 0, got {z}")

        def falling(e: float) -> float:
            out = 1.0
            for j in range(d):
                out *= e - j
            return out

        # Leading monomials that the derivative annihilates, or nearly
        # annihilates, are taken out of the ratio chain: the latter are
        # added back as separate head terms.
        coeff_ratio = self.ratio_factory(float)
        k0, lead = 0, self.lead
        heads: list[tuple[float, float]] = []
        while k0 <= d + 1:
            e = self.exponent(k0)
            f = falling(e)
            if f != 0.0 and abs(f) >= 1e-6 * abs(falling(e + self.step)):
                break
            if f != 0.0:
                heads.append((lead * f, e - d))
            lead *= float(coeff_ratio(k0))
            k0 += 1
        if z == 0.0 and any(c != 0.0 and p < 0 for c, p in heads):
            raise DomainError("derivative is singular at z = 0")
        head_value = math.fsum(c * z ** p for c, p in heads) if z else 0.0
        if lead == 0.0:
            return SeriesValue(head_value, k0, 0.0, True, 0.0, "closed")
        e0 = self.exponent(k0)
        if z == 0.0:
            if e0 - d > 0:
                return SeriesValue(0.0, 1, 0.0, True, 0.0, "closed")
            if e0 - d < 0:
                raise DomainError("derivative is singular at z = 0")
            return SeriesValue(lead * falling(e0), 1, 0.0, True, 0.0, "closed")

        step, power, factory = self.step, self.power, self.ratio_factory

        def shifted(num):
            base = factory(num)
            zs = num(z) ** step

            def ratio(k):
                kk = k + k0
                r = base(kk) * zs
                if d:
                    e_now = num(power) + step * kk
                    e_next = e_now + step
                    for j in range(d):
                        r = r * (e_next - j) / (e_now - j)
                return r

            return ratio

        scale = lead * falling(e0) * z ** (e0 - d)
        out = sum_ratio_series(shifted, rel_tol, lead=scale, exact=self.exact, what=what)
        if heads:
            out = replace(out, value=out.value + head_value)
        return out


def power_series(params: FamilyParams) -> PowerSeries:
    """The power series in z representing ``params``'s family member."""
    multiplier, extra_power = 1.0, 0
    if params.family != Family.SphericalG and _is_negative_integer(params.nu):
        params, multiplier, extra_power = reflect_negative_order(params)
    b, c, nu, rho = params.b, params.c, params.nu, params.rho
    if params.family in _G_TYPE:
        factory, exact = _g_coefficient_ratio(b, c, nu, rho)
        return PowerSeries(multiplier * _g_lead(c, nu, rho), nu, 2, factory, exact)
    if params.family == Family.SphericalG:
        # √(π/2z) · z^{ν+1/2+2k} = √(π/2) · z^{ν+2k}
        order, c_shift = nu + 0.5, c - 0.5
        factory, exact = _g_coefficient_ratio(b, c_shift, order, rho)
        lead = math.sqrt(math.pi / 2.0) * _g_lead(c_shift, order, rho)
        return PowerSeries(lead, nu, 2, factory, exact)
    # Clifford: z^{-ν/2} · (2√z)^{ν+2k} = 2^{ν+2k} z^k
    g_factory, exact = _g_coefficient_ratio(b, c, nu, rho)

    def factory(num):
        base = g_factory(num)
        return lambda k: 4 * base(k)

    lead = multiplier * _g_lead(c, nu, rho) * 2.0 ** nu
    return PowerSeries(lead, float(extra_power), 1, factory, exact)


def evaluate(params: FamilyParams, z: float, rel_tol: float = 1e-13,
             derivative: int = 0) -> SeriesValue:
    """Evaluate a family member (or one of its z-derivatives) at ``z``.

    Parameters
    ----------
    params : FamilyParams
        Family and parameters.  Negative integer orders are reduced by the
        reflection law.
    z : float
        Argument, ``z >= 0``; the spherical family needs ``z > 0``.  For the
        Bessel-Clifford family this is the Clifford argument itself.
    rel_tol : float
        Relative truncation target.
    derivative : int
        Order of the z-derivative (0 for the function value).

    Raises
    ------
    DomainError
        Outside the family's domain.
    NotConverged
        If the series cannot be summed to the requested accuracy.

    Examples
    --------
    >>> round(evaluate(FamilyParams.unified(1, 1, 0), 1.0).value, 10)
    0.7651976866
    """
    if params.family == Family.SphericalG and not z > 0:
        raise DomainError("the spherical family needs z > 0")
    series = power_series(params)
    return series.evaluate(z, derivative, rel_tol, what=f"{params.family.value} series")


def dz_series(params: FamilyParams, z: float, order: int = 1, rel_tol: float = 1e-13) -> float:
    """``order``-th z-derivative (0 ≤ order ≤ 4) by term-wise differentiation."""
    if not 0 <= int(order) <= 4:
        raise DomainError("derivative order must be between 0 and 4")
    return evaluate(params, z, rel_tol, derivative=int(order)).value


def bessel_oracle(nu: float, z: float) -> float:
    """Classical J_ν(z) from its own ascending series, summed in decimal.

    Independent of :func:`evaluate`; used as a cross-check and as the
    J_{μ+j} factor of :func:`neumann_expansion`.

    Raises
    ------
    NotConverged
        For ``z > 40``, outside the supported envelope.
    """
    nu, z = float(nu), float(z)
    if nu <= -1:
        raise DomainError(f"order must exceed -1, got {nu}")
    if z < 0:
        raise DomainError("z must be >= 0")
    if z > ORACLE_ENVELOPE:
        raise NotConverged(f"bessel_oracle supports 0 <= z <= {ORACLE_ENVELOPE:g}")
    if z == 0:
        return 1.0 if nu == 0 else 0.0
    with localcontext() as ctx:
        ctx.prec = 34 + int(0.4343 * z) + 4
        q = Decimal(z) * Decimal(z) / 4
        dn = Decimal(nu)
        term = Decimal(1)
        total = Decimal(1)
        limit = Decimal(10) ** -(ctx.prec - 2)
        k = 0
        while True:
            k += 1
            term = -term * q / (k * (dn + k))
            total += term
            if abs(term) <= limit * abs(total) and k > q.sqrt():
                break
        series = float(total)
    return series * math.exp(nu * math.log(z / 2.0) - math.lgamma(nu + 1.0))


def neumann_expansion(params: FamilyParams, mu: float, z: float, m_max: int = 40,
                      n_max: int = 20, rel_tol: float = 1e-8) -> SeriesValue:
    """Expansion of G in Bessel functions J_{μ+j}(z), truncated to m ≤ m_max, n ≤ n_max.

    The (m, n) term is

        Γ(μ+1)/Γ(ν+1)² · (z/2)^{ν-μ+m+n} J_{μ+m+n}(z) (-m-n)_n b^n (c;ρ)_{ν+2n} (μ+1)_n
        / [(m+n)! n! (ν+1)_n (ν+1)_{2n}].

    ``tail_estimate`` is the summed magnitude of the outermost shell
    (m = m_max or n = n_max).
    """
    if params.family not in _G_TYPE:
        raise DomainError("the Bessel-series expansion is defined for the G, J and I families")
    b, c, nu, rho = params.b, params.c, params.nu, params.rho
    mu, z = float(mu), float(z)
    if nu <= -1 or mu <= -1:
        raise DomainError("nu and mu must exceed -1")
    if mu == nu:
        raise DomainError("mu must differ from nu")
    if z < 0:
        raise DomainError("z must be >= 0")
    if z == 0:
        if nu - mu > 0:
            return SeriesValue(0.0, 1, 0.0, True, 0.0, "closed")
        raise DomainError("z = 0 requires nu > mu")
    jvals = [bessel_oracle(mu + j, z) for j in range(m_max + n_max + 1)]
    prefactor = gamma(mu + 1.0) / gamma(nu + 1.0) ** 2
    half = z / 2.0
    # (c;ρ)_{ν+2n} through the Γ_ρ ratio ladder
    if rho == 0:
        poch_steps = None
    else:
        poch_steps = RatioSequence(c + nu, rho)
    poch = gen_pochhammer(c, rho, nu)
    terms, shell = [], []
    for n in range(n_max + 1):
        if n:
            x = c + nu + 2 * n - 2
            if poch_steps is None:
                poch *= x * (x + 1)
            else:
                poch *= poch_steps[2 * n - 2] * poch_steps[2 * n - 1]
        n_factor = ((-b) ** n * poch * pochhammer(mu + 1.0, n)
                    / (math.factorial(n) * pochhammer(nu + 1.0, n) * pochhammer(nu + 1.0, 2 * n)))
        for m in range(m_max + 1):
            j = m + n
            t = (prefactor * n_factor / math.factorial(m)
                 * half ** (nu - mu + j) * jvals[j])
            terms.append(t)
            if m == m_max or n == n_max:
                shell.append(abs(t))
    value = math.fsum(terms)
    tail = math.fsum(shell)
    converged = tail <= rel_tol * max(1.0, abs(value))
    out = SeriesValue(value, len(terms), tail, converged, 0.0, "direct")
    if not converged:
        raise NotConverged("Bessel-series expansion has not converged at this truncation",
                           partial=out)
    return out
