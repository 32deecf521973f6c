"""Scalar building blocks: Euler Gamma, the extended Gamma Γ_ρ, and the
classical and generalized Pochhammer symbols.

The extended Gamma is

    Γ_ρ(x) = ∫₀^∞ t^{x-1} exp(-t - ρ/t) dt,

which reduces to Γ(x) at ρ = 0.  For ρ > 0 the substitution t → ρ/t gives
Γ_ρ(-x) = ρ^{-x} Γ_ρ(x), and integration by parts gives the three-term
relation Γ_ρ(x+1) = x Γ_ρ(x) + ρ Γ_ρ(x-1).  Written for the ratio
r(x) = Γ_ρ(x+1)/Γ_ρ(x) this is r(x) = x + ρ/r(x-1), a forward-stable map
because Γ_ρ grows like the dominant solution.  Quadrature is therefore only
used on a unit-width base interval; everything else is reached by the
ratio map.
"""

from __future__ import annotations

import math
import struct
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Hashable

import numpy as np

from .errors import DomainError, PoleError, QuadratureFailure
from .quadrature import QuadratureOpts, integrate_semi_infinite, integrate_unit

__all__ = [
    "ExtGammaArgs",
    "GenPochArgs",
    "GammaCache",
    "gamma",
    "extended_gamma",
    "extended_gamma_ratios",
    "pochhammer",
    "gen_pochhammer",
]

_BASE_LOW = 0.5  # ratio ladders start from a base point in [0.5, 1.5)
_QUAD_OPTS = QuadratureOpts(abs_tol=1e-15, rel_tol=1e-14, max_evals=20_000)
_EXT_GAMMA_TOL = 1e-10
_LOG_DROP = 45.0  # integrand cut where it falls below e^-45 of its peak


@dataclass(frozen=True)
class ExtGammaArgs:
    """Argument pair (x, ρ) of the extended Gamma function."""

    x: float
    rho: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.rho)):
            raise DomainError("x and rho must be finite")
        if self.rho < 0:
            raise DomainError(f"rho must be >= 0, got {self.rho}")
        if self.rho == 0 and self.x <= 0:
            raise DomainError(f"x must be > 0 when rho = 0, got {self.x}")


@dataclass(frozen=True)
class GenPochArgs:
    """Arguments (λ, ρ, ν) of the generalized Pochhammer symbol (λ;ρ)_ν."""

    lam: float
    rho: float
    nu: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.lam, self.rho, self.nu)):
            raise DomainError("lambda, rho and nu must be finite")
        if self.lam <= 0:
            raise DomainError(f"lambda must be > 0, got {self.lam}")
        if self.rho < 0:
            raise DomainError(f"rho must be >= 0, got {self.rho}")
        if self.rho == 0 and self.lam + self.nu <= 0:
            raise DomainError("lambda + nu must be > 0 when rho = 0")


class GammaCache:
    """Thread-safe bounded memo table with least-recently-used eviction.

    Keys are the IEEE-754 bit patterns of the float arguments, so ``0.0`` and
    ``-0.0`` are distinct and a hit always returns the exact object that was
    stored.
    """

    def __init__(self, maxsize: int = 1 << 16):
        self.maxsize = maxsize
        self._data: OrderedDict[Hashable, object] = OrderedDict()
        self._lock = threading.RLock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(*floats: float) -> bytes:
        return struct.pack(f"<{len(floats)}d", *floats)

    def get_or_compute(self, key: Hashable, compute: Callable[[], object]) -> object:
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                self.hits += 1
                return self._data[key]
        value = compute()
        with self._lock:
            self.misses += 1
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)
        return value

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0


GAMMA_CACHE = GammaCache()


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Euler's Gamma function for real ``x``.

    Negative non-integer arguments go through Γ(x)Γ(1-x) = π/sin(πx).

    Raises
    ------
    PoleError
        If ``x`` is 0 or a negative integer.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x > 0:
        return math.gamma(x)
    # sin(pi x) with argument reduction keeps accuracy for large |x|
    return math.pi / (_sin_pi(x) * math.gamma(1.0 - x))


def _sin_pi(x: float) -> float:
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _ext_gamma_quadrature(x: float, rho: float) -> tuple[float, float]:
    """Γ_ρ(x) for ρ > 0 and x ≥ 0 straight from the defining integral, as a
    pair ``(m, e)`` with Γ_ρ(x) = m·exp(e).

    In s = log t the log-integrand x·s - eˢ - ρe⁻ˢ is concave with a single
    peak, so it is scaled by its peak value and integrated between the points
    where it has dropped by ``_LOG_DROP`` on either side.
    """
    s_peak = math.log(0.5 * (x + math.sqrt(x * x + 4.0 * rho)))
    log_rho = math.log(rho)

    def log_f(s: float) -> float:
        return x * s - math.exp(s) - math.exp(log_rho - s)

    log_peak = log_f(s_peak)

    def edge(direction: float) -> float:
        step = 1.0
        while log_f(s_peak + direction * step) > log_peak - _LOG_DROP:
            step *= 2.0
        return s_peak + direction * step

    def scaled(lo: float, hi: float):
        width = hi - lo

        def f(u: np.ndarray) -> np.ndarray:
            s = lo + width * u
            with np.errstate(over="ignore", under="ignore"):
                return width * np.exp(x * s - np.exp(s) - np.exp(log_rho - s) - log_peak)

        return f

    left = integrate_unit(scaled(edge(-1.0), s_peak), _QUAD_OPTS)
    right = integrate_unit(scaled(s_peak, edge(1.0)), _QUAD_OPTS)
    total = left.value + right.value
    err = left.error_estimate + right.error_estimate
    if not math.isfinite(total) or err > _EXT_GAMMA_TOL * max(abs(total), 1e-300):
        raise QuadratureFailure(
            f"extended Gamma quadrature missed its target at x={x}, rho={rho} "
            f"(estimate {err:.3g} for value {total:.6g})"
        )
    return total, log_peak


def _quadrature_pair(x: float, rho: float) -> tuple[float, float]:
    key = ("value", GammaCache.key(x, rho))
    return GAMMA_CACHE.get_or_compute(key, lambda: _ext_gamma_quadrature(x, rho))


def _quadrature_value(x: float, rho: float) -> float:
    m, e = _quadrature_pair(x, rho)
    return m * math.exp(e)


def _ext_gamma_pair(x: float, rho: float) -> tuple[float, float]:
    """Γ_ρ(x) as ``(m, e)`` with value m·exp(e), for ρ > 0 and any real x."""
    if x < 0:
        m, e = _ext_gamma_pair(-x, rho)
        return m, e + x * math.log(rho)
    if x < _BASE_LOW + 1.0:
        return _quadrature_pair(x, rho)
    steps = int(math.floor(x - _BASE_LOW))
    base = x - steps
    m, e = _quadrature_pair(base, rho)
    for r in extended_gamma_ratios(base, rho, steps):
        m *= r
        if m > 1e280:
            m, e = m * 1e-280, e + 280.0 * math.log(10.0)
    return m, e


def _ext_gamma_positive_rho(x: float, rho: float) -> float:
    m, e = _ext_gamma_pair(x, rho)
    return m * math.exp(e)


def extended_gamma(x: float, rho: float = 0.0) -> float:
    """Extended Gamma function Γ_ρ(x).

    Parameters
    ----------
    x : float
        Real argument; must be positive when ``rho == 0``.
    rho : float
        Extension parameter, ``rho >= 0``.

    Returns
    -------
    float
        Γ_ρ(x); exactly ``gamma(x)`` when ``rho == 0``.

    Raises
    ------
    DomainError
        For ``rho < 0`` or ``rho == 0`` with ``x <= 0``.
    QuadratureFailure
        When the base-interval quadrature misses its error target.

    Examples
    --------
    >>> extended_gamma(3.0, 0.0)
    2.0
    """
    args = ExtGammaArgs(float(x), float(rho))
    if args.rho == 0:
        return gamma(args.x)
    return _ext_gamma_positive_rho(args.x, args.rho)


def _ratio_ladder(base: float, rho: float, count: int) -> list[float]:
    """r(base + j) for j < count, with r(x) = Γ_ρ(x+1)/Γ_ρ(x)."""
    key = ("ladder", GammaCache.key(base, rho))
    ladder = GAMMA_CACHE.get_or_compute(key, lambda: [])
    # Ladders only grow, and every element is a deterministic function of its
    # predecessor, so concurrent extensions agree element by element.
    if len(ladder) < count:
        with GAMMA_CACHE._lock:
            if not ladder:
                m1, e1 = _quadrature_pair(base + 1.0, rho)
                m0, e0 = _quadrature_pair(base, rho)
                ladder.append(m1 / m0 * math.exp(e1 - e0))
            while len(ladder) < count:
                j = len(ladder)
                ladder.append((base + j) + rho / ladder[-1])
    return ladder[:count]


def extended_gamma_ratios(x: float, rho: float, count: int) -> list[float]:
    """Consecutive ratios Γ_ρ(x+j+1)/Γ_ρ(x+j) for j = 0 … count-1.

    Never forms Γ_ρ itself for large arguments, so it cannot overflow.
    For ``rho == 0`` the ratios are exactly ``x + j``.
    """
    x, rho = float(x), float(rho)
    if count <= 0:
        return []
    if rho == 0:
        if x <= 0:
            raise DomainError("x must be > 0 when rho = 0")
        return [x + j for j in range(count)]
    if x < _BASE_LOW:
        m1, e1 = _ext_gamma_pair(x + 1.0, rho)
        m0, e0 = _ext_gamma_pair(x, rho)
        head = m1 / m0 * math.exp(e1 - e0)
        return [head] + extended_gamma_ratios(x + 1.0, rho, count - 1)
    steps = int(math.floor(x - _BASE_LOW))
    base = x - steps
    return _ratio_ladder(base, rho, steps + count)[steps:]


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial (α)_n = α(α+1)…(α+n-1), with (α)_0 = 1.

    Examples
    --------
    >>> pochhammer(2, 3)
    24.0
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    alpha = float(alpha)
    if n == 0:
        return 1.0
    if n > 32 and alpha > 0 and alpha + n < 170:
        return math.gamma(alpha + n) / math.gamma(alpha)
    out = 1.0
    for j in range(n):
        out *= alpha + j
    return out


def _gamma_ratio(a: float, b: float) -> float:
    """Γ(a)/Γ(b) for a, b > 0 without intermediate overflow."""
    if a < 170 and b < 170:
        return math.gamma(a) / math.gamma(b)
    return math.exp(math.lgamma(a) - math.lgamma(b))


def gen_pochhammer(lam: float, rho: float, nu: float) -> float:
    """Generalized Pochhammer symbol (λ;ρ)_ν = Γ_ρ(λ+ν)/Γ(λ).

    At ``rho == 0`` this is the classical (λ)_ν for real ν.

    Examples
    --------
    >>> gen_pochhammer(2.0, 0.0, 3.0)
    24.0
    """
    args = GenPochArgs(float(lam), float(rho), float(nu))
    if args.rho == 0:
        if args.nu == int(args.nu) and 0 <= args.nu <= 32:
            return pochhammer(args.lam, int(args.nu))
        return _gamma_ratio(args.lam + args.nu, args.lam)
    return extended_gamma(args.lam + args.nu, args.rho) / gamma(args.lam)


class RatioSequence:
    """Lazily extended list of Γ_ρ(x+j+1)/Γ_ρ(x+j), indexable by j."""

    __slots__ = ("x", "rho", "_items")

    def __init__(self, x: float, rho: float):
        self.x = float(x)
        self.rho = float(rho)
        self._items: list[float] = []

    def __getitem__(self, j: int) -> float:
        if j >= len(self._items):
            want = max(2 * len(self._items), j + 1, 32)
            self._items = extended_gamma_ratios(self.x, self.rho, want)
        return self._items[j]
