"""Generalized hypergeometric series pFq and the extended confluent series
with a generalized-Pochhammer numerator."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, NotConverged
from .special import RatioSequence, gamma, gen_pochhammer
from .summation import MAX_TERMS, SeriesValue, sum_ratio_series

__all__ = ["PfqArgs", "SeriesValue", "pfq", "hyp", "pfq_extended", "pfq_array"]


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


@dataclass(frozen=True)
class PfqArgs:
    """Parameters and argument of pFq(a_1..a_p; b_1..b_q; z)."""

    numerator: tuple[float, ...]
    denominator: tuple[float, ...]
    z: float

    def __init__(self, numerator: Sequence[float], denominator: Sequence[float], z: float):
        object.__setattr__(self, "numerator", tuple(float(a) for a in numerator))
        object.__setattr__(self, "denominator", tuple(float(b) for b in denominator))
        object.__setattr__(self, "z", float(z))
        self._validate()

    @property
    def terminating(self) -> bool:
        return any(_is_nonpositive_integer(a) for a in self.numerator)

    def _validate(self) -> None:
        vals = self.numerator + self.denominator + (self.z,)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("pFq parameters and argument must be finite")
        for b in self.denominator:
            if _is_nonpositive_integer(b):
                raise DomainError(f"denominator parameter {b} is a non-positive integer")
        p, q = len(self.numerator), len(self.denominator)
        if p <= q or self.terminating:
            return
        if p == q + 1 and abs(self.z) <= 1:
            return
        raise DomainError(f"{p}F{q} series diverges at z={self.z}")


def _pfq_factory(a: tuple[float, ...], b: tuple[float, ...], z: float):
    def factory(num):
        an = [num(x) for x in a]
        bn = [num(x) for x in b]
        zn = num(z)

        def ratio(k):
            r = zn
            for x in an:
                r = r * (x + k)
            for x in bn:
                r = r / (x + k)
            return r / (k + 1)

        return ratio

    return factory


def pfq(args: PfqArgs, rel_tol: float = 1e-14) -> SeriesValue:
    """Sum the pFq series by its term ratio.

    ``p = q + 1`` is accepted for ``|z| < 1``, at ``z = -1`` (summed with
    convergence acceleration when slow) and, for 2F1 with c-a-b > 0, at
    ``z = 1`` through Gauss's closed form.

    Examples
    --------
    >>> pfq(PfqArgs([], [1.0], 0.0)).value
    1.0
    """
    a, b, z = args.numerator, args.denominator, args.z
    if len(a) == len(b) + 1 and z == 1.0 and not args.terminating:
        if len(a) == 2:
            c = b[0]
            excess = c - a[0] - a[1]
            if excess > 0:
                value = gamma(c) * gamma(excess) / (gamma(c - a[0]) * gamma(c - a[1]))
                return SeriesValue(value, 0, 0.0, True, 0.0, "closed")
        raise NotConverged(f"{len(a)}F{len(b)} series does not converge at z=1")
    name = f"{len(a)}F{len(b)}"
    return sum_ratio_series(_pfq_factory(a, b, z), rel_tol, exact=True, what=name)


def hyp(numerator: Sequence[float], denominator: Sequence[float], z: float,
        rel_tol: float = 1e-14) -> float:
    """Value of pFq as a float; raises ``NotConverged`` on failure."""
    return pfq(PfqArgs(numerator, denominator, z), rel_tol).value


def pfq_extended(a0: float, rho: float, b_list: Sequence[float], z: float,
                 rel_tol: float = 1e-14) -> SeriesValue:
    """Extended series Σ_n (a0;ρ)_n / Π_j (b_j)_n · z^n / n!.

    With a single denominator this is the extended confluent function
    1F1[(a0;ρ); b; z]; at ``rho == 0`` it is the ordinary pFq.
    """
    a0, rho, z = float(a0), float(rho), float(z)
    if a0 <= 0:
        raise DomainError("a0 must be > 0")
    if rho < 0:
        raise DomainError("rho must be >= 0")
    b = tuple(float(x) for x in b_list)
    if not b:
        raise DomainError("b_list must be non-empty")
    for x in b:
        if _is_nonpositive_integer(x):
            raise DomainError(f"denominator parameter {x} is a non-positive integer")
    lead = gen_pochhammer(a0, rho, 0.0)
    if rho == 0:
        return sum_ratio_series(_pfq_factory((a0,), b, z), rel_tol, lead=lead,
                                exact=True, what="extended 1Fq")
    steps = RatioSequence(a0, rho)

    def factory(num):
        zn = num(z)
        bn = [num(x) for x in b]

        def ratio(k):
            r = zn * num(steps[k])
            for x in bn:
                r = r / (x + k)
            return r / (k + 1)

        return ratio

    return sum_ratio_series(factory, rel_tol, lead=lead, what="extended 1Fq")


def pfq_array(numerator: Sequence[float], denominator: Sequence[float], z: np.ndarray,
              rel_tol: float = 1e-15, max_terms: int = MAX_TERMS) -> np.ndarray:
    """Vectorised pFq for ``p <= q`` over an array of arguments.

    Entries that fail to converge within ``max_terms`` are returned as NaN.
    Intended for quadrature integrands; no extended-precision fallback.
    """
    if len(numerator) > len(denominator):
        raise DomainError("pfq_array supports p <= q only")
    for x in denominator:
        if _is_nonpositive_integer(x):
            raise DomainError(f"denominator parameter {x} is a non-positive integer")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    carry = np.zeros_like(z)
    small = np.zeros(z.shape, dtype=int)
    active = np.ones(z.shape, dtype=bool)
    for k in range(max_terms):
        r = 1.0 / (k + 1)
        for a in numerator:
            r *= a + k
        for b in denominator:
            r /= b + k
        term = term * (r * z)
        # Neumaier compensated update
        t = total + term
        big = np.abs(total) >= np.abs(term)
        carry += np.where(big, (total - t) + term, (term - t) + total)
        total = t
        s = total + carry
        small = np.where(np.abs(term) <= rel_tol * np.abs(s), small + 1, 0)
        active &= small < 3
        if not active.any():
            return total + carry
        if r == 0:
            return total + carry
    out = total + carry
    out[active] = np.nan
    return out
