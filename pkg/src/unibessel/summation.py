"""Summation of power-type series given by their term ratios.

A series is described by a *ratio factory*: ``factory(num)`` returns a
function ``k -> t_{k+1}/t_k`` computed in the numeric type ``num`` (either
``float`` or ``decimal.Decimal``).  Series whose ratios are rational in exact
binary inputs can be re-summed in decimal arithmetic when float summation
loses too many digits to cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from typing import Callable, Sequence

from .errors import NotConverged

RatioFactory = Callable[[type], Callable[[int], object]]

EPS = 2.220446049250313e-16
MAX_TERMS = 1000
# A value whose estimated rounding error exceeds this fraction of
# max(1, |value|) is reported as not converged.
ACCURACY_FLOOR = 1e-8
_SLOW_CHECK = 60
_MAX_DECIMAL_DIGITS = 120


@dataclass(frozen=True)
class SeriesValue:
    """A series-evaluated value with its truncation diagnostics.

    ``tail_estimate`` bounds the omitted tail in absolute terms;
    ``rounding_estimate`` bounds the accumulated floating-point error.
    ``method`` records how the sum was obtained: ``"direct"``, ``"decimal"``
    (re-summed in extended precision), ``"levin"`` (Levin u-transform of a
    slowly convergent or boundary alternating series) or ``"closed"``.
    """

    value: float
    terms_used: int
    tail_estimate: float
    converged: bool
    rounding_estimate: float = 0.0
    method: str = "direct"

    def __float__(self) -> float:
        return self.value

    def scaled(self, factor: float) -> "SeriesValue":
        a = abs(factor)
        return replace(self, value=self.value * factor, tail_estimate=self.tail_estimate * a,
                       rounding_estimate=self.rounding_estimate * a)


class CompensatedSum:
    """Neumaier's improved Kahan summation."""

    __slots__ = ("total", "carry")

    def __init__(self):
        self.total = 0.0
        self.carry = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.carry += (self.total - t) + x
        else:
            self.carry += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.carry


def levin_u(terms: Sequence[float], max_order: int = 40) -> tuple[float, float, int]:
    """Levin u-transform of the partial sums of ``terms``.

    Returns ``(estimate, error, order)`` where ``error`` is the smallest
    difference between consecutive transform orders and ``estimate`` is the
    transform at that order.
    """
    partial = []
    acc = CompensatedSum()
    for a in terms:
        acc.add(a)
        partial.append(acc.value)
    best = (math.nan, math.inf, 0)
    prev = None
    top = min(len(terms) - 1, max_order)
    for k in range(1, top + 1):
        num = den = 0.0
        for j in range(k + 1):
            a = terms[j]
            if a == 0:
                return best
            w = (j + 1.0) * a
            c = (-1) ** j * math.comb(k, j) * ((j + 1.0) / (k + 1.0)) ** (k - 1)
            num += c * partial[j] / w
            den += c / w
        est = num / den
        if prev is not None and math.isfinite(est):
            diff = abs(est - prev)
            if diff < best[1]:
                best = (est, diff, k)
        prev = est
    return best


def _is_alternating(terms: Sequence[float], window: int = 10) -> bool:
    tail = terms[-window:]
    if len(tail) < window:
        return False
    return all(a * b < 0 for a, b in zip(tail, tail[1:]))


def _tail_bound(next_term: float, next_ratio: float) -> float:
    r = abs(next_ratio)
    if r < 0.9:
        return abs(next_term) / (1.0 - r)
    return 10.0 * abs(next_term)


def _sum_decimal(factory: RatioFactory, rel_tol: float, digits: int, max_terms: int):
    with localcontext() as ctx:
        ctx.prec = digits
        ratio = factory(Decimal)
        tol = Decimal(repr(rel_tol))
        t = Decimal(1)
        s = Decimal(0)
        abs_sum = Decimal(0)
        small = 0
        for k in range(max_terms):
            s += t
            abs_sum += abs(t)
            small = small + 1 if abs(t) <= tol * abs(s) else 0
            r = ratio(k)
            t_next = t * r
            if r == 0 or (small >= 3 and abs(t_next) <= tol * abs(s)):
                return float(s), k + 1, float(abs(t_next)), float(abs_sum) * 10.0 ** (-digits)
            t = t_next
    return None


def sum_ratio_series(
    factory: RatioFactory,
    rel_tol: float = 1e-13,
    *,
    lead: float = 1.0,
    exact: bool = False,
    max_terms: int = MAX_TERMS,
    allow_levin: bool = True,
    what: str = "series",
) -> SeriesValue:
    """Sum ``lead * Σ_k t_k`` with ``t_0 = 1`` and ``t_{k+1} = t_k * ratio(k)``.

    Parameters
    ----------
    factory : callable
        ``factory(num)`` returns the ratio function in numeric type ``num``.
    rel_tol : float
        Stop once three consecutive terms, and the next one, are at most
        ``rel_tol`` times the partial sum.
    lead : float
        Multiplier applied to the normalised sum.
    exact : bool
        Whether the ratio function is exact in decimal arithmetic, which
        permits an extended-precision re-sum after heavy cancellation.
    allow_levin : bool
        Whether a slowly convergent alternating series with term ratio
        tending to modulus one may be summed by the Levin u-transform.

    Raises
    ------
    NotConverged
        When none of the summation routes reaches the target.  The exception
        carries the best partial result as ``partial``.
    """
    ratio = factory(float)
    acc = CompensatedSum()
    abs_sum = 0.0
    terms: list[float] = []
    t = 1.0
    small = 0
    growth_run = 0
    prev_abs_ratio = 0.0
    state = "capped"
    tail = math.inf
    for k in range(max_terms):
        if not math.isfinite(t):
            state = "overflow"
            break
        terms.append(t)
        acc.add(t)
        abs_sum += abs(t)
        s = acc.value
        small = small + 1 if abs(t) <= rel_tol * abs(s) else 0
        r = float(ratio(k))
        t_next = t * r
        if r == 0:
            tail, state = 0.0, "done"
            break
        if small >= 3:
            tail = _tail_bound(t_next, float(ratio(k + 1)))
            if tail <= rel_tol * abs(s):
                state = "done"
                break
        ar = abs(r)
        growth_run = growth_run + 1 if (ar >= 1.0 and ar >= prev_abs_ratio) else 0
        prev_abs_ratio = ar
        if growth_run >= 5 and ar > 1.0:
            state = "diverging"
            break
        if (allow_levin and k + 1 == _SLOW_CHECK and 0.5 < ar <= 1.0
                and _is_alternating(terms)):
            state = "slow"
            break
        t = t_next

    n = len(terms)
    s = acc.value
    if state == "done":
        rounding = 4.0 * EPS * abs_sum * math.sqrt(n)
        method = "direct"
        if exact and rounding > 0.5 * rel_tol * abs(s):
            scale = abs_sum / abs(s) if s != 0 else 10.0 ** _MAX_DECIMAL_DIGITS
            digits = min(_MAX_DECIMAL_DIGITS, 23 + int(math.ceil(math.log10(max(scale, 1.0)))))
            redo = _sum_decimal(factory, rel_tol, digits, max_terms)
            if redo is not None:
                s, n, tail, rounding = redo
                method = "decimal"
        converged = rounding <= ACCURACY_FLOOR * max(1.0, abs(s))
        out = SeriesValue(s, n, tail, converged, rounding, method).scaled(lead)
        if not converged:
            raise NotConverged(f"{what}: cancellation leaves too few correct digits", partial=out)
        return out

    if allow_levin and state in ("slow", "capped") and _is_alternating(terms):
        if state == "slow":
            while len(terms) < 2 * _SLOW_CHECK:
                terms.append(terms[-1] * float(ratio(len(terms) - 1)))
        est, err, order = levin_u(terms)
        if math.isfinite(est) and err <= max(rel_tol, 4 * EPS) * max(abs(est), 1e-300) * 10:
            err = max(err, 4 * EPS * abs(est))
            return SeriesValue(est, order + 1, err, True, 0.0, "levin").scaled(lead)
        if state == "slow":
            return sum_ratio_series(factory, rel_tol, lead=lead, exact=exact,
                                    max_terms=max_terms, allow_levin=False, what=what)
        partial = SeriesValue(est, order + 1, err, False, 0.0, "levin").scaled(lead)
        raise NotConverged(f"{what}: Levin transform did not settle", partial=partial)

    partial = SeriesValue(s, n, abs(t), False, 0.0, "direct").scaled(lead)
    reason = {"diverging": "terms grow geometrically", "overflow": "terms overflow",
              "capped": f"not converged after {max_terms} terms",
              "slow": "slowly convergent and not alternating"}[state]
    raise NotConverged(f"{what}: {reason}", partial=partial)
