"""Generalized Kaiser window and window-method FIR lowpass design."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import FamilyParams, evaluate
from .errors import DomainError

__all__ = ["WindowSpec", "Window", "FilterSpec", "kaiser_general", "rectangular_window",
           "fir_lowpass", "freq_response", "DB_FLOOR"]

DB_FLOOR = -300.0


@dataclass(frozen=True)
class WindowSpec:
    """Length ``N``, shape ``alpha`` and the generalization parameters
    ``c`` and ``rho`` of the window."""

    N: int
    alpha: float
    c: float = 1.0
    rho: float = 0.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"window length must be an integer >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        for name in ("alpha", "c", "rho"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.c <= 0:
            raise DomainError(f"c must be > 0, got {self.c}")
        if self.rho < 0:
            raise DomainError(f"rho must be >= 0, got {self.rho}")


@dataclass(frozen=True)
class Window:
    coefficients: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.coefficients)

    def as_array(self) -> np.ndarray:
        return np.array(self.coefficients)


@dataclass(frozen=True)
class FilterSpec:
    taps: tuple[float, ...]
    cutoff: float


def kaiser_general(spec: WindowSpec) -> Window:
    """w_n = I₀^{(c)}(πα√(1-(2n/(N-1)-1)²); ρ) / I₀^{(c)}(πα; ρ).

    I₀^{(c)} is the generalized modified Bessel function of order zero.  Half
    the coefficients are computed and mirrored, so the window is exactly
    symmetric.  At c = 1, ρ = 0 this is the classical Kaiser window.  For odd
    N the centre coefficient is exactly 1; for even N the two central
    coefficients are equal and are the maximum.

    Raises
    ------
    NotConverged
        If I₀^{(c)} cannot be summed at πα.
    """
    n_len = spec.N
    params = FamilyParams.modified_i(spec.c, 0.0, spec.rho)
    arg = math.pi * spec.alpha
    denom = evaluate(params, arg).value
    half = (n_len + 1) // 2
    coeffs = [0.0] * n_len
    for n in range(half):
        x = 2.0 * n / (n_len - 1) - 1.0
        if 2 * n == n_len - 1:
            w = 1.0
        else:
            w = evaluate(params, arg * math.sqrt(1.0 - x * x)).value / denom
        coeffs[n] = coeffs[n_len - 1 - n] = w
    return Window(tuple(coeffs))


def rectangular_window(n_len: int) -> Window:
    if int(n_len) != n_len or n_len < 1:
        raise DomainError("window length must be a positive integer")
    return Window((1.0,) * int(n_len))


def fir_lowpass(num_taps: int, cutoff: float, window: Window) -> FilterSpec:
    """Type-I linear-phase lowpass by the window method, unit DC gain.

    ``cutoff`` is in cycles per sample, 0 < cutoff < 0.5.
    """
    if int(num_taps) != num_taps or num_taps < 1 or num_taps % 2 == 0:
        raise DomainError(f"num_taps must be a positive odd integer, got {num_taps}")
    if not 0.0 < cutoff < 0.5:
        raise DomainError(f"cutoff must lie in (0, 0.5), got {cutoff}")
    if len(window) != num_taps:
        raise DomainError(f"window length {len(window)} differs from num_taps {num_taps}")
    num_taps = int(num_taps)
    mid = (num_taps - 1) // 2
    taps = [0.0] * num_taps
    for n in range(mid + 1):
        ideal = 2.0 * cutoff * float(np.sinc(2.0 * cutoff * (n - mid)))
        taps[n] = taps[num_taps - 1 - n] = ideal * window.coefficients[n]
    gain = math.fsum(taps)
    return FilterSpec(tuple(t / gain for t in taps), float(cutoff))


def freq_response(filt: FilterSpec, n_points: int) -> list[tuple[float, float]]:
    """Magnitude response in dB on ``n_points`` uniform frequencies in
    [0, 0.5], floored at ``DB_FLOOR``."""
    if int(n_points) != n_points or n_points < 8:
        raise DomainError("n_points must be an integer >= 8")
    freqs = np.linspace(0.0, 0.5, int(n_points))
    k = np.arange(len(filt.taps))
    phase = 2.0 * np.pi * np.outer(freqs, k)
    taps = np.asarray(filt.taps)
    re = np.cos(phase) @ taps
    im = -(np.sin(phase) @ taps)
    mag = np.hypot(re, im)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag)
    db = np.maximum(db, DB_FLOOR)
    return [(float(f), float(d)) for f, d in zip(freqs, db)]
