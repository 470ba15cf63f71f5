"""Gaussian relay network with an orthogonal relay-to-destination link.

    Y_D = X + Z_D,   Y_r = a X + Z_r,   Y_R = b X_r + Z_R

with unit-variance independent noises, source power ``p <= P`` and relay
power ``P_r``.  The relay (which is also the eavesdropper) either
compresses-and-forwards with Wyner-Ziv quantisation noise ``sigma_q2`` or
amplifies-and-forwards with gain ``beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import (DomainError, GridSpec, awgn_capacity, capacity, clamp_plus,
                   resolution_of)

DEFAULT_GRID = 1024


@dataclass(frozen=True)
class GaussianModel2Params:
    a: float
    b: float
    p_max: float
    p_relay: float

    def __post_init__(self):
        vals = (self.a, self.b, self.p_max, self.p_relay)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("model 2 parameters must be finite")
        if self.p_max <= 0:
            raise DomainError(f"p_max must be > 0, got {self.p_max}")
        if self.p_relay <= 0:
            raise DomainError(f"p_relay must be > 0, got {self.p_relay}")


@dataclass(frozen=True)
class CfEvaluation:
    p: float
    sigma_q2: float
    r1_bound: float
    re_bound: float
    re_unclamped: float  # r1_bound - C(a^2 p), may be negative


@dataclass(frozen=True)
class AfEvaluation:
    p: float
    beta: float
    xi: float
    re_bound: float
    re_unclamped: float


class PowerSweepRow(NamedTuple):
    p: float
    cf_re: float
    af_re: float


class BSweepRow(NamedTuple):
    b: float
    cf_re_star: float
    af_re_star: float
    upper_bound: float


def _check_power(params: GaussianModel2Params, p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= params.p_max):
        raise DomainError(f"p must lie in [0, {params.p_max}], got {p}")
    return p


def _power_grid(params: GaussianModel2Params, grid) -> np.ndarray:
    res = resolution_of(grid)
    p = params.p_max * np.arange(res + 1) / res
    p[-1] = params.p_max
    return p


def quantization_noise(params: GaussianModel2Params, p):
    """Smallest Wyner-Ziv quantisation noise the relay link can carry."""
    a2, b2 = params.a ** 2, params.b ** 2
    return ((a2 + 1.0) * p + 1.0) / (b2 * params.p_relay * (p + 1.0))


def cf_effective_snr(params: GaussianModel2Params, p):
    """Destination SNR ``p + a^2 p / (1 + sigma_q2)`` under compress-and-forward."""
    return p + params.a ** 2 * p / (1.0 + quantization_noise(params, p))


def cf_rate(params: GaussianModel2Params, p: float) -> CfEvaluation:
    p = _check_power(params, p)
    if params.b == 0:
        raise DomainError("relay link absent (b = 0): quantisation noise is unbounded")
    sq = quantization_noise(params, p)
    r1 = awgn_capacity(p + params.a ** 2 * p / (1.0 + sq))
    raw = r1 - awgn_capacity(params.a ** 2 * p)
    return CfEvaluation(p, sq, r1, clamp_plus(raw), raw)


def af_gain(params: GaussianModel2Params, p):
    """beta = sqrt(P_r / (a^2 p + 1)), which meets the relay power exactly."""
    return np.sqrt(params.p_relay) / np.sqrt(params.a ** 2 * p + 1.0)


def af_xi(params: GaussianModel2Params, p):
    bb2 = af_gain(params, p) ** 2 * params.b ** 2
    return params.a ** 2 * bb2 / (1.0 + bb2)


def af_rate(params: GaussianModel2Params, p: float) -> AfEvaluation:
    p = _check_power(params, p)
    beta = float(af_gain(params, p))
    xi = float(af_xi(params, p))
    raw = 0.5 * math.log2(1.0 + (1.0 + xi) * p) - 0.5 * math.log2(1.0 + params.a ** 2 * p)
    return AfEvaluation(p, beta, xi, clamp_plus(raw), raw)


def cf_curve(params: GaussianModel2Params, p: np.ndarray) -> np.ndarray:
    """Unclamped CF secrecy rate over an array of source powers."""
    if params.b == 0:
        raise DomainError("relay link absent (b = 0): quantisation noise is unbounded")
    return capacity(cf_effective_snr(params, p)) - capacity(params.a ** 2 * p)


def af_curve(params: GaussianModel2Params, p: np.ndarray) -> np.ndarray:
    """Unclamped AF secrecy rate over an array of source powers."""
    return capacity((1.0 + af_xi(params, p)) * p) - capacity(params.a ** 2 * p)


def _argmax(p, rate):
    # np.argmax returns the first maximiser, i.e. the smallest p
    rate = np.maximum(rate, 0.0)
    i = int(np.argmax(rate))
    return float(p[i]), float(rate[i])


def cf_optimize(params: GaussianModel2Params,
                grid: GridSpec | int = DEFAULT_GRID) -> tuple[float, float]:
    """``(p_star, re_star)`` maximising the clamped CF rate on ``{0, P/res, ..., P}``."""
    p = _power_grid(params, grid)
    return _argmax(p, cf_curve(params, p))


def af_optimize(params: GaussianModel2Params,
                grid: GridSpec | int = DEFAULT_GRID) -> tuple[float, float]:
    p = _power_grid(params, grid)
    return _argmax(p, af_curve(params, p))


def model2_upper_bound(params: GaussianModel2Params) -> float:
    """Upper bound on the secrecy rate.

    min{ C(b^2 P_r) + [C(P) - C(a^2 P)]^+,  C(P / (1 + a^2 P)) }

    The first term charges the relay link at its own capacity C(b^2 P_r).
    """
    P, a2, b2 = params.p_max, params.a ** 2, params.b ** 2
    relay_term = awgn_capacity(b2 * params.p_relay) + clamp_plus(
        awgn_capacity(P) - awgn_capacity(a2 * P))
    return min(relay_term, awgn_capacity(P / (1.0 + a2 * P)))


def power_sweep(params: GaussianModel2Params,
                grid: GridSpec | int = DEFAULT_GRID) -> list[PowerSweepRow]:
    """Clamped CF and AF secrecy rates at every grid power."""
    p = _power_grid(params, grid)
    cf = np.maximum(cf_curve(params, p), 0.0)
    af = np.maximum(af_curve(params, p), 0.0)
    return [PowerSweepRow(float(x), float(c), float(f)) for x, c, f in zip(p, cf, af)]


def b_sweep(a: float, p_max: float, p_relay: float, b_values: Sequence[float],
            grid: GridSpec | int = DEFAULT_GRID) -> list[BSweepRow]:
    rows = []
    for b in sorted(float(x) for x in b_values):
        if b <= 0:
            raise DomainError(f"b values must be positive, got {b}")
        params = GaussianModel2Params(a, b, p_max, p_relay)
        rows.append(BSweepRow(b, cf_optimize(params, grid)[1],
                              af_optimize(params, grid)[1],
                              model2_upper_bound(params)))
    return rows
