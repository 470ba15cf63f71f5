"""Gaussian Cover-Kim deterministic relay channel.

    Y_D = X + Z,   Y_r = alpha X - Z

plus a noiseless relay-to-destination link of rate ``r0``.  The noises are
perfectly anticorrelated, which lets the secrecy rate exceed the direct
link capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .core import DomainError, awgn_capacity, clamp_plus


@dataclass(frozen=True)
class CoverKimParams:
    alpha: float
    p_max: float
    r0: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.alpha, self.p_max, self.r0)):
            raise DomainError("Cover-Kim parameters must be finite")
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.p_max <= 0:
            raise DomainError(f"p_max must be > 0, got {self.p_max}")
        if self.r0 < 0:
            raise DomainError(f"r0 must be >= 0, got {self.r0}")


class CoverKimRow(NamedTuple):
    alpha: float
    achievable: float
    upper: float


def _direct_advantage(params: CoverKimParams) -> float:
    return awgn_capacity(params.p_max) - awgn_capacity(params.alpha ** 2 * params.p_max)


def ck_achievable(params: CoverKimParams) -> float:
    """[R0 + C(P) - C(alpha^2 P)]^+"""
    return clamp_plus(params.r0 + _direct_advantage(params))


def ck_upper(params: CoverKimParams) -> float:
    """R0 + [C(P) - C(alpha^2 P)]^+"""
    return params.r0 + clamp_plus(_direct_advantage(params))


def ck_capacity(params: CoverKimParams) -> Optional[float]:
    """Secrecy capacity when known (alpha <= 1), else ``None``.

    For alpha > 1 only the achievable rate and the upper bound are known.
    """
    if params.alpha <= 1.0:
        return params.r0 + _direct_advantage(params)
    return None


def ck_curve(p_max: float, r0: float, alpha_values: Sequence[float]) -> list[CoverKimRow]:
    rows = []
    for alpha in alpha_values:
        params = CoverKimParams(float(alpha), p_max, r0)
        rows.append(CoverKimRow(params.alpha, ck_achievable(params), ck_upper(params)))
    return rows
