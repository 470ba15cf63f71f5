"""Gaussian relay network with an orthogonal source-to-relay link.

The source splits its power between ``X_D`` (heard by the destination) and
``X_R`` (heard only by the relay).  The relay transmits ``X_r`` with power
``gamma * P``; ``rho`` is the correlation between ``X_r`` and ``X_D``.
The equivocation region is a union over the power split ``v`` and ``rho``,
both in [0, 1].  Its secrecy capacity equals ``C(P/N)`` whatever the
relay-to-destination gain: the relay is of no help here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (DomainError, GridSpec, RatePoint, RateRegion, awgn_capacity,
                   capacity, region_from_arrays, resolution_of)

DEFAULT_GRID = 256


@dataclass(frozen=True)
class GaussianModel1Params:
    a: float
    b: float
    gamma: float
    p_total: float
    noise: float = 1.0

    def __post_init__(self):
        vals = (self.a, self.b, self.gamma, self.p_total, self.noise)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("model 1 parameters must be finite")
        if self.gamma < 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if self.p_total <= 0:
            raise DomainError(f"p_total must be > 0, got {self.p_total}")
        if self.noise <= 0:
            raise DomainError(f"noise must be > 0, got {self.noise}")

    @property
    def snr(self) -> float:
        return self.p_total / self.noise


@dataclass(frozen=True)
class Model1Split:
    v: float
    rho: float

    def __post_init__(self):
        if not (0.0 <= self.v <= 1.0):
            raise DomainError(f"v must lie in [0, 1], got {self.v}")
        if not (0.0 <= self.rho <= 1.0):
            raise DomainError(f"rho must lie in [0, 1], got {self.rho}")


def _bounds(params: GaussianModel1Params, v, rho):
    """(r1, re) arrays for broadcastable v, rho."""
    snr = params.snr
    b, g = params.b, params.gamma
    mac = capacity((v + b * b * g + 2.0 * b * rho * np.sqrt(v * g)) * snr)
    private = capacity(v * (1.0 - rho * rho) * snr)
    relay_path = capacity(params.a ** 2 * (1.0 - v) * snr)
    r1 = np.minimum(mac, relay_path + private)
    re = np.minimum(private, r1)
    return r1, re


def model1_point(params: GaussianModel1Params, split: Model1Split) -> RatePoint:
    """Corner point of the region for one (v, rho)."""
    snr = params.snr
    v, rho = split.v, split.rho
    b, g = params.b, params.gamma
    mac = awgn_capacity((v + b * b * g + 2.0 * b * rho * math.sqrt(v * g)) * snr)
    private = awgn_capacity(v * (1.0 - rho * rho) * snr)
    r1 = min(mac, awgn_capacity(params.a ** 2 * (1.0 - v) * snr) + private)
    return RatePoint(r1, min(private, r1))


def _grid(res: int):
    axis = np.arange(res + 1) / res
    v, rho = np.meshgrid(axis, axis, indexing="ij")
    return v.ravel(), rho.ravel()


def model1_region(params: GaussianModel1Params,
                  grid: GridSpec | int = DEFAULT_GRID) -> RateRegion:
    """Pareto region over the uniform (v, rho) grid; provenance is ``(v, rho)``."""
    res = resolution_of(grid)
    v, rho = _grid(res)
    r1, re = _bounds(params, v, rho)
    return region_from_arrays(r1, re, lambda i: (float(v[i]), float(rho[i])))


def model1_optimum(params: GaussianModel1Params,
                   grid: GridSpec | int = DEFAULT_GRID) -> tuple[float, float, float]:
    """``(capacity, v, rho)`` at the first grid maximiser of the secrecy rate."""
    res = resolution_of(grid)
    v, rho = _grid(res)
    _, re = _bounds(params, v, rho)
    i = int(np.argmax(re))
    return float(re[i]), float(v[i]), float(rho[i])


def model1_secrecy_capacity(params: GaussianModel1Params,
                            grid: GridSpec | int = DEFAULT_GRID) -> float:
    """Grid maximum of min(Re bound, R1 bound).

    Accurate to O(1/resolution); the grid always contains v=1, rho=0 where
    the continuous optimum C(P/N) is attained.
    """
    return model1_optimum(params, grid)[0]
