"""Shared scalar primitives and rate-region containers.

All rates are in bits per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

PARETO_TOL = 1e-12


class DomainError(ValueError):
    """A numeric argument lies outside the domain of the formula."""


class StructuralError(ValueError):
    """Shapes, alphabets or variable groups are inconsistent."""


class SearchSpaceError(RuntimeError):
    """An exhaustive enumeration would exceed the evaluation budget."""

    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(
            f"search space has {count} evaluations, limit is {limit}")


class EstimationError(RuntimeError):
    """A sample-based estimate cannot be formed (e.g. singular covariance)."""


def _finite(x, name="value"):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


def awgn_capacity(snr: float) -> float:
    """C(snr) = 1/2 log2(1 + snr) for a scalar, nonnegative SNR."""
    snr = _finite(snr, "snr")
    if snr < 0:
        raise DomainError(f"snr must be nonnegative, got {snr}")
    return 0.5 * math.log2(1.0 + snr)


def capacity(snr):
    """Vectorised C(.) without domain checks, for internal grid evaluation."""
    return 0.5 * np.log2(1.0 + np.asarray(snr, dtype=float))


def clamp_plus(x: float) -> float:
    x = _finite(x, "x")
    return x if x > 0.0 else 0.0


@dataclass(frozen=True)
class RatePoint:
    """A corner point (R1, Re) of an equivocation region."""

    r1: float
    re: float

    def __post_init__(self):
        for name in ("r1", "re"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class RateRegion:
    """Pareto-nondominated rate points, ascending in r1.

    ``provenance[i]`` holds whatever generated ``points[i]`` (grid
    parameters, an enumeration index, a distribution triple...).
    """

    points: tuple[RatePoint, ...] = ()
    provenance: tuple[Any, ...] = ()

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def max_re(self) -> float:
        return max((pt.re for pt in self.points), default=0.0)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        r1 = np.array([pt.r1 for pt in self.points], dtype=float)
        re = np.array([pt.re for pt in self.points], dtype=float)
        return r1, re

    def dominates(self, other: "RateRegion", tol: float = PARETO_TOL) -> bool:
        """True if every point of ``other`` is weakly dominated by a point here."""
        r1, re = self.as_arrays()
        if len(other) and not len(self):
            return False
        for pt in other.points:
            if not np.any((r1 >= pt.r1 - tol) & (re >= pt.re - tol)):
                return False
        return True


@dataclass(frozen=True)
class GridSpec:
    resolution: int = field(default=256)

    def __post_init__(self):
        if int(self.resolution) != self.resolution or self.resolution < 2:
            raise DomainError(
                f"grid resolution must be an integer >= 2, got {self.resolution}")


def resolution_of(grid: GridSpec | int) -> int:
    if isinstance(grid, GridSpec):
        return int(grid.resolution)
    return GridSpec(int(grid)).resolution


def pareto_front(r1: np.ndarray, re: np.ndarray, tol: float = PARETO_TOL) -> np.ndarray:
    """Indices of the nondominated pairs, in generation order.

    Among (near-)equal pairs the lowest index survives.
    """
    r1 = np.asarray(r1, dtype=float)
    re = np.asarray(re, dtype=float)
    n = r1.size
    if n == 0:
        return np.zeros(0, dtype=np.intp)
    idx = np.arange(n)
    # bucket at the tolerance so near-ties fall back to generation order
    order = np.lexsort((idx, -np.round(re / tol), -np.round(r1 / tol)))
    re_sorted = re[order]
    best_before = np.maximum.accumulate(re_sorted)
    best_before = np.concatenate(([-np.inf], best_before[:-1]))
    keep = re_sorted > best_before + tol
    return np.sort(order[keep])


def pareto_reduce(points: Iterable[RatePoint] | RateRegion,
                  provenance: Sequence[Any] | None = None) -> RateRegion:
    """Drop dominated points and sort ascending in r1 (ties: smaller re first)."""
    if isinstance(points, RateRegion):
        provenance = points.provenance
        points = points.points
    points = list(points)
    if provenance is None:
        provenance = [None] * len(points)
    provenance = list(provenance)
    if len(provenance) != len(points):
        raise StructuralError("provenance must align with points")
    if not points:
        return RateRegion()
    r1 = np.array([pt.r1 for pt in points])
    re = np.array([pt.re for pt in points])
    keep = pareto_front(r1, re)
    keep = sorted(keep, key=lambda i: (r1[i], re[i], i))
    return RateRegion(tuple(points[i] for i in keep),
                      tuple(provenance[i] for i in keep))


def region_from_arrays(r1: np.ndarray, re: np.ndarray, provenance_of) -> RateRegion:
    """Pareto-reduce raw arrays, building provenance only for the survivors.

    ``provenance_of(i)`` maps a flat generation index to its provenance.
    """
    keep = pareto_front(r1, re)
    keep = sorted(keep, key=lambda i: (r1[i], re[i], i))
    pts = tuple(RatePoint(float(r1[i]), float(re[i])) for i in keep)
    return RateRegion(pts, tuple(provenance_of(int(i)) for i in keep))
