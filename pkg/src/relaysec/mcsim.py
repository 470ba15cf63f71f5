"""Monte-Carlo check of the amplify-and-forward equivalent wiretap channel.

Samples are drawn in fixed-size partitions.  Partition ``k`` uses a Philox
generator (counter-based, numpy's ``np.random.Philox``) keyed by
``SeedSequence([seed, k])``, and per-partition moment sums are combined with
``math.fsum``.  The report therefore depends only on ``(config, seed)``, not
on how many workers evaluate the partitions.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import DomainError, EstimationError
from .model2 import GaussianModel2Params, af_gain, af_rate

PRNG_ALGORITHM = "Philox-4x64"
PARTITION_SIZE = 1 << 16

# sample vector layout
_X, _YD, _YR, _YRELAY, _XR = range(5)


@dataclass(frozen=True)
class SimConfig:
    params: GaussianModel2Params
    p: float
    n_samples: int
    seed: int = 0

    def __post_init__(self):
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise DomainError(f"n_samples must be a positive integer, got {self.n_samples}")
        if not (0.0 < self.p <= self.params.p_max):
            raise DomainError(f"p must lie in (0, {self.params.p_max}], got {self.p}")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise DomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimReport:
    xi_hat: float
    relay_power_hat: float
    re_hat: float
    n_samples: int
    seed: int
    xi_formula: float
    re_formula: float  # unclamped formula value


def _generator(seed: int, partition: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, partition])))


def _partition_moments(config: SimConfig, k: int):
    n = min(PARTITION_SIZE, config.n_samples - k * PARTITION_SIZE)
    rng = _generator(int(config.seed), k)
    a, b = config.params.a, config.params.b
    beta = float(af_gain(config.params, config.p))
    x = rng.normal(0.0, math.sqrt(config.p), n)
    z_r, z_d, z_R = rng.standard_normal((3, n))
    y_relay = a * x + z_r
    x_r = beta * y_relay            # one-sample relaying delay omitted
    y_R = b * x_r + z_R
    y_d = x + z_d
    s = np.stack([x, y_d, y_R, y_relay, x_r])
    return n, s.sum(axis=1), s @ s.T


def _gaussian_mi(cov: np.ndarray, a: list[int], b: list[int]) -> float:
    """I(A; B) in bits for jointly Gaussian variables with covariance ``cov``."""
    def logdet(idx):
        sign, val = np.linalg.slogdet(cov[np.ix_(idx, idx)])
        if sign <= 0 or not np.isfinite(val):
            raise EstimationError("sample covariance is singular; increase n_samples")
        return val
    return 0.5 * (logdet(a) + logdet(b) - logdet(a + b)) / math.log(2.0)


def af_simulate(config: SimConfig, workers: int = 1) -> SimReport:
    """Estimate the AF relay-path SNR factor, relay power and secrecy rate."""
    n_parts = -(-config.n_samples // PARTITION_SIZE)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda k: _partition_moments(config, k), range(n_parts)))
    else:
        parts = [_partition_moments(config, k) for k in range(n_parts)]

    n = sum(p[0] for p in parts)
    if n < 6:
        raise EstimationError(f"need at least 6 samples for a covariance estimate, got {n}")
    sums = np.array([math.fsum(p[1][i] for p in parts) for i in range(5)])
    cross = np.array([[math.fsum(p[2][i, j] for p in parts) for j in range(5)]
                      for i in range(5)])
    mean = sums / n
    cov = (cross - n * np.outer(mean, mean)) / (n - 1)

    mi_dest = _gaussian_mi(cov, [_X], [_YD, _YR])
    mi_relay = _gaussian_mi(cov, [_X], [_YRELAY])
    snr_total = 2.0 ** (2.0 * mi_dest) - 1.0
    p = config.p
    exact = af_rate(config.params, p)
    return SimReport(
        xi_hat=(snr_total - p) / p,
        relay_power_hat=cross[_XR, _XR] / n,
        re_hat=mi_dest - mi_relay,
        n_samples=int(config.n_samples),
        seed=int(config.seed),
        xi_formula=exact.xi,
        re_formula=exact.re_unclamped,
    )
