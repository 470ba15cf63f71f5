"""Independent reference computations used by the tests.

Nothing here imports relaysec: Gaussian quantities come from log-determinants
of explicitly constructed covariance matrices, discrete quantities from plain
dictionary enumeration over outcomes.
"""

import itertools
import math
from collections import defaultdict

import numpy as np


def h2(p):
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def gaussian_mi(cov, a, b, c=()):
    """I(A; B | C) in bits for a Gaussian vector with covariance ``cov``."""
    a, b, c = list(a), list(b), list(c)

    def logdet(idx):
        if not idx:
            return 0.0
        return np.linalg.slogdet(cov[np.ix_(idx, idx)])[1]

    return 0.5 * (logdet(a + c) + logdet(b + c) - logdet(a + b + c) - logdet(c)) / math.log(2)


def linear_cov(rows, variances):
    m = np.array(rows, dtype=float)
    return m @ np.diag(variances) @ m.T


def model1_gaussian(a, b, gamma, P, N, v, rho):
    """(I(XD,Xr;Y), I(XR;Yr|Xr), I(XD;Y|Xr)) for the jointly Gaussian inputs
    Var Xr = gamma P, Var XD = v P, Var XR = (1-v) P, E[Xr XD] = rho P sqrt(v gamma)."""
    # sources: U, S, T (unit), Z1, Z (variance N)
    xr = np.array([math.sqrt(gamma * P), 0, 0, 0, 0])
    xd = np.array([rho * math.sqrt(v * P), math.sqrt(v * (1 - rho ** 2) * P), 0, 0, 0])
    xR = np.array([0, 0, math.sqrt((1 - v) * P), 0, 0])
    y = b * xr + xd + np.array([0, 0, 0, 0, 1.0])
    yr = a * xR + np.array([0, 0, 0, 1.0, 0])
    cov = linear_cov([xr, xd, xR, y, yr], [1, 1, 1, N, N])
    return gaussian_mi(cov, [1, 0], [3]), gaussian_mi(cov, [2], [4], [0]), gaussian_mi(cov, [1], [3], [0])


def model2_cf_gaussian(a, b, P_r, p, sigma_q2):
    """Terms of the compress-and-forward rate for Gaussian inputs and Yh = Yr + Zq."""
    #        X  Xr Zd Zr ZR Zq
    rows = [[1, 0, 0, 0, 0, 0],      # X
            [0, 1, 0, 0, 0, 0],      # Xr
            [1, 0, 1, 0, 0, 0],      # YD
            [a, 0, 0, 1, 0, 0],      # Yr
            [0, b, 0, 0, 1, 0],      # YR
            [a, 0, 0, 1, 0, 1]]      # Yh
    cov = linear_cov(rows, [p, P_r, 1, 1, 1, sigma_q2])
    X, Xr, YD, Yr, YR, Yh = range(6)
    return {
        "r1": gaussian_mi(cov, [X], [YD, Yh], [Xr, YR]),
        "leak": gaussian_mi(cov, [X], [Yr], [Xr]),
        "relay_rate": gaussian_mi(cov, [Xr], [YR]),
        "compression": gaussian_mi(cov, [Yh], [Yr], [YD, YR, Xr]),
    }


def model2_af_gaussian(a, b, P_r, p):
    """(secrecy rate, relay-path SNR factor) of the AF equivalent wiretap channel."""
    beta = math.sqrt(P_r / (a * a * p + 1))
    #        X  Zd Zr ZR
    rows = [[1, 0, 0, 0],
            [1, 1, 0, 0],                    # YD
            [b * beta * a, 0, b * beta, 1],  # YR
            [a, 0, 1, 0]]                    # Yr
    cov = linear_cov(rows, [p, 1, 1, 1])
    dest = gaussian_mi(cov, [0], [1, 2])
    return dest - gaussian_mi(cov, [0], [3]), (2 ** (2 * dest) - 1 - p) / p


class Enumerated:
    """A discrete joint distribution stored as {outcome tuple: probability}."""

    def __init__(self, names, probs):
        self.names = tuple(names)
        self.probs = dict(probs)

    def marginal(self, keep):
        pos = [self.names.index(k) for k in keep]
        out = defaultdict(float)
        for outcome, pr in self.probs.items():
            out[tuple(outcome[i] for i in pos)] += pr
        return out

    def entropy(self, keep):
        if not keep:
            return 0.0
        return -sum(p * math.log2(p) for p in self.marginal(keep).values() if p > 0)

    def mi(self, a, b, c=()):
        a, b, c = list(a), list(b), list(c)
        return (self.entropy(a + c) + self.entropy(b + c)
                - self.entropy(a + b + c) - self.entropy(c))


def enumerate_relay(transition, px, pxr, quantizer):
    """Joint over (X, Xr, Y, Yr, Yh) by looping over every outcome."""
    nx, nxr, ny, nyr = np.shape(transition)
    nyh = np.shape(quantizer)[2]
    probs = {}
    for x, xr, y, yr, yh in itertools.product(range(nx), range(nxr), range(ny),
                                              range(nyr), range(nyh)):
        pr = px[x] * pxr[xr] * transition[x][xr][y][yr] * quantizer[yr][xr][yh]
        if pr > 0:
            probs[(x, xr, y, yr, yh)] = pr
    return Enumerated(("X", "Xr", "Y", "Yr", "Yh"), probs)


def thm1_enumerated(transition, px, pxr, quantizer, tol=1e-9):
    j = enumerate_relay(transition, px, pxr, quantizer)
    if j.mi(["Xr"], ["Y"]) < j.mi(["Yh"], ["Yr"], ["Y", "Xr"]) - tol:
        return None
    r1 = j.mi(["X"], ["Y", "Yh"], ["Xr"])
    return r1, max(r1 - j.mi(["X"], ["Yr"], ["Xr"]), 0.0)


def simplex_points(k, res):
    for c in itertools.product(range(res + 1), repeat=k):
        if sum(c) == res:
            yield tuple(ci / res for ci in c)
