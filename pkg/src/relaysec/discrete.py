"""Exact finite-alphabet evaluation of the relay secrecy rate expressions.

Joint distributions are dense ``numpy`` tables with one named axis per
random variable.  ``mutual_info`` works on any such table; the rate
evaluators build the appropriate joint and query it.  ``thm1_search``
enumerates input distributions and quantisers on rational simplex grids.

Variable labels used throughout:

``X``   source input          ``Xr``  relay input
``Y``   destination output    ``Yr``  relay output
``Yh``  relay quantisation (compressed ``Yr``)

Model 1 adds ``XD``/``XR`` (source inputs towards destination/relay), and
Model 2 splits ``Y`` into ``YD`` (direct link) and ``YR`` (relay link).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from scipy.special import entr

from .core import (RatePoint, RateRegion, SearchSpaceError, StructuralError,
                   pareto_front, region_from_arrays, resolution_of)

STOCHASTIC_TOL = 1e-12
JOINT_TOL = 1e-10
FEASIBILITY_TOL = 1e-9
FACTORIZATION_TOL = 1e-9
MAX_EVALUATIONS = 10 ** 8


def _as_pmf(values, shape=None, name="pmf", axis=-1) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if shape is not None and arr.shape != tuple(shape):
        raise StructuralError(f"{name} has shape {arr.shape}, expected {tuple(shape)}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise StructuralError(f"{name} must be finite and nonnegative")
    sums = arr.sum(axis=axis)
    if np.any(np.abs(sums - 1.0) > STOCHASTIC_TOL):
        raise StructuralError(f"{name} does not sum to 1 along axis {axis} "
                              f"(worst deviation {np.max(np.abs(sums - 1.0)):.3g})")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteRelayChannel:
    """``transition[x, xr, y, yr] = p(y, yr | x, xr)``."""

    transition: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.transition, dtype=float)
        if t.ndim != 4:
            raise StructuralError("transition must be a 4-d table p(y, yr | x, xr)")
        flat = t.reshape(t.shape[0], t.shape[1], -1)
        object.__setattr__(self, "transition",
                           _as_pmf(flat, name="transition").reshape(t.shape))

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return self.transition.shape  # (|X|, |Xr|, |Y|, |Yr|)

    @classmethod
    def from_functions(cls, sizes, law) -> "DiscreteRelayChannel":
        """Build from ``law(x, xr) -> {(y, yr): prob}``."""
        t = np.zeros(sizes)
        for x in range(sizes[0]):
            for xr in range(sizes[1]):
                for (y, yr), pr in law(x, xr).items():
                    t[x, xr, y, yr] += pr
        return cls(t)


@dataclass(frozen=True, eq=False)
class DistributionTriple:
    """Input pmfs and relay quantiser ``quantizer[yr, xr, yh] = p(yh | yr, xr)``."""

    px: np.ndarray
    pxr: np.ndarray
    quantizer: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "px", _as_pmf(self.px, name="px"))
        object.__setattr__(self, "pxr", _as_pmf(self.pxr, name="pxr"))
        q = np.asarray(self.quantizer, dtype=float)
        if q.ndim != 3:
            raise StructuralError("quantizer must be a 3-d table p(yh | yr, xr)")
        object.__setattr__(self, "quantizer", _as_pmf(q, name="quantizer"))

    @classmethod
    def constant_quantizer(cls, px, pxr, yr_size: int) -> "DistributionTriple":
        """Triple whose quantiser output carries no information (no compression)."""
        return cls(px, pxr, np.ones((yr_size, len(pxr), 1)))

    @classmethod
    def identity_quantizer(cls, px, pxr, yr_size: int) -> "DistributionTriple":
        q = np.zeros((yr_size, len(pxr), yr_size))
        for yr in range(yr_size):
            q[yr, :, yr] = 1.0
        return cls(px, pxr, q)


@dataclass(frozen=True, eq=False)
class JointPmf:
    table: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.ndim != len(self.labels) or len(set(self.labels)) != len(self.labels):
            raise StructuralError("one distinct label per axis required")
        if np.any(t < 0) or abs(t.sum() - 1.0) > JOINT_TOL:
            raise StructuralError("joint table must be nonnegative and sum to 1")
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "labels", tuple(self.labels))

    def axis(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructuralError(f"unknown variable {label!r}; have {self.labels}") from None

    def marginal(self, keep: Iterable[str]) -> np.ndarray:
        """Marginal table with axes in the order given by ``keep``."""
        keep = list(keep)
        axes = [self.axis(k) for k in keep]
        drop = tuple(i for i in range(self.table.ndim) if i not in axes)
        m = self.table.sum(axis=drop)
        remaining = [i for i in range(self.table.ndim) if i in axes]
        return np.transpose(m, [remaining.index(a) for a in axes])


def _group(g) -> tuple[str, ...]:
    if g is None:
        return ()
    if isinstance(g, str):
        return (g,)
    return tuple(g)


def mutual_info(joint: JointPmf, group_a, group_b, given=()) -> float:
    """I(A; B | C) in bits, exactly, from a dense joint table.

    Groups are a label or an iterable of labels.  Summation uses
    ``p(a,b,c) log2(p(a,b,c) p(c) / (p(a,c) p(b,c)))`` over the support,
    with the logarithm split so subnormal cells cannot underflow.
    """
    a, b, c = _group(group_a), _group(group_b), _group(given)
    if not a or not b:
        raise StructuralError("both mutual-information groups must be non-empty")
    if set(a) & set(b) or set(a) & set(c) or set(b) & set(c):
        raise StructuralError(f"variable groups overlap: {a} / {b} / {c}")
    pabc = joint.marginal(a + b + c)
    na, nb = len(a), len(b)
    pac = pabc.sum(axis=tuple(range(na, na + nb)), keepdims=True)
    pbc = pabc.sum(axis=tuple(range(na)), keepdims=True)
    pc = pac.sum(axis=tuple(range(na)), keepdims=True)
    pac, pbc, pc = (np.broadcast_to(t, pabc.shape) for t in (pac, pbc, pc))
    s = pabc > 0
    # marginals of a positive cell are positive
    assert np.all(pac[s] > 0) and np.all(pbc[s] > 0)
    # sum of logs: products of tiny cells would underflow
    ratio = (np.log2(pabc[s]) + np.log2(pc[s])) - (np.log2(pac[s]) + np.log2(pbc[s]))
    val = float(np.sum(pabc[s] * ratio))
    if val < -1e-12:
        raise ArithmeticError(f"mutual information evaluated to {val}")
    return max(val, 0.0)


def build_joint(channel: DiscreteRelayChannel, triple: DistributionTriple) -> JointPmf:
    """p(x) p(xr) p(y, yr | x, xr) p(yh | yr, xr) over (X, Xr, Y, Yr, Yh)."""
    nx, nxr, ny, nyr = channel.sizes
    if triple.px.shape != (nx,) or triple.pxr.shape != (nxr,):
        raise StructuralError("input pmf sizes do not match the channel alphabets")
    if triple.quantizer.shape[:2] != (nyr, nxr):
        raise StructuralError(
            f"quantizer must be indexed (yr, xr, yh) with sizes ({nyr}, {nxr}, .)")
    t = np.einsum("i,j,ijkl,ljm->ijklm", triple.px, triple.pxr,
                  channel.transition, triple.quantizer)
    return JointPmf(t, ("X", "Xr", "Y", "Yr", "Yh"))


def thm1_point(channel: DiscreteRelayChannel,
               triple: DistributionTriple) -> Optional[RatePoint]:
    """Compress-and-forward corner point, or ``None`` if the relay cannot
    convey the quantisation index (``I(Xr; Y) < I(Yh; Yr | Y, Xr)``)."""
    j = build_joint(channel, triple)
    relay_rate = mutual_info(j, "Xr", "Y")
    compression = mutual_info(j, "Yh", "Yr", ("Y", "Xr"))
    if relay_rate < compression - FEASIBILITY_TOL:
        return None
    r1 = mutual_info(j, "X", ("Y", "Yh"), "Xr")
    leak = mutual_info(j, "X", "Yr", "Xr")
    return RatePoint(r1, max(r1 - leak, 0.0))


def prefix_channel(channel: DiscreteRelayChannel, pxu) -> DiscreteRelayChannel:
    """Channel seen from an auxiliary input U: sum_x p(x|u) p(y, yr | x, xr).

    ``pxu[u, x] = p(x | u)``.
    """
    pxu = _as_pmf(pxu, name="pxu")
    if pxu.ndim != 2 or pxu.shape[1] != channel.sizes[0]:
        raise StructuralError(
            f"pxu must have shape (|U|, {channel.sizes[0]}), got {pxu.shape}")
    return DiscreteRelayChannel(np.einsum("ux,xjkl->ujkl", pxu, channel.transition))


# -- exhaustive search ----------------------------------------------------

@lru_cache(maxsize=None)
def simplex_grid(k: int, resolution: int) -> np.ndarray:
    """All pmfs on ``k`` symbols with entries in ``{0, 1/res, ..., 1}``.

    Rows are in lexicographic order of the integer numerators.
    """
    if k < 1:
        raise StructuralError("simplex dimension must be >= 1")
    rows = [c for c in itertools.product(range(resolution + 1), repeat=k - 1)
            if sum(c) <= resolution]
    comps = np.array([c + (resolution - sum(c),) for c in rows], dtype=float)
    comps = comps.reshape(len(rows), k) / resolution
    comps.setflags(write=False)
    return comps


def search_space_size(channel: DiscreteRelayChannel, resolution: int, yhat_size: int) -> int:
    nx, nxr, _, nyr = channel.sizes
    n_px = math.comb(resolution + nx - 1, nx - 1)
    n_pxr = math.comb(resolution + nxr - 1, nxr - 1)
    n_row = math.comb(resolution + yhat_size - 1, yhat_size - 1)
    return n_px * n_pxr * n_row ** (nyr * nxr)


def _entropy(p: np.ndarray, axes) -> np.ndarray:
    """Shannon entropy (bits) summed over ``axes``, batched over the rest."""
    return entr(p).sum(axis=axes) / math.log(2.0)


def _mi_table(p2: np.ndarray) -> float:
    """I(A;B) for a 2-d joint table."""
    pa = p2.sum(axis=1, keepdims=True)
    pb = p2.sum(axis=0, keepdims=True)
    s = p2 > 0
    return float(np.sum(p2[s] * np.log2(p2[s] / (pa @ pb)[s])))


def _quantizer_batches(comps: np.ndarray, nyr: int, nxr: int, batch: int):
    """Yield ``(start, per-relay-symbol quantiser slices, row entropies)``.

    Quantiser ``k`` assigns row ``digits(k)[r]`` of ``comps`` to the
    ``r``-th (yr, xr) pair in row-major order.
    """
    n_rows = nyr * nxr
    n_choices, yhat = comps.shape
    row_entropy = _entropy(comps, 1)
    total = n_choices ** n_rows
    for start in range(0, total, batch):
        idx = np.arange(start, min(start + batch, total))
        digits = np.stack(np.unravel_index(idx, (n_choices,) * n_rows), axis=1)
        q = comps[digits].reshape(len(idx), nyr, nxr, yhat)
        slices = [np.ascontiguousarray(q[:, :, j, :]) for j in range(nxr)]
        yield start, slices, row_entropy[digits].reshape(len(idx), nyr, nxr)


def _flat_entropy(p: np.ndarray) -> np.ndarray:
    f = p.reshape(len(p), -1)
    # log2(1) = 0 on zero cells
    return -(f * np.log2(f + (f == 0))).sum(axis=1)


def thm1_search(channel: DiscreteRelayChannel, grid, yhat_size: Optional[int] = None,
                max_evaluations: int = MAX_EVALUATIONS,
                batch: Optional[int] = None) -> RateRegion:
    """Pareto region of feasible compress-and-forward points over simplex grids.

    Enumerates ``px``, ``pxr`` and every quantiser row ``p(yh | yr, xr)``
    with denominator ``grid``.  ``yhat_size`` defaults to ``|Yr| + 1``.
    Provenance of each point is ``(index, DistributionTriple)``, ``index``
    being the flat position in the enumeration.
    """
    res = resolution_of(grid)
    nx, nxr, ny, nyr = channel.sizes
    yhat_size = nyr + 1 if yhat_size is None else int(yhat_size)
    if yhat_size < 1:
        raise StructuralError("yhat_size must be >= 1")
    count = search_space_size(channel, res, yhat_size)
    if count > max_evaluations:
        raise SearchSpaceError(count, max_evaluations)

    px_grid = simplex_grid(nx, res)
    pxr_grid = simplex_grid(nxr, res)
    row_grid = simplex_grid(yhat_size, res)
    n_quant = row_grid.shape[0] ** (nyr * nxr)
    W = channel.transition
    if batch is None:
        batch = max(1, (1 << 20) // (nx * nxr * ny * yhat_size))
    batches = _quantizer_batches(row_grid, nyr, nxr, batch)
    if n_quant * nyr * nxr * yhat_size <= 1 << 25:
        batches = list(batches)     # reused for every input pair

    r1_parts, re_parts, idx_parts = [], [], []
    for i_px, px in enumerate(px_grid):
        for i_pxr, pxr in enumerate(pxr_grid):
            base = px[:, None, None, None] * pxr[None, :, None, None] * W
            relay_rate = _mi_table(base.sum(axis=(0, 3)))              # I(Xr; Y)
            p_x_xr_yr = base.sum(axis=2)
            h_x_xr = _entropy(p_x_xr_yr.sum(axis=2), (0, 1))
            h_xr = _entropy(pxr, 0)
            leak = (_entropy(p_x_xr_yr.sum(axis=0), (0, 1)) + h_x_xr
                    - _entropy(p_x_xr_yr, (0, 1, 2)) - h_xr)          # I(X; Yr | Xr)
            p_yr_xr = base.sum(axis=(0, 2)).T                           # (yr, xr)
            base_by_xr = [base[:, j].reshape(nx * ny, nyr) for j in range(nxr)]
            offset = (i_px * len(pxr_grid) + i_pxr) * n_quant
            if not isinstance(batches, list):
                batches_iter = _quantizer_batches(row_grid, nyr, nxr, batch)
            else:
                batches_iter = batches
            for start, q_slices, row_h in batches_iter:
                B = len(row_h)
                h_all = np.zeros(B)      # H(X, Xr, Y, Yh)
                h_xr_y_yh = np.zeros(B)  # H(Xr, Y, Yh)
                h_xr_y = np.zeros(B)     # H(Xr, Y)
                for j in range(nxr):
                    m = np.matmul(base_by_xr[j], q_slices[j])          # (B, x*y, yh)
                    h_all += _flat_entropy(m)
                    pyyh = m.reshape(B, nx, ny * yhat_size).sum(axis=1)
                    h_xr_y_yh += _flat_entropy(pyyh)
                    h_xr_y += _flat_entropy(pyyh.reshape(B, ny, yhat_size).sum(axis=2))
                # H(Yh | Yr, Xr) straight from the quantiser rows
                h_q = (row_h * p_yr_xr).reshape(B, -1).sum(axis=1)
                compression = (h_xr_y_yh - h_xr_y) - h_q
                ok = relay_rate >= compression - FEASIBILITY_TOL
                if not np.any(ok):
                    continue
                r1 = np.maximum((h_xr_y_yh - h_xr) - (h_all - h_x_xr), 0.0)[ok]
                re = np.maximum(r1 - leak, 0.0)
                idx = offset + start + np.flatnonzero(ok)
                keep = pareto_front(r1, re)
                r1_parts.append(r1[keep])
                re_parts.append(re[keep])
                idx_parts.append(idx[keep])

    if not r1_parts:
        return RateRegion()
    r1 = np.concatenate(r1_parts)
    re = np.concatenate(re_parts)
    gen = np.concatenate(idx_parts)
    order = np.argsort(gen, kind="stable")
    r1, re, gen = r1[order], re[order], gen[order]

    def provenance(i):
        return int(gen[i]), triple_at(channel, res, yhat_size, int(gen[i]))

    return region_from_arrays(r1, re, provenance)


def triple_at(channel: DiscreteRelayChannel, resolution: int, yhat_size: int,
              index: int) -> DistributionTriple:
    """The distribution triple at flat position ``index`` of ``thm1_search``."""
    nx, nxr, _, nyr = channel.sizes
    px_grid = simplex_grid(nx, resolution)
    pxr_grid = simplex_grid(nxr, resolution)
    row_grid = simplex_grid(yhat_size, resolution)
    n_rows = nyr * nxr
    n_quant = row_grid.shape[0] ** n_rows
    outer, i_q = divmod(index, n_quant)
    i_px, i_pxr = divmod(outer, len(pxr_grid))
    digits = np.unravel_index(i_q, (row_grid.shape[0],) * n_rows)
    q = row_grid[np.array(digits, dtype=np.intp)].reshape(nyr, nxr, yhat_size)
    return DistributionTriple(px_grid[i_px], pxr_grid[i_pxr], q)


# -- Model 1 (orthogonal source-to-relay link) -----------------------------

@dataclass(frozen=True, eq=False)
class Model1DiscreteChannel:
    """``p_y[xd, xr, y] = p(y | xd, xr)`` and ``p_yr[xR, xr, yr] = p(yr | xR, xr)``."""

    p_y: np.ndarray
    p_yr: np.ndarray

    def __post_init__(self):
        py = np.asarray(self.p_y, dtype=float)
        pyr = np.asarray(self.p_yr, dtype=float)
        if py.ndim != 3 or pyr.ndim != 3 or py.shape[1] != pyr.shape[1]:
            raise StructuralError("need p_y[xd, xr, y] and p_yr[xR, xr, yr] with equal |Xr|")
        object.__setattr__(self, "p_y", _as_pmf(py, name="p_y"))
        object.__setattr__(self, "p_yr", _as_pmf(pyr, name="p_yr"))


def model1_joint(channel: Model1DiscreteChannel, p_xr, p_xd_given_xr,
                 p_xR_given_xr) -> JointPmf:
    nxd, nxr, _ = channel.p_y.shape
    nxR = channel.p_yr.shape[0]
    p_xr = _as_pmf(p_xr, (nxr,), "p_xr")
    p_xd = _as_pmf(p_xd_given_xr, (nxr, nxd), "p_xd_given_xr")
    p_xR = _as_pmf(p_xR_given_xr, (nxr, nxR), "p_xR_given_xr")
    t = np.einsum("j,jd,jr,djy,rjz->jdryz", p_xr, p_xd, p_xR, channel.p_y, channel.p_yr)
    return JointPmf(t, ("Xr", "XD", "XR", "Y", "Yr"))


def thm2_point(channel: Model1DiscreteChannel, p_xr, p_xd_given_xr,
               p_xR_given_xr) -> RatePoint:
    """Corner of the Model 1 equivocation capacity region for one input law.

    ``p_xd_given_xr[xr, xd]`` and ``p_xR_given_xr[xr, xR]`` are row-stochastic.
    """
    j = model1_joint(channel, p_xr, p_xd_given_xr, p_xR_given_xr)
    private = mutual_info(j, "XD", "Y", "Xr")
    r1 = min(mutual_info(j, ("XD", "Xr"), "Y"),
             mutual_info(j, "XR", "Yr", "Xr") + private)
    return RatePoint(r1, min(private, r1))


# -- Model 2 (orthogonal relay-to-destination link) ------------------------

def model2_channel(p_yd, p_yr, p_yR) -> DiscreteRelayChannel:
    """Compose ``p(yd|x) p(yr|x, xr, yd) p(yR|xr)`` into a relay channel whose
    destination output is the pair ``y = yd * |YR| + yR``.

    Shapes: ``p_yd[x, yd]``, ``p_yr[x, xr, yd, yr]``, ``p_yR[xr, yR]``.
    """
    p_yd = np.asarray(p_yd, dtype=float)
    p_yr = np.asarray(p_yr, dtype=float)
    p_yR = np.asarray(p_yR, dtype=float)
    nx, nyd = p_yd.shape
    nxr, nyR = p_yR.shape
    if p_yr.shape[:3] != (nx, nxr, nyd):
        raise StructuralError("p_yr must be indexed (x, xr, yd, yr)")
    t = np.einsum("id,ijdl,je->ijdel", p_yd, p_yr, p_yR)
    return DiscreteRelayChannel(t.reshape(nx, nxr, nyd * nyR, p_yr.shape[3]))


def _split_model2(channel: DiscreteRelayChannel, yd_size: int) -> np.ndarray:
    nx, nxr, ny, nyr = channel.sizes
    if yd_size < 1 or ny % yd_size:
        raise StructuralError(f"|Y| = {ny} is not a multiple of yd_size = {yd_size}")
    t = channel.transition.reshape(nx, nxr, yd_size, ny // yd_size, nyr)
    # p(yR | x, xr, yd, yr) must equal p(yR | xr)
    p_yR = t.sum(axis=(2, 4))                                   # (x, xr, yR)
    if np.max(np.abs(p_yR - p_yR[:1])) > FACTORIZATION_TOL:
        raise StructuralError("not a Model 2 channel: relay link output depends on X")
    rest = t.sum(axis=3)                                        # (x, xr, yd, yr)
    outer = rest[:, :, :, None, :] * p_yR[:1, :, None, :, None]
    if np.max(np.abs(outer - t)) > FACTORIZATION_TOL:
        raise StructuralError("not a Model 2 channel: relay link is not orthogonal")
    p_yd = rest.sum(axis=3)                                     # (x, xr, yd)
    if np.max(np.abs(p_yd - p_yd[:, :1])) > FACTORIZATION_TOL:
        raise StructuralError("not a Model 2 channel: direct link output depends on Xr")
    return t


def thm3_point(channel: DiscreteRelayChannel, triple: DistributionTriple,
               yd_size: int) -> Optional[RatePoint]:
    """Compress-and-forward corner point for a Model 2 channel.

    ``channel``'s destination output must be the pair (YD, YR) flattened as
    ``yd * |YR| + yR``.  Evaluated directly from the split-output joint; it
    agrees with ``thm1_point`` on the composite channel.
    """
    t = _split_model2(channel, yd_size)
    if triple.px.shape != (t.shape[0],) or triple.pxr.shape != (t.shape[1],):
        raise StructuralError("input pmf sizes do not match the channel alphabets")
    if triple.quantizer.shape[:2] != (t.shape[4], t.shape[1]):
        raise StructuralError("quantizer must be indexed (yr, xr, yh)")
    table = np.einsum("i,j,ijdel,ljm->ijdelm", triple.px, triple.pxr, t, triple.quantizer)
    j = JointPmf(table, ("X", "Xr", "YD", "YR", "Yr", "Yh"))

    relay_rate = mutual_info(j, "Xr", "YR")
    if abs(mutual_info(j, "Xr", ("YR", "YD")) - relay_rate) > FACTORIZATION_TOL:
        raise StructuralError("not a Model 2 channel: I(Xr; YR, YD) != I(Xr; YR)")
    compression = mutual_info(j, "Yh", "Yr", ("YD", "YR", "Xr"))
    if relay_rate < compression - FEASIBILITY_TOL:
        return None
    r1 = mutual_info(j, "X", ("YD", "Yh"), ("Xr", "YR"))
    leak = mutual_info(j, "X", "Yr", "Xr")
    return RatePoint(r1, max(r1 - leak, 0.0))
