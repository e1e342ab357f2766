"""Matrix-free evaluation of the adjacency, Laplacian, and signless Laplacian forms.

The order-k tensors are never materialized.  With d(i) the vertex degrees,
the symmetrized per-edge products collapse to

    (A x^{k-1})_i = sum over edges e containing i of prod_{j in e, j != i} x_j
    (L x^{k-1})_i = d(i) x_i^{k-1} - (A x^{k-1})_i
    (Q x^{k-1})_i = d(i) x_i^{k-1} + (A x^{k-1})_i

and a single edge e contributes to the homogeneous form T x^k

    A: k * prod_{j in e} x_j
    L: sum_{j in e} x_j^k - k * prod_{j in e} x_j
    Q: sum_{j in e} x_j^k + k * prod_{j in e} x_j

so every operation here costs O(m k), not O(n^k).
"""

from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph

# beyond this edge count plain float64 accumulation gives way to exact
# per-vertex compensated sums
KAHAN_EDGE_THRESHOLD = 10_000


class TensorKind(Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless_laplacian"


@lru_cache(maxsize=512)
def _edge_index(h: Hypergraph) -> np.ndarray:
    idx = np.array(h.edges, dtype=np.int64)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=512)
def _degree_vector(h: Hypergraph) -> np.ndarray:
    d = np.array(h.degrees, dtype=np.float64)
    d.setflags(write=False)
    return d


def as_vector(h: Hypergraph, x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Coerce to a finite float64 vector of length h.n."""
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (h.n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({h.n},)")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def elementwise_power(x: np.ndarray, r: int) -> np.ndarray:
    """x^{[r]}: raise every entry to the integer power r >= 1."""
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise ValueError(f"exponent must be a positive integer, got {r!r}")
    return np.asarray(x, dtype=np.float64) ** int(r)


def _leave_one_out_products(xe: np.ndarray) -> np.ndarray:
    """Row-wise products prod_{j != i} xe[:, j], by prefix/suffix (no division)."""
    _, k = xe.shape
    pref = np.ones_like(xe)
    suff = np.ones_like(xe)
    for j in range(1, k):
        pref[:, j] = pref[:, j - 1] * xe[:, j - 1]
        suff[:, k - 1 - j] = suff[:, k - j] * xe[:, k - j]
    return pref * suff


def _scatter_add(n: int, idx: np.ndarray, vals: np.ndarray, compensated: bool) -> np.ndarray:
    out = np.zeros(n)
    if not compensated:
        np.add.at(out, idx, vals)
        return out
    flat_i = idx.ravel()
    flat_v = vals.ravel()
    order = np.argsort(flat_i, kind="stable")
    fi = flat_i[order]
    fv = flat_v[order]
    starts = np.searchsorted(fi, np.arange(n), side="left")
    ends = np.searchsorted(fi, np.arange(n), side="right")
    for v in range(n):
        if starts[v] < ends[v]:
            out[v] = math.fsum(fv[starts[v]:ends[v]])
    return out


def apply(kind: TensorKind, h: Hypergraph, x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Evaluate T x^{k-1} for T in {A, L, Q} without forming the tensor."""
    v = as_vector(h, x)
    idx = _edge_index(h)
    loo = _leave_one_out_products(v[idx])
    a = _scatter_add(h.n, idx, loo, compensated=h.m > KAHAN_EDGE_THRESHOLD)
    if kind is TensorKind.ADJACENCY:
        return a
    dxk = _degree_vector(h) * v ** (h.k - 1)
    if kind is TensorKind.LAPLACIAN:
        return dxk - a
    if kind is TensorKind.SIGNLESS_LAPLACIAN:
        return dxk + a
    raise ValueError(f"unknown tensor kind {kind!r}")


def _edge_contributions(kind: TensorKind, k: int, xe: np.ndarray) -> np.ndarray:
    prods = xe.prod(axis=1)
    if kind is TensorKind.ADJACENCY:
        return k * prods
    sums = (xe ** k).sum(axis=1)
    if kind is TensorKind.LAPLACIAN:
        return sums - k * prods
    if kind is TensorKind.SIGNLESS_LAPLACIAN:
        return sums + k * prods
    raise ValueError(f"unknown tensor kind {kind!r}")


def form(kind: TensorKind, h: Hypergraph, x: Sequence[float] | np.ndarray) -> float:
    """Evaluate the scalar form T x^k = <x, T x^{k-1}>."""
    v = as_vector(h, x)
    contrib = _edge_contributions(kind, h.k, v[_edge_index(h)])
    if h.m > KAHAN_EDGE_THRESHOLD:
        return math.fsum(contrib)
    return float(contrib.sum())


def edge_form(kind: TensorKind, edge: Sequence[int], x: Sequence[float] | np.ndarray) -> float:
    """Single-edge contribution to the form; the edge need not come from a graph."""
    e = tuple(int(v) for v in edge)
    k = len(e)
    if k < 2 or len(set(e)) != k:
        raise ValueError(f"edge {e} must hold at least two distinct vertices")
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or max(e) >= v.size or min(e) < 0:
        raise ValueError(f"edge {e} indexes outside the vector of length {v.size}")
    xe = v[np.array(e)][None, :]
    return float(_edge_contributions(kind, k, xe)[0])


def form_gradient(kind: TensorKind, h: Hypergraph, x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Gradient of x -> T x^k, which is k * T x^{k-1} by homogeneity."""
    return h.k * apply(kind, h, x)
