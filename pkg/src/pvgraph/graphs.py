"""Visibility-graph construction: obstruction heights, tunnelling
probabilities, interaction strengths, weighted connectivity, and the
classical visibility graph.

The all-pairs obstruction-height kernel has two interchangeable backends:
a compiled Cython extension and a pure-Python mirror.  The compiled one is
picked at import when available; set ``PVG_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from . import _purecore
from .errors import IndexOutOfRange, InvalidParams, ParseError
from .series import NormalizedSeries

if os.environ.get("PVG_PURE") == "1":
    _core = _purecore
    HAVE_COMPILED_CORE = False
else:
    try:
        from . import _hullcore as _core
        HAVE_COMPILED_CORE = True
    except ImportError:
        _core = _purecore
        HAVE_COMPILED_CORE = False


@dataclass
class PvgParams:
    """Decay parameter rho and edge-inclusion threshold p0."""

    rho: float
    p0: float

    def __post_init__(self):
        if self.rho < 0 or not np.isfinite(self.rho):
            raise InvalidParams("rho must be finite and >= 0")
        if not (0.0 <= self.p0 <= 1.0):
            raise InvalidParams("p0 must lie in [0, 1]")


@dataclass
class PvgMatrices:
    """Dense symmetric probability, strength, weighted, and binary
    adjacency matrices of one probabilistic visibility graph."""

    n: int
    prob: np.ndarray
    strength: np.ndarray
    weighted: np.ndarray
    adjacency: np.ndarray
    params: PvgParams


@dataclass
class VgAdjacency:
    """Binary adjacency of the classical visibility graph."""

    n: int
    adjacency: np.ndarray


def _geometry(series) -> tuple[np.ndarray, np.ndarray]:
    # geometry uses start-relative times so shifting t0 changes nothing
    x = np.ascontiguousarray(series.values, dtype=np.float64)
    t = np.arange(x.size) * series.dt
    return x, t


def _check_pair(n, i, j):
    if not (0 <= i < j < n):
        raise IndexOutOfRange(f"need 0 <= i < j < {n}, got ({i}, {j})")


def raw_height_matrix(series) -> np.ndarray:
    """Unclamped all-pairs maximum obstruction heights via the fast core.

    Entries for pairs without intermediates (diagonal, adjacent samples)
    are -inf.
    """
    x, t = _geometry(series)
    return _core.raw_height_matrix(x, t)


def height_matrix(series) -> np.ndarray:
    """Clamped all-pairs h_max (fast core): max(0, heights), 0 on the
    diagonal and for adjacent pairs."""
    return np.maximum(raw_height_matrix(series), 0.0)


def obstruction_height_brute(series, i: int, j: int) -> float:
    """Unclamped maximum obstruction height by scanning every intermediate.

    Independent of the hull-sweep core; the validation oracle.  Returns
    -inf when there are no intermediates.
    """
    x, t = _geometry(series)
    _check_pair(x.size, i, j)
    if j == i + 1:
        return float("-inf")
    slope = (x[j] - x[i]) / (t[j] - t[i])
    inner = x[i + 1:j] - (x[i] + slope * (t[i + 1:j] - t[i]))
    return float(inner.max())


def height_matrix_brute(series) -> np.ndarray:
    """Clamped all-pairs h_max from the per-pair brute-force scan."""
    n = series.n
    h = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 2, n):
            v = max(0.0, obstruction_height_brute(series, i, j))
            h[i, j] = v
            h[j, i] = v
    return h


def obstruction_height_max(series, i: int, j: int) -> float:
    """Clamped maximum obstruction height h_max for one pair."""
    return max(0.0, obstruction_height_brute(series, i, j))


def tunnel_probability(h_max: float, rho: float) -> float:
    """Connection probability exp(-rho * h_max)."""
    if h_max < 0 or rho < 0:
        raise InvalidParams("h_max and rho must be nonnegative")
    return float(np.exp(-rho * h_max))


def interaction_strength(series, i: int, j: int) -> float:
    """arctan of the absolute slope between samples i and j, in [0, pi/2)."""
    x, t = _geometry(series)
    _check_pair(x.size, i, j)
    return float(np.arctan(abs(x[j] - x[i]) / (t[j] - t[i])))


def strength_matrix(series) -> np.ndarray:
    """Dense symmetric matrix of pairwise interaction strengths."""
    x, t = _geometry(series)
    dv = np.abs(x[:, None] - x[None, :])
    dtm = np.abs(t[:, None] - t[None, :])
    np.fill_diagonal(dtm, 1.0)  # avoid 0/0; diagonal rewritten below
    w = np.arctan(dv / dtm)
    np.fill_diagonal(w, 0.0)
    return w


def probability_matrix(series, rho: float, heights: np.ndarray | None = None) -> np.ndarray:
    """Dense symmetric matrix of tunnelling probabilities, zero diagonal."""
    if heights is None:
        heights = height_matrix(series)
    p = np.exp(-rho * heights)
    np.fill_diagonal(p, 0.0)
    return p


def threshold_adjacency(prob: np.ndarray, p0: float) -> np.ndarray:
    """Binary adjacency: edge where probability >= p0, zero diagonal."""
    adj = (prob >= p0).astype(np.int8)
    np.fill_diagonal(adj, 0)
    return adj


def pvg_adjacency(series, params: PvgParams, heights: np.ndarray | None = None) -> np.ndarray:
    """Thresholded PVG adjacency without materializing strength/weighted.

    ``heights`` may be a precomputed clamped height matrix, letting sweeps
    over (rho, p0) reuse the expensive geometry pass.
    """
    if heights is None:
        heights = height_matrix(series)
    if params.rho == 0.0 or params.p0 <= 0.0:
        adj = np.ones_like(heights, dtype=np.int8)
        np.fill_diagonal(adj, 0)
        return adj
    return threshold_adjacency(probability_matrix(series, params.rho, heights),
                               params.p0)


def build_pvg(series: NormalizedSeries, params: PvgParams) -> PvgMatrices:
    """Assemble all four PVG matrices for one series."""
    heights = height_matrix(series)
    prob = probability_matrix(series, params.rho, heights)
    strength = strength_matrix(series)
    weighted = strength * prob
    adjacency = threshold_adjacency(prob, params.p0)
    return PvgMatrices(n=series.n, prob=prob, strength=strength,
                       weighted=weighted, adjacency=adjacency, params=params)


def build_classical_vg(series: NormalizedSeries) -> VgAdjacency:
    """Classical visibility graph: edge iff every intermediate lies
    strictly below the chord (a collinear intermediate blocks)."""
    raw = raw_height_matrix(series)
    adj = (raw < 0.0).astype(np.int8)
    np.fill_diagonal(adj, 0)
    return VgAdjacency(n=series.n, adjacency=adj)


def degree_sequence(adjacency: np.ndarray) -> np.ndarray:
    """Per-node degrees of a binary symmetric adjacency matrix."""
    return np.asarray(adjacency, dtype=np.int64).sum(axis=1)


# --- matrix and edge-list I/O ------------------------------------------

_MAGIC = b"PVGM"


def save_matrix_binary(matrix: np.ndarray, path) -> None:
    """Write a symmetric float64 matrix: magic "PVGM", u32 N, then the
    strict upper triangle row-major.  Round-trips bit-exactly."""
    m = np.asarray(matrix, dtype=np.float64)
    n = m.shape[0]
    iu = np.triu_indices(n, k=1)
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", n))
        fh.write(np.ascontiguousarray(m[iu]).tobytes())


def load_matrix_binary(path) -> np.ndarray:
    """Read a matrix written by :func:`save_matrix_binary`."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ParseError(f"bad magic {magic!r}, expected {_MAGIC!r}")
        (n,) = struct.unpack("<I", fh.read(4))
        payload = fh.read()
    expected = n * (n - 1) // 2 * 8
    if len(payload) != expected:
        raise ParseError(f"expected {expected} payload bytes, got {len(payload)}")
    tri = np.frombuffer(payload, dtype=np.float64)
    m = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    m[iu] = tri
    m[(iu[1], iu[0])] = tri
    return m


def save_matrix_csv(matrix: np.ndarray, path) -> None:
    """Dense CSV export with a column-label header row."""
    m = np.asarray(matrix)
    n = m.shape[0]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(f"v{k}" for k in range(n)) + "\n")
        for row in m:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def save_edge_list(adjacency: np.ndarray, path) -> None:
    """Write `i,j` rows (i < j) for every edge."""
    ii, jj = np.nonzero(np.triu(np.asarray(adjacency), k=1))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("i,j\n")
        for i, j in zip(ii, jj):
            fh.write(f"{i},{j}\n")


def load_edge_list(path, n: int | None = None) -> np.ndarray:
    """Read an `i,j` edge list into a dense binary adjacency matrix.

    Node count defaults to max index + 1.
    """
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or (lineno == 1 and line.lower() == "i,j"):
                continue
            parts = line.split(",")
            try:
                i, j = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise ParseError(f"cannot parse edge {line!r}", line=lineno)
            edges.append((i, j))
    if not edges:
        raise ParseError("empty edge list")
    size = n if n is not None else max(max(e) for e in edges) + 1
    adj = np.zeros((size, size), dtype=np.int8)
    for i, j in edges:
        adj[i, j] = 1
        adj[j, i] = 1
    return adj
