"""Immutable sparse undirected weighted graphs in CSR form."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    DimensionError,
    EdgeWeightError,
    FileFormatError,
    GraphInputError,
    MissingEdgeError,
)

_NODES_HEADER = re.compile(r"#\s*nodes[:=\s]\s*(\d+)")


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected weighted graph stored as a symmetric CSR adjacency.

    Both directed entries of every edge are stored, so row u lists every
    neighbor of u together with the edge weight. A self-loop (u, u) is
    stored once in row u and contributes its weight once to degree[u];
    degree[u] is the sum of row u. Neighbor ids within a row are strictly
    increasing and all weights are positive. Instances are immutable: the
    backing arrays are marked read-only at construction.
    """

    node_count: int
    row_offsets: np.ndarray
    neighbor_ids: np.ndarray
    edge_weights: np.ndarray
    degree: np.ndarray

    def __post_init__(self):
        for arr in (self.row_offsets, self.neighbor_ids, self.edge_weights, self.degree):
            arr.setflags(write=False)

    @staticmethod
    def _from_csr(mat) -> "Graph":
        """Wrap a scipy sparse matrix that is already exactly symmetric."""
        mat = sp.csr_matrix(mat)
        mat.sum_duplicates()
        mat.eliminate_zeros()
        mat.sort_indices()
        degree = np.asarray(mat.sum(axis=1)).ravel().astype(np.float64)
        return Graph(
            node_count=mat.shape[0],
            row_offsets=mat.indptr.astype(np.int64),
            neighbor_ids=mat.indices.astype(np.int64),
            edge_weights=mat.data.astype(np.float64),
            degree=degree,
        )

    def _check_node(self, u):
        if not 0 <= u < self.node_count:
            raise DimensionError(f"node id {u} out of range for {self.node_count} nodes")

    def neighbors(self, u) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and weights of row u, including a self-loop entry if present."""
        self._check_node(u)
        s, e = self.row_offsets[u], self.row_offsets[u + 1]
        return self.neighbor_ids[s:e], self.edge_weights[s:e]

    @cached_property
    def neighbor_counts(self) -> np.ndarray:
        """Number of distinct neighbors per node, self-loops excluded."""
        lengths = np.diff(self.row_offsets)
        rows = np.repeat(np.arange(self.node_count), lengths)
        loops = np.bincount(rows[self.neighbor_ids == rows], minlength=self.node_count)
        return (lengths - loops).astype(np.int64)

    def neighbor_count(self, u) -> int:
        self._check_node(u)
        return int(self.neighbor_counts[u])

    def weighted_degree(self, u) -> float:
        self._check_node(u)
        return float(self.degree[u])

    def edge_weight(self, u, v) -> float:
        """Weight of edge (u, v); raises MissingEdgeError if absent."""
        self._check_node(u)
        self._check_node(v)
        ids, ws = self.neighbors(u)
        i = int(np.searchsorted(ids, v))
        if i < ids.size and ids[i] == v:
            return float(ws[i])
        raise MissingEdgeError(f"no edge between {u} and {v}")

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Adjacency as a scipy CSR matrix sharing this graph's arrays. Read-only."""
        n = self.node_count
        return sp.csr_matrix(
            (self.edge_weights, self.neighbor_ids, self.row_offsets), shape=(n, n)
        )

    @cached_property
    def _self_loop_count(self) -> int:
        lengths = np.diff(self.row_offsets)
        rows = np.repeat(np.arange(self.node_count), lengths)
        return int((self.neighbor_ids == rows).sum())

    def edge_count(self) -> int:
        """Number of undirected edges, counting each self-loop once."""
        loops = self._self_loop_count
        return (self.neighbor_ids.size - loops) // 2 + loops

    def total_weight(self) -> float:
        """Sum of all stored adjacency entries; equals degree.sum()."""
        return float(self.edge_weights.sum())

    def to_edge_list(self) -> list[tuple[int, int, float]]:
        """Undirected edges (u, v, w) with u <= v, one entry per edge."""
        out = []
        for u in range(self.node_count):
            ids, ws = self.neighbors(u)
            keep = ids >= u
            out.extend((u, int(v), float(w)) for v, w in zip(ids[keep], ws[keep]))
        return out


def from_edge_list(edges: Iterable[Sequence], node_count_hint: int | None = None) -> Graph:
    """Build a Graph from (u, v) or (u, v, w) entries; missing weights are 1.0.

    Entries are symmetrized, parallel duplicates (in either direction) have
    their weights summed, and self-loops are kept as a single entry. The node
    count is max(node_count_hint, 1 + max node id); ids at or above an
    explicit hint are rejected, so isolated trailing nodes are representable.
    """
    us, vs, ws = [], [], []
    for entry in edges:
        if len(entry) == 2:
            u, v = entry
            w = 1.0
        elif len(entry) == 3:
            u, v, w = entry
        else:
            raise GraphInputError(f"edge entry must have 2 or 3 fields, got {entry!r}")
        u, v, w = int(u), int(v), float(w)
        if not (math.isfinite(w) and w > 0):
            raise EdgeWeightError(f"edge ({u}, {v}) has nonpositive weight {w}")
        if u < 0 or v < 0:
            raise DimensionError(f"negative node id in edge ({u}, {v})")
        us.append(u)
        vs.append(v)
        ws.append(w)

    max_id = max(max(us), max(vs)) if us else -1
    if node_count_hint is not None:
        if node_count_hint < 0:
            raise DimensionError(f"node count hint {node_count_hint} is negative")
        if max_id >= node_count_hint:
            raise DimensionError(
                f"node id {max_id} exceeds node count hint {node_count_hint}"
            )
        n = node_count_hint
    else:
        n = max_id + 1

    u_arr = np.asarray(us, dtype=np.int64)
    v_arr = np.asarray(vs, dtype=np.int64)
    w_arr = np.asarray(ws, dtype=np.float64)
    # Accumulate on the canonical direction first, then mirror, so the two
    # stored entries of an edge are the same float and the matrix is
    # exactly symmetric regardless of duplicate order.
    lo = np.minimum(u_arr, v_arr)
    hi = np.maximum(u_arr, v_arr)
    upper = sp.coo_matrix((w_arr, (lo, hi)), shape=(n, n)).tocsr()
    upper.sum_duplicates()
    mirrored = upper + sp.triu(upper, k=1).T
    return Graph._from_csr(mirrored)


def read_edge_list(path, node_count_hint: int | None = None) -> Graph:
    """Parse a whitespace-separated edge-list file: `u v [w]` per line.

    Lines starting with `#` are comments. A leading `# nodes: N` comment, when
    present and no explicit hint is given, fixes the node count so isolated
    trailing nodes survive a write/read round trip.
    """
    edges = []
    header_hint = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = _NODES_HEADER.match(line)
                if m and header_hint is None:
                    header_hint = int(m.group(1))
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise FileFormatError("expected 'u v [w]'", path, lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise FileFormatError("node ids must be integers", path, lineno) from None
            if u < 0 or v < 0:
                raise FileFormatError("node ids must be nonnegative", path, lineno)
            w = 1.0
            if len(parts) == 3:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise FileFormatError("weight must be a number", path, lineno) from None
                if not (math.isfinite(w) and w > 0):
                    raise FileFormatError("weight must be positive", path, lineno)
            edges.append((u, v, w))
    if node_count_hint is None:
        node_count_hint = header_hint
    return from_edge_list(edges, node_count_hint)


def write_edge_list(g: Graph, path) -> None:
    """Write one `u v w` line per undirected edge, after a `# nodes` header."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# nodes: {g.node_count}\n")
        for u, v, w in g.to_edge_list():
            fh.write(f"{u} {v} {w:.17g}\n")
