"""Signed graphs as exact integer matrices, plus the structural predicates.

A signed graph is stored as a symmetric n x n matrix with entries in
{-1, 0, +1} and zero diagonal: the entry carries the edge sign, zero means
non-edge.  The underlying (unsigned) graph is the entrywise absolute value.
All predicates here are computed exactly; the per-row bitmask view of the
underlying support keeps common-neighbour counting cheap for the search code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .exactlinalg import exact_matmul


class StructureError(ValueError):
    """A structural precondition (regular / triangle-free / ...) failed."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int8)
    arr.setflags(write=False)
    return arr


def _check_signed_matrix(adj: np.ndarray) -> None:
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if adj.shape[0] == 0:
        raise ValueError("graph must have at least one vertex")
    if np.any(np.diagonal(adj)):
        raise ValueError("diagonal entries must be zero")
    if not np.array_equal(adj, adj.T):
        raise ValueError("adjacency matrix must be symmetric")
    if np.any(np.abs(adj) > 1):
        raise ValueError("entries must lie in {-1, 0, +1}")


@dataclass(frozen=True)
class SignedGraph:
    """Immutable signed graph; ``adj`` is a read-only int8 matrix."""

    adj: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "adj", _freeze(self.adj))
        _check_signed_matrix(self.adj)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count must match vertex count")

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @cached_property
    def row_bits(self) -> tuple[int, ...]:
        """Underlying support of each row packed into a Python int bitmask."""
        out = []
        for row in np.abs(self.adj):
            bits = 0
            for j in np.flatnonzero(row):
                bits |= 1 << int(j)
            out.append(bits)
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(d) for d in np.abs(self.adj).sum(axis=1))

    def edges(self) -> list[tuple[int, int, int]]:
        """Sorted (u, v, sign) triples with u < v."""
        us, vs = np.nonzero(np.triu(self.adj))
        return [(int(u), int(v), int(self.adj[u, v])) for u, v in zip(us, vs)]

    def __eq__(self, other):
        return isinstance(other, SignedGraph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash(self.adj.tobytes())

    @staticmethod
    def from_edges(n: int, edges, labels=None) -> "SignedGraph":
        adj = np.zeros((n, n), dtype=np.int8)
        for u, v, sign in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            if sign not in (-1, 1):
                raise ValueError(f"bad sign {sign} on edge ({u}, {v})")
            if adj[u, v]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u, v] = adj[v, u] = sign
        return SignedGraph(adj, labels=tuple(labels) if labels else None)


@dataclass(frozen=True)
class UnderlyingGraph:
    """Unsigned graph: symmetric 0/1 matrix with zero diagonal."""

    adj: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "adj", _freeze(self.adj))
        _check_signed_matrix(self.adj)
        if np.any(self.adj < 0):
            raise ValueError("underlying graph entries must be 0 or 1")

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @cached_property
    def row_bits(self) -> tuple[int, ...]:
        out = []
        for row in self.adj:
            bits = 0
            for j in np.flatnonzero(row):
                bits |= 1 << int(j)
            out.append(bits)
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.adj.sum(axis=1))

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def all_positive(self) -> SignedGraph:
        return SignedGraph(self.adj.copy())

    def __eq__(self, other):
        return isinstance(other, UnderlyingGraph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash(self.adj.tobytes())

    @staticmethod
    def from_edges(n: int, edges) -> "UnderlyingGraph":
        adj = np.zeros((n, n), dtype=np.int8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            adj[u, v] = adj[v, u] = 1
        return UnderlyingGraph(adj)


@dataclass(frozen=True)
class StructureReport:
    regular: bool
    degree: int | None
    connected: bool
    bipartite: bool
    triangle_free: bool
    zero_two: bool
    quadrangle_count: int


def underlying(g: SignedGraph) -> UnderlyingGraph:
    """Entrywise absolute value: erase the signs."""
    return UnderlyingGraph(np.abs(g.adj))


def _as_underlying(g) -> UnderlyingGraph:
    return underlying(g) if isinstance(g, SignedGraph) else g


def components(g) -> list[list[int]]:
    """Connected components of the underlying graph, each sorted."""
    u = _as_underlying(g)
    bits = u.row_bits
    seen = 0
    comps = []
    for start in range(u.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            v = frontier
            while v:
                low = (v & -v).bit_length() - 1
                nxt |= bits[low]
                v &= v - 1
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append([i for i in range(u.n) if comp >> i & 1])
    return comps


def is_connected(g) -> bool:
    return len(components(g)) == 1


def bipartition(g) -> tuple[list[int], list[int]] | None:
    """Two-colouring of the underlying graph, or None if an odd cycle exists."""
    u = _as_underlying(g)
    colour = [-1] * u.n
    for start in range(u.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in range(u.n):
                if u.adj[v, w]:
                    if colour[w] == -1:
                        colour[w] = 1 - colour[v]
                        stack.append(w)
                    elif colour[w] == colour[v]:
                        return None
    return ([i for i, c in enumerate(colour) if c == 0],
            [i for i, c in enumerate(colour) if c == 1])


def common_neighbour_counts(g) -> np.ndarray:
    """Matrix of |N(u) cap N(v)| of the underlying graph."""
    a = np.abs(np.asarray(_as_underlying(g).adj, dtype=np.int64))
    return exact_matmul(a, a)


def common_neighbour_profile(g) -> list[int]:
    """Sorted multiset of common-neighbour counts over unordered vertex pairs."""
    u = _as_underlying(g)
    if u.n < 2:
        raise ValueError("profile needs at least two vertices")
    sq = common_neighbour_counts(u)
    return sorted(int(sq[i, j]) for i, j in combinations(range(u.n), 2))


def quadrangle_count(g) -> int:
    """Number of 4-cycles of the underlying graph.

    Every 4-cycle is determined by its two diagonal pairs, so summing
    C(codegree, 2) over unordered pairs counts each quadrangle twice.
    """
    u = _as_underlying(g)
    sq = common_neighbour_counts(u)
    total = 0
    for i, j in combinations(range(u.n), 2):
        c = int(sq[i, j])
        total += c * (c - 1) // 2
    return total // 2


def quadrangles(g) -> list[tuple[int, int, int, int]]:
    """All 4-cycles (a, b, c, d) of the underlying graph, edges ab, bc, cd, da.

    Reported once each, with a the smallest vertex and b < d.
    """
    u = _as_underlying(g)
    bits = u.row_bits
    out = []
    for a, c in combinations(range(u.n), 2):
        common = bits[a] & bits[c] & ~((1 << (a + 1)) - 1)
        ws = []
        v = common
        while v:
            low = (v & -v).bit_length() - 1
            ws.append(low)
            v &= v - 1
        for b, d in combinations(ws, 2):
            if a < min(b, c, d):
                out.append((a, b, c, d))
    return out


def is_triangle_free(g) -> bool:
    u = _as_underlying(g)
    bits = u.row_bits
    for v, w in u.edges():
        if bits[v] & bits[w]:
            return False
    return True


def structure_report(g) -> StructureReport:
    """Exact structural summary of the underlying graph.

    ``zero_two`` is vacuously true when no vertex pair exists; disconnected
    inputs are fine (connectivity is just reported).
    """
    u = _as_underlying(g)
    degs = u.degrees
    regular = len(set(degs)) == 1
    sq = common_neighbour_counts(u)
    zero_two = all(int(sq[i, j]) in (0, 2)
                   for i, j in combinations(range(u.n), 2))
    return StructureReport(
        regular=regular,
        degree=degs[0] if regular else None,
        connected=is_connected(u),
        bipartite=bipartition(u) is not None,
        triangle_free=is_triangle_free(u),
        zero_two=zero_two,
        quadrangle_count=quadrangle_count(u),
    )


def is_rectagraph(g) -> bool:
    """Connected, triangle-free, every vertex pair with 0 or 2 common neighbours."""
    rep = structure_report(g)
    return rep.connected and rep.triangle_free and rep.zero_two


def delete_vertices(g: SignedGraph, remove) -> SignedGraph:
    """Induced subgraph on the complement of ``remove``."""
    remove = set(remove)
    keep = [v for v in range(g.n) if v not in remove]
    if not keep:
        raise ValueError("cannot delete every vertex")
    idx = np.asarray(keep)
    labels = tuple(g.labels[v] for v in keep) if g.labels else None
    return SignedGraph(g.adj[np.ix_(idx, idx)], labels=labels)


def disjoint_union(a: SignedGraph, b: SignedGraph) -> SignedGraph:
    adj = np.zeros((a.n + b.n, a.n + b.n), dtype=np.int8)
    adj[: a.n, : a.n] = a.adj
    adj[a.n :, a.n :] = b.adj
    return SignedGraph(adj)
