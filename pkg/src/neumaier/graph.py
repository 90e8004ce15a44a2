"""Dense simple graphs and the regularity and clique predicates used everywhere.

A :class:`Graph` is immutable: the adjacency matrix is stored as a read-only
boolean numpy array, and derived data (common-neighbour counts, distances)
is cached on first use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse.csgraph import shortest_path

from . import graph6
from .errors import InternalConsistencyError, StructureError


class Graph:
    """Finite simple undirected graph on vertices ``0..v-1``."""

    __slots__ = ("_adj", "_cache")

    def __init__(self, adj):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix is not symmetric")
        if a.diagonal().any():
            raise ValueError("adjacency matrix has loops")
        a.setflags(write=False)
        self._adj = a
        self._cache: dict = {}

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((v, v), dtype=bool)
        for x, y in edges:
            if x == y:
                raise ValueError(f"loop at vertex {x}")
            a[x, y] = a[y, x] = True
        return cls(a)

    @classmethod
    def from_graph6(cls, text: str | bytes) -> "Graph":
        return cls(graph6.decode(text))

    def to_graph6(self) -> str:
        if "g6" not in self._cache:
            self._cache["g6"] = graph6.encode(self._adj)
        return self._cache["g6"]

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def v(self) -> int:
        return self._adj.shape[0]

    def __len__(self) -> int:
        return self.v

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.v == other.v and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash(self.to_graph6())

    def __repr__(self) -> str:
        return f"Graph(v={self.v}, e={self.num_edges})"

    def has_edge(self, u: int, w: int) -> bool:
        return bool(self._adj[u, w])

    def neighbours(self, u: int) -> np.ndarray:
        return np.flatnonzero(self._adj[u])

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        r, c = np.nonzero(np.triu(self._adj, 1))
        return list(zip(r.tolist(), c.tolist()))

    def is_complete(self) -> bool:
        return self.num_edges == self.v * (self.v - 1) // 2

    def common_counts(self) -> np.ndarray:
        """Matrix of common-neighbour counts (``A @ A``), read-only."""
        if "a2" not in self._cache:
            a = self._adj.astype(np.int32)
            m = a @ a
            m.setflags(write=False)
            self._cache["a2"] = m
        return self._cache["a2"]

    def distances(self) -> np.ndarray:
        """All-pairs shortest path lengths, ``-1`` for unreachable pairs."""
        if "dist" not in self._cache:
            d = shortest_path(self._adj.astype(np.int8), method="D", unweighted=True)
            d = np.where(np.isinf(d), -1, d).astype(np.int64)
            d.setflags(write=False)
            self._cache["dist"] = d
        return self._cache["dist"]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``u`` becomes ``perm[u]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.v)):
            raise ValueError("relabelling is not a permutation of the vertex set")
        a = np.zeros_like(self._adj)
        a[np.ix_(p, p)] = self._adj
        return Graph(a)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        idx = np.asarray(vertices, dtype=np.int64)
        return Graph(self._adj[np.ix_(idx, idx)])


def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool))


def empty_graph(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.v:
        raise ValueError(f"vertex {u} out of range 0..{g.v - 1}")


def common_neighbours(g: Graph, u: int, w: int) -> set[int]:
    _check_vertex(g, u)
    _check_vertex(g, w)
    if u == w:
        raise ValueError("common_neighbours needs two distinct vertices")
    return set(np.flatnonzero(g.adj[u] & g.adj[w]).tolist())


@dataclass(frozen=True)
class ErgParams:
    """Edge-regular parameters ``(v, k, lambda)``."""

    v: int
    k: int
    lam: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("edge-regular graphs have k >= 1")
        if not 0 <= self.lam <= self.k - 1:
            raise ValueError(f"lambda={self.lam} outside 0..k-1")
        if self.v <= self.k:
            raise ValueError("v must exceed k")

    def astuple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)


@dataclass(frozen=True)
class Regularity:
    """Strongest regularity label of a graph.

    ``kind`` is one of ``not_regular``, ``regular``, ``edge_regular``,
    ``co_edge_regular``, ``strongly_regular``. The fields that do not apply
    are ``None``.
    """

    kind: str
    v: int
    k: int | None = None
    lam: int | None = None
    mu: int | None = None

    @property
    def is_regular(self) -> bool:
        return self.kind != "not_regular"

    @property
    def is_edge_regular(self) -> bool:
        return self.kind in ("edge_regular", "strongly_regular")

    @property
    def is_co_edge_regular(self) -> bool:
        return self.kind in ("co_edge_regular", "strongly_regular")

    @property
    def is_strongly_regular(self) -> bool:
        return self.kind == "strongly_regular"

    def erg(self) -> ErgParams:
        if not self.is_edge_regular:
            raise ValueError(f"graph is {self.kind}, not edge-regular")
        return ErgParams(self.v, self.k, self.lam)


def classify_regularity(g: Graph) -> Regularity:
    deg = g.degrees()
    if not np.all(deg == deg[0]):
        return Regularity("not_regular", g.v)
    k = int(deg[0])
    cc = g.common_counts()
    adj = g.adj
    lam = mu = None
    if adj.any():
        vals = np.unique(cc[adj])
        if len(vals) == 1:
            lam = int(vals[0])
    nonadj = ~adj
    np.fill_diagonal(nonadj, False)
    if nonadj.any():
        vals = np.unique(cc[nonadj])
        if len(vals) == 1:
            mu = int(vals[0])
    if lam is not None and mu is not None:
        return Regularity("strongly_regular", g.v, k, lam, mu)
    if lam is not None:
        return Regularity("edge_regular", g.v, k, lam)
    if mu is not None:
        return Regularity("co_edge_regular", g.v, k, mu=mu)
    return Regularity("regular", g.v, k)


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    s = sorted(set(vertices))
    sub = g.adj[np.ix_(s, s)]
    return bool(sub.sum() == len(s) * (len(s) - 1))


def clique_nexus(g: Graph, clique: Iterable[int]) -> int | None:
    """Nexus ``m`` of a regular clique, or ``None`` if the clique is not regular."""
    s = sorted(set(int(x) for x in clique))
    if not s:
        raise ValueError("clique must be non-empty")
    for x in s:
        _check_vertex(g, x)
    if len(s) >= g.v:
        raise ValueError("clique covers every vertex; nexus is undefined")
    if not is_clique(g, s):
        raise StructureError(f"vertex set {s} is not a clique")
    inside = np.zeros(g.v, dtype=bool)
    inside[s] = True
    counts = g.adj[~inside][:, inside].sum(axis=1)
    m = int(counts[0])
    if m > 0 and np.all(counts == m):
        return m
    return None


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex ``(i, j)`` is labelled ``i * g2.v + j``."""
    a1 = g1.adj.astype(np.int8)
    a2 = g2.adj.astype(np.int8)
    a = np.kron(a1, np.eye(g2.v, dtype=np.int8)) + np.kron(np.eye(g1.v, dtype=np.int8), a2)
    g = Graph(a > 0)
    r1, r2 = classify_regularity(g1), classify_regularity(g2)
    if r1.is_edge_regular and r2.is_edge_regular and r1.lam == r2.lam:
        r = classify_regularity(g)
        if not (r.is_edge_regular and r.k == r1.k + r2.k and r.lam == r1.lam):
            raise InternalConsistencyError(f"product of edge-regular graphs classified as {r}")
    return g
