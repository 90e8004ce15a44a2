"""Canonical labelling and isomorphism classification.

Colour refinement (counting neighbours per colour class until the partition is
equitable) combined with individualisation of one vertex at a time. The search
tree is explored depth first; leaves are compared by their relabelled
adjacency matrices and the least one wins. Equal leaves yield automorphisms,
which prune sibling branches lying in the same orbit of the stabiliser of the
current path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import graph6
from .graph import Graph


@dataclass(frozen=True)
class CanonicalForm:
    """``graph6`` of the canonical relabelling and the permutation producing it.

    ``perm[u]`` is the canonical label of input vertex ``u``.
    """

    graph6: str
    perm: tuple[int, ...]

    def apply(self, g: Graph) -> Graph:
        return g.relabel(self.perm)


def _rank(keys: np.ndarray) -> np.ndarray:
    _, inv = np.unique(keys, return_inverse=True)
    return inv.reshape(-1)


SMALL = 24
"""Graphs up to this order are refined with plain Python lists, which beats numpy's per-call overhead."""


def refine(adj: np.ndarray, colours: np.ndarray) -> np.ndarray:
    """Coarsest equitable refinement of ``colours``.

    New colour classes are ordered by (old colour, neighbour counts per old
    colour), so the result only depends on the isomorphism type.
    """
    if adj.shape[0] <= SMALL:
        nbrs = [np.flatnonzero(row).tolist() for row in adj]
        return np.asarray(_refine_lists(nbrs, [int(x) for x in colours]), dtype=np.int64)
    return _refine_numpy(adj, colours)


def _refine_numpy(adj: np.ndarray, colours: np.ndarray) -> np.ndarray:
    v = adj.shape[0]
    c = int(colours.max()) + 1
    idx = np.arange(v)
    while c < v:
        onehot = np.zeros((v, c), dtype=np.int32)
        onehot[idx, colours] = 1
        keys = np.empty((v, c + 1), dtype=np.int32)
        keys[:, 0] = colours
        keys[:, 1:] = adj @ onehot
        _, inv = np.unique(keys, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        n = int(inv.max()) + 1
        if n == c:
            return colours
        colours, c = inv, n
    return colours


def _refine_lists(nbrs: list[list[int]], colours: list[int]) -> list[int]:
    v = len(nbrs)
    c = max(colours) + 1
    while c < v:
        keys = []
        for u in range(v):
            counts = [0] * c
            for w in nbrs[u]:
                counts[colours[w]] += 1
            keys.append((colours[u], *counts))
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        if len(order) == c:
            return colours
        colours, c = [order[k] for k in keys], len(order)
    return colours


class _Search:
    """Depth-first canonical search; colourings are plain lists indexed by vertex.

    A leaf key is the upper triangle of the relabelled adjacency matrix read
    row by row as a binary number, so comparing keys compares those bit
    strings lexicographically.
    """

    def __init__(self, adj: np.ndarray):
        self.adj = adj.astype(np.int32)
        self.v = adj.shape[0]
        self.nbrs = [np.flatnonzero(row).tolist() for row in adj]
        self.nbr_sets = [set(n) for n in self.nbrs]
        self.pairs = [(i, j) for i in range(self.v) for j in range(i + 1, self.v)] if self.v <= SMALL else None
        self.triu = np.triu_indices(self.v, 1) if self.v > SMALL else None
        self.best_key = None
        self.best_perm: list[int] | None = None
        self.first_key = None
        self.first_perm: list[int] | None = None
        self.generators: list[list[int]] = []
        self.leaves = 0

    def refine(self, colours: list[int]) -> list[int]:
        if self.v <= SMALL:
            return _refine_lists(self.nbrs, colours)
        return _refine_numpy(self.adj, np.asarray(colours, dtype=np.int64)).tolist()

    def leaf_key(self, perm: list[int]):
        inv = [0] * self.v
        for u, p in enumerate(perm):
            inv[p] = u
        if self.pairs is not None:
            key = 0
            ns = self.nbr_sets
            for i, j in self.pairs:
                key = (key << 1) | (inv[j] in ns[inv[i]])
            return key
        b = self.adj[np.ix_(inv, inv)].astype(bool)
        return np.packbits(b[self.triu]).tobytes()

    def record_automorphism(self, perm: list[int], other: list[int]) -> None:
        inv_other = [0] * self.v
        for u, p in enumerate(other):
            inv_other[p] = u
        gamma = [inv_other[p] for p in perm]
        if gamma != list(range(self.v)):
            self.generators.append(gamma)

    def merge_orbits(self, parent: list[int], path: list[int], start: int) -> None:
        """Union into ``parent`` the orbits of generators ``start:`` that fix ``path`` pointwise."""

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.generators[start:]:
            if any(gamma[x] != x for x in path):
                continue
            for x in range(self.v):
                rx, ry = find(x), find(gamma[x])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)

    @staticmethod
    def root(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def run(self, colours: list[int], path: list[int]) -> None:
        colours = self.refine(colours)
        ncol = max(colours) + 1
        if ncol == self.v:
            self.leaves += 1
            perm = colours
            key = self.leaf_key(perm)
            if self.first_key is None:
                self.first_key, self.first_perm = key, perm
                self.best_key, self.best_perm = key, perm
                return
            if key == self.first_key:
                self.record_automorphism(perm, self.first_perm)
            elif key == self.best_key:
                self.record_automorphism(perm, self.best_perm)
            elif key < self.best_key:
                self.best_key, self.best_perm = key, perm
            return
        sizes = [0] * ncol
        for c in colours:
            sizes[c] += 1
        target = min((sz, c) for c, sz in enumerate(sizes) if sz > 1)[1]
        cell = [u for u, c in enumerate(colours) if c == target]
        done_roots: list[int] = []
        parent = list(range(self.v))
        merged = 0
        for w in cell:
            if done_roots:
                if merged != len(self.generators):
                    self.merge_orbits(parent, path, merged)
                    merged = len(self.generators)
                rw = self.root(parent, w)
                if any(self.root(parent, x) == rw for x in done_roots):
                    continue
            done_roots.append(w)
            # individualise w: it becomes the first of its cell, every colour keeps its relative order
            child = [2 * c + 1 for c in colours]
            child[w] -= 1
            order = {c: i for i, c in enumerate(sorted(set(child)))}
            self.run([order[c] for c in child], path + [w])


def canonical_form(g: Graph, colours: Sequence[int] | None = None) -> CanonicalForm:
    """Canonical labelling of ``g``, optionally respecting an initial vertex colouring."""
    v = g.v
    if v == 0:
        return CanonicalForm(g.to_graph6(), ())
    start = [0] * v if colours is None else _rank(np.asarray(colours)).tolist()
    s = _Search(g.adj)
    s.run(start, [])
    perm = s.best_perm
    b = np.zeros_like(g.adj)
    b[np.ix_(perm, perm)] = g.adj
    return CanonicalForm(graph6.encode(b), tuple(int(x) for x in perm))


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    """Automorphisms found as a side effect of the canonical search (not a full generating set guarantee)."""
    s = _Search(g.adj)
    s.run([0] * g.v, [])
    return [tuple(gam) for gam in s.generators]


def find_isomorphism(g1: Graph, g2: Graph) -> tuple[int, ...] | None:
    """A map ``u -> sigma[u]`` with ``g1.relabel(sigma) == g2``, or ``None``."""
    if g1.v != g2.v or g1.num_edges != g2.num_edges:
        return None
    if g1 == g2:
        return tuple(range(g1.v))
    c1, c2 = canonical_form(g1), canonical_form(g2)
    if c1.graph6 != c2.graph6:
        return None
    inv2 = np.empty(g2.v, dtype=np.int64)
    inv2[list(c2.perm)] = np.arange(g2.v)
    sigma = tuple(int(x) for x in inv2[list(c1.perm)])
    if g1.relabel(sigma) != g2:
        raise AssertionError("canonical forms agree but the derived map is not an isomorphism")
    return sigma


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


@dataclass
class IsoClass:
    canonical_graph6: str
    member_indices: list[int]

    @property
    def count(self) -> int:
        return len(self.member_indices)

    @property
    def representative(self) -> int:
        return self.member_indices[0]

    def to_json(self) -> dict:
        return {"canonical_graph6": self.canonical_graph6, "count": self.count,
                "member_indices": list(self.member_indices)}


def classify(graphs: Sequence[Graph]) -> list[IsoClass]:
    """Group graphs by canonical form; classes ordered by canonical graph6."""
    buckets: dict[str, list[int]] = {}
    seen: dict[str, str] = {}
    for i, g in enumerate(graphs):
        g6 = g.to_graph6()
        if g6 not in seen:
            seen[g6] = canonical_form(g).graph6
        buckets.setdefault(seen[g6], []).append(i)
    return [IsoClass(k, buckets[k]) for k in sorted(buckets)]
