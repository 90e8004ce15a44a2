"""Perfect codes and partitions of a vertex set into perfect 1-codes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

from .errors import InfeasibleError, StructureError
from .graph import Graph


def is_perfect_code(g: Graph, code: Iterable[int], e: int = 1) -> bool:
    """Whether the radius-``e`` balls around ``code`` partition the vertex set."""
    c = sorted(set(int(x) for x in code))
    if not c:
        raise ValueError("code must be non-empty")
    if e < 1:
        raise ValueError("radius must be at least 1")
    if c[0] < 0 or c[-1] >= g.v:
        raise ValueError("code vertex out of range")
    if e == 1:
        balls = g.adj[c] | (np.arange(g.v)[None, :] == np.asarray(c)[:, None])
    else:
        d = g.distances()[c]
        balls = (d >= 0) & (d <= e)
    return bool(np.all(balls.sum(axis=0) == 1))


@dataclass(frozen=True)
class CodePartition:
    """Ordered partition ``H_1, ..., H_{v/a}`` of a graph into perfect 1-codes."""

    graph: Graph
    codes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        codes = tuple(tuple(sorted(int(x) for x in h)) for h in self.codes)
        object.__setattr__(self, "codes", codes)
        self.verify()

    @property
    def a(self) -> int:
        return len(self.codes[0])

    def __len__(self) -> int:
        return len(self.codes)

    def verify(self) -> None:
        g = self.graph
        if not self.codes:
            raise StructureError("partition has no codes")
        flat = [x for h in self.codes for x in h]
        if sorted(flat) != list(range(g.v)):
            raise StructureError("codes do not partition the vertex set")
        sizes = {len(h) for h in self.codes}
        if len(sizes) != 1:
            raise StructureError(f"codes have unequal sizes {sorted(sizes)}")
        for i, h in enumerate(self.codes):
            if not is_perfect_code(g, h, 1):
                raise StructureError(f"code {i + 1} {list(h)} is not a perfect 1-code")

    def canonical(self) -> "CodePartition":
        """Same partition with codes sorted by their minimum element."""
        return CodePartition(self.graph, tuple(sorted(self.codes)))

    def code_of(self) -> np.ndarray:
        """``code_of()[x]`` is the 0-based index of the code containing ``x``."""
        out = np.empty(self.graph.v, dtype=np.int64)
        for i, h in enumerate(self.codes):
            out[list(h)] = i
        return out

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(h) for h in self.codes)

    def to_json(self) -> dict:
        return {"a": self.a, "codes": [list(h) for h in self.codes]}

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> "CodePartition":
        p = cls(g, tuple(tuple(h) for h in data["codes"]))
        if "a" in data and data["a"] != p.a:
            raise StructureError(f"declared code size {data['a']} but codes have size {p.a}")
        return p


# ---------------------------------------------------------------------------
# exact cover (Algorithm X on dictionaries of sets)


def exact_covers(columns: Sequence[Hashable], rows: dict, first_column=None) -> Iterator[list]:
    """Yield exact covers of ``columns`` by ``rows`` (row id -> columns).

    Branching picks the column with fewest candidate rows, ties broken by the
    smaller column; candidate rows are tried in sorted order. ``first_column``
    overrides the choice at the root.
    """
    x = {c: set() for c in columns}
    for r, cols in rows.items():
        for c in cols:
            x[c].add(r)

    def select(r):
        removed = []
        for j in rows[r]:
            for i in x[j]:
                for k in rows[i]:
                    if k != j:
                        x[k].remove(i)
            removed.append(x.pop(j))
        return removed

    def deselect(r, removed):
        for j in reversed(rows[r]):
            x[j] = removed.pop()
            for i in x[j]:
                for k in rows[i]:
                    if k != j:
                        x[k].add(i)

    solution: list = []

    def solve(forced):
        if not x:
            yield list(solution)
            return
        c = forced if forced is not None else min(x, key=lambda col: (len(x[col]), col))
        for r in sorted(x[c]):
            solution.append(r)
            removed = select(r)
            yield from solve(None)
            deselect(r, removed)
            solution.pop()

    yield from solve(first_column)


def perfect_one_codes(g: Graph) -> list[tuple[int, ...]]:
    """All perfect 1-codes, as exact covers by closed neighbourhoods, sorted."""
    rows = {u: [u] + g.neighbours(u).tolist() for u in range(g.v)}
    return sorted(tuple(sorted(c)) for c in exact_covers(range(g.v), rows))


def find_code_partitions(g: Graph, a: int, limit: int = 1) -> list[CodePartition]:
    """Partitions of a regular graph into perfect 1-codes of size ``a``.

    At most ``limit`` partitions are returned, canonicalised and sorted.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    deg = g.degrees()
    if not np.all(deg == deg[0]):
        raise InfeasibleError("graph is not regular")
    k = int(deg[0])
    if a * (k + 1) != g.v:
        raise InfeasibleError(f"a perfect 1-code in a {k}-regular graph on {g.v} vertices "
                              f"has size {g.v}/{k + 1}, not {a}")
    codes = perfect_one_codes(g)
    rows = {i: list(c) for i, c in enumerate(codes)}
    found: set[tuple[tuple[int, ...], ...]] = set()
    for cover in exact_covers(range(g.v), rows, first_column=0):
        found.add(tuple(sorted(codes[i] for i in cover)))
        if len(found) >= limit:
            break
    return [CodePartition(g, p) for p in sorted(found)]


def subgroup_closure(orders: Sequence[int], generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Elements of the subgroup of ``Z_{d_1} + ... + Z_{d_s}`` generated by ``generators``."""
    orders = tuple(int(d) for d in orders)
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(int(x) % d for x, d in zip(gen, orders)) for gen in generators]
    while frontier:
        nxt = []
        for h in frontier:
            for gen in gens:
                s = tuple((x + y) % d for x, y, d in zip(h, gen, orders))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen)


def _mixed_radix(elem: Sequence[int], orders: Sequence[int]) -> int:
    idx = 0
    for e, d in zip(elem, orders):
        idx = idx * d + e % d
    return idx


def coset_partition(orders: Sequence[int], generators: Sequence[Sequence[int]], g: Graph) -> CodePartition:
    """Cosets of a subgroup as a code partition of a Cayley graph on ``Z_{d_1} + ...``.

    Vertices of ``g`` are group elements in mixed-radix order (last component
    fastest). Raises :class:`StructureError` naming the first coset that is
    not a perfect 1-code.
    """
    orders = tuple(int(d) for d in orders)
    if math.prod(orders) != g.v:
        raise ValueError(f"group of order {math.prod(orders)} does not match {g.v} vertices")
    sub = subgroup_closure(orders, generators)
    assigned = np.full(g.v, -1, dtype=np.int64)
    cosets = []
    radix = [math.prod(orders[i + 1:]) for i in range(len(orders))]
    for x in range(g.v):
        if assigned[x] >= 0:
            continue
        rem, elem = x, []
        for r in radix:
            q, rem = divmod(rem, r)
            elem.append(q)
        coset = sorted(_mixed_radix([e + h for e, h in zip(elem, hh)], orders) for hh in sub)
        assigned[coset] = len(cosets)
        cosets.append(tuple(coset))
    for i, c in enumerate(cosets):
        if not is_perfect_code(g, c, 1):
            raise StructureError(f"coset {i + 1} {list(c)} is not a perfect 1-code")
    return CodePartition(g, tuple(cosets))
