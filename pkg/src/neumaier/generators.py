"""Concrete input graphs: polyhedra, circulants and lattice quotients.

Every generator checks the regularity parameters of what it returns, so a
misbuilt adjacency fails at construction time rather than downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .codes import CodePartition, coset_partition, is_perfect_code
from .errors import InternalConsistencyError, StructureError
from .graph import Graph, classify_regularity
from .iso import canonical_form
from .lattice import (
    LatticeQuotient,
    LatticeSpec,
    QuotientError,
    SublatticeBasis,
    cayley_graph,
    eisenstein,
    lattice_quotient,
    sublattice,
    sublattices_within,
)


def _expect_edge_regular(g: Graph, params: tuple[int, int, int], what: str) -> None:
    reg = classify_regularity(g)
    if not reg.is_edge_regular or (reg.v, reg.k, reg.lam) != params:
        raise InternalConsistencyError(f"{what}: expected edge-regular {params}, got {reg}")


def antipodal_pairs(g: Graph) -> list[tuple[int, int]]:
    """Pairs at maximum distance, for graphs where every vertex has a unique antipode."""
    d = g.distances()
    diam = int(d.max())
    pairs = []
    for x in range(g.v):
        far = np.flatnonzero(d[x] == diam)
        if len(far) != 1:
            raise StructureError(f"vertex {x} has {len(far)} vertices at distance {diam}")
        if x < far[0]:
            pairs.append((x, int(far[0])))
    return pairs


def icosahedron() -> tuple[Graph, CodePartition]:
    """Icosahedron: apex 0, upper ring 1-5, lower ring 6-10, apex 11.

    Ships with the partition into its six antipodal pairs.
    """
    edges = []
    for i in range(5):
        up, nxt = 1 + i, 1 + (i + 1) % 5
        lo, lo_nxt = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, nxt), (lo, lo_nxt), (11, lo), (up, lo), (nxt, lo)]
    g = Graph.from_edges(12, edges)
    _expect_edge_regular(g, (12, 5, 2), "icosahedron")
    return g, CodePartition(g, tuple(antipodal_pairs(g)))


def dodecahedron() -> tuple[Graph, list[tuple[int, int]]]:
    """Dodecahedron as the generalised Petersen graph GP(10, 2).

    Outer 10-cycle ``0..9``, spokes ``i -- 10+i``, inner edges
    ``10+i -- 10+(i+2) mod 10``. Returned with its ten antipodal pairs, each a
    perfect 2-code.
    """
    edges = []
    for i in range(10):
        edges += [(i, (i + 1) % 10), (i, 10 + i), (10 + i, 10 + (i + 2) % 10)]
    g = Graph.from_edges(20, edges)
    reg = classify_regularity(g)
    if reg.k != 3 or int(g.distances().max()) != 5:
        raise InternalConsistencyError(f"dodecahedron misbuilt: {reg}")
    pairs = antipodal_pairs(g)
    for p in pairs:
        if not is_perfect_code(g, p, 2):
            raise InternalConsistencyError(f"antipodal pair {p} is not a perfect 2-code")
    return g, pairs


def double_dodecahedron() -> tuple[Graph, CodePartition]:
    """Two matched dodecahedra with ``x_1 -- y_2`` whenever ``d(x, y) = 2``.

    Copy 1 is ``0..19``, copy 2 is ``20..39``. The codes are
    ``{x_1, x'_1, x_2, x'_2}`` over antipodal pairs ``{x, x'}``.
    """
    d12, pairs = dodecahedron()
    dist = d12.distances()
    adj = np.zeros((40, 40), dtype=bool)
    adj[:20, :20] = d12.adj
    adj[20:, 20:] = d12.adj
    cross = dist == 2
    adj[:20, 20:] = cross
    adj[20:, :20] = cross.T
    g = Graph(adj)
    _expect_edge_regular(g, (40, 9, 2), "double dodecahedron")
    codes = tuple((x, y, x + 20, y + 20) for x, y in pairs)
    return g, CodePartition(g, codes)


def circulant(n: int, connection: Sequence[int]) -> Graph:
    s = sorted({int(x) % n for x in connection})
    if 0 in s:
        raise ValueError("connection set contains 0")
    if any((-x) % n not in s for x in s):
        raise ValueError("connection set is not closed under negation mod n")
    return cayley_graph((n,), [(x,) for x in s])


def powers_of_two(n: int) -> list[int]:
    """Distinct residues ``2^i mod n``."""
    out, x = [], 1 % n
    while x not in out:
        out.append(x)
        x = (2 * x) % n
    return out


def circulant65() -> tuple[Graph, CodePartition]:
    """``Cay(Z_65, {2^i})`` with the cosets of ``<13>`` as codes."""
    g = circulant(65, powers_of_two(65))
    _expect_edge_regular(g, (65, 12, 3), "65-vertex circulant")
    return g, coset_partition((65,), [(13,)], g)


# ---------------------------------------------------------------------------
# Eisenstein quotients

CODE_IDEAL = ((2, -1), (1, 3))
"""Additive basis of the ideal generated by ``2 - omega`` (index 7)."""

T1 = ((-4, 2), (14, 0))
"""``2(-2 + omega) x + 14 y``."""

T2 = ((5, 1), (28, 0))
"""``(5 + omega) x + 28 y``."""


def descend_partition(q: LatticeQuotient, code: SublatticeBasis) -> CodePartition:
    """Partition of a quotient graph by the cosets of ``code / T``."""
    if not code.contains_sublattice(q.sublattice):
        raise StructureError("code sublattice does not contain the quotient sublattice")
    gens = [q.qmap.element(row) for row in code.hnf]
    return coset_partition(q.invariants, gens, q.graph)


def delta(which: int) -> tuple[LatticeQuotient, CodePartition]:
    """Triangular-grid quotients by ``T1`` (``which=1``) or ``T2`` (``which=2``)."""
    t = {1: T1, 2: T2}[which]
    q = lattice_quotient(eisenstein(), sublattice(t))
    _expect_edge_regular(q.graph, (28, 6, 2), f"Delta_{which}")
    return q, descend_partition(q, sublattice(CODE_IDEAL))


# ---------------------------------------------------------------------------
# code-preserving quotient search


@dataclass
class QuotientCandidate:
    sublattice: SublatticeBasis
    quotient: LatticeQuotient
    partition: CodePartition
    canonical: str = field(repr=False)

    @property
    def graph(self) -> Graph:
        return self.quotient.graph


def infinite_local_params(spec: LatticeSpec) -> tuple[int, int]:
    """``(k, lambda)`` of the infinite Cayley graph, counted on the connection set."""
    coords = spec.connection_coords()
    cset = {tuple(c) for c in coords}
    lams = {sum(1 for x in coords if tuple(a - b for a, b in zip(x, s)) in cset) for s in coords}
    if len(lams) != 1:
        raise StructureError("infinite graph is not edge-regular")
    return len(coords), lams.pop()


def iter_code_preserving_quotients(spec: LatticeSpec, code: SublatticeBasis, target_v: int,
                                   seen: set[str] | None = None) -> Iterator[QuotientCandidate]:
    """Lazy form of :func:`enumerate_code_preserving_quotients`.

    When ``seen`` is given, graphs whose canonical form is already in it are
    skipped and new ones are added, so one set can dedupe across several code
    sublattices.
    """
    if target_v % code.index:
        raise ValueError(f"target {target_v} is not divisible by the code index {code.index}")
    k, lam = infinite_local_params(spec)
    for t in sorted(sublattices_within(code, target_v // code.index), key=lambda s: s.hnf):
        try:
            q = lattice_quotient(spec, t)
        except QuotientError:
            continue
        reg = classify_regularity(q.graph)
        if not reg.is_edge_regular or (reg.k, reg.lam) != (k, lam):
            continue
        try:
            part = descend_partition(q, code)
        except StructureError:
            continue
        cand = QuotientCandidate(t, q, part, canonical_form(q.graph).graph6)
        if seen is not None:
            if cand.canonical in seen:
                continue
            seen.add(cand.canonical)
        yield cand


def enumerate_code_preserving_quotients(spec: LatticeSpec, code: SublatticeBasis, target_v: int,
                                        dedupe: bool = True, limit: int | None = None
                                        ) -> list[QuotientCandidate]:
    """Quotients of order ``target_v`` through which the code partition descends.

    Candidates are the sublattices of ``code`` of index ``target_v / [L : code]``;
    quotients that are not simple, not edge-regular with the local parameters
    of the infinite graph, or whose descended partition fails verification are
    dropped. Results are sorted by HNF and, with ``dedupe``, reduced to one per
    isomorphism class of the graph. ``limit`` stops the scan once that many
    quotients have been kept.
    """
    it = iter_code_preserving_quotients(spec, code, target_v, set() if dedupe else None)
    return list(itertools.islice(it, limit))


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Generated:
    name: str
    graph: Graph
    partition: CodePartition | None
    meta: dict


def _gen_icosahedron(**_):
    g, p = icosahedron()
    return Generated("icosahedron", g, p, {})


def _gen_dodecahedron(**_):
    g, pairs = dodecahedron()
    return Generated("dodecahedron", g, None, {"perfect_2_codes": [list(p) for p in pairs]})


def _gen_double_dodecahedron(**_):
    g, p = double_dodecahedron()
    return Generated("double_dodecahedron", g, p, {})


def _gen_circulant(n: int | None = None, connection: Sequence[int] | None = None,
                   log2_powers: bool = False, subgroup: int | None = None, **_):
    if n is None:
        raise ValueError("circulant needs n")
    if log2_powers:
        connection = powers_of_two(n)
    if not connection:
        raise ValueError("circulant needs a connection set or log2_powers")
    g = circulant(n, connection)
    part = coset_partition((n,), [(subgroup,)], g) if subgroup is not None else None
    return Generated("circulant", g, part, {"n": n, "connection": sorted(int(x) % n for x in connection)})


def _gen_circulant65(**_):
    g, p = circulant65()
    return Generated("circulant65", g, p, {"subgroup": [0, 13, 26, 39, 52]})


def _gen_delta(which):
    def gen(**_):
        q, p = delta(which)
        return Generated(f"delta{which}", q.graph, p, {"group": list(q.invariants),
                                                       "sublattice": q.sublattice.to_json()})
    return gen


REGISTRY: dict[str, Callable[..., Generated]] = {
    "icosahedron": _gen_icosahedron,
    "dodecahedron": _gen_dodecahedron,
    "double_dodecahedron": _gen_double_dodecahedron,
    "circulant": _gen_circulant,
    "circulant65": _gen_circulant65,
    "delta1": _gen_delta(1),
    "delta2": _gen_delta(2),
}


def generate(name: str, **params) -> Generated:
    try:
        fn = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown generator {name!r}; known: {', '.join(sorted(REGISTRY))}") from None
    return fn(**params)


def named_graph(name: str) -> tuple[Graph, CodePartition | list | None]:
    """``icosahedron`` (with antipodal 1-code partition) or ``dodecahedron`` (with antipodal 2-codes)."""
    if name == "icosahedron":
        return icosahedron()
    if name == "dodecahedron":
        return dodecahedron()
    raise KeyError(f"unknown named graph {name!r}")
