"""Neumaier parameter certificates that can be re-checked from the graph alone."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .errors import CertificationError
from .graph import ErgParams, Graph, classify_regularity, clique_nexus, is_clique


@dataclass(frozen=True)
class NeumaierParams:
    v: int
    k: int
    lam: int
    m: int
    s: int

    def __post_init__(self):
        ErgParams(self.v, self.k, self.lam)
        if self.m < 1:
            raise ValueError("nexus must be positive")
        if not 2 <= self.s <= self.v:
            raise ValueError(f"clique size {self.s} outside 2..v")

    def astuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.k, self.lam, self.m, self.s)

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam};{self.m},{self.s})"


@dataclass(frozen=True)
class NeumaierCertificate:
    """Verified Neumaier parameters plus the data needed to re-check them.

    ``witnesses`` holds two non-adjacent pairs ``(u, w, count)`` with unequal
    common-neighbour counts when ``strict`` is true.
    """

    params: NeumaierParams
    witness_clique: tuple[int, ...]
    spread: tuple[tuple[int, ...], ...] | None
    strict: bool
    witnesses: tuple[tuple[int, int, int], tuple[int, int, int]] | None

    def to_json(self) -> dict:
        p = self.params
        return {
            "params": {"v": p.v, "k": p.k, "lambda": p.lam, "m": p.m, "s": p.s},
            "witness_clique": list(self.witness_clique),
            "spread": None if self.spread is None else [list(c) for c in self.spread],
            "strict": self.strict,
            "witnesses": None if self.witnesses is None else [list(w) for w in self.witnesses],
        }

    @classmethod
    def from_json(cls, data: dict) -> "NeumaierCertificate":
        p = data["params"]
        return cls(
            NeumaierParams(p["v"], p["k"], p["lambda"], p["m"], p["s"]),
            tuple(data["witness_clique"]),
            None if data.get("spread") is None else tuple(tuple(c) for c in data["spread"]),
            bool(data["strict"]),
            None if data.get("witnesses") is None else tuple(tuple(w) for w in data["witnesses"]),
        )


def _regular_clique_search(g: Graph, max_size: int) -> tuple[tuple[int, ...], int] | None:
    # In a non-complete graph a regular clique is maximal (nexus s would force degree v-1).
    nxg = nx.from_numpy_array(g.adj.astype(np.int8))
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(nxg) if 2 <= len(c) <= max_size)
    for c in cliques:
        if len(c) < g.v:
            m = clique_nexus(g, c)
            if m is not None:
                return c, m
    return None


def strict_witnesses(g: Graph) -> tuple[tuple[int, int, int], tuple[int, int, int]] | None:
    """First two non-adjacent pairs (lexicographic) with different common-neighbour counts."""
    cc = g.common_counts()
    nonadj = np.triu(~g.adj, 1)
    us, ws = np.nonzero(nonadj)
    if len(us) == 0:
        return None
    counts = cc[us, ws]
    diff = np.flatnonzero(counts != counts[0])
    if len(diff) == 0:
        return None
    j = diff[0]
    return ((int(us[0]), int(ws[0]), int(counts[0])), (int(us[j]), int(ws[j]), int(counts[j])))


def _check_spread(g: Graph, spread: Sequence[Sequence[int]], m: int, s: int) -> tuple[tuple[int, ...], ...]:
    cl = tuple(tuple(sorted(int(x) for x in c)) for c in spread)
    flat = sorted(x for c in cl for x in c)
    if flat != list(range(g.v)):
        raise CertificationError("spread", "cliques do not partition the vertex set")
    for c in cl:
        if len(c) != s:
            raise CertificationError("spread", f"clique {list(c)} has size {len(c)}, expected {s}")
        if clique_nexus(g, c) != m:
            raise CertificationError("spread", f"clique {list(c)} is not {m}-regular")
    return cl


def certify_neumaier(g: Graph, clique: Iterable[int] | None = None,
                     spread: Sequence[Sequence[int]] | None = None) -> NeumaierCertificate:
    """Certify ``g`` as a Neumaier graph, searching for a regular clique if none is given.

    The search enumerates maximal cliques of size at most ``lambda + 2`` in
    sorted order and takes the first regular one.
    """
    if g.is_complete():
        raise CertificationError("non-complete", "graph is complete")
    reg = classify_regularity(g)
    if not reg.is_edge_regular:
        raise CertificationError("edge-regular", f"graph is {reg.kind}")
    if clique is None and spread:
        clique = spread[0]
    if clique is not None:
        c = tuple(sorted(set(int(x) for x in clique)))
        if not is_clique(g, c):
            raise CertificationError("regular clique", f"{list(c)} is not a clique")
        m = clique_nexus(g, c)
        if m is None:
            raise CertificationError("regular clique", f"{list(c)} is not a regular clique")
    else:
        found = _regular_clique_search(g, reg.lam + 2)
        if found is None:
            raise CertificationError("regular clique", f"no regular clique of size <= {reg.lam + 2}")
        c, m = found
    params = NeumaierParams(reg.v, reg.k, reg.lam, m, len(c))
    spread_t = None if spread is None else _check_spread(g, spread, m, len(c))
    wit = None if reg.is_strongly_regular else strict_witnesses(g)
    return NeumaierCertificate(params, c, spread_t, not reg.is_strongly_regular, wit)


def verify_certificate(g: Graph, cert: NeumaierCertificate) -> bool:
    """Re-check every claim in ``cert`` against ``g``; raises on the first failure."""
    p = cert.params
    if g.v != p.v:
        raise CertificationError("params", f"graph has {g.v} vertices, certificate says {p.v}")
    if g.is_complete():
        raise CertificationError("non-complete", "graph is complete")
    deg = g.degrees()
    if not np.all(deg == p.k):
        raise CertificationError("params", f"graph is not {p.k}-regular")
    cc = g.common_counts()
    if not np.all(cc[g.adj] == p.lam):
        raise CertificationError("params", f"some adjacent pair does not have {p.lam} common neighbours")
    if len(cert.witness_clique) != p.s or not is_clique(g, cert.witness_clique):
        raise CertificationError("regular clique", "witness is not an s-clique")
    if clique_nexus(g, cert.witness_clique) != p.m:
        raise CertificationError("regular clique", f"witness clique does not have nexus {p.m}")
    if cert.spread is not None:
        _check_spread(g, cert.spread, p.m, p.s)
    if cert.strict:
        if cert.witnesses is None:
            raise CertificationError("strict", "no witness pairs")
        (u1, w1, c1), (u2, w2, c2) = cert.witnesses
        for u, w, c in cert.witnesses:
            if u == w or g.has_edge(u, w):
                raise CertificationError("strict", f"witness pair ({u},{w}) is adjacent or degenerate")
            if cc[u, w] != c:
                raise CertificationError("strict", f"pair ({u},{w}) has {cc[u, w]} common neighbours, not {c}")
        if c1 == c2:
            raise CertificationError("strict", "witness counts are equal")
    else:
        if not classify_regularity(g).is_strongly_regular:
            raise CertificationError("strict", "certificate claims strong regularity but mu is not constant")
    return True
