"""Wang-Qiu-Hu switching and its action on glued constructions.

A switching set is a pair ``C1, C2`` of equal size such that the induced
subgraphs on ``C1``, ``C2`` are regular of the same degree and the one on
``C1 + C2`` is regular. Every outside vertex must either see ``C1`` and ``C2``
equally often, or be joined to exactly one of them entirely. Swapping the
joins of the latter kind preserves the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .construction import ConstructionContext, PermTuple, f_pi_construct
from .errors import InternalConsistencyError, ValidationError
from .graph import Graph


class SwitchingSizeError(ValidationError):
    pass


class SwitchingDegreeError(ValidationError):
    pass


class SwitchingOutsideError(ValidationError):
    """Some vertex outside ``C1 + C2`` meets neither condition; ``vertex`` names it."""

    def __init__(self, vertex: int, n1: int, n2: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has {n1} neighbours in C1 and {n2} in C2 and is not fully "
                         "joined to exactly one of them")


@dataclass(frozen=True)
class SwitchingPartition:
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    d: tuple[int, ...]


def _induced_degree(g: Graph, s: list[int]) -> int | None:
    deg = g.adj[np.ix_(s, s)].sum(axis=1)
    return int(deg[0]) if np.all(deg == deg[0]) else None


def validate_switching_partition(g: Graph, c1: Iterable[int], c2: Iterable[int]) -> SwitchingPartition:
    s1 = sorted(set(int(x) for x in c1))
    s2 = sorted(set(int(x) for x in c2))
    if not s1 or not s2:
        raise ValueError("switching sets must be non-empty")
    if set(s1) & set(s2):
        raise ValueError("switching sets must be disjoint")
    if any(not 0 <= x < g.v for x in s1 + s2):
        raise ValueError("switching set vertex out of range")
    if len(s1) != len(s2):
        raise SwitchingSizeError(f"|C1|={len(s1)} differs from |C2|={len(s2)}")
    d1, d2 = _induced_degree(g, s1), _induced_degree(g, s2)
    if d1 is None or d2 is None or d1 != d2:
        raise SwitchingDegreeError(f"induced subgraphs on C1, C2 are not regular of equal degree ({d1}, {d2})")
    if _induced_degree(g, s1 + s2) is None:
        raise SwitchingDegreeError("induced subgraph on C1 + C2 is not regular")
    inside = set(s1) | set(s2)
    d = [x for x in range(g.v) if x not in inside]
    n1 = g.adj[np.ix_(d, s1)].sum(axis=1)
    n2 = g.adj[np.ix_(d, s2)].sum(axis=1)
    ok = (n1 == n2) | ((n1 == len(s1)) & (n2 == 0)) | ((n2 == len(s2)) & (n1 == 0))
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok)[0])
        raise SwitchingOutsideError(d[bad], int(n1[bad]), int(n2[bad]))
    return SwitchingPartition(tuple(s1), tuple(s2), tuple(d))


def wqh_switch(g: Graph, p: SwitchingPartition) -> Graph:
    """Swap the joins of outside vertices fully joined to exactly one of ``C1``, ``C2``."""
    p = validate_switching_partition(g, p.c1, p.c2)
    c1, c2 = list(p.c1), list(p.c2)
    adj = g.adj.copy()
    for x in p.d:
        n1 = int(g.adj[x, c1].sum())
        n2 = int(g.adj[x, c2].sum())
        if n1 == len(c1) and n2 == 0:
            adj[x, c1] = adj[c1, x] = False
            adj[x, c2] = adj[c2, x] = True
        elif n2 == len(c2) and n1 == 0:
            adj[x, c2] = adj[c2, x] = False
            adj[x, c1] = adj[c1, x] = True
    return Graph(adj)


def switched_perms(pi: PermTuple, subset: Iterable[int], i: int, j: int) -> PermTuple:
    """Permutation tuple after switching on ``(I, i, j)``.

    Copies in ``I`` keep their permutation; every other ``pi_r`` is
    precomposed with the transposition ``(i j)``: the new ``pi_r(h)`` is
    ``pi_r((i j)(h))``.
    """
    keep = set(subset)
    new = []
    for r, p in enumerate(pi.perms, start=2):
        if r in keep:
            new.append(p)
        else:
            q = list(p)
            q[i - 1], q[j - 1] = p[j - 1], p[i - 1]
            new.append(tuple(q))
    return PermTuple(tuple(new))


@dataclass(frozen=True)
class SwitchResult:
    graph: Graph
    pi: PermTuple
    partition: SwitchingPartition


def construction_switching_sets(ctx: ConstructionContext, subset: Iterable[int], i: int, j: int
                                ) -> tuple[list[int], list[int]]:
    """``C1``, ``C2``: the parts in copies ``l`` in ``I`` of the spread cliques through ``H^(1)_i``, ``H^(1)_j``."""
    c1 = sorted(x for l in subset for x in ctx.code(l, ctx.route(l, i)))
    c2 = sorted(x for l in subset for x in ctx.code(l, ctx.route(l, j)))
    return c1, c2


def prop33_switch(ctx: ConstructionContext, subset: Iterable[int], i: int, j: int) -> SwitchResult:
    """Switch a construction output on ``(I, i, j)`` and confirm it is the construction for the new tuple."""
    sub = sorted(set(int(x) for x in subset))
    if 1 not in sub:
        raise ValidationError("the copy subset I must contain 1")
    if any(not 1 <= l <= ctx.t for l in sub):
        raise ValidationError(f"copy subset {sub} not within 1..{ctx.t}")
    n = ctx.n_codes
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValidationError(f"need distinct code indices i, j in 1..{n}")
    g = f_pi_construct(ctx).graph
    c1, c2 = construction_switching_sets(ctx, sub, i, j)
    part = validate_switching_partition(g, c1, c2)
    switched = wqh_switch(g, part)
    new_pi = switched_perms(ctx.pi, sub, i, j)
    expected = f_pi_construct(ctx.with_pi(new_pi)).graph
    if switched != expected:
        raise InternalConsistencyError(f"switching on I={sub}, i={i}, j={j} does not give the construction "
                                       f"for {new_pi.to_json()}")
    return SwitchResult(switched, new_pi, part)
