"""Gluing edge-regular graphs along perfect 1-codes into Neumaier graphs.

Given ``t`` edge-regular graphs with parameters ``(v, k, lambda)``, each
partitioned into perfect 1-codes ``H_1, ..., H_{v/a}`` of size ``a`` where
``a * t = lambda + 2``, and permutations ``pi_2, ..., pi_t`` of
``{1, ..., v/a}``, the output is the disjoint union of the inputs with the
sets ``H^(1)_i + H^(2)_{pi_2(i)} + ... + H^(t)_{pi_t(i)}`` turned into
cliques. The result is edge-regular ``(vt, k + lambda + 1, lambda)`` and the
added cliques form a spread of 1-regular cliques.

Vertex layout: copy ``l`` (1-based) occupies ``[(l-1)v, lv)``. Permutations
are 1-based one-line tuples, ``perm[h-1] = pi(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .certify import strict_witnesses
from .codes import CodePartition
from .errors import InternalConsistencyError, StructureError, ValidationError
from .graph import ErgParams, Graph, classify_regularity, clique_nexus, is_clique


@dataclass(frozen=True)
class PermTuple:
    """The permutations ``pi_2, ..., pi_t`` in 1-based one-line notation."""

    perms: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        for r, p in enumerate(perms, start=2):
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValidationError(f"pi_{r} is not a permutation of 1..{len(p)}")

    @property
    def t(self) -> int:
        return len(self.perms) + 1

    def pi(self, r: int) -> tuple[int, ...]:
        """``pi_r`` for ``r >= 2``; ``pi_1`` is the identity on the domain size of the others."""
        return self.perms[r - 2]

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.perms]

    @classmethod
    def identity(cls, t: int, n: int) -> "PermTuple":
        return cls(tuple(tuple(range(1, n + 1)) for _ in range(t - 1)))


@dataclass(frozen=True)
class ConstructionContext:
    inputs: tuple[tuple[Graph, CodePartition], ...]
    pi: PermTuple
    params: ErgParams
    a: int

    @property
    def t(self) -> int:
        return len(self.inputs)

    @property
    def v(self) -> int:
        return self.params.v

    @property
    def n_codes(self) -> int:
        return self.params.v // self.a

    def code(self, copy: int, index: int) -> list[int]:
        """``H^(copy)_index`` (both 1-based) as vertices of the output graph."""
        off = (copy - 1) * self.v
        return [off + x for x in self.inputs[copy - 1][1].codes[index - 1]]

    def route(self, copy: int, index: int) -> int:
        """Code index in ``copy`` that meets the clique through ``H^(1)_index``."""
        return index if copy == 1 else self.pi.pi(copy)[index - 1]

    def with_pi(self, pi: PermTuple) -> "ConstructionContext":
        return make_context([x for x in self.inputs], pi)


def make_context(inputs: Sequence[tuple[Graph, CodePartition]], pi: PermTuple | Sequence | None = None
                 ) -> ConstructionContext:
    """Validate the inputs; each failure names the violated condition."""
    if not inputs:
        raise ValidationError("at least one input graph is required")
    if pi is None:
        pi = PermTuple()
    elif not isinstance(pi, PermTuple):
        pi = PermTuple(tuple(tuple(p) for p in pi))
    params = None
    for idx, (g, part) in enumerate(inputs, start=1):
        if part.graph is not g and part.graph != g:
            raise ValidationError(f"input {idx}: partition belongs to a different graph")
        reg = classify_regularity(g)
        if not reg.is_edge_regular:
            raise ValidationError(f"input {idx}: graph is {reg.kind}, not edge-regular")
        p = reg.erg()
        if params is None:
            params = p
        elif p != params:
            raise ValidationError(f"input {idx}: parameters {p.astuple()} differ from {params.astuple()}")
    a = inputs[0][1].a
    for idx, (_, part) in enumerate(inputs, start=1):
        if part.a != a:
            raise ValidationError(f"input {idx}: code size {part.a} differs from {a}")
    lam2 = params.lam + 2
    if lam2 % a:
        raise ValidationError(f"code size a={a} does not divide lambda+2={lam2}")
    t = lam2 // a
    if len(inputs) != t:
        raise ValidationError(f"t=(lambda+2)/a={t} input graphs required, got {len(inputs)}")
    if pi.t != t:
        raise ValidationError(f"{t - 1} permutations required, got {pi.t - 1}")
    n = params.v // a
    for r, p in enumerate(pi.perms, start=2):
        if len(p) != n:
            raise ValidationError(f"pi_{r} acts on 1..{len(p)}, expected 1..{n}")
    return ConstructionContext(tuple(inputs), pi, params, a)


@dataclass(frozen=True)
class ConstructionResult:
    graph: Graph
    spread: tuple[tuple[int, ...], ...]


def f_pi_construct(ctx: ConstructionContext, check: bool = True) -> ConstructionResult:
    v, t, n = ctx.v, ctx.t, ctx.n_codes
    adj = np.zeros((v * t, v * t), dtype=bool)
    for copy, (g, _) in enumerate(ctx.inputs):
        adj[copy * v:(copy + 1) * v, copy * v:(copy + 1) * v] = g.adj
    spread = []
    for i in range(1, n + 1):
        clique = sorted(x for copy in range(1, t + 1) for x in ctx.code(copy, ctx.route(copy, i)))
        adj[np.ix_(clique, clique)] = True
        spread.append(tuple(clique))
    np.fill_diagonal(adj, False)
    out = ConstructionResult(Graph(adj), tuple(spread))
    if check:
        _check_output(ctx, out)
    return out


def _check_output(ctx: ConstructionContext, out: ConstructionResult) -> None:
    p = ctx.params
    reg = classify_regularity(out.graph)
    expect = (p.v * ctx.t, p.k + p.lam + 1, p.lam)
    if not reg.is_edge_regular or (reg.v, reg.k, reg.lam) != expect:
        raise InternalConsistencyError(f"output classified as {reg}, expected edge-regular {expect}")
    for c in out.spread:
        if len(c) != p.lam + 2:
            raise InternalConsistencyError(f"spread clique {list(c)} has size {len(c)}")
        if clique_nexus(out.graph, c) != 1:
            raise InternalConsistencyError(f"spread clique {list(c)} is not 1-regular")


@dataclass(frozen=True)
class StrictnessVerdict:
    """``kind`` is ``strict`` or ``strongly_regular``; ``method`` says how it was decided."""

    kind: str
    method: str
    witnesses: tuple[tuple[int, int, int], ...] | None

    @property
    def strict(self) -> bool:
        return self.kind == "strict"


def strictness_verdict(ctx: ConstructionContext, output: Graph) -> StrictnessVerdict:
    """Strictness of a construction output.

    For ``t >= 2`` the two distinguishing pairs are built explicitly: a vertex of
    ``H^(1)_1`` with a vertex of copy 2 outside the clique through it (two
    common neighbours), and two vertices at distance 2 inside copy 1 (at least
    three). For ``t = 1`` the non-adjacent pairs are scanned.

    Complete inputs have no pair at distance 2, so the second witness does not
    exist (``K_a`` glued ``a`` times is the strongly regular ``K_a x K_a``);
    those fall back to the scan as well.
    """
    dist = ctx.inputs[0][0].distances()
    us, zs = np.nonzero(np.triu(dist == 2))
    if ctx.t >= 2 and len(us):
        x = ctx.code(1, 1)[0]
        i2 = next(h for h in range(1, ctx.n_codes + 1) if h != ctx.route(2, 1))
        y = ctx.code(2, i2)[0]
        u, z = int(us[0]), int(zs[0])
        cc = output.common_counts()
        c_xy, c_uz = int(cc[x, y]), int(cc[u, z])
        if output.has_edge(x, y) or output.has_edge(u, z) or c_xy != 2 or c_uz < 3:
            raise InternalConsistencyError(
                f"distinguishing pairs failed: ({x},{y}) has {c_xy}, ({u},{z}) has {c_uz} common neighbours")
        if classify_regularity(output).is_co_edge_regular:
            raise InternalConsistencyError("t >= 2 but the output is co-edge-regular")
        return StrictnessVerdict("strict", "distinguishing-pairs", ((x, y, c_xy), (u, z, c_uz)))
    reg = classify_regularity(output)
    if reg.is_strongly_regular:
        return StrictnessVerdict("strongly_regular", "scan", None)
    return StrictnessVerdict("strict", "scan", strict_witnesses(output))


def deconstruct(g: Graph, spread: Sequence[Sequence[int]]) -> list[tuple[Graph, CodePartition]]:
    """Remove the spread edges and split into components with their induced code partitions.

    Components are ordered by smallest vertex; a component's vertices keep
    their relative order.
    """
    cliques = [sorted(int(x) for x in c) for c in spread]
    if sorted(x for c in cliques for x in c) != list(range(g.v)):
        raise StructureError("spread does not partition the vertex set")
    for c in cliques:
        if not is_clique(g, c):
            raise StructureError(f"spread member {c} is not a clique")
        if len(c) < g.v and clique_nexus(g, c) != 1:
            raise StructureError(f"spread member {c} is not a 1-regular clique")
    adj = g.adj.copy()
    for c in cliques:
        adj[np.ix_(c, c)] = False
    ncomp, labels = connected_components(adj.astype(np.int8), directed=False)
    comps = sorted((np.flatnonzero(labels == i).tolist() for i in range(ncomp)), key=lambda c: c[0])
    out = []
    for comp in comps:
        local = {x: i for i, x in enumerate(comp)}
        sub = Graph(adj[np.ix_(comp, comp)])
        codes = sorted(tuple(sorted(local[x] for x in c if x in local)) for c in cliques)
        codes = [h for h in codes if h]
        out.append((sub, CodePartition(sub, tuple(codes))))
    return out


# ---------------------------------------------------------------------------
# recipe files


def recipe_to_json(ctx: ConstructionContext) -> dict:
    return {
        "inputs": [{"graph6": g.to_graph6(), "partition": part.to_json()} for g, part in ctx.inputs],
        "pi": ctx.pi.to_json(),
    }


def recipe_from_json(data: dict) -> ConstructionContext:
    if not isinstance(data, dict) or "inputs" not in data:
        raise ValidationError("recipe must be an object with an 'inputs' list")
    inputs = []
    for idx, item in enumerate(data["inputs"], start=1):
        try:
            g = Graph.from_graph6(item["graph6"])
            part = CodePartition.from_json(g, item["partition"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"input {idx}: malformed entry ({exc})") from exc
        except StructureError as exc:
            raise ValidationError(f"input {idx}: {exc}") from exc
        inputs.append((g, part))
    return make_context(inputs, PermTuple(tuple(tuple(p) for p in data.get("pi", []))))
