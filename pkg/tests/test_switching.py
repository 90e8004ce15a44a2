import itertools

import pytest
from hypothesis import given, strategies as st

from neumaier.construction import PermTuple, f_pi_construct, make_context
from neumaier.errors import ValidationError
from neumaier.generators import delta, icosahedron
from neumaier.graph import Graph, cycle_graph
from neumaier.spectral import char_poly
from neumaier.switching import (
    SwitchingDegreeError,
    SwitchingOutsideError,
    SwitchingPartition,
    SwitchingSizeError,
    prop33_switch,
    switched_perms,
    validate_switching_partition,
    wqh_switch,
)


def pair_ctx(perm=(1, 2, 3, 4, 5, 6)):
    ico = icosahedron()
    return make_context([ico, ico], [tuple(perm)])


def test_size_error():
    with pytest.raises(SwitchingSizeError):
        validate_switching_partition(cycle_graph(6), [0], [2, 3])


def test_degree_error():
    # path 0-1-2 plus isolated 3: C1={0,1} has an edge, C2={2,3} does not
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    with pytest.raises(SwitchingDegreeError):
        validate_switching_partition(g, [0, 1], [2, 3])


def test_outside_error_names_vertex():
    # vertex 4 sees one of C1 = {0, 1} and none of C2 = {2, 3}
    g = Graph.from_edges(6, [(0, 4), (0, 5), (1, 5)])
    with pytest.raises(SwitchingOutsideError) as err:
        validate_switching_partition(g, [0, 1], [2, 3])
    assert err.value.vertex == 4


def test_argument_errors():
    g = cycle_graph(6)
    with pytest.raises(ValueError):
        validate_switching_partition(g, [0], [0])
    with pytest.raises(ValueError):
        validate_switching_partition(g, [], [])
    with pytest.raises(ValueError):
        validate_switching_partition(g, [0], [9])


def test_singletons_by_definition():
    # two non-adjacent vertices: valid iff every outside vertex is a neighbour of
    # both, of neither, or of exactly one of them
    g = cycle_graph(6)
    for u, w in itertools.combinations(range(6), 2):
        if g.has_edge(u, w):
            continue
        p = validate_switching_partition(g, [u], [w])
        switched = wqh_switch(g, p)
        assert char_poly(switched) == char_poly(g)
        assert switched.num_edges == g.num_edges


def test_noop_switch():
    # both outside vertices see C1 and C2 equally
    g = Graph.from_edges(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
    p = validate_switching_partition(g, [0], [1])
    assert wqh_switch(g, p) == g


def test_wqh_cospectral_on_construction():
    ctx = pair_ctx()
    g = f_pi_construct(ctx).graph
    c1 = ctx.code(1, 1) + ctx.code(2, 1)
    c2 = ctx.code(1, 2) + ctx.code(2, 2)
    p = validate_switching_partition(g, c1, c2)
    assert isinstance(p, SwitchingPartition)
    assert char_poly(wqh_switch(g, p)) == char_poly(g)


def test_switched_perms_formula():
    pi = PermTuple(((3, 1, 2, 4), (2, 4, 1, 3)))
    new = switched_perms(pi, [1, 2], 1, 3)
    assert new.perms[0] == (3, 1, 2, 4)
    # pi'_3(h) = pi_3((1 3)(h))
    old3 = pi.perms[1]
    swap = {1: 3, 3: 1}
    assert new.perms[1] == tuple(old3[swap.get(h, h) - 1] for h in range(1, 5))


def test_all_copies_in_subset_is_identity():
    ctx = pair_ctx((2, 3, 1, 5, 6, 4))
    res = prop33_switch(ctx, [1, 2], 1, 4)
    assert res.pi == ctx.pi
    assert res.graph == f_pi_construct(ctx).graph


def test_t1_switch_is_noop():
    q, part = delta(1)
    ctx = make_context([(q.graph, part)])
    res = prop33_switch(ctx, [1], 1, 2)
    assert res.pi == PermTuple() and res.graph == f_pi_construct(ctx).graph


def test_prop33_errors():
    ctx = pair_ctx()
    with pytest.raises(ValidationError, match="contain 1"):
        prop33_switch(ctx, [2], 1, 2)
    with pytest.raises(ValidationError, match="distinct"):
        prop33_switch(ctx, [1], 3, 3)
    with pytest.raises(ValidationError, match="within"):
        prop33_switch(ctx, [1, 3], 1, 2)


@given(st.permutations(range(1, 7)),
       st.sampled_from([(1,), (1, 2)]),
       st.tuples(st.integers(1, 6), st.integers(1, 6)).filter(lambda p: p[0] != p[1]))
def test_prop33_property(perm, subset, ij):
    ctx = pair_ctx(perm)
    before = f_pi_construct(ctx).graph
    res = prop33_switch(ctx, subset, *ij)  # asserts equality with the new construction
    assert char_poly(res.graph) == char_poly(before)
    assert res.graph.num_edges == before.num_edges
    back = prop33_switch(ctx.with_pi(res.pi), subset, *ij)
    assert back.graph == before and back.pi == ctx.pi


def test_transpositions_reach_any_pi():
    ctx = pair_ctx()
    target = (4, 6, 1, 3, 2, 5)
    cur = list(ctx.pi.perms[0])
    # bubble-sort the routing into place with switches on I = {1}
    while tuple(cur) != target:
        h = next(h for h in range(6) if cur[h] != target[h])
        j = cur.index(target[h])
        res = prop33_switch(ctx, [1], h + 1, j + 1)
        ctx = ctx.with_pi(res.pi)
        cur = list(res.pi.perms[0])
    assert f_pi_construct(ctx).graph == f_pi_construct(pair_ctx(target)).graph
