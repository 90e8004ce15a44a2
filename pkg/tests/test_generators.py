import networkx as nx
import pytest
from hypothesis import given, strategies as st

from neumaier.codes import is_perfect_code
from neumaier.generators import (
    REGISTRY,
    circulant,
    circulant65,
    delta,
    descend_partition,
    dodecahedron,
    double_dodecahedron,
    enumerate_code_preserving_quotients,
    generate,
    icosahedron,
    infinite_local_params,
    named_graph,
    powers_of_two,
    CODE_IDEAL,
)
from neumaier.errors import StructureError
from neumaier.graph import Graph, classify_regularity
from neumaier.iso import are_isomorphic
from neumaier.lattice import eisenstein, lattice_quotient, root_lattice, sublattice


def from_nx(h) -> Graph:
    return Graph(nx.to_numpy_array(h, nodelist=sorted(h), dtype=bool))


def test_polyhedra_match_networkx():
    assert are_isomorphic(icosahedron()[0], from_nx(nx.icosahedral_graph()))
    assert are_isomorphic(dodecahedron()[0], from_nx(nx.dodecahedral_graph()))


def test_icosahedron_codes_are_antipodal(ico):
    g, part = ico
    dist = g.distances()
    assert all(dist[x, y] == 3 for x, y in part.codes)
    assert len(part) == 6


def test_dodecahedron_two_codes():
    g, pairs = dodecahedron()
    assert len(pairs) == 10
    assert all(is_perfect_code(g, p, 2) for p in pairs)


def test_double_dodecahedron():
    g, part = double_dodecahedron()
    reg = classify_regularity(g)
    assert (reg.v, reg.k, reg.lam) == (40, 9, 2) and reg.is_edge_regular
    assert len(part) == 10 and part.a == 4
    # the two halves are the dodecahedron and the cross edges join vertices at distance 2
    d12 = dodecahedron()[0]
    assert g.induced(range(20)) == d12 and g.induced(range(20, 40)) == d12


def test_circulant65():
    g, part = circulant65()
    reg = classify_regularity(g)
    assert (reg.v, reg.k, reg.lam) == (65, 12, 3)
    assert len(part) == 13 and part.a == 5
    assert sorted(powers_of_two(65)) == sorted({pow(2, i, 65) for i in range(12)})


def test_circulant_errors():
    with pytest.raises(ValueError, match="contains 0"):
        circulant(7, [0, 1, 6])
    with pytest.raises(ValueError, match="negation"):
        circulant(7, [1, 2])


@given(st.integers(3, 30), st.data())
def test_circulant_against_networkx(n, data):
    half = data.draw(st.sets(st.integers(1, n // 2), min_size=1))
    conn = sorted(half | {n - x for x in half})
    assert circulant(n, conn) == from_nx(nx.circulant_graph(n, sorted(half)))


def test_deltas():
    groups = []
    for which in (1, 2):
        q, part = delta(which)
        reg = classify_regularity(q.graph)
        assert (reg.v, reg.k, reg.lam) == (28, 6, 2)
        assert len(part) == 7 and part.a == 4
        groups.append(q.invariants)
    assert groups == [(2, 14), (28,)]
    assert not are_isomorphic(delta(1)[0].graph, delta(2)[0].graph)


def test_descend_requires_containment():
    q = lattice_quotient(eisenstein(), sublattice([[4, 0], [0, 7]]))
    with pytest.raises(StructureError):
        descend_partition(q, sublattice(CODE_IDEAL))


def test_infinite_local_params():
    assert infinite_local_params(eisenstein()) == (6, 2)
    assert infinite_local_params(root_lattice(4, 1)) == (12, 4)


def test_triangular_quotients_at_28():
    found = enumerate_code_preserving_quotients(eisenstein(), sublattice(CODE_IDEAL), 28)
    assert sorted(c.quotient.invariants for c in found) == [(2, 14), (28,)]
    assert enumerate_code_preserving_quotients(eisenstein(), sublattice(CODE_IDEAL), 7) == []
    with pytest.raises(ValueError, match="divisible"):
        enumerate_code_preserving_quotients(eisenstein(), sublattice(CODE_IDEAL), 30)


def test_limit_and_dedupe():
    spec, code = eisenstein(), sublattice(CODE_IDEAL)
    assert len(enumerate_code_preserving_quotients(spec, code, 28, limit=1)) == 1
    raw = enumerate_code_preserving_quotients(spec, code, 28, dedupe=False)
    assert len(raw) >= 2


def test_registry():
    for name in REGISTRY:
        params = {"n": 13, "connection": [1, 5, 8, 12], "subgroup": None} if name == "circulant" else {}
        gen = generate(name, **params)
        assert gen.graph.v > 0
    with pytest.raises(KeyError, match="unknown generator"):
        generate("nope")
    with pytest.raises(ValueError):
        generate("circulant")
    gen = generate("circulant", n=65, log2_powers=True, subgroup=13)
    assert gen.graph == circulant65()[0] and len(gen.partition) == 13


def test_named_graph():
    assert named_graph("icosahedron")[0].v == 12
    assert named_graph("dodecahedron")[0].v == 20
    with pytest.raises(KeyError):
        named_graph("cube")
