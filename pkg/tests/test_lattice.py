import math

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from neumaier.errors import QuotientError
from neumaier.generators import CODE_IDEAL, T1, T2
from neumaier.lattice import (
    EISENSTEIN_UNITS,
    a2_to_eisenstein,
    count_sublattices,
    direct_sum,
    eisenstein,
    eisenstein_mul,
    eisenstein_norm,
    eisenstein_to_a2,
    enumerate_hnf,
    find_perfect_code_sublattices,
    gamma_params,
    group_identity_check,
    hnf,
    lattice_quotient,
    local_params_bruteforce,
    matmul,
    root_lattice,
    root_system_connection_set,
    snf,
    sublattice,
    sublattices_within,
)


def sigma(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_hnf_shape_and_lattice(rows):
    h = hnf(rows)
    rank = sympy.Matrix(rows).rank()
    assert len(h) == rank
    for r, row in enumerate(h):
        lead = next(c for c, x in enumerate(row) if x)
        assert row[lead] > 0
        for above in h[:r]:
            assert 0 <= above[lead] < row[lead]
    # same row space: each basis reduces to the other
    assert hnf(h + rows) == h
    assert hnf(h) == h


@given(square)
def test_snf_matches_sympy(rows):
    m = sympy.Matrix(rows)
    d, u, v = snf(rows)
    assert sympy.Matrix(d) == sympy.Matrix(u) * m * sympy.Matrix(v)
    assert abs(sympy.Matrix(u).det()) == 1 and abs(sympy.Matrix(v).det()) == 1
    ours = [abs(d[i][i]) for i in range(min(len(rows), len(rows[0])))]
    theirs = [abs(x) for x in smith_normal_form(m, domain=sympy.ZZ).diagonal()]
    assert ours == theirs
    for a, b in zip(ours, ours[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


@pytest.mark.parametrize("n", range(1, 13))
def test_rank2_counts(n):
    assert count_sublattices(2, n) == sigma(n)


def test_rank3_counts():
    assert count_sublattices(3, 13) == 13 * 13 + 13 + 1 == 183
    assert count_sublattices(3, 6) == 7 * 13 == 91
    assert count_sublattices(2, 4) == 7


def test_enumerated_hnfs_are_distinct():
    hs = [tuple(map(tuple, h)) for h in enumerate_hnf(3, 8)]
    assert len(hs) == len(set(hs))
    assert all(tuple(map(tuple, hnf(h))) == h for h in hs)


def test_sublattices_within():
    c = sublattice(CODE_IDEAL)
    subs = list(sublattices_within(c, 4))
    assert len(subs) == 7
    assert all(s.index == 28 and c.contains_sublattice(s) for s in subs)


def test_eisenstein_quotients():
    assert sublattice(CODE_IDEAL).index == 7
    q1 = lattice_quotient(eisenstein(), sublattice(T1))
    q2 = lattice_quotient(eisenstein(), sublattice(T2))
    assert q1.invariants == (2, 14)
    assert q2.invariants == (28,)
    assert q1.graph.v == q2.graph.v == 28


def test_quotient_labels_roundtrip():
    q = lattice_quotient(eisenstein(), sublattice(T1))
    for vtx in range(q.graph.v):
        assert q.vertex_of(q.qmap.representative(q.label(vtx))) == vtx


def test_quotient_errors():
    with pytest.raises(QuotientError, match="lies in"):
        lattice_quotient(eisenstein(), sublattice([[1, 0], [0, 1]]))
    with pytest.raises(QuotientError, match="congruent"):
        lattice_quotient(eisenstein(), sublattice([[2, 0], [0, 2]]))
    with pytest.raises(ValueError):
        lattice_quotient(eisenstein(), sublattice([[2]]))


def test_quotient_is_deterministic():
    a = lattice_quotient(eisenstein(), sublattice(T2)).graph
    b = lattice_quotient(eisenstein(), sublattice(T2)).graph
    assert a == b


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_eisenstein_arithmetic(x, y):
    assert eisenstein_norm(eisenstein_mul(x, y)) == eisenstein_norm(x) * eisenstein_norm(y)
    a2 = eisenstein_to_a2(x)
    assert sum(a2) == 0 and a2_to_eisenstein(a2) == x
    assert sum(t * t for t in a2) == 2 * eisenstein_norm(x)


def test_units_and_root_systems():
    assert all(eisenstein_norm(u) == 1 for u in EISENSTEIN_UNITS)
    assert len(EISENSTEIN_UNITS) == 6
    assert {a2_to_eisenstein(s) for s in root_system_connection_set(3, 2, 1)} == set(EISENSTEIN_UNITS)
    assert len(root_system_connection_set(4, 2, 1)) == 12
    assert len(root_system_connection_set(3, 2, 2)) == 12
    assert len(root_system_connection_set(4, 2, 2)) == 24
    with pytest.raises(ValueError):
        root_system_connection_set(4, 3, 1)


@pytest.mark.parametrize("n,m,family", [(3, 2, 1), (4, 2, 1), (5, 2, 1), (4, 2, 2), (5, 4, 1), (5, 4, 2), (6, 4, 1)])
def test_gamma_params_against_bruteforce(n, m, family):
    k, lam = gamma_params(n, m, family)
    spec = root_lattice(n, family, m)
    bk, lams = local_params_bruteforce(spec)
    assert (bk, lams) == (k, {lam})


def test_gamma_params_examples():
    assert gamma_params(3, 2, 1) == (6, 2)
    assert gamma_params(4, 2, 1) == (12, 4)
    assert gamma_params(4, 2, 2) == (24, 8)
    with pytest.raises(ValueError):
        gamma_params(2, 2, 1)


def test_group_identity():
    assert group_identity_check(5, 4, 2)
    assert group_identity_check(6, 4, 1)


def test_perfect_code_sublattices_of_triangular_grid():
    codes = find_perfect_code_sublattices(eisenstein())
    assert len(codes) == 2
    assert sublattice(CODE_IDEAL).hnf in {c.hnf for c in codes}


def test_direct_sum():
    s = direct_sum(eisenstein(), eisenstein())
    assert s.rank == 4 and len(s.connection) == 12
    assert local_params_bruteforce(s) == (12, {2})


def test_matmul():
    assert matmul([[1, 2], [3, 4]], [[0, 1], [1, 0]]) == [[2, 1], [4, 3]]
    assert math.prod(sublattice(T2).hnf[i][i] for i in range(2)) == 28
