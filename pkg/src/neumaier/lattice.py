"""Integer lattices, their normal forms, and finite quotient Cayley graphs.

Conventions
-----------
* Vectors are rows. A lattice of rank ``r`` in ``Z^n`` is stored by a basis
  matrix whose rows are ambient vectors; *lattice coordinates* are integer
  row vectors ``c`` with ``x = c @ basis``.
* Hermite normal form is row-style echelon form: positive pivots, entries
  above a pivot reduced into ``[0, pivot)``.
* A sublattice is given by an ``r x r`` integer matrix in lattice coordinates.
  Its quotient ``Z^r / rowspace(T)`` is ``Z_{d_1} + ... + Z_{d_s}`` (Smith
  invariants ``d_i > 1``, ``d_1 | d_2 | ...``). Group elements are tuples
  ``(g_1, ..., g_s)`` and vertex numbers use mixed radix with the last
  component varying fastest.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import QuotientError
from .graph import Graph

Matrix = list[list[int]]


def _as_matrix(rows) -> Matrix:
    return [[int(x) for x in row] for row in rows]


# ---------------------------------------------------------------------------
# normal forms


def hnf(rows) -> Matrix:
    """Row Hermite normal form; zero rows are dropped."""
    a = _as_matrix(rows)
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return a[:r]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(rows) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D = U @ M @ V`` with ``U``, ``V`` unimodular.

    The diagonal of ``D`` is non-negative and each entry divides the next.
    """
    a = _as_matrix(rows)
    m, n = len(a), len(a[0])
    u, v = _identity(m), _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def solve_in_basis(basis_hnf: Matrix, x: Sequence[int]) -> list[int] | None:
    """Integer ``c`` with ``c @ basis == x`` for an echelon basis, or ``None``."""
    rest = [int(t) for t in x]
    coords = []
    for row in basis_hnf:
        p = next(j for j, val in enumerate(row) if val)
        q, r = divmod(rest[p], row[p])
        if r:
            return None
        coords.append(q)
        rest = [a - q * b for a, b in zip(rest, row)]
    if any(rest):
        return None
    return coords


def enumerate_hnf(rank: int, index: int) -> Iterator[Matrix]:
    """All upper-triangular HNF matrices of the given size and determinant."""
    def diagonals(r, n):
        if r == 1:
            yield (n,)
            return
        for d in range(1, n + 1):
            if n % d == 0:
                for rest in diagonals(r - 1, n // d):
                    yield (d,) + rest

    for diag in diagonals(rank, index):
        slots = [(i, j) for j in range(rank) for i in range(j)]
        ranges = [range(diag[j]) for (i, j) in slots]
        for values in itertools.product(*ranges):
            h = [[0] * rank for _ in range(rank)]
            for k in range(rank):
                h[k][k] = diag[k]
            for (i, j), val in zip(slots, values):
                h[i][j] = val
            yield h


def count_sublattices(rank: int, index: int) -> int:
    return sum(1 for _ in enumerate_hnf(rank, index))


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class LatticeSpec:
    """A lattice with a symmetric connection set, in ambient coordinates."""

    name: str
    basis: tuple[tuple[int, ...], ...]
    connection: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = hnf(self.basis)
        if len(b) != len(self.basis):
            raise ValueError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", tuple(tuple(r) for r in b))
        conn = {tuple(int(t) for t in s) for s in self.connection}
        if any(not any(s) for s in conn):
            raise ValueError("connection set contains the zero vector")
        if any(tuple(-t for t in s) not in conn for s in conn):
            raise ValueError("connection set is not closed under negation")
        for s in conn:
            if solve_in_basis(b, s) is None:
                raise ValueError(f"connection vector {s} is not in the lattice")
        object.__setattr__(self, "connection", tuple(sorted(conn)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis[0])

    def coords(self, x: Sequence[int]) -> list[int]:
        c = solve_in_basis([list(r) for r in self.basis], x)
        if c is None:
            raise ValueError(f"vector {tuple(x)} is not in lattice {self.name}")
        return c

    def ambient(self, c: Sequence[int]) -> list[int]:
        return [sum(ci * b[j] for ci, b in zip(c, self.basis)) for j in range(self.dim)]

    def connection_coords(self) -> list[list[int]]:
        return [self.coords(s) for s in self.connection]

    def to_json(self) -> dict:
        return {"name": self.name, "basis": [list(r) for r in self.basis],
                "connection": [list(s) for s in self.connection]}

    @classmethod
    def from_json(cls, data: dict) -> "LatticeSpec":
        return cls(data["name"], tuple(map(tuple, data["basis"])), tuple(map(tuple, data["connection"])))


@dataclass(frozen=True)
class SublatticeBasis:
    """Finite-index sublattice, rows in lattice coordinates."""

    matrix: tuple[tuple[int, ...], ...]
    hnf: tuple[tuple[int, ...], ...] = field(init=False)
    index: int = field(init=False)

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        if not m or len(m) != len(m[0]):
            raise ValueError("sublattice basis must be square")
        h = hnf(m)
        if len(h) != len(m):
            raise ValueError("sublattice basis is singular")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in m))
        object.__setattr__(self, "hnf", tuple(tuple(r) for r in h))
        object.__setattr__(self, "index", math.prod(h[i][i] for i in range(len(h))))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def contains(self, c: Sequence[int]) -> bool:
        return solve_in_basis([list(r) for r in self.hnf], c) is not None

    def contains_sublattice(self, other: "SublatticeBasis") -> bool:
        return all(self.contains(row) for row in other.hnf)

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "hnf": [list(r) for r in self.hnf],
                "index": self.index}


def sublattice(rows) -> SublatticeBasis:
    return SublatticeBasis(tuple(tuple(int(x) for x in r) for r in rows))


# ---------------------------------------------------------------------------
# quotient groups


@dataclass(frozen=True)
class QuotientMap:
    """Reduction ``Z^r -> Z_{d_1} + ... + Z_{d_s}`` modulo a sublattice."""

    invariants: tuple[int, ...]
    columns: tuple[int, ...]
    v: tuple[tuple[int, ...], ...]
    v_inv: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    def element(self, c: Sequence[int]) -> tuple[int, ...]:
        y = [sum(ci * self.v[i][j] for i, ci in enumerate(c)) for j in range(len(self.v))]
        return tuple(y[j] % d for j, d in zip(self.columns, self.invariants))

    def index_of(self, elem: Sequence[int]) -> int:
        idx = 0
        for e, d in zip(elem, self.invariants):
            idx = idx * d + (e % d)
        return idx

    def element_of(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.invariants):
            idx, r = divmod(idx, d)
            out.append(r)
        return tuple(reversed(out))

    def representative(self, elem: Sequence[int]) -> list[int]:
        """A lattice-coordinate vector mapping to ``elem``."""
        y = [0] * len(self.v)
        for j, e in zip(self.columns, elem):
            y[j] = e
        return [sum(y[i] * self.v_inv[i][j] for i in range(len(y))) for j in range(len(y))]

    def elements(self) -> list[tuple[int, ...]]:
        return [self.element_of(i) for i in range(self.order)]


def _inverse_unimodular(m: Matrix) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def quotient_map(t: SublatticeBasis) -> QuotientMap:
    d, _, v = snf(t.matrix)
    diag = [d[i][i] for i in range(t.rank)]
    cols = tuple(i for i, x in enumerate(diag) if x > 1)
    return QuotientMap(tuple(diag[i] for i in cols), cols,
                       tuple(map(tuple, v)), tuple(map(tuple, _inverse_unimodular(v))))


@dataclass(frozen=True)
class LatticeQuotient:
    """Cayley graph of ``L / T`` with the images of the connection set."""

    spec: LatticeSpec
    sublattice: SublatticeBasis
    qmap: QuotientMap
    graph: Graph
    connection_elements: tuple[tuple[int, ...], ...]

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.qmap.invariants

    def vertex_of(self, coords: Sequence[int]) -> int:
        return self.qmap.index_of(self.qmap.element(coords))

    def label(self, vertex: int) -> tuple[int, ...]:
        return self.qmap.element_of(vertex)


def cayley_graph(invariants: Sequence[int], connection: Sequence[Sequence[int]]) -> Graph:
    """Cayley graph of ``Z_{d_1} + ... + Z_{d_s}`` (mixed-radix vertex order)."""
    inv = tuple(int(d) for d in invariants)
    order = math.prod(inv)
    grid = np.array(np.unravel_index(np.arange(order), inv)).T if inv else np.zeros((1, 0), dtype=int)
    radix = np.array([math.prod(inv[i + 1:]) for i in range(len(inv))], dtype=np.int64)
    adj = np.zeros((order, order), dtype=bool)
    rows = np.arange(order)
    for s in connection:
        nb = ((grid + np.asarray(s, dtype=np.int64)) % np.asarray(inv)) @ radix
        adj[rows, nb] = True
    if adj.diagonal().any():
        raise QuotientError("connection set contains the identity")
    return Graph(adj)


def lattice_quotient(spec: LatticeSpec, t: SublatticeBasis) -> LatticeQuotient:
    if t.rank != spec.rank:
        raise ValueError(f"sublattice rank {t.rank} != lattice rank {spec.rank}")
    q = quotient_map(t)
    elems: dict[tuple[int, ...], tuple[int, ...]] = {}
    for s in spec.connection:
        e = q.element(spec.coords(s))
        if not any(e):
            raise QuotientError(f"connection vector {s} lies in the sublattice")
        if e in elems:
            raise QuotientError(f"connection vectors {elems[e]} and {s} are congruent")
        elems[e] = s
    conn = tuple(sorted(elems))
    return LatticeQuotient(spec, t, q, cayley_graph(q.invariants, conn), conn)


# ---------------------------------------------------------------------------
# named lattices


EISENSTEIN_UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (1, 1))


def eisenstein() -> LatticeSpec:
    """Triangular grid as Eisenstein integers ``b + c*omega`` stored as ``(b, c)``."""
    return LatticeSpec("eisenstein", ((1, 0), (0, 1)), EISENSTEIN_UNITS)


def eisenstein_mul(x: Sequence[int], y: Sequence[int]) -> tuple[int, int]:
    """Product in Z[omega] using ``omega^2 = -1 - omega``."""
    b1, c1 = x
    b2, c2 = y
    cc = c1 * c2
    return (b1 * b2 - cc, b1 * c2 + c1 * b2 - cc)


def eisenstein_norm(x: Sequence[int]) -> int:
    b, c = x
    return b * b + c * c - b * c


def eisenstein_to_a2(x: Sequence[int]) -> tuple[int, int, int]:
    """Linear isometry (up to a factor 2 in the squared norm) onto the zero-sum plane.

    ``1 -> e1 - e2`` and ``omega -> e2 - e3``.
    """
    b, c = x
    return (b, c - b, -c)


def a2_to_eisenstein(x: Sequence[int]) -> tuple[int, int]:
    if sum(x) != 0:
        raise ValueError("vector is not in the zero-sum plane")
    return (x[0], -x[2])


def root_system_connection_set(n: int, m: int, family: int) -> list[tuple[int, ...]]:
    """All ``{1,-1,0}``-vectors of length ``n`` and weight ``m``; zero-sum ones for family 1."""
    if m % 2:
        raise ValueError("weight m must be even")
    if m < 2 or n < m:
        raise ValueError(f"need 2 <= m <= n, got n={n}, m={m}")
    if family not in (1, 2):
        raise ValueError("family must be 1 or 2")
    out = []
    for support in itertools.combinations(range(n), m):
        for signs in itertools.product((1, -1), repeat=m):
            if family == 1 and sum(signs) != 0:
                continue
            vec = [0] * n
            for pos, s in zip(support, signs):
                vec[pos] = s
            out.append(tuple(vec))
    return sorted(out)


def root_lattice(n: int, family: int, m: int = 2) -> LatticeSpec:
    """The lattice generated by ``S_{n,m}`` with that set as connection set."""
    conn = root_system_connection_set(n, m, family)
    basis = hnf(conn)
    name = f"{'A' if family == 1 else 'D'}{n - 1 if family == 1 else n}" if m == 2 else f"G{family}_{n},{m}"
    return LatticeSpec(name, tuple(map(tuple, basis)), tuple(conn))


def direct_sum(a: LatticeSpec, b: LatticeSpec, name: str | None = None) -> LatticeSpec:
    """Orthogonal direct sum; the connection set is ``(s, 0)`` and ``(0, s)``."""
    basis = [list(r) + [0] * b.dim for r in a.basis] + [[0] * a.dim + list(r) for r in b.basis]
    conn = [tuple(s) + (0,) * b.dim for s in a.connection] + [(0,) * a.dim + tuple(s) for s in b.connection]
    return LatticeSpec(name or f"{a.name}x{b.name}", tuple(map(tuple, basis)), tuple(conn))


def gamma_params(n: int, m: int, family: int) -> tuple[int, int]:
    """Closed-form ``(k, lambda)`` of the infinite Cayley graph on ``S_{n,m}``."""
    if m % 2 or m < 2:
        raise ValueError("m must be a positive even integer")
    if n < m + 1:
        raise ValueError("need n >= m + 1")

    def comb(a, b):
        if b < 0 or a < 0 or b > a:
            return 1 if b == 0 and a >= 0 else 0
        return math.comb(a, b)

    h = m // 2
    if family == 1:
        k = comb(n, m) * comb(m, h)
        lam = sum(comb(h, i) * comb(h, h - i) * comb(n - m, h - i) * comb(n - 3 * h + i, i)
                  for i in range(h + 1))
        return k, lam
    if family == 2:
        return 2 ** m * comb(n, m), comb(m, h) * comb(n - m, h) * 2 ** h
    raise ValueError("family must be 1 or 2")


def local_params_bruteforce(spec: LatticeSpec) -> tuple[int, set[int]]:
    """Degree and the set of common-neighbour counts over the connection set.

    Counting is done modulo ``c * L`` with ``c`` larger than four times any
    lattice coordinate of a connection vector, so differences of two
    connection vectors never wrap around.
    """
    coords = spec.connection_coords()
    big = max(abs(x) for c in coords for x in c)
    c = 4 * big + 1
    red = {tuple(x % c for x in v) for v in coords}
    if len(red) != len(coords) or tuple([0] * spec.rank) in red:
        raise QuotientError("reduction modulo c*L is not faithful on the connection set")
    lams = set()
    for s in coords:
        cnt = sum(1 for x in coords if tuple((a - b) % c for a, b in zip(x, s)) in red)
        lams.add(cnt)
    return len(red), lams


def group_identity_check(n: int, m: int, family: int) -> bool:
    """Whether ``S_{n,m}`` and ``S_{n,2}`` generate the same subgroup of ``Z^n``."""
    return hnf(root_system_connection_set(n, m, family)) == hnf(root_system_connection_set(n, 2, family))


# ---------------------------------------------------------------------------
# perfect-code sublattices and code-preserving quotients


def is_perfect_code_sublattice(spec: LatticeSpec, c: SublatticeBasis) -> bool:
    """Whether ``{0} + connection`` is a transversal of ``L / C``."""
    if c.index != len(spec.connection) + 1:
        return False
    q = quotient_map(c)
    elems = {q.element(spec.coords(s)) for s in spec.connection}
    elems.add(q.element([0] * spec.rank))
    return len(elems) == c.index


def iter_perfect_code_sublattices(spec: LatticeSpec) -> Iterator[SublatticeBasis]:
    """Sublattices whose cosets are perfect 1-codes, in HNF enumeration order."""
    idx = len(spec.connection) + 1
    for h in enumerate_hnf(spec.rank, idx):
        c = sublattice(h)
        if is_perfect_code_sublattice(spec, c):
            yield c


def find_perfect_code_sublattices(spec: LatticeSpec, limit: int | None = None) -> list[SublatticeBasis]:
    """All (or the first ``limit``) sublattices whose cosets are perfect 1-codes of the infinite graph."""
    return list(itertools.islice(iter_perfect_code_sublattices(spec), limit))


def sublattices_within(c: SublatticeBasis, relative_index: int) -> Iterator[SublatticeBasis]:
    """Sublattices of ``c`` of the given index in ``c`` (lattice coordinates of the parent)."""
    basis = [list(r) for r in c.hnf]
    for h in enumerate_hnf(c.rank, relative_index):
        yield sublattice(hnf(matmul(h, basis)))
