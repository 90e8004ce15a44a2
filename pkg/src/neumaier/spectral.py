"""Exact characteristic polynomials and spectra.

The characteristic polynomial ``det(xI - A)`` is obtained by evaluating the
determinant at ``v + 1`` integer points with fraction-free Gaussian
elimination and interpolating. Everything stays in Python integers, so
cospectrality is decided exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .graph import Graph

# ---------------------------------------------------------------------------
# integer linear algebra


def bareiss_det(matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = np.array(matrix, dtype=object)
    n = m.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            nz = [r for r in range(k + 1, n) if m[r, k] != 0]
            if not nz:
                return 0
            m[[k, nz[0]]] = m[[nz[0], k]]
            sign = -sign
        piv = m[k, k]
        m[k + 1:, k + 1:] = (m[k + 1:, k + 1:] * piv - np.outer(m[k + 1:, k], m[k, k + 1:])) // prev
        prev = piv
    return sign * int(m[n - 1, n - 1])


def evaluation_points(count: int) -> list[int]:
    """``0, 1, -1, 2, -2, ...`` truncated to ``count`` points."""
    pts = [0]
    i = 1
    while len(pts) < count:
        pts.append(i)
        if len(pts) < count:
            pts.append(-i)
        i += 1
    return pts


def interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial, Newton form."""
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    coef = [dd[0]]
    for level in range(1, n):
        dd = [(dd[i + 1] - dd[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        coef.append(dd[0])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for j, c in enumerate(poly):
            shifted[j] -= xs[i] * c
        shifted[0] += coef[i]
        poly = shifted
    return poly


# ---------------------------------------------------------------------------
# characteristic polynomial


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial; ``coeffs[i]`` multiplies ``x**(degree - i)``."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def ascending(self) -> list[int]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        return poly_to_str(self.ascending())


def char_poly(g: Graph) -> CharPoly:
    """Exact ``det(xI - A)`` of the adjacency matrix."""
    v = g.v
    a = g.adj.astype(np.int64)
    xs = evaluation_points(v + 1)
    ys = []
    for x in xs:
        m = (x * np.eye(v, dtype=np.int64) - a).astype(object)
        ys.append(bareiss_det(m))
    asc = interpolate(xs, ys)
    if any(c.denominator != 1 for c in asc) or asc[-1] != 1:
        raise ArithmeticError("interpolation did not produce a monic integer polynomial")
    return CharPoly(tuple(int(c) for c in reversed(asc)))


def cospectral(g1: Graph, g2: Graph) -> bool:
    return g1.v == g2.v and char_poly(g1) == char_poly(g2)


# ---------------------------------------------------------------------------
# rational polynomial helpers (ascending coefficient lists)


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: list, q: list) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divmod(p: list, q: list) -> tuple[list, list]:
    p = [Fraction(c) for c in _trim(p)]
    q = [Fraction(c) for c in _trim(q)]
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [Fraction(0)], p
    quot = [Fraction(0)] * (len(p) - len(q) + 1)
    r = p[:]
    lead = q[-1]
    for i in range(len(p) - len(q), -1, -1):
        c = r[i + len(q) - 1] / lead
        quot[i] = c
        if c:
            for j, b in enumerate(q):
                r[i + j] -= c * b
    return _trim(quot), _trim(r[: len(q) - 1] or [Fraction(0)])


def _monic(p: list) -> list:
    p = _trim([Fraction(c) for c in p])
    return [c / p[-1] for c in p]


def poly_gcd(p: list, q: list) -> list:
    a, b = _trim(p), _trim(q)
    while b != [0]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return _monic(a)


def derivative(p: list) -> list:
    return _trim([i * c for i, c in enumerate(p)][1:] or [0])


def squarefree_factorization(p: list) -> list[tuple[list[int], int]]:
    """Yun's algorithm: ``p = prod(f_i ** i)`` with each ``f_i`` square-free.

    ``p`` must be a monic integer polynomial; the factors are monic integer
    polynomials (ascending coefficients), returned with their multiplicity.
    """
    f = _monic(p)
    out = []
    c = poly_gcd(f, derivative(f))
    w, _ = poly_divmod(f, c)
    i = 1
    while len(c) > 1:
        y = poly_gcd(w, c)
        z, _ = poly_divmod(w, y)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c, _ = poly_divmod(c, y)
    if len(w) > 1:
        out.append((w, i))
    result = []
    for z, mult in out:
        z = _monic(z)
        if any(x.denominator != 1 for x in z):
            raise ArithmeticError("square-free factor of a monic integer polynomial is not integral")
        result.append(([int(x) for x in z], mult))
    return result


def poly_to_str(asc: list[int]) -> str:
    terms = []
    for deg in range(len(asc) - 1, -1, -1):
        c = asc[deg]
        if c == 0:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("x" if deg == 1 else f"x^{deg}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(x(?:\^(\d+))?)?")
_FACTOR = re.compile(r"\(([^()]*)\)(?:\^(\d+))?")


def parse_poly(text: str) -> list[int]:
    """Ascending integer coefficients of a polynomial in ``x`` such as ``x^2+2x-4``."""
    body = text.replace(" ", "")
    if not body:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        deg = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + sign * coef
        pos = m.end()
    return _trim([coeffs.get(d, 0) for d in range(max(coeffs) + 1)])


def parse_factored(text: str) -> CharPoly:
    """Expand a product of parenthesised factors with optional powers, e.g. ``(x-2)^5(x+1)``."""
    body = text.replace(" ", "")
    p: list = [1]
    pos = 0
    for m in _FACTOR.finditer(body):
        if m.start() != pos:
            raise ValueError(f"cannot parse factor list {text!r} at offset {pos}")
        f = parse_poly(m.group(1))
        for _ in range(int(m.group(2) or 1)):
            p = poly_mul(p, f)
        pos = m.end()
    if pos != len(body):
        raise ValueError(f"cannot parse factor list {text!r} at offset {pos}")
    return CharPoly(tuple(int(x) for x in reversed(p)))


def expand_roots(linear: dict[int, int], quadratic: list[tuple[tuple[int, int], int]] = ()) -> CharPoly:
    """Monic polynomial from integer roots and monic quadratic factors.

    ``linear`` maps a root ``r`` to its multiplicity; ``quadratic`` holds
    ``((b, c), mult)`` for factors ``x^2 + b x + c``.
    """
    p = [1]
    for r, mult in linear.items():
        for _ in range(mult):
            p = poly_mul(p, [-r, 1])
    for (b, c), mult in quadratic:
        for _ in range(mult):
            p = poly_mul(p, [c, b, 1])
    return CharPoly(tuple(int(x) for x in reversed(p)))


# ---------------------------------------------------------------------------
# spectrum presentation


@dataclass(frozen=True)
class QuadraticSurd:
    """The number ``(a + coef * sqrt(radicand)) / denom``."""

    a: int
    coef: int
    radicand: int
    denom: int

    def __float__(self) -> float:
        return (self.a + self.coef * math.sqrt(self.radicand)) / self.denom

    def __str__(self) -> str:
        root = "√" + str(self.radicand)
        if abs(self.coef) != 1:
            root = f"{abs(self.coef)}{root}"
        sign = "-" if self.coef < 0 else "+"
        if self.a == 0:
            body = ("-" if self.coef < 0 else "") + root
        else:
            body = f"{self.a}{sign}{root}"
        if self.denom == 1:
            return body
        return f"({body})/{self.denom}"

    def to_json(self) -> dict:
        return {"a": self.a, "coef": self.coef, "radicand": self.radicand, "denom": self.denom,
                "text": str(self)}


@dataclass(frozen=True)
class SpectrumEntry:
    value: mpmath.mpf
    mult: int
    exact: int | QuadraticSurd | None = field(default=None)

    def value_str(self, digits: int = 15) -> str:
        return mpmath.nstr(self.value, digits)

    def to_json(self) -> dict:
        if isinstance(self.exact, QuadraticSurd):
            exact = self.exact.to_json()
        elif self.exact is None:
            exact = None
        else:
            exact = {"a": int(self.exact), "coef": 0, "radicand": 0, "denom": 1, "text": str(self.exact)}
        return {"value": self.value_str(), "exact": exact, "mult": self.mult}


def _split_square(n: int) -> tuple[int, int]:
    """``n = f*f*b`` with ``b`` square-free; returns ``(f, b)``."""
    f, b = 1, n
    p = 2
    while p * p <= b:
        while b % (p * p) == 0:
            b //= p * p
            f *= p
        p += 1
    return f, b


def _quadratic_roots(s: int, p: int) -> list[QuadraticSurd]:
    """Roots of ``x^2 - s x + p`` with irrational discriminant."""
    f, b = _split_square(s * s - 4 * p)
    g = math.gcd(math.gcd(s, f), 2)
    return [QuadraticSurd(s // g, sgn * f // g, b, 2 // g) for sgn in (1, -1)]


def _numeric_roots(asc: list[int], dps: int) -> list:
    if len(asc) == 2:
        return [mpmath.mpf(-asc[0]) / asc[1]]
    desc = list(reversed(asc))
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(desc, maxsteps=400, extraprec=4 * dps + 10 * len(asc))
    return [mpmath.re(r) for r in roots]


def spectrum_report(g: Graph, dps: int = 30) -> list[SpectrumEntry]:
    """Distinct eigenvalues with exact multiplicities, largest first."""
    cp = char_poly(g)
    entries: list[SpectrumEntry] = []
    with mpmath.workdps(dps):
        for factor, mult in squarefree_factorization(cp.ascending()):
            rest = factor
            # integer roots first
            for r in _numeric_roots(factor, dps):
                n = int(mpmath.nint(r))
                if abs(r - n) < 1e-6:
                    q, rem = poly_divmod(rest, [-n, 1])
                    if rem == [0]:
                        rest = [int(c) for c in q]
                        entries.append(SpectrumEntry(mpmath.mpf(n), mult, n))
            if len(rest) <= 1:
                continue
            roots = _numeric_roots(rest, dps)
            used = [False] * len(roots)
            for i in range(len(roots)):
                if used[i]:
                    continue
                for j in range(i + 1, len(roots)):
                    if used[j]:
                        continue
                    s = roots[i] + roots[j]
                    p = roots[i] * roots[j]
                    si, pi = int(mpmath.nint(s)), int(mpmath.nint(p))
                    if abs(s - si) > 1e-6 or abs(p - pi) > 1e-6:
                        continue
                    q, rem = poly_divmod(rest, [pi, -si, 1])
                    if rem != [0]:
                        continue
                    rest = [int(c) for c in q]
                    used[i] = used[j] = True
                    for surd in _quadratic_roots(si, pi):
                        val = (surd.a + surd.coef * mpmath.sqrt(surd.radicand)) / surd.denom
                        entries.append(SpectrumEntry(val, mult, surd))
                    break
            for i, r in enumerate(roots):
                if not used[i]:
                    entries.append(SpectrumEntry(r, mult, None))
    entries.sort(key=lambda e: -e.value)
    return entries


def spectrum_json(entries: list[SpectrumEntry]) -> list[dict]:
    return [e.to_json() for e in entries]
