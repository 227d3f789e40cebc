"""Exact rational linear algebra on small dense matrices.

Scalars are ``int`` or ``fractions.Fraction``; arithmetic never leaves the
rationals.  Integer inputs are kept as ``int`` wherever possible because
CPython integer arithmetic is far faster than Fraction arithmetic, and the
hot geometric predicates (hull orientation tests, determinants of lattice
polytope data) are all-integer in practice.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rat = int | Fraction
Vec = tuple  # tuple of Rat


def canon(q) -> Rat:
    """Collapse a Fraction with denominator 1 to a plain int."""
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def dot(u: Vec, v: Vec) -> Rat:
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vscale(t: Rat, u: Vec) -> Vec:
    return tuple(canon(t * a) for a in u)


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def _det_bareiss_int(m: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant for integer matrices."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[-1][-1]


def _det_gauss(m: list[list]) -> Rat:
    n = len(m)
    m = [[Fraction(x) for x in row] for row in m]
    sign = 1
    det = Fraction(1)
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return 0
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        det *= pivot
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            if factor:
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
    return canon(sign * det)


def det(rows) -> Rat:
    """Exact determinant of a small square matrix."""
    m = [list(r) for r in rows]
    if not m:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        return _det_bareiss_int(m)
    return _det_gauss(m)


def normal_vector(diffs) -> Vec:
    """Vector orthogonal to n-1 difference vectors in R^n (generalized cross
    product via cofactor minors).  Zero vector iff the inputs are dependent."""
    rows = [list(d) for d in diffs]
    n = len(rows) + 1
    comps = []
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows]
        d = det(minor)
        comps.append(-d if j % 2 else d)
    return tuple(comps)


def rank(rows) -> int:
    """Rank over the rationals."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            factor = m[i][c] / pivot
            if factor:
                for j in range(c, ncols):
                    m[i][j] -= factor * m[r][j]
        r += 1
        if r == nrows:
            break
    return r


def solve(a_rows, b: Vec) -> Vec | None:
    """Solve the square system A x = b exactly; None if A is singular."""
    n = len(a_rows)
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return None
        m[k], m[pivot_row] = m[pivot_row], m[k]
        pivot = m[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = m[i][k] / pivot
            if factor:
                for j in range(k, n + 1):
                    m[i][j] -= factor * m[k][j]
    return tuple(canon(m[i][n] / m[i][i]) for i in range(n))


def primitive(vec: Vec) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector with the
    same direction (positive multiple)."""
    denom_lcm = 1
    for x in vec:
        if isinstance(x, Fraction):
            d = x.denominator
            denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(x * denom_lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in ints)


def nth_root_rational(q, n: int):
    """Exact n-th root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None

    def iroot(m: int) -> int | None:
        if m == 0:
            return 0
        # integer Newton iteration, overflow-safe for big ints
        r = 1 << ((m.bit_length() + n - 1) // n)
        while True:
            s = ((n - 1) * r + m // r ** (n - 1)) // n
            if s >= r:
                break
            r = s
        return r if r ** n == m else None

    num = iroot(q.numerator)
    if num is None:
        return None
    den = iroot(q.denominator)
    if den is None:
        return None
    return canon(Fraction(num, den))
