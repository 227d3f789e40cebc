"""Dense exact-rational simplex method for small linear programs.

Solves max c.z subject to A z <= b with z free, entirely over Fraction
arithmetic.  Free variables are split into positive parts and slacks added;
Bland's rule guarantees termination.  The right-hand side must be
nonnegative (callers arrange this by translating their geometry), so the
slack basis is immediately feasible and no phase-1 is needed.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import canon


class Unbounded(Exception):
    pass


def solve_lp(a_rows, b, c):
    """Maximize c.z s.t. A z <= b (z free, b >= 0).

    Returns (optimal value, z) as exact rationals.
    """
    m = len(a_rows)
    n = len(c)
    for bi in b:
        if bi < 0:
            raise ValueError("solve_lp requires b >= 0")

    ncols = 2 * n + m
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]]
        row += [-x for x in row[:n]]
        row += [Fraction(1 if j == i else 0) for j in range(m)]
        row.append(Fraction(b[i]))
        tab.append(row)
    obj = [Fraction(x) for x in c] + [-Fraction(x) for x in c]
    obj += [Fraction(0)] * m + [Fraction(0)]

    basis = list(range(2 * n, 2 * n + m))

    while True:
        enter = None
        for j in range(ncols):
            if obj[j] > 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            aij = tab[i][enter]
            if aij > 0:
                ratio = tab[i][-1] / aij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise Unbounded("LP is unbounded")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter]:
            f = obj[enter]
            row = tab[leave]
            for j in range(ncols):
                obj[j] -= f * row[j]
            obj[-1] -= f * row[-1]
        basis[leave] = enter

    values = [Fraction(0)] * ncols
    for i, var in enumerate(basis):
        values[var] = tab[i][-1]
    z = tuple(canon(values[j] - values[n + j]) for j in range(n))
    opt = canon(sum(ci * zi for ci, zi in zip(c, z)))
    return opt, z
