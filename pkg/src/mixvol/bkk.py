"""Root-count correspondence for sparse bivariate systems: Newton polygons,
exact mixed areas, seeded random systems, resultant-based counting of common
torus zeros, and the comparison against the classical degree bound.

The resultant in y is a Sylvester determinant with polynomial entries,
recovered by evaluation/interpolation at 100-digit precision; its roots (the
candidate x-coordinates) come from a simultaneous Aberth-Ehrlich iteration.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import NonGeneric, ZeroPolynomial
from .polytope import VPolytope, volume
from .polytope import minkowski_sum
from .linalg import canon


@dataclass(frozen=True)
class SparseBivariatePoly:
    """Bivariate polynomial as an exponent -> complex coefficient map."""

    terms: tuple  # (((a, b), coeff), ...) sorted by exponent

    @classmethod
    def from_dict(cls, d: dict) -> "SparseBivariatePoly":
        items = tuple(sorted((tuple(k), complex(v)) for k, v in d.items() if v != 0))
        return cls(items)

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    def total_degree(self) -> int:
        return max(a + b for (a, b), _ in self.terms)

    def degree_y(self) -> int:
        return max(b for (_, b), _ in self.terms)

    def degree_x(self) -> int:
        return max(a for (a, _), _ in self.terms)

    def __call__(self, x: complex, y: complex) -> complex:
        return sum(c * x ** a * y ** b for (a, b), c in self.terms)

    def y_coefficients(self):
        """Coefficients in y, each an x-polynomial given as a coeff list."""
        dy = self.degree_y()
        dx = self.degree_x()
        out = [[0j] * (dx + 1) for _ in range(dy + 1)]
        for (a, b), c in self.terms:
            out[b][a] += c
        return out

    def y_slice(self, x: complex):
        """Univariate polynomial in y at fixed x (ascending coefficients)."""
        dy = self.degree_y()
        coeffs = [0j] * (dy + 1)
        for (a, b), c in self.terms:
            coeffs[b] += c * x ** a
        return coeffs

    def coeff_scale(self) -> float:
        return max(abs(c) for _, c in self.terms)


def newton_polygon(poly: SparseBivariatePoly) -> VPolytope:
    """Convex hull of the exponent vectors (a lattice polygon, possibly
    degenerate)."""
    if not poly.terms:
        raise ZeroPolynomial("zero polynomial has no Newton polygon")
    return VPolytope([e for e, _ in poly.terms])


def mixed_area(P1: VPolytope, P2: VPolytope):
    """Exact planar mixed volume (Area(P1+P2) - Area(P1) - Area(P2)) / 2."""
    from fractions import Fraction

    s = volume(minkowski_sum(P1, P2))
    return canon(Fraction(s - volume(P1) - volume(P2), 2))


def random_system(support1, support2, seed: int = 0):
    """Seeded pair of polynomials on the given supports with coefficients
    2 + u, u uniform in the unit disk, i.i.d. per term."""
    rng = random.Random(int(seed))

    def draw(support):
        d = {}
        for e in support:
            r = math.sqrt(rng.random())
            theta = 2 * math.pi * rng.random()
            u = complex(r * math.cos(theta), r * math.sin(theta))
            d[tuple(e)] = 2 + u
        return SparseBivariatePoly.from_dict(d)

    return draw(support1), draw(support2)


# ---------------------------------------------------------------------------
# resultant and root finding


def sylvester_resultant_x(Q1: SparseBivariatePoly, Q2: SparseBivariatePoly,
                          dps: int = 100):
    """Res_y(Q1, Q2) as a list of high-precision complex coefficients in x
    (ascending).  None signals an identically zero resultant."""
    d1, d2 = Q1.degree_y(), Q2.degree_y()
    if d1 == 0 or d2 == 0:
        raise NonGeneric("a polynomial has no y term; counting assumes genuine bivariate systems")
    bound = Q1.degree_x() * d2 + Q2.degree_x() * d1
    npts = bound + 1
    with mpmath.workdps(dps):
        nodes = [mpmath.mpc(mpmath.cos(2 * mpmath.pi * k / npts),
                            mpmath.sin(2 * mpmath.pi * k / npts)) * (1 + mpmath.mpf(1) / 7)
                 for k in range(npts)]
        vals = []
        for x in nodes:
            c1 = [_eval_poly_mp(col, x) for col in Q1.y_coefficients()]
            c2 = [_eval_poly_mp(col, x) for col in Q2.y_coefficients()]
            vals.append(_sylvester_det_mp(c1, c2))
        vand = mpmath.matrix(npts, npts)
        for i, x in enumerate(nodes):
            p = mpmath.mpc(1)
            for j in range(npts):
                vand[i, j] = p
                p *= x
        rhs = mpmath.matrix(vals)
        coeffs = mpmath.lu_solve(vand, rhs)
        out = [coeffs[k] for k in range(npts)]
        scale = max(abs(c) for c in out)
        if scale == 0 or scale < mpmath.mpf(10) ** (-dps // 2):
            return None
        return out


def _eval_poly_mp(coeffs, x):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sylvester_det_mp(c1, c2):
    """Determinant of the Sylvester matrix of two univariate coefficient
    lists (ascending order)."""
    m = len(c1) - 1
    n = len(c2) - 1
    size = m + n
    mat = mpmath.matrix(size, size)
    for i in range(n):
        for k, c in enumerate(reversed(c1)):
            mat[i, i + k] = c
    for i in range(m):
        for k, c in enumerate(reversed(c2)):
            mat[n + i, i + k] = c
    return mpmath.det(mat)


def aberth_roots(coeffs, tol: float = 1e-12, maxiter: int = 200):
    """All complex roots of a polynomial (ascending complex coefficients) by
    the Aberth-Ehrlich simultaneous iteration.  Roots at the origin from a
    vanishing trailing coefficient are returned explicitly."""
    c = np.asarray(coeffs, dtype=complex)
    scale = np.abs(c).max()
    if scale == 0:
        raise ZeroPolynomial("cannot root the zero polynomial")
    c = c / scale
    nz = np.nonzero(np.abs(c) > 1e-14)[0]
    lead = nz[-1]
    trail = nz[0]
    zero_roots = [0j] * trail
    c = c[trail:lead + 1]
    deg = len(c) - 1
    if deg == 0:
        return np.array(zero_roots)

    r = 1.0 + max(abs(c[k] / c[-1]) for k in range(deg))  # Cauchy bound
    k = np.arange(deg)
    z = r * 0.5 * np.exp(2j * np.pi * (k + 0.35) / deg)

    for _ in range(maxiter):
        p = np.polyval(c[::-1], z)
        dp = np.polyval(np.polyder(c[::-1]), z)
        dp = np.where(np.abs(dp) < 1e-300, 1e-300, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        sums = (1.0 / diff).sum(axis=1)
        denom = 1.0 - newton * sums
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        w = newton / denom
        z = z - w
        if np.abs(w).max() < tol * max(1.0, np.abs(z).max()):
            break
    return np.concatenate([np.array(zero_roots), z])


def polynomial_residual(coeffs, roots) -> float:
    """max over roots of |p(z)| normalized by the coefficient-magnitude bound
    sum |c_k| max(1,|z|)^k."""
    c = np.asarray(coeffs, dtype=complex)
    worst = 0.0
    for z in roots:
        val = abs(np.polyval(c[::-1], z))
        bound = sum(abs(ck) * max(1.0, abs(z)) ** k for k, ck in enumerate(c))
        worst = max(worst, val / bound if bound > 0 else val)
    return worst


@dataclass(frozen=True)
class ZeroCountReport:
    count: int
    bkk_value: int
    bezout_bound: int
    residual_max: float
    status: str  # match | undercount | overcount


def count_torus_zeros(Q1: SparseBivariatePoly, Q2: SparseBivariatePoly,
                      tol: float = 1e-8) -> ZeroCountReport:
    """Count common zeros with both coordinates off the axes, via the
    y-resultant and per-root univariate solves, then compare against the
    mixed area of the Newton polygons and the degree bound."""
    res = sylvester_resultant_x(Q1, Q2)
    if res is None:
        raise NonGeneric("resultant vanishes identically (common factor); retry with new seed")
    coeffs = np.array([complex(c) for c in res])

    roots = aberth_roots(coeffs, tol=1e-12)
    residual_max = polynomial_residual(coeffs, roots)
    xs = [z for z in roots if abs(z) >= tol]
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if abs(xs[i] - xs[j]) < 10 * tol:
                raise NonGeneric("clustered resultant roots; retry with new seed")

    count = 0
    scale2 = Q2.coeff_scale()
    for x in xs:
        ycoeffs = Q1.y_slice(x)
        yroots = aberth_roots(np.array(ycoeffs), tol=1e-12)
        residual_max = max(residual_max, polynomial_residual(np.array(ycoeffs), yroots))
        kept = [y for y in yroots if abs(y) >= tol]
        for i in range(len(kept)):
            for j in range(i + 1, len(kept)):
                if abs(kept[i] - kept[j]) < 10 * tol:
                    raise NonGeneric("clustered fiber roots; retry with new seed")
        for y in kept:
            bound = sum(
                abs(c) * max(1.0, abs(x)) ** a * max(1.0, abs(y)) ** b
                for (a, b), c in Q2.terms
            )
            if abs(Q2(x, y)) <= 1e-6 * bound:
                count += 1

    bkk = mixed_area(newton_polygon(Q1), newton_polygon(Q2)) * 2
    if bkk != int(bkk):
        raise AssertionError("normalized mixed area of lattice polygons must be integral")
    bkk = int(bkk)
    bez = Q1.total_degree() * Q2.total_degree()
    status = "match" if count == bkk else ("undercount" if count < bkk else "overcount")
    return ZeroCountReport(count, bkk, bez, residual_max, status)


@dataclass
class BkkSummary:
    trials: int
    completed: int
    aborted: int
    matches: int
    reports: tuple
    counts: tuple
    bkk_value: int
    bezout_bound: int
    max_residual: float
    bezout_ok: bool
    match_rate: float
    aborted_seeds: tuple = field(default_factory=tuple)


def bkk_verify(support1, support2, trials: int = 20, seed: int = 0,
               tol: float = 1e-8) -> BkkSummary:
    """Run seeded random systems on fixed supports; non-degenerate trials must
    all reproduce the mixed-area count and respect the degree bound."""
    reports = []
    aborted = []
    for k in range(trials):
        trial_seed = (int(seed) * 1000003 + k) & 0x7FFFFFFF
        Q1, Q2 = random_system(support1, support2, seed=trial_seed)
        try:
            reports.append(count_torus_zeros(Q1, Q2, tol=tol))
        except NonGeneric:
            aborted.append(trial_seed)
    counts = tuple(r.count for r in reports)
    matches = sum(r.status == "match" for r in reports)
    bkk = reports[0].bkk_value if reports else 0
    bez = reports[0].bezout_bound if reports else 0
    return BkkSummary(
        trials=trials,
        completed=len(reports),
        aborted=len(aborted),
        matches=matches,
        reports=tuple(reports),
        counts=counts,
        bkk_value=bkk,
        bezout_bound=bez,
        max_residual=max((r.residual_max for r in reports), default=0.0),
        bezout_ok=all(r.count <= r.bezout_bound for r in reports),
        match_rate=(matches / len(reports)) if reports else 0.0,
        aborted_seeds=tuple(aborted),
    )
