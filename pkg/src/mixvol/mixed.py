"""Exact mixed volumes of rational polytopes.

The primary evaluator expands the polarization identity

    n! V(K_1,...,K_n) = sum over nonempty J of (-1)^(n-|J|) Vol(sum_{j in J} K_j)

grouped by multiplicity vectors (repeated summands collapse to dilates, so a
tuple with m distinct bodies needs at most prod(mult_i + 1) - 1 hull runs).
An independent oracle recovers the same coefficient from exact polynomial
interpolation of Vol(t_1 K_1 + ... + t_m K_m) on an integer grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .errors import DimensionMismatch, LowerDimensional
from .linalg import Rat, canon, solve
from .polytope import (
    DirectionalMeasure,
    VPolytope,
    facet_measure,
    scaled_sum,
    segment,
    support,
    volume,
)


@dataclass(frozen=True)
class BodyTuple:
    """Ordered multiset of bodies with multiplicities summing to their dimension
    (or to dim-1 for surface-measure arguments)."""

    entries: tuple  # ((VPolytope, int), ...)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty body tuple")
        dim = self.entries[0][0].dim
        for body, mult in self.entries:
            if body.dim != dim:
                raise DimensionMismatch("tuple bodies disagree on dimension")
            if mult <= 0:
                raise ValueError("multiplicities must be positive")

    @property
    def dim(self) -> int:
        return self.entries[0][0].dim

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def bodies(self) -> tuple:
        return tuple(b for b, _ in self.entries)

    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.entries)

    def expanded(self) -> tuple:
        out = []
        for body, mult in self.entries:
            out.extend([body] * mult)
        return tuple(out)


def body_tuple(*items) -> BodyTuple:
    """Build a BodyTuple from bodies and/or (body, multiplicity) pairs,
    merging repeated bodies."""
    merged: list = []
    for item in items:
        body, mult = item if isinstance(item, tuple) else (item, 1)
        for k, (b, m) in enumerate(merged):
            if b is body or b == body:
                merged[k] = (b, m + mult)
                break
        else:
            merged.append((body, mult))
    return BodyTuple(tuple(merged))


@lru_cache(maxsize=65536)
def _scaled_volume(bodies: tuple, counts: tuple) -> Rat:
    live = [(b, c) for b, c in zip(bodies, counts) if c]
    return volume(scaled_sum([b for b, _ in live], [c for _, c in live]))


def mixed_volume(bt: BodyTuple) -> Rat:
    """Exact V_n(K_1,...,K_n) by signed polarization over subset sums."""
    n = bt.dim
    if bt.total_multiplicity != n:
        raise DimensionMismatch(
            f"total multiplicity {bt.total_multiplicity} != dimension {n}"
        )
    bodies = bt.bodies()
    mults = bt.multiplicities()
    total = Fraction(0)
    for counts in itertools.product(*(range(m + 1) for m in mults)):
        size = sum(counts)
        if size == 0:
            continue
        ways = 1
        for m, c in zip(mults, counts):
            ways *= comb(m, c)
        term = ways * _scaled_volume(bodies, counts)
        total += term if (n - size) % 2 == 0 else -term
    return canon(total / factorial(n))


def mixed_volume_oracle(bt: BodyTuple) -> Rat:
    """Independent evaluator: fit the Minkowski volume polynomial on an exact
    integer grid and read off the target coefficient."""
    n = bt.dim
    if bt.total_multiplicity != n:
        raise DimensionMismatch(
            f"total multiplicity {bt.total_multiplicity} != dimension {n}"
        )
    bodies = bt.bodies()
    mults = bt.multiplicities()
    m = len(bodies)
    if m == 1:
        return volume(bodies[0])

    free = m - 1
    exps = [e for e in itertools.product(range(n + 1), repeat=free) if sum(e) <= n]
    rows = []
    rhs = []
    for pt in exps:
        row = []
        for e in exps:
            val = 1
            for t, p in zip(pt, e):
                val *= t ** p
            row.append(val)
        rows.append(row)
        rhs.append(volume(scaled_sum(bodies, pt + (1,))))
    coeffs = solve(rows, tuple(rhs))
    target = tuple(mults[:free])
    c = coeffs[exps.index(target)]
    weight = factorial(n)
    for a in mults:
        weight //= factorial(a)
    return canon(Fraction(c) / weight)


def first_mixed_volume(L: VPolytope, P: VPolytope) -> Rat:
    """V(L, P[n-1]) from the facet measure of P: (1/n) sum h_L(w) weight(w)."""
    if L.dim != P.dim:
        raise DimensionMismatch(f"dims {L.dim} vs {P.dim}")
    if not P.is_full_dimensional():
        raise LowerDimensional("first mixed volume needs full-dimensional P")
    n = P.dim
    acc = Fraction(0)
    for w, weight in facet_measure(P).atoms:
        acc += Fraction(L.support_value(w)) * weight
    return canon(acc / n)


def mixed_surface_measure(bt: BodyTuple) -> DirectionalMeasure:
    """Mixed surface-area measure S(P_2,...,P_n, .) of n-1 bodies, as exact
    surrogate weights V_{n-1}(faces)/|w| on primitive integer normals."""
    n = bt.dim
    if bt.total_multiplicity != n - 1:
        raise DimensionMismatch(
            f"total multiplicity {bt.total_multiplicity} != dimension-1 = {n - 1}"
        )
    bodies = bt.bodies()
    mults = bt.multiplicities()

    total = scaled_sum(bodies, [1] * len(bodies))
    if total.intrinsic_dim < n - 1:
        return DirectionalMeasure(())
    if total.intrinsic_dim == n - 1:
        from .linalg import normal_vector, primitive, vsub

        verts = total.vertices
        base = verts[0]
        diffs = []
        for v in verts[1:]:
            cand = diffs + [vsub(v, base)]
            from .linalg import rank

            if rank(cand) == len(cand):
                diffs = cand
            if len(diffs) == n - 1:
                break
        w = primitive(normal_vector(diffs))
        candidates = [w, tuple(-x for x in w)]
    else:
        candidates = [f.normal for f in total.hull.facets]

    atoms = []
    for w in candidates:
        k = next(i for i, x in enumerate(w) if x != 0)
        faces = []
        for body in bodies:
            _, face, _ = support(body, w)
            faces.append(VPolytope([v[:k] + v[k + 1:] for v in face.vertices]))
        if n - 1 == 0:
            continue
        if n - 1 == 1:
            weight = volume(faces[0])
        else:
            sub = BodyTuple(tuple(zip(faces, mults)))
            weight = mixed_volume(sub)
        if weight == 0:
            continue
        atoms.append((w, canon(Fraction(weight, abs(w[k])))))
    atoms.sort(key=lambda a: a[0])
    return DirectionalMeasure(tuple(atoms))


def measure_mixed_volume(L: VPolytope, measure: DirectionalMeasure) -> Rat:
    """Integrate a support function against a surrogate directional measure:
    (1/n) sum h_L(w) weight(w)."""
    acc = Fraction(0)
    for w, weight in measure.atoms:
        acc += Fraction(L.support_value(w)) * weight
    return canon(acc / L.dim)


def mixed_volume_segments(dirs, rest: BodyTuple | None = None):
    """V([0,u_1],...,[0,u_k], K_{k+1},...,K_n) via the projection shortcut.

    Rational directions take the exact path (delegating to the polarization
    engine); float directions evaluate the projection formula numerically.
    Linearly dependent directions give 0.
    """
    dirs = [tuple(d) for d in dirs]
    if not dirs:
        raise ValueError("need at least one direction")
    n = len(dirs[0])
    k = len(dirs)
    rest_entries = rest.entries if rest is not None else ()
    rest_mult = sum(m for _, m in rest_entries)
    if k + rest_mult != n:
        raise DimensionMismatch("directions plus multiplicities must total n")

    exact = all(
        all(not isinstance(x, float) for x in d) for d in dirs
    )
    if exact:
        items = [(segment(d, n), 1) for d in dirs] + list(rest_entries)
        return mixed_volume(body_tuple(*items))

    D = np.array([[float(x) for x in d] for d in dirs])
    gram = D @ D.T
    detg = float(np.linalg.det(gram))
    if detg <= 1e-18:
        return 0.0
    seg_det = detg ** 0.5
    scale = factorial(n - k) / factorial(n)
    if rest_mult == 0:
        return seg_det * scale
    from scipy.linalg import null_space

    basis = null_space(D)  # n x (n-k)
    proj_bodies = []
    for body, mult in rest_entries:
        verts = np.array([[float(x) for x in v] for v in body.vertices])
        proj_bodies.append((verts @ basis, mult))
    sub = _float_mixed_volume(proj_bodies, n - k)
    return seg_det * scale * sub


def _float_volume(verts: np.ndarray, d: int) -> float:
    from scipy.spatial import ConvexHull as FloatHull

    if d == 1:
        return float(verts.max() - verts.min())
    try:
        return float(FloatHull(verts).volume)
    except Exception:
        return 0.0  # degenerate cloud


def _float_mixed_volume(bodies_with_mult, d: int) -> float:
    """Float polarization in dimension d over projected vertex clouds."""
    if d == 0:
        return 1.0
    mults = [m for _, m in bodies_with_mult]
    clouds = [v for v, _ in bodies_with_mult]
    total = 0.0
    for counts in itertools.product(*(range(m + 1) for m in mults)):
        size = sum(counts)
        if size == 0:
            continue
        ways = 1
        for m, c in zip(mults, counts):
            ways *= comb(m, c)
        pts = np.zeros((1, d))
        for cloud, c in zip(clouds, counts):
            if c == 0:
                continue
            pts = (pts[:, None, :] + c * cloud[None, :, :]).reshape(-1, d)
        vol = _float_volume(pts, d)
        total += ways * vol if (d - size) % 2 == 0 else -ways * vol
    return total / factorial(d)
