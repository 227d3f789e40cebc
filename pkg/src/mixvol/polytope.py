"""Vertex-represented rational polytopes and the exact geometric primitives:
volumes, Minkowski sums, support faces, facet measures, inradius, homothety
and simplex detection, plus the floating-point projection volume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .errors import DimensionMismatch, LowerDimensional, ZeroDirection
from .hull import convex_hull, hull_volume
from .linalg import (
    Rat,
    Vec,
    canon,
    dot,
    is_zero_vec,
    primitive,
    rank,
    vadd,
    vscale,
    vsub,
)
from .simplex_lp import solve_lp

MAX_DIM = 6


class VPolytope:
    """Convex polytope given by its irredundant rational vertex set.

    Construction always runs the exact hull, so the stored vertex list equals
    the set of extreme points and the facet description is cached.  Instances
    are immutable.
    """

    __slots__ = ("dim", "vertices", "hull", "name")

    def __init__(self, points, name: str | None = None):
        hull = convex_hull(points)
        object.__setattr__(self, "dim", hull.ambient_dim)
        object.__setattr__(self, "vertices", hull.vertices)
        object.__setattr__(self, "hull", hull)
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("VPolytope is immutable")

    def __eq__(self, other):
        if not isinstance(other, VPolytope):
            return NotImplemented
        return self.dim == other.dim and frozenset(self.vertices) == frozenset(other.vertices)

    def __hash__(self):
        return hash((self.dim, frozenset(self.vertices)))

    def __repr__(self):
        label = self.name or f"{len(self.vertices)} vertices"
        return f"VPolytope(dim={self.dim}, {label})"

    @property
    def intrinsic_dim(self) -> int:
        return self.hull.intrinsic_dim

    def is_full_dimensional(self) -> bool:
        return self.intrinsic_dim == self.dim

    def translate(self, x: Vec) -> "VPolytope":
        return VPolytope([vadd(v, x) for v in self.vertices])

    def scale(self, t) -> "VPolytope":
        return VPolytope([vscale(t, v) for v in self.vertices])

    def apply_matrix(self, rows) -> "VPolytope":
        return VPolytope(
            [tuple(canon(dot(row, v)) for row in rows) for v in self.vertices]
        )

    def contains(self, x: Vec) -> bool:
        """Exact membership test (full-dimensional bodies only)."""
        if not self.is_full_dimensional():
            raise LowerDimensional("membership test needs a full-dimensional body")
        return all(dot(f.normal, x) <= f.offset for f in self.hull.facets)

    def support_value(self, w: Vec) -> Rat:
        return max(dot(w, v) for v in self.vertices)


@dataclass(frozen=True)
class Homothety:
    ratio: Rat
    translation: Vec


@dataclass(frozen=True)
class DirectionalMeasure:
    """Discrete measure on directions: (primitive integer normal w, weight w_).

    The true mass carried at direction w/|w| is weight * |w|; storing the
    rational surrogate keeps the whole pipeline exact because every consumer
    pairs the weight with an unnormalized support value h(w).
    """

    atoms: tuple  # ((normal, weight), ...) sorted by normal

    def as_dict(self) -> dict:
        return dict(self.atoms)

    def normals(self) -> tuple:
        return tuple(w for w, _ in self.atoms)


def volume(P: VPolytope) -> Rat:
    """Exact Lebesgue volume; 0 iff the body is lower-dimensional."""
    return hull_volume(P.hull)


def minkowski_sum(P: VPolytope, Q: VPolytope) -> VPolytope:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dims {P.dim} vs {Q.dim}")
    sums = {vadd(p, q) for p in P.vertices for q in Q.vertices}
    return VPolytope(sorted(sums))


def scaled_sum(bodies, coeffs) -> VPolytope:
    """Exact Minkowski combination sum_i c_i * B_i (c_i >= 0, not all zero).

    Vertex candidates are the sums of scaled vertices; the hull prunes the
    rest.  Zero coefficients contribute the origin.
    """
    dim = bodies[0].dim
    pts = [tuple([0] * dim)]
    for body, c in zip(bodies, coeffs):
        if body.dim != dim:
            raise DimensionMismatch("summands disagree on dimension")
        if c == 0:
            continue
        scaled = [vscale(c, v) for v in body.vertices]
        pts = [vadd(a, s) for a in pts for s in scaled]
        if len(pts) > 20000:
            pts = list({*pts})
    return VPolytope(sorted(set(pts)))


def support(P: VPolytope, w: Vec):
    """Support value, face and face dimension in direction w (unnormalized)."""
    if is_zero_vec(w):
        raise ZeroDirection("support direction must be nonzero")
    best = None
    for v in P.vertices:
        s = dot(w, v)
        if best is None or s > best:
            best = s
    maxers = [v for v in P.vertices if dot(w, v) == best]
    face = VPolytope(maxers)
    return canon(best), face, face.intrinsic_dim



def facet_measure(P: VPolytope) -> DirectionalMeasure:
    """Surface-area measure of a full-dimensional polytope, as rational
    surrogate weights Vol_{n-1}(facet)/|w| attached to the primitive integer
    outward normals w."""
    if not P.is_full_dimensional():
        raise LowerDimensional("facet measure needs a full-dimensional body")
    atoms = []
    for facet in P.hull.facets:
        w = facet.normal
        k = next(i for i, x in enumerate(w) if x != 0)
        pts = [P.vertices[i][:k] + P.vertices[i][k + 1:] for i in facet.vertex_ids]
        if P.dim == 1:
            area = 1  # 0-dimensional facet of a segment
        else:
            area = hull_volume(convex_hull(pts))
        weight = canon(Fraction(area, abs(w[k])))
        atoms.append((w, weight))
    atoms.sort(key=lambda a: a[0])
    return DirectionalMeasure(tuple(atoms))


def inradius(K: VPolytope, L: VPolytope):
    """Largest r with x + rL inside K, by exact rational LP over K's facets.

    Returns (r, x).
    """
    if not K.is_full_dimensional() or not L.is_full_dimensional():
        raise LowerDimensional("inradius needs full-dimensional bodies")
    n = K.dim
    cK = _vertex_centroid(K)
    cL = _vertex_centroid(L)
    K0 = K.translate(vscale(-1, cK))
    L0 = L.translate(vscale(-1, cL))
    a_rows = []
    b = []
    for facet in K0.hull.facets:
        w = facet.normal
        a_rows.append(list(w) + [L0.support_value(w)])
        b.append(facet.offset)
    c = [0] * n + [1]
    _, z = solve_lp(a_rows, b, c)
    x0, r = z[:n], z[n]
    x = tuple(canon(a + b - c_) for a, b, c_ in zip(x0, cK, vscale(r, cL)))
    return canon(r), x


def _vertex_centroid(P: VPolytope) -> Vec:
    n = len(P.vertices)
    acc = [Fraction(0)] * P.dim
    for v in P.vertices:
        for i, x in enumerate(v):
            acc[i] += Fraction(x)
    return tuple(canon(a / n) for a in acc)


def is_simplex(P: VPolytope) -> bool:
    return P.is_full_dimensional() and len(P.vertices) == P.dim + 1


def homothety_check(P: VPolytope, Q: VPolytope) -> Homothety | None:
    """Exact test whether Q = x + t*P for some rational t >= 0.

    For rational vertex data the ratio of homothetic bodies is necessarily
    rational, so an irrational n-th root of the volume ratio already
    certifies absence.
    """
    from .linalg import nth_root_rational

    if P.dim != Q.dim:
        raise DimensionMismatch(f"dims {P.dim} vs {Q.dim}")
    if len(P.vertices) != len(Q.vertices):
        return None
    if len(P.vertices) == 1:
        return Homothety(ratio=0, translation=Q.vertices[0])

    vp, vq = volume(P), volume(Q)
    if vp > 0:
        if vq == 0:
            return None
        t = nth_root_rational(Fraction(vq) / Fraction(vp), P.dim)
        if t is None:
            return None
    else:
        t = None
        for k in range(P.dim):
            wp = _axis_width(P, k)
            if wp > 0:
                t = canon(Fraction(_axis_width(Q, k)) / Fraction(wp))
                break
        if t is None or t <= 0:
            return None

    cP = _vertex_centroid(P)
    cQ = _vertex_centroid(Q)
    x = tuple(canon(b - t * a) for a, b in zip(cP, cQ))
    mapped = {tuple(canon(t * a + xi) for a, xi in zip(v, x)) for v in P.vertices}
    if mapped == set(Q.vertices):
        return Homothety(ratio=canon(t), translation=x)
    return None


def _axis_width(P: VPolytope, k: int) -> Rat:
    vals = [v[k] for v in P.vertices]
    return canon(max(vals) - min(vals))


def edges(P: VPolytope) -> list:
    """Vertex-index pairs forming the 1-faces of a full-dimensional polytope."""
    if not P.is_full_dimensional():
        raise LowerDimensional("edge enumeration needs a full-dimensional body")
    n = P.dim
    facets = P.hull.facets
    incident = [set() for _ in P.vertices]
    for fi, f in enumerate(facets):
        for vid in f.vertex_ids:
            incident[vid].add(fi)
    out = []
    for i in range(len(P.vertices)):
        for j in range(i + 1, len(P.vertices)):
            common = incident[i] & incident[j]
            if len(common) < n - 1:
                continue
            normals = [facets[fi].normal for fi in common]
            if rank(normals) == n - 1:
                out.append((i, j))
    return out


def edge_directions(P: VPolytope) -> list:
    """Primitive integer directions of the edges of P (one sign per edge)."""
    dirs = []
    seen = set()
    for i, j in edges(P):
        d = primitive(vsub(P.vertices[j], P.vertices[i]))
        d = max(d, tuple(-x for x in d))
        if d not in seen:
            seen.add(d)
            dirs.append(d)
    return dirs


def project_volume(P: VPolytope, u) -> float:
    """Floating (n-1)-volume of the projection of P onto the hyperplane u^perp."""
    arr = np.asarray(u, dtype=float)
    norm = np.linalg.norm(arr)
    if norm < 1e-12:
        raise ZeroDirection("projection direction must be nonzero")
    if not P.is_full_dimensional():
        raise LowerDimensional("projection volume needs a full-dimensional body")
    return projected_volume_floats(
        np.array([[float(x) for x in v] for v in P.vertices]), arr[None, :] / norm
    )


def projected_volume_floats(verts: np.ndarray, dirs: np.ndarray) -> float:
    """Float volume of the projection of a vertex cloud onto the orthogonal
    complement of the row space of ``dirs``."""
    from scipy.linalg import null_space
    from scipy.spatial import ConvexHull as FloatHull

    basis = null_space(dirs)
    k = basis.shape[1]
    if k == 0:
        return 1.0
    proj = verts @ basis
    if k == 1:
        return float(proj.max() - proj.min())
    return float(FloatHull(proj).volume)


def segment(direction: Vec, dim: int | None = None) -> VPolytope:
    """The segment [0, u] for a rational direction u."""
    d = tuple(canon(x) for x in direction)
    if is_zero_vec(d):
        raise ZeroDirection("segment direction must be nonzero")
    if dim is not None and len(d) != dim:
        raise DimensionMismatch("direction has wrong dimension")
    return VPolytope([tuple([0] * len(d)), d])
