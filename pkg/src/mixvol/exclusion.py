"""Excluding conditions for minimizers of the two-body Bezout constant:
facet-offset perturbations and their combinatorial stability, support and
proportionality checks on mixed surface measures, weak decomposability of
polytopes, and facet isoperimetric ratios with an affine-image search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import LowerDimensional, UnstablePerturbation
from .hull import convex_hull
from .linalg import Rat, Vec, canon, dot, solve
from .mixed import body_tuple, first_mixed_volume, mixed_surface_measure
from .polytope import (
    VPolytope,
    facet_measure,
    homothety_check,
    is_simplex,
    minkowski_sum,
    volume,
)


@dataclass(frozen=True)
class PerturbedPolytope:
    base: VPolytope
    facet_index: int
    t: Rat
    result: VPolytope
    lambda_t: Rat


def stability_interval(P: VPolytope, i: int):
    """Open interval (lo, hi) around 0 of offset shifts t that preserve the
    facet set of P (lo/hi may be None when unbounded on that side).

    Critical shifts are collected from the vertex candidates of the shifted
    halfspace system: each n-subset of facet planes gives a point moving
    affinely in t, and a combinatorial change requires one of the remaining
    inequalities to become tight along the way.
    """
    if not P.is_full_dimensional():
        raise LowerDimensional("perturbation needs a full-dimensional body")
    n = P.dim
    facets = P.hull.facets
    normals = [f.normal for f in facets]
    offsets = [f.offset for f in facets]
    m = len(facets)
    lo = None  # largest negative critical value
    hi = None  # smallest positive critical value

    for subset in itertools.combinations(range(m), n):
        a = [normals[j] for j in subset]
        h = tuple(offsets[j] for j in subset)
        v0 = solve(a, h)
        if v0 is None:
            continue
        if i in subset:
            e = tuple(1 if j == i else 0 for j in subset)
            d = solve(a, e)
        else:
            d = (0,) * n
        # feasibility of the candidate vertex: <v0,wj> + t <d,wj> <= hj + t dij
        lo_s, hi_s = None, None  # feasibility interval of this candidate
        feasible = True
        events = []
        for j in range(m):
            if j in subset:
                continue
            alpha = dot(normals[j], v0) - offsets[j]
            beta = dot(normals[j], d) - (1 if j == i else 0)
            if beta == 0:
                if alpha > 0:
                    feasible = False
                    break
                continue
            t_star = canon(Fraction(-alpha, beta))
            events.append(t_star)
            if beta > 0:
                hi_s = t_star if hi_s is None else min(hi_s, t_star)
            else:
                lo_s = t_star if lo_s is None else max(lo_s, t_star)
        if not feasible:
            continue
        if lo_s is not None and hi_s is not None and lo_s > hi_s:
            continue
        for t_star in (lo_s, hi_s):
            if t_star is None or t_star == 0:
                continue
            if t_star > 0:
                hi = t_star if hi is None else min(hi, t_star)
            else:
                lo = t_star if lo is None else max(lo, t_star)
    return lo, hi


def stable_shift(P: VPolytope, i: int, outward: bool = True) -> Rat:
    """A deterministic combinatorially safe shift magnitude for facet i."""
    lo, hi = stability_interval(P, i)
    if outward:
        return canon(Fraction(hi, 2)) if hi is not None else 1
    return canon(Fraction(lo, 2)) if lo is not None else -1


def perturb_facet(P: VPolytope, i: int, t) -> PerturbedPolytope:
    """Shift the offset of facet i by t and rebuild the polytope exactly.

    The shift is measured against the primitive integer facet normal.  Raises
    UnstablePerturbation when t exceeds the stability interval or the facet
    normal set changes.
    """
    if not P.is_full_dimensional():
        raise LowerDimensional("perturbation needs a full-dimensional body")
    n = P.dim
    facets = P.hull.facets
    if not 0 <= i < len(facets):
        raise IndexError(f"facet index {i} out of range")
    t = canon(Fraction(t)) if not isinstance(t, int) else t
    lo, hi = stability_interval(P, i)
    # endpoints are allowed: vertices may merge there without losing a facet,
    # and the exact normal-set check below is the real arbiter
    if (t > 0 and hi is not None and t > hi) or (t < 0 and lo is not None and t < lo):
        raise UnstablePerturbation(
            f"shift {t} outside stability interval ({lo}, {hi}) of facet {i}"
        )
    if t == 0:
        return PerturbedPolytope(P, i, 0, P, 1)

    normals = [f.normal for f in facets]
    offsets = [
        canon(f.offset + t) if j == i else f.offset for j, f in enumerate(facets)
    ]
    verts = set()
    m = len(facets)
    for subset in itertools.combinations(range(m), n):
        a = [normals[j] for j in subset]
        h = tuple(offsets[j] for j in subset)
        v = solve(a, h)
        if v is None:
            continue
        if all(dot(normals[j], v) <= offsets[j] for j in range(m)):
            verts.add(tuple(canon(x) for x in v))
    result = VPolytope(sorted(verts))
    if {f.normal for f in result.hull.facets} != set(normals):
        raise UnstablePerturbation(
            f"facet set changed under shift {t} of facet {i}"
        )
    lam = canon(Fraction(first_mixed_volume(result, P)) / volume(P))
    return PerturbedPolytope(P, i, t, result, lam)


def support_equality_check(P: VPolytope, i: int, t, r: int) -> bool:
    """True iff S(P[n-1-r], P_{i,t}[r], .) has exactly the facet normals of P."""
    n = P.dim
    if not 1 <= r <= n - 1:
        raise ValueError("r must be in 1..n-1")
    Q = perturb_facet(P, i, t).result
    items = [(Q, r)]
    if n - 1 - r > 0:
        items.append((P, n - 1 - r))
    sigma = mixed_surface_measure(body_tuple(*items))
    return set(sigma.normals()) == set(facet_measure(P).normals())


@dataclass(frozen=True)
class SigmaReport:
    r: int
    proportional: bool
    violating_normal: Vec | None
    expected: Rat | None
    actual: Rat | None


def sigma_proportionality(P: VPolytope, i: int, t):
    """Compare S(P[n-1-r], P_{i,t}[r], .) with lambda_t^r S_P atomwise for
    r = 1..n-1; exact rational weights throughout."""
    n = P.dim
    pert = perturb_facet(P, i, t)
    Q, lam = pert.result, Fraction(pert.lambda_t)
    base = facet_measure(P).as_dict()
    reports = []
    for r in range(1, n):
        items = [(Q, r)]
        if n - 1 - r > 0:
            items.append((P, n - 1 - r))
        sigma = mixed_surface_measure(body_tuple(*items)).as_dict()
        factor = lam ** r
        bad = None
        for w in sorted(set(base) | set(sigma)):
            expected = canon(factor * base.get(w, 0))
            actual = canon(Fraction(sigma.get(w, 0)))
            if expected != actual:
                bad = (w, expected, actual)
                break
        if bad is None:
            reports.append(SigmaReport(r, True, None, None, None))
        else:
            reports.append(SigmaReport(r, False, bad[0], bad[1], bad[2]))
    return reports


def weakly_decomposable_polytope(P: VPolytope):
    """(False, None) iff P is a simplex; otherwise (True, L) with a verified
    witness L = P_{i,t}: the facet normals of P+L stay within those of P and
    L is not homothetic to P."""
    if not P.is_full_dimensional():
        raise LowerDimensional("weak decomposability test needs a full-dimensional body")
    if is_simplex(P):
        return False, None
    facets = sorted(range(len(P.hull.facets)), key=lambda j: P.hull.facets[j].normal)
    base_normals = set(facet_measure(P).normals())
    for j in facets:
        facet = P.hull.facets[j]
        off_facet = len(P.vertices) - len(facet.vertex_ids)
        if off_facet < 2:
            continue
        t = stable_shift(P, j, outward=True)
        L = perturb_facet(P, j, t).result
        if homothety_check(P, L) is not None:
            continue
        sum_normals = set(facet_measure(minkowski_sum(P, L)).normals())
        if sum_normals <= base_normals:
            return True, L
    raise AssertionError("no weak-decomposability witness found for a non-simplex")


# ---------------------------------------------------------------------------
# isoperimetric ratios


@dataclass(frozen=True)
class IsopReport:
    body_isop: float
    per_facet: tuple  # (facet_id, facet_isop, excluded)
    margin: float
    inconclusive: bool
    condition: bool
    conclusion: str


_TIE_TOL = 1e-9


def _euclidean_face_volume(points, expect_dim: int) -> float:
    """Float k-volume of a k-dimensional face given its vertices in R^n, via
    fan decomposition and exact Gram determinants."""
    hull = convex_hull(points)
    k = hull.intrinsic_dim
    if k == 0:
        return 1.0
    if expect_dim != k:
        raise AssertionError(f"face dimension {k} != expected {expect_dim}")
    pts = hull.points
    base = pts[hull.extreme_ids[0]]
    total = 0.0
    for simplex in hull.simplices:
        rows = [
            [float(x - b) for x, b in zip(pts[idx], base)] for idx in simplex
        ]
        e = np.array(rows, dtype=float)
        gram = e @ e.T
        d = float(np.linalg.det(gram))
        if d > 0:
            total += math.sqrt(d)
    return total / math.factorial(k)


def _facet_vertices(P: VPolytope, fid: int):
    return [P.vertices[k] for k in P.hull.facets[fid].vertex_ids]


def isop(P: VPolytope) -> IsopReport:
    """Normalized isoperimetric ratio of P and of each facet, with the
    excluding-condition verdict (facet beating the body)."""
    if not P.is_full_dimensional():
        raise LowerDimensional("isoperimetric report needs a full-dimensional body")
    n = P.dim
    facets = P.hull.facets
    areas = {}
    for fid in range(len(facets)):
        areas[fid] = _euclidean_face_volume(_facet_vertices(P, fid), n - 1)
    surface = sum(areas.values())
    body_isop = surface / (n * float(volume(P)))

    ridge_ids = {}
    for a, b in P.hull.adjacency:
        shared = sorted(set(facets[a].vertex_ids) & set(facets[b].vertex_ids))
        ridge_ids.setdefault(a, []).append(shared)
        ridge_ids.setdefault(b, []).append(shared)

    per_facet = []
    for fid in range(len(facets)):
        boundary = 0.0
        for shared in ridge_ids.get(fid, []):
            boundary += _euclidean_face_volume([P.vertices[k] for k in shared], n - 2)
        facet_isop = boundary / ((n - 1) * areas[fid])
        excluded = facet_isop > body_isop + _TIE_TOL
        per_facet.append((fid, facet_isop, excluded))

    margin = max(fi for _, fi, _ in per_facet) - body_isop
    inconclusive = abs(margin) <= _TIE_TOL
    condition = margin > _TIE_TOL
    if condition:
        conclusion = "facet isoperimetric ratio exceeds the body's: not a minimizer of the two-body Bezout constant"
    elif inconclusive:
        conclusion = "tie within tolerance: inconclusive"
    else:
        conclusion = "no facet beats the body"
    return IsopReport(body_isop, tuple(per_facet), margin, inconclusive, condition, conclusion)


def isop_condition(P: VPolytope) -> bool:
    return isop(P).condition


# ---------------------------------------------------------------------------
# affine-image search over the isoperimetric ratio


class _IsopEvaluator:
    """Precomputed fan triangulations so Isop ratios under a linear map reduce
    to batched numpy determinants.  Maps with condition number above the cap
    are rejected: Gram determinants lose about cond(T)^2 relative precision,
    so ratios there are not trustworthy at float64."""

    COND_CAP = 1e4

    def __init__(self, P: VPolytope):
        self.n = P.dim
        n = self.n
        self.verts = np.array([[float(x) for x in v] for v in P.vertices])
        facets = P.hull.facets

        facet_simplices = [self._triangulate([*f.vertex_ids], P) for f in facets]
        ridge_map: dict = {}
        for a, b in P.hull.adjacency:
            shared = tuple(sorted(set(facets[a].vertex_ids) & set(facets[b].vertex_ids)))
            ridge_map.setdefault(a, []).append(shared)
            ridge_map.setdefault(b, []).append(shared)
        ridge_simplices = []
        for fid in range(len(facets)):
            tris = []
            for shared in ridge_map.get(fid, []):
                tris.extend(self._triangulate(list(shared), P))
            ridge_simplices.append(tris)

        self.body_ids = np.array(
            [(0,) + tuple(s) for s in P.hull.simplices], dtype=int
        )
        self.facet_ids, self.facet_group = self._stack(facet_simplices, n - 1)
        self.ridge_ids, self.ridge_group = self._stack(ridge_simplices, n - 2)
        self.nfacets = len(facets)

    @staticmethod
    def _triangulate(vertex_ids, P):
        """Fan triangulation (index simplices) of the face spanned by ids."""
        pts = [P.vertices[k] for k in vertex_ids]
        hull = convex_hull(pts)
        if hull.intrinsic_dim == 0:
            return [tuple(vertex_ids[:1])]
        coord_of = {pt: vertex_ids[i] for i, pt in enumerate(hull.points)}
        base = hull.points[hull.extreme_ids[0]]
        out = []
        for simplex in hull.simplices:
            ids = (coord_of[base],) + tuple(coord_of[hull.points[i]] for i in simplex)
            out.append(ids)
        return out

    @staticmethod
    def _stack(groups, k):
        ids = []
        owner = []
        for g, tris in enumerate(groups):
            for tri in tris:
                if len(tri) == k + 1:
                    ids.append(tri)
                    owner.append(g)
        return np.array(ids, dtype=int), np.array(owner, dtype=int)

    def _group_volumes(self, verts, ids, owner, k, ngroups):
        out = np.zeros(ngroups)
        if ids.size == 0 or k <= 0:
            return out
        edges = verts[ids[:, 1:]] - verts[ids[:, :1]]
        gram = edges @ edges.transpose(0, 2, 1)
        dets = np.linalg.det(gram)
        vols = np.sqrt(np.maximum(dets, 0.0)) / math.factorial(k)
        np.add.at(out, owner, vols)
        return out

    def max_ratio(self, T: np.ndarray) -> float:
        """max_F Isop(TF) / Isop(TP); 0.0 for numerically unreliable maps."""
        if np.linalg.cond(T) > self.COND_CAP:
            return 0.0
        verts = self.verts @ T.T
        n = self.n
        edges = verts[self.body_ids[:, 1:]] - verts[self.body_ids[:, :1]]
        vol = np.abs(np.linalg.det(edges)).sum() / math.factorial(n)
        if not vol > 1e-12:
            return 0.0
        areas = self._group_volumes(verts, self.facet_ids, self.facet_group, n - 1, self.nfacets)
        if areas.min() < 1e-12:
            return 0.0
        if n == 2:
            boundaries = np.full(self.nfacets, 2.0)  # endpoints of an edge
        else:
            boundaries = self._group_volumes(
                verts, self.ridge_ids, self.ridge_group, n - 2, self.nfacets
            )
        body_isop = areas.sum() / (n * vol)
        facet_isops = boundaries / ((n - 1) * areas)
        return float(facet_isops.max() / body_isop)


def affine_isop_search(P: VPolytope, budget: int = 1000, seed: int = 0):
    """Seeded gradient-free maximization of max_F Isop(TF)/Isop(TP) over
    unit-determinant T (upper-triangular factor times a rotation).  Returns
    (best T, best ratio); the identity is always a candidate."""
    from scipy.optimize import minimize

    ev = _IsopEvaluator(P)
    n = P.dim
    rng = np.random.default_rng(seed)

    def build(params, rot):
        params = np.clip(params, -12.0, 12.0)
        diag = np.exp(params[:n])
        upper = np.eye(n) * diag
        k = n
        for i in range(n):
            for j in range(i + 1, n):
                upper[i, j] = params[k]
                k += 1
        u = upper / np.linalg.det(upper) ** (1.0 / n)
        return u @ rot

    nparams = n + n * (n - 1) // 2
    best_ratio = ev.max_ratio(np.eye(n))
    best_T = np.eye(n)

    for restart in range(budget):
        if restart == 0:
            rot = np.eye(n)
            x0 = np.zeros(nparams)
        else:
            q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            rot = q
            x0 = rng.normal(scale=0.5, size=nparams)
        res = minimize(
            lambda p: -ev.max_ratio(build(p, rot)),
            x0,
            method="Nelder-Mead",
            options={"maxiter": 250, "xatol": 1e-6, "fatol": 1e-10},
        )
        ratio = -res.fun
        if ratio > best_ratio:
            best_ratio = ratio
            best_T = build(res.x, rot)
    return best_T, best_ratio


# ---------------------------------------------------------------------------
# census of hull normals


@dataclass(frozen=True)
class OmegaCensus:
    dim: int
    vertex_count: int
    facet_count: int
    atoms: tuple  # (normal, face_dim)
    face_dim_histogram: dict
    all_facets_top: bool


def classify_omega(P: VPolytope) -> OmegaCensus:
    """Face-dimension census of the surface-measure atoms of a polytope: every
    atom sits on a facet normal, so the histogram concentrates at n-1."""
    from .polytope import support

    atoms = []
    hist: dict = {}
    for facet in P.hull.facets:
        _, _, fdim = support(P, facet.normal)
        atoms.append((facet.normal, fdim))
        hist[fdim] = hist.get(fdim, 0) + 1
    return OmegaCensus(
        dim=P.dim,
        vertex_count=len(P.vertices),
        facet_count=len(P.hull.facets),
        atoms=tuple(atoms),
        face_dim_histogram=hist,
        all_facets_top=all(d == P.dim - 1 for _, d in atoms),
    )
