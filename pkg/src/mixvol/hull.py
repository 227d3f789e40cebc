"""Exact incremental convex hull for rational point sets in dimensions 1..6.

The construction keeps a triangulated boundary (simplicial facets) built by
beneath-beyond insertion with strict visibility, so coplanar degeneracies
never require floating point: a point exactly on a supporting hyperplane is
simply not visible from it.  True facets are recovered at the end by merging
simplicial facets that share a supporting hyperplane.

Normals are reduced to primitive integer vectors (outward), offsets follow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch
from .linalg import Rat, Vec, canon, det, dot, normal_vector, primitive, rank, solve, vsub


@dataclass(frozen=True)
class Facet:
    """A true facet: primitive integer outward normal, offset, vertex ids."""

    normal: Vec
    offset: Rat
    vertex_ids: tuple


@dataclass
class HullData:
    ambient_dim: int
    intrinsic_dim: int
    points: tuple                # deduped input points
    extreme_ids: tuple           # indices into points, deterministic order
    facets: tuple                # Facet; local coordinates when degenerate
    adjacency: frozenset         # pairs (i, j) of adjacent facet indices
    simplices: tuple             # boundary simplices as point-id tuples (full dim)
    affine_origin: Vec | None = None
    affine_basis: tuple | None = None
    local_hull: "HullData | None" = None
    _volume: Rat | None = field(default=None, repr=False, compare=False)

    @property
    def vertices(self) -> tuple:
        return tuple(self.points[i] for i in self.extreme_ids)


def _dedupe(points):
    seen = {}
    out = []
    for p in points:
        p = tuple(canon(x) for x in p)
        if p not in seen:
            seen[p] = len(out)
            out.append(p)
    return out


def _affine_basis(points):
    """Greedy affinely independent subset: returns (origin_id, basis_ids)."""
    origin = points[0]
    basis_ids = []
    basis_rows = []
    for i in range(1, len(points)):
        cand = basis_rows + [list(vsub(points[i], origin))]
        if rank(cand) == len(cand):
            basis_rows = cand
            basis_ids.append(i)
            if len(basis_ids) == len(origin):
                break
    return 0, basis_ids


def _plane(points, vert_ids):
    """Primitive-normal hyperplane through the given affinely independent ids."""
    q0 = points[vert_ids[0]]
    diffs = [vsub(points[i], q0) for i in vert_ids[1:]]
    w = normal_vector(diffs)
    w = primitive(w)
    return w, dot(w, q0)


def _hull_full(points, d):
    """Triangulated hull of full-rank points in R^d.

    Returns (simplicial facets, ridge adjacencies) where each simplicial facet
    is (vertex_ids, normal, offset).
    """
    origin_id, basis_ids = _affine_basis(points)
    init = [origin_id] + basis_ids
    ref = tuple(sum(points[i][k] for i in init) for k in range(d))  # centroid * (d+1)

    facets = {}
    ridge_map = {}
    next_id = 0

    def orient(w, c):
        s = dot(w, ref)
        if s > c * (d + 1):
            return tuple(-x for x in w), -c
        if s == c * (d + 1):
            raise AssertionError("reference point on facet plane")
        return w, c

    def add_facet(vert_ids):
        nonlocal next_id
        w, c = _plane(points, vert_ids)
        w, c = orient(w, c)
        fid = next_id
        next_id += 1
        facets[fid] = (tuple(vert_ids), w, c)
        for ridge in _ridges(vert_ids):
            ridge_map.setdefault(ridge, []).append(fid)
        return fid

    def _ridges(vert_ids):
        n = len(vert_ids)
        return [tuple(sorted(vert_ids[:k] + vert_ids[k + 1:])) for k in range(n)]

    def drop_facet(fid):
        vert_ids, _, _ = facets.pop(fid)
        for ridge in _ridges(vert_ids):
            lst = ridge_map[ridge]
            lst.remove(fid)
            if not lst:
                del ridge_map[ridge]

    for k in range(d + 1):
        add_facet(init[:k] + init[k + 1:])

    inserted = set(init)
    for pid in range(len(points)):
        if pid in inserted:
            continue
        p = points[pid]
        visible = [fid for fid, (_, w, c) in facets.items() if dot(w, p) > c]
        if not visible:
            continue
        visible_set = set(visible)
        horizon = []
        for fid in visible:
            vert_ids, _, _ = facets[fid]
            for ridge in _ridges(vert_ids):
                others = [g for g in ridge_map[ridge] if g != fid]
                if others and others[0] not in visible_set:
                    horizon.append(ridge)
        for fid in visible:
            drop_facet(fid)
        for ridge in horizon:
            add_facet(ridge + (pid,))

    ridge_pairs = set()
    for lst in ridge_map.values():
        if len(lst) == 2:
            a, b = lst
            ridge_pairs.add((min(a, b), max(a, b)))
    return facets, ridge_pairs


def _merge_facets(points, simp_facets, ridge_pairs, d):
    """Merge coplanar simplicial facets into true facets; identify vertices."""
    groups = {}
    for fid, (vert_ids, w, c) in simp_facets.items():
        groups.setdefault((w, c), []).append(fid)
    group_keys = sorted(groups, key=lambda wc: (wc[0], Fraction(wc[1])))
    group_index = {}
    member_union = []
    for gi, key in enumerate(group_keys):
        for fid in groups[key]:
            group_index[fid] = gi
        ids = set()
        for fid in groups[key]:
            ids.update(simp_facets[fid][0])
        member_union.append(ids)

    incident = {}
    for gi, ids in enumerate(member_union):
        for pid in ids:
            incident.setdefault(pid, []).append(gi)

    extreme = []
    for pid in sorted(incident):
        normals = [group_keys[gi][0] for gi in incident[pid]]
        if rank(normals) == d:
            extreme.append(pid)
    pos = {pid: k for k, pid in enumerate(extreme)}

    facets = []
    for gi, key in enumerate(group_keys):
        w, c = key
        verts = tuple(sorted(pos[pid] for pid in member_union[gi] if pid in pos))
        facets.append(Facet(normal=w, offset=c, vertex_ids=verts))

    adjacency = set()
    for a, b in ridge_pairs:
        ga, gb = group_index[a], group_index[b]
        if ga != gb:
            adjacency.add((min(ga, gb), max(ga, gb)))
    return tuple(extreme), tuple(facets), frozenset(adjacency)


def _local_coords(points, origin, basis):
    """Exact coordinates of points (inside the affine hull) w.r.t. the basis."""
    r = len(basis)
    cols = list(zip(*basis))  # rows of the n x r matrix, transposed to r-vectors
    row_ids = []
    chosen = []
    for i, row in enumerate(cols):
        cand = chosen + [list(row)]
        if rank(cand) == len(cand):
            chosen.append(list(row))
            row_ids.append(i)
            if len(row_ids) == r:
                break
    sq = [[basis[j][i] for j in range(r)] for i in row_ids]
    out = []
    for p in points:
        rhs = tuple(p[i] - origin[i] for i in row_ids)
        lam = solve(sq, rhs)
        out.append(tuple(canon(x) for x in lam))
    return out


def convex_hull(points) -> HullData:
    """Facet description of conv(points) with exact rational arithmetic.

    Lower-dimensional input yields intrinsic_dim < n with facets expressed in
    coordinates of the affine hull.
    """
    pts = _dedupe(points)
    if not pts:
        raise ValueError("empty point list")
    n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise DimensionMismatch(f"points mix dimensions {len(p)} and {n}")

    if len(pts) == 1:
        return HullData(n, 0, tuple(pts), (0,), (), frozenset(), ())

    origin_id, basis_ids = _affine_basis(pts)
    r = len(basis_ids)
    if r == n:
        simp_facets, ridge_pairs = _hull_full(pts, n)
        extreme, facets, adjacency = _merge_facets(pts, simp_facets, ridge_pairs, n)
        simplices = tuple(vert_ids for vert_ids, _, _ in simp_facets.values())
        return HullData(n, n, tuple(pts), extreme, facets, adjacency, simplices)

    origin = pts[origin_id]
    basis = tuple(vsub(pts[i], origin) for i in basis_ids)
    local_pts = _local_coords(pts, origin, basis)
    local = convex_hull(local_pts)
    # local hull's point order matches pts (dedupe is injective here because
    # the affine map to local coordinates is injective on the affine hull)
    return HullData(
        n,
        local.intrinsic_dim,
        tuple(pts),
        local.extreme_ids,
        local.facets,
        local.adjacency,
        local.simplices,
        affine_origin=origin,
        affine_basis=basis,
        local_hull=local,
    )


def hull_volume(hull: HullData) -> Rat:
    """Exact Lebesgue volume via fan decomposition from a base vertex."""
    if hull._volume is not None:
        return hull._volume
    n = hull.ambient_dim
    if hull.intrinsic_dim < n:
        hull._volume = 0
        return 0
    base = hull.points[hull.extreme_ids[0]]
    total = 0
    for simplex in hull.simplices:
        rows = [vsub(hull.points[i], base) for i in simplex]
        d = det(rows)
        total += -d if d < 0 else d
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    vol = canon(Fraction(total, fact))
    hull._volume = vol
    return vol


def check_hull_integrity(hull: HullData) -> None:
    """Assert structural invariants; used by the test suite."""
    if hull.intrinsic_dim < hull.ambient_dim:
        if hull.local_hull is not None:
            check_hull_integrity(hull.local_hull)
        return
    pts = hull.points
    vertices = hull.vertices
    for facet in hull.facets:
        on = 0
        for p in pts:
            s = dot(facet.normal, p)
            if s > facet.offset:
                raise AssertionError("point beyond facet plane")
        for k, v in enumerate(vertices):
            tight = dot(facet.normal, v) == facet.offset
            if tight != (k in facet.vertex_ids):
                raise AssertionError("facet incidence mismatch")
            on += tight
        span = [vsub(vertices[k], vertices[facet.vertex_ids[0]])
                for k in facet.vertex_ids[1:]]
        if rank(span) != hull.ambient_dim - 1:
            raise AssertionError("facet not (n-1)-dimensional")
