import math
from fractions import Fraction

import pytest

from mixvol.bodies import box, crosspolytope, cube, polygon_prism, simplex, triangular_prism
from mixvol.errors import UnstablePerturbation
from mixvol.exclusion import (
    affine_isop_search,
    classify_omega,
    isop,
    isop_condition,
    perturb_facet,
    sigma_proportionality,
    stability_interval,
    stable_shift,
    support_equality_check,
    weakly_decomposable_polytope,
)
from mixvol.polytope import facet_measure, homothety_check, volume
from mixvol.randbodies import random_polytope, rng_for


def _facet_with_normal(P, normal):
    for i, f in enumerate(P.hull.facets):
        if f.normal == normal:
            return i
    raise AssertionError(f"no facet with normal {normal}")


def test_perturb_identity():
    C = cube(3)
    p = perturb_facet(C, 0, 0)
    assert p.result == C and p.lambda_t == 1


def test_perturb_cube_top():
    C = cube(3)
    top = _facet_with_normal(C, (0, 0, 1))
    p = perturb_facet(C, top, Fraction(1, 2))
    assert p.result == box((1, 1, Fraction(3, 2)))
    assert p.lambda_t == Fraction(7, 6)
    assert volume(p.result) == Fraction(3, 2)


def test_perturb_simplex_is_homothety():
    S = simplex(3)
    for i in range(4):
        t = stable_shift(S, i, outward=True)
        p = perturb_facet(S, i, t)
        h = homothety_check(S, p.result)
        assert h is not None
        assert h.ratio == p.lambda_t
        assert p.lambda_t > 1


def test_perturb_roundtrip():
    rng = rng_for(31, 0)
    for _ in range(8):
        P = random_polytope(rng, 3)
        i = rng.randrange(len(P.hull.facets))
        t = stable_shift(P, i, outward=True)
        t = Fraction(t) / 2
        if t == 0:
            continue
        Q = perturb_facet(P, i, t).result
        # identify the same facet in Q by normal
        j = _facet_with_normal(Q, P.hull.facets[i].normal)
        back = perturb_facet(Q, j, -t).result
        assert back == P


def test_perturb_lambda_formula():
    rng = rng_for(32, 0)
    for _ in range(8):
        P = random_polytope(rng, 3)
        i = rng.randrange(len(P.hull.facets))
        t = Fraction(stable_shift(P, i, outward=False)) / 2
        if t == 0:
            continue
        p = perturb_facet(P, i, t)
        omega = dict(facet_measure(P).atoms)[P.hull.facets[i].normal]
        assert p.lambda_t == 1 + Fraction(t, 3) * Fraction(omega) / Fraction(volume(P))


def test_unstable_shift_refused():
    C = cube(3)
    bottom = _facet_with_normal(C, (0, 0, -1))
    with pytest.raises(UnstablePerturbation):
        perturb_facet(C, bottom, -2)  # pushes past the opposite facet
    lo, hi = stability_interval(C, bottom)
    assert lo == -1  # the facet collides with the far side at shift -1
    assert hi is None  # outward shifts of a box facet never change the lattice


def test_support_equality_simplex_and_cube():
    for P in (simplex(3), cube(3)):
        for i in range(len(P.hull.facets)):
            t = Fraction(stable_shift(P, i, outward=True)) / 2
            for r in (1, 2):
                assert support_equality_check(P, i, t, r)


def test_sigma_proportionality_simplex():
    S = simplex(3)
    for i in range(4):
        t = stable_shift(S, i, outward=True)
        reports = sigma_proportionality(S, i, t)
        assert all(r.proportional for r in reports)


def test_sigma_violation_cube_and_prism():
    C = cube(3)
    top = _facet_with_normal(C, (0, 0, 1))
    reports = sigma_proportionality(C, top, Fraction(1, 2))
    assert any(not r.proportional for r in reports)
    PR = triangular_prism()
    reports = sigma_proportionality(PR, 0, stable_shift(PR, 0, outward=True))
    assert any(not r.proportional for r in reports)


def test_weak_decomposability():
    assert weakly_decomposable_polytope(simplex(3)) == (False, None)
    assert weakly_decomposable_polytope(simplex(4)) == (False, None)
    for P in (cube(3), triangular_prism(), crosspolytope(3)):
        wd, witness = weakly_decomposable_polytope(P)
        assert wd and witness is not None
        assert homothety_check(P, witness) is None
        from mixvol.polytope import minkowski_sum

        sn = set(facet_measure(minkowski_sum(P, witness)).normals())
        assert sn <= set(facet_measure(P).normals())


def test_isop_cube_tie():
    rep = isop(cube(3))
    assert abs(rep.body_isop - 2.0) < 1e-12
    assert rep.inconclusive and not rep.condition
    assert all(not exc for _, _, exc in rep.per_facet)


def test_isop_long_box():
    rep = isop(box((10, 1, 1)))
    assert abs(rep.body_isop - 1.4) < 1e-12
    assert rep.condition and rep.margin > 0.5
    assert isop_condition(box((10, 1, 1)))


def test_isop_lower_bound_per_facet():
    # each facet ratio dominates kappa_d^(1/d) / Vol_d(F)^(1/d), d = n-1
    for P in (cube(3), simplex(3), box((10, 1, 1)), crosspolytope(3)):
        rep = isop(P)
        from mixvol.exclusion import _euclidean_face_volume, _facet_vertices

        for fid, facet_isop, _ in rep.per_facet:
            area = _euclidean_face_volume(_facet_vertices(P, fid), P.dim - 1)
            kappa2 = math.pi
            assert facet_isop >= (kappa2 ** 0.5) / (area ** 0.5) - 1e-9


def test_affine_search_simplex_and_box():
    _, ratio = affine_isop_search(simplex(3), budget=40, seed=7)
    assert ratio <= 1 + 1e-6
    _, ratio = affine_isop_search(box((10, 1, 1)), budget=2, seed=7)
    assert ratio > 1 + 1e-6


def test_isop_condition_bodies_have_certified_ratio_above_one():
    # wherever the facet condition fires, some certified segment pair beats 1
    from mixvol.bezout import ratio_b2
    from mixvol.errors import DegenerateDenominator
    from mixvol.polytope import edge_directions, segment

    for P in (box((10, 1, 1)), polygon_prism(8)):
        assert isop_condition(P)
        dirs = edge_directions(P)
        best = Fraction(0)
        for i in range(len(dirs)):
            for j in range(i + 1, len(dirs)):
                try:
                    best = max(best, Fraction(ratio_b2(segment(dirs[i]), segment(dirs[j]), P)))
                except DegenerateDenominator:
                    continue
            if best > 1:
                break
        assert best > 1


def test_census():
    cen = classify_omega(cube(3))
    assert cen.facet_count == 6 and cen.all_facets_top
    assert cen.face_dim_histogram == {2: 6}
    cen = classify_omega(simplex(4))
    assert cen.facet_count == 5 and cen.face_dim_histogram == {3: 5}
    cen = classify_omega(polygon_prism(20))
    assert cen.facet_count == 22 and cen.vertex_count == 40
    assert cen.all_facets_top
    assert isop_condition(polygon_prism(20))
