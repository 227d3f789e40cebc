from fractions import Fraction

import pytest

from mixvol.bezout import (
    bezout_form,
    diskant_check,
    fenchel_form,
    fenchel_sharp_check,
    fgm_check,
    ratio_b,
    ratio_b2,
    ratio_bprime,
    rectangle_lemma_check,
    search_b2_lower,
    xiao_bound_check,
)
from mixvol.bodies import body_from_obj, crosspolytope, cube, simplex
from mixvol.errors import DegenerateDenominator
from mixvol.polytope import segment
from mixvol.randbodies import random_body, random_polytope, rng_for

E1, E2, E3 = segment((1, 0, 0)), segment((0, 1, 0)), segment((0, 0, 1))
D1, D2 = segment((1, 1, 0)), segment((1, -1, 0))


def test_fenchel_form_values():
    O3 = crosspolytope(3)
    assert fenchel_form(D1, D2, O3, 2) == 0
    C = cube(3)
    assert fenchel_form(C, C, C, 1) == 0
    assert fenchel_form(E1, E2, C, 2) > 0


def test_bezout_form_values():
    C = cube(3)
    assert bezout_form([E1, E2, E3], C, 3) == 0
    assert bezout_form([E1, E2, E3], C, 2) < 0
    assert bezout_form([C, E1, E2], C, 1) == 0
    delta = simplex(3)
    rng = rng_for(21, 0)
    for _ in range(20):
        bodies = [random_body(rng, 3) for _ in range(3)]
        assert bezout_form(bodies, delta, 1) >= 0


def test_ratios():
    C = cube(3)
    assert ratio_b2(E1, E2, C) == Fraction(3, 2)
    assert ratio_b2(D1, D2, crosspolytope(3)) == 2
    assert ratio_b2(C, C, C) == 1
    assert ratio_b([E1, E2, E3], C) == 3
    # in dimension 3 the n-1 body ratio collapses to the two-body one
    assert ratio_bprime([E1, E2], C) == ratio_b2(E1, E2, C)
    e1_4 = segment((1, 0, 0, 0))
    e2_4 = segment((0, 1, 0, 0))
    assert ratio_b2(e1_4, e2_4, cube(4)) == Fraction(4, 3)


def test_ratio_degenerate_denominator():
    # a pair of parallel segments kills V(A1,...,An)
    with pytest.raises(DegenerateDenominator):
        ratio_b([E1, E1, E1], cube(3))


def test_ratio_b2_scale_translation_invariance():
    rng = rng_for(22, 0)
    for _ in range(10):
        K = random_polytope(rng, 3)
        A = random_polytope(rng, 3)
        B = random_body(rng, 3)
        try:
            base = ratio_b2(A, B, K)
        except DegenerateDenominator:
            continue
        t = Fraction(rng.randrange(1, 5), rng.randrange(1, 4))
        x = tuple(rng.randrange(-3, 4) for _ in range(3))
        assert ratio_b2(A.scale(t).translate(x), B, K) == base


def test_search_cube():
    rep = search_b2_lower(cube(3), budget=400, seed=1)
    assert rep.value == Fraction(3, 2)
    assert rep.certified
    assert 1 <= rep.value <= 2


def test_search_octahedron_and_simplex():
    rep = search_b2_lower(crosspolytope(3), budget=150, seed=1)
    assert rep.value == 2
    rep = search_b2_lower(simplex(3), budget=150, seed=1)
    assert rep.value == 1


def test_search_witness_reevaluates():
    rep = search_b2_lower(cube(3), budget=300, seed=5)
    wa, wb = rep.witness
    A = body_from_obj(wa)
    B = body_from_obj(wb)
    assert ratio_b2(A, B, cube(3)) == rep.value


def test_diskant():
    C, S = cube(3), simplex(3)
    rep = diskant_check(C, S)
    assert rep.ok and rep.margin > 0
    assert rep.detail["derived_bound_ok"]
    rep = diskant_check(C, C)
    assert rep.ok and abs(rep.margin) < 1e-25


def test_xiao_bound():
    rep = xiao_bound_check(cube(3), samples=15, seed=2)
    assert rep.ok and rep.value <= 3
    rep = xiao_bound_check(simplex(3), samples=15, seed=2)
    assert rep.ok and rep.value <= 1


def test_fenchel_sharp():
    C = cube(3)
    rep = fenchel_sharp_check(C, C, C)
    assert rep.ok and rep.margin == 0
    O3 = crosspolytope(3)
    # the diagonal pair keeps both the relaxed and sharpened bounds tight
    rep = fenchel_sharp_check(O3, D1, D2)
    assert rep.ok and rep.margin == 0


def test_fgm():
    rng = rng_for(23, 0)
    C = cube(3)
    rep = fgm_check(C, C, C, C)
    assert rep.ok and rep.margin == 0
    B = random_polytope(rng, 3)
    rep = fgm_check(C, B, B, C)
    assert rep.ok and rep.margin == 0  # B = C case collapses to equality


def test_rectangle_lemma():
    sq = cube(2)
    rep = rectangle_lemma_check(sq, sq)
    assert rep.ok and rep.margin == 0
    rep = rectangle_lemma_check(segment((1, 0)), segment((0, 1)))
    assert rep.ok and rep.margin == 0
    rng = rng_for(24, 0)
    for _ in range(30):
        A = random_body(rng, 2)
        B = random_body(rng, 2)
        assert rectangle_lemma_check(A, B).ok
