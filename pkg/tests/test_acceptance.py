"""Acceptance criteria, one test per criterion.

Every exact assertion is Fraction equality; float assertions carry their
stated tolerance.  Each test prints a single PASS line (pytest -s) with its
elapsed time; a failed assertion is the FAIL signal.
"""

import time
from fractions import Fraction

from mixvol.bezout import ratio_b, ratio_b2, search_b2_lower, diskant_check
from mixvol.bkk import bkk_verify
from mixvol.bodies import box, crosspolytope, cube, simplex, triangular_prism
from mixvol.errors import DegenerateDenominator
from mixvol.exclusion import (
    affine_isop_search,
    isop,
    perturb_facet,
    sigma_proportionality,
    stable_shift,
    support_equality_check,
    weakly_decomposable_polytope,
)
from mixvol.linalg import det
from mixvol.mixed import (
    body_tuple,
    first_mixed_volume,
    measure_mixed_volume,
    mixed_surface_measure,
    mixed_volume,
    mixed_volume_oracle,
)
from mixvol.polytope import facet_measure, homothety_check, minkowski_sum, segment, volume
from mixvol.randbodies import (
    random_body,
    random_invertible_matrix,
    random_polytope,
    rng_for,
)
from mixvol.suites import run_suite

SEED = 20240817


def _finish(num: int, label: str, t0: float, limit: float):
    elapsed = time.monotonic() - t0
    assert elapsed < limit, f"criterion {num} exceeded runtime budget: {elapsed:.1f}s"
    print(f"[criterion {num}] PASS {label} ({elapsed:.1f}s)")


def _axis_segment(n: int, i: int):
    e = [0] * n
    e[i] = 1
    return segment(tuple(e))


def test_criterion_1_exact_values():
    t0 = time.monotonic()
    import math

    for n in (2, 3, 4):
        assert volume(simplex(n)) == Fraction(1, math.factorial(n))
    assert volume(crosspolytope(3)) == Fraction(4, 3)
    for n in (3, 4):
        C = cube(n)
        for i in range(n):
            assert mixed_volume(body_tuple((C, n - 1), _axis_segment(n, i))) == Fraction(1, n)
        assert mixed_volume(
            body_tuple((C, n - 2), _axis_segment(n, 0), _axis_segment(n, 1))
        ) == Fraction(1, n * (n - 1))
    _finish(1, "simplex/crosspolytope volumes and cube segment mixed volumes exact", t0, 10.0)


def test_criterion_2_bezout_constants():
    t0 = time.monotonic()
    for n in (3, 4):
        C = cube(n)
        got = ratio_b2(_axis_segment(n, 0), _axis_segment(n, 1), C)
        assert got == Fraction(n, n - 1)
    assert ratio_b2(segment((1, 1, 0)), segment((1, -1, 0)), crosspolytope(3)) == 2
    C3 = cube(3)
    assert ratio_b([_axis_segment(3, i) for i in range(3)], C3) == 3
    rep = search_b2_lower(simplex(3), budget=10_000, seed=SEED)
    assert rep.value == 1 and rep.certified
    _finish(2, "cube/crosspolytope ratios exact; simplex search capped at 1", t0, 60.0)


def test_criterion_3_inequality_property_suites():
    t0 = time.monotonic()
    plans = [
        ("simplex", 100, 3),
        ("fenchel", 100, 3),
        ("fenchel-sharp", 100, 3),
        ("fgm", 100, 3),
        ("af", 100, 3),
        ("rectangle", 200, 2),
    ]
    for name, trials, dim in plans:
        res = run_suite(name, trials=trials, seed=SEED, dim=dim)
        assert res.ok, f"{name}: {res.violations[:3]}"
        assert res.completed >= trials * 0.95
        if res.min_margin is not None:
            assert res.min_margin >= 0
    _finish(3, "six exact inequality suites, zero violations", t0, 600.0)


def test_criterion_4_diskant_and_xiao():
    t0 = time.monotonic()
    rng = rng_for(SEED, 400)
    worst = None
    for _ in range(100):
        K = random_polytope(rng, 3)
        L = random_polytope(rng, 3)
        rep = diskant_check(K, L, precision=60)
        assert rep.margin >= -1e-30
        assert rep.detail["derived_bound_ok"]
        worst = rep.margin if worst is None else min(worst, rep.margin)
        tries = 0
        while tries < 10:
            tries += 1
            bodies = [random_body(rng, 3) for _ in range(3)]
            try:
                val = ratio_b(bodies, K)
            except DegenerateDenominator:
                continue
            assert val <= 3
            break
    _finish(4, f"inradius inequality (worst margin {worst:.3g}) and dimension bound", t0, 300.0)


def test_criterion_5_oracle_equivalence():
    t0 = time.monotonic()
    rng = rng_for(SEED, 500)
    for _ in range(50):
        A = random_body(rng, 3)
        B = random_polytope(rng, 3)
        K = random_polytope(rng, 3)
        bt = body_tuple(A, B, K)
        assert mixed_volume(bt) == mixed_volume_oracle(bt)
        assert first_mixed_volume(A, K) == mixed_volume(body_tuple(A, (K, 2)))
        m = mixed_surface_measure(body_tuple(B, K))
        assert measure_mixed_volume(A, m) == mixed_volume(bt)
    for _ in range(20):
        A = random_polytope(rng, 4, npoints=5, span=3)
        B = random_polytope(rng, 4, npoints=5, span=3)
        K = random_polytope(rng, 4, npoints=5, span=3)
        bt = body_tuple(A, B, (K, 2))
        assert mixed_volume(bt) == mixed_volume_oracle(bt)
    _finish(5, "polarization agrees with the interpolation oracle and measure formulas", t0, 300.0)


def test_criterion_6_characterization_machinery():
    t0 = time.monotonic()
    S = simplex(3)
    for i in range(len(S.hull.facets)):
        t = stable_shift(S, i, outward=True)
        for r in (1, 2):
            assert support_equality_check(S, i, t, r)
        pert = perturb_facet(S, i, t)
        omega = dict(facet_measure(S).atoms)[S.hull.facets[i].normal]
        assert pert.lambda_t == 1 + Fraction(t, 3) * Fraction(omega) / Fraction(volume(S))
        assert all(r.proportional for r in sigma_proportionality(S, i, t))
    C = cube(3)
    assert any(not r.proportional for r in sigma_proportionality(C, 0, Fraction(1, 4)))
    PR = triangular_prism()
    assert any(
        not r.proportional
        for r in sigma_proportionality(PR, 0, stable_shift(PR, 0, outward=True))
    )
    assert weakly_decomposable_polytope(simplex(3)) == (False, None)
    assert weakly_decomposable_polytope(simplex(4)) == (False, None)
    for P in (cube(3), triangular_prism(), crosspolytope(3)):
        wd, witness = weakly_decomposable_polytope(P)
        assert wd and witness is not None
        assert homothety_check(P, witness) is None
        assert set(facet_measure(minkowski_sum(P, witness)).normals()) <= set(
            facet_measure(P).normals()
        )
    _finish(6, "support/proportionality on simplex; violations and witnesses elsewhere", t0, 120.0)


def test_criterion_7_excluding_conditions():
    t0 = time.monotonic()
    rep = isop(box((10, 1, 1)))
    assert rep.condition and rep.margin > 0.5
    rep = isop(cube(3))
    assert rep.inconclusive and abs(rep.margin) <= 1e-9
    _, ratio = affine_isop_search(simplex(3), budget=1000, seed=SEED)
    assert ratio <= 1 + 1e-6
    _finish(7, f"isoperimetric conditions; simplex affine ratio {ratio:.8f} <= 1+1e-6", t0, 300.0)


def test_criterion_8_bkk():
    t0 = time.monotonic()
    dense2 = [(a, b) for a in range(3) for b in range(3 - a)]
    dense3 = [(a, b) for a in range(4) for b in range(4 - a)]
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    s = bkk_verify(dense2, dense3, trials=20, seed=SEED)
    assert s.completed == 20 and s.aborted == 0
    assert all(c == 6 for c in s.counts) and s.bkk_value == 6 == s.bezout_bound
    assert s.max_residual <= 1e-9
    s = bkk_verify(square, square, trials=20, seed=SEED)
    assert s.completed == 20 and all(c == 2 for c in s.counts)
    assert s.bkk_value == 2 and s.bezout_bound == 4 and s.bezout_ok
    assert s.max_residual <= 1e-9
    _finish(8, "20/20 dense and 20/20 bilinear trials match the mixed-area count", t0, 120.0)


def test_criterion_9_invariance():
    t0 = time.monotonic()
    rng = rng_for(SEED, 900)
    done = 0
    while done < 50:
        K = random_polytope(rng, 3)
        A = random_polytope(rng, 3, npoints=4)
        B = random_body(rng, 3)
        T = random_invertible_matrix(rng, 3)
        try:
            base = ratio_b2(A, B, K)
        except DegenerateDenominator:
            continue
        assert ratio_b2(A.apply_matrix(T), B.apply_matrix(T), K.apply_matrix(T)) == base
        bodies = [A, B, K]
        lhs = mixed_volume(body_tuple(*(b.apply_matrix(T) for b in bodies)))
        assert lhs == abs(det(T)) * Fraction(mixed_volume(body_tuple(*bodies)))
        done += 1
    _finish(9, "affine invariance of the two-body ratio and determinant covariance", t0, 120.0)
