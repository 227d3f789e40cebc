import itertools
from fractions import Fraction

import pytest

from mixvol.bodies import crosspolytope, cube, simplex
from mixvol.errors import DimensionMismatch
from mixvol.linalg import det
from mixvol.mixed import (
    body_tuple,
    first_mixed_volume,
    measure_mixed_volume,
    mixed_surface_measure,
    mixed_volume,
    mixed_volume_oracle,
    mixed_volume_segments,
)
from mixvol.polytope import facet_measure, minkowski_sum, segment, volume
from mixvol.randbodies import (
    random_body,
    random_invertible_matrix,
    random_polytope,
    random_rational,
    rng_for,
)

E1, E2, E3 = segment((1, 0, 0)), segment((0, 1, 0)), segment((0, 0, 1))


def test_cube_segment_values():
    C = cube(3)
    assert mixed_volume(body_tuple((C, 2), E1)) == Fraction(1, 3)
    assert mixed_volume(body_tuple(C, E1, E2)) == Fraction(1, 6)
    C4 = cube(4)
    e1 = segment((1, 0, 0, 0))
    e2 = segment((0, 1, 0, 0))
    assert mixed_volume(body_tuple((C4, 3), e1)) == Fraction(1, 4)
    assert mixed_volume(body_tuple((C4, 2), e1, e2)) == Fraction(1, 12)


def test_diagonal_is_volume():
    rng = rng_for(11, 0)
    for _ in range(10):
        P = random_polytope(rng, 3)
        assert mixed_volume(body_tuple((P, 3))) == volume(P)


def test_mixed_volume_requires_total_multiplicity_n():
    with pytest.raises(DimensionMismatch):
        mixed_volume(body_tuple(cube(3), cube(3)))


def test_segment_pair_r2():
    assert mixed_volume(body_tuple(segment((1, 0)), segment((0, 1)))) == Fraction(1, 2)


def test_symmetry_under_permutations():
    rng = rng_for(12, 0)
    A = random_polytope(rng, 3)
    B = random_body(rng, 3)
    C = random_polytope(rng, 3)
    vals = {
        mixed_volume(BodyTupleLike)
        for BodyTupleLike in (
            body_tuple(*perm) for perm in itertools.permutations((A, B, C))
        )
    }
    assert len(vals) == 1


def test_multilinearity_and_homogeneity():
    rng = rng_for(13, 0)
    for _ in range(10):
        A = random_polytope(rng, 3)
        B = random_polytope(rng, 3)
        K1 = random_polytope(rng, 3)
        K2 = random_body(rng, 3)
        left = mixed_volume(body_tuple(minkowski_sum(A, B), K1, K2))
        right = mixed_volume(body_tuple(A, K1, K2)) + mixed_volume(body_tuple(B, K1, K2))
        assert left == right
        t = random_rational(rng)
        assert mixed_volume(body_tuple(A.scale(t), K1, K2)) == t * Fraction(
            mixed_volume(body_tuple(A, K1, K2))
        )


def test_monotonicity_on_shrunk_bodies():
    rng = rng_for(14, 0)
    for _ in range(10):
        P = random_polytope(rng, 3, npoints=7)
        # drop vertices to get a subset body
        sub = list(P.vertices)[: max(2, len(P.vertices) - 2)]
        from mixvol.polytope import VPolytope

        Psub = VPolytope(sub)
        rest = [random_polytope(rng, 3), random_body(rng, 3)]
        v_small = mixed_volume(body_tuple(Psub, *rest))
        v_big = mixed_volume(body_tuple(P, *rest))
        assert v_small <= v_big


def test_affine_covariance():
    rng = rng_for(15, 0)
    for _ in range(10):
        bodies = [random_polytope(rng, 3), random_body(rng, 3), random_polytope(rng, 3)]
        T = random_invertible_matrix(rng, 3)
        lhs = mixed_volume(body_tuple(*(b.apply_matrix(T) for b in bodies)))
        rhs = abs(det(T)) * Fraction(mixed_volume(body_tuple(*bodies)))
        assert lhs == rhs


def test_oracle_equivalence_spot():
    rng = rng_for(16, 0)
    for _ in range(8):
        A = random_body(rng, 3)
        B = random_polytope(rng, 3)
        K = random_polytope(rng, 3)
        bt = body_tuple(A, B, K)
        assert mixed_volume(bt) == mixed_volume_oracle(bt)
    # hand value: Vol(t1 [0,e1] + t2 [0,e2]) = t1 t2 so V = 1/2
    assert mixed_volume_oracle(body_tuple(segment((1, 0)), segment((0, 1)))) == Fraction(1, 2)
    assert mixed_volume_oracle(body_tuple((simplex(3), 3))) == Fraction(1, 6)


def test_first_mixed_volume():
    C = cube(3)
    assert first_mixed_volume(E1, C) == Fraction(1, 3)
    O3 = crosspolytope(3)
    assert first_mixed_volume(segment((1, 1, 0)), O3) == Fraction(2, 3)
    rng = rng_for(17, 0)
    for _ in range(10):
        L = random_body(rng, 3)
        P = random_polytope(rng, 3)
        assert first_mixed_volume(L, P) == mixed_volume(body_tuple(L, (P, 2)))
        assert first_mixed_volume(P, P) == volume(P)


def test_mixed_surface_measure_diagonal_and_atoms():
    S = simplex(3)
    assert mixed_surface_measure(body_tuple((S, 2))) == facet_measure(S)
    assert len(mixed_surface_measure(body_tuple((S, 2))).atoms) == 4


def test_mixed_surface_measure_integral_formula():
    rng = rng_for(18, 0)
    for _ in range(10):
        P2 = random_polytope(rng, 3)
        P3 = random_body(rng, 3)
        L = random_body(rng, 3)
        m = mixed_surface_measure(body_tuple(P2, P3))
        assert measure_mixed_volume(L, m) == mixed_volume(body_tuple(L, P2, P3))


def test_mixed_surface_measure_lower_dimensional_sum():
    # two flat squares in the z=0 plane: the measure concentrates at +-e3
    from mixvol.polytope import VPolytope

    sq = VPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    m = mixed_surface_measure(body_tuple((sq, 2)))
    assert set(m.normals()) == {(0, 0, 1), (0, 0, -1)}
    L = segment((0, 0, 1))
    assert measure_mixed_volume(L, m) == mixed_volume(body_tuple(L, (sq, 2)))


def test_segment_shortcuts():
    O3 = crosspolytope(3)
    assert mixed_volume_segments([(1, 1, 0), (1, -1, 0)], body_tuple(O3)) == Fraction(2, 3)
    # k = n: scaled determinant
    assert mixed_volume_segments([(2, 0, 0), (0, 3, 0), (0, 0, 1)]) == 1
    assert mixed_volume_segments([(1, 0, 0), (2, 0, 0), (0, 1, 0)]) == 0
    # float path agrees with exact path
    got = mixed_volume_segments([(1.0, 1.0, 0.0), (1.0, -1.0, 0.0)], body_tuple(O3))
    assert abs(got - 2 / 3) < 1e-9


def test_alexandrov_fenchel_sweep():
    rng = rng_for(19, 0)
    for _ in range(30):
        K1 = random_body(rng, 3)
        K2 = random_body(rng, 3)
        K3 = random_polytope(rng, 3)
        v12 = Fraction(mixed_volume(body_tuple(K1, K2, K3)))
        v11 = Fraction(mixed_volume(body_tuple((K1, 2), K3)))
        v22 = Fraction(mixed_volume(body_tuple((K2, 2), K3)))
        assert v12 * v12 >= v11 * v22
