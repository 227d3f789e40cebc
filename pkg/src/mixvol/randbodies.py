"""Seeded random rational bodies and transforms for the property suites.

Coordinates are small integers so that the downstream hull predicates stay in
fast integer arithmetic; every generator is deterministic given its Random
instance.
"""

from __future__ import annotations

import random

from .linalg import canon, det
from .polytope import VPolytope, segment


def rng_for(seed, stream: int = 0) -> random.Random:
    return random.Random(int(seed) * 1_000_003 + stream)


def random_polytope(rng: random.Random, dim: int, npoints: int = 5, span: int = 4) -> VPolytope:
    """Full-dimensional lattice polytope with at most npoints vertices."""
    while True:
        pts = [
            tuple(rng.randrange(0, span) for _ in range(dim))
            for _ in range(max(npoints, dim + 1))
        ]
        P = VPolytope(pts)
        if P.is_full_dimensional():
            return P


def random_segment(rng: random.Random, dim: int, span: int = 3) -> VPolytope:
    while True:
        d = tuple(rng.randrange(-span, span + 1) for _ in range(dim))
        if any(d):
            return segment(d)


def random_body(rng: random.Random, dim: int, segment_prob: float = 0.3) -> VPolytope:
    if rng.random() < segment_prob:
        return random_segment(rng, dim)
    return random_polytope(rng, dim, npoints=rng.randrange(dim + 1, dim + 4))


def random_invertible_matrix(rng: random.Random, dim: int, span: int = 2):
    """Integer matrix with nonzero determinant."""
    while True:
        rows = [
            tuple(rng.randrange(-span, span + 1) for _ in range(dim))
            for _ in range(dim)
        ]
        if det(rows) != 0:
            return rows


def random_unimodular_matrix(rng: random.Random, dim: int, ops: int = 6):
    """Determinant +-1 integer matrix from random elementary row operations."""
    rows = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for _ in range(ops):
        i, j = rng.sample(range(dim), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return [tuple(r) for r in rows]


def random_rational(rng: random.Random, max_num: int = 5, max_den: int = 4):
    from fractions import Fraction

    return canon(Fraction(rng.randrange(1, max_num + 1), rng.randrange(1, max_den + 1)))
