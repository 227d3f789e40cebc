"""Bezout-type functionals on mixed volumes: the bilinear and n-linear forms,
their extremal ratios, a certified lower-bound search for the two-body
constant, and the inequality checkers (Fenchel, sharpened Fenchel, the
quotient superadditivity inequality, Diskant, the dimension upper bound, and
the planar rectangle bound).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .bodies import body_to_obj
from .errors import DegenerateDenominator, DegenerateInput, DimensionMismatch
from .linalg import Rat, canon, primitive
from .mixed import body_tuple, first_mixed_volume, mixed_volume
from .polytope import (
    VPolytope,
    edge_directions,
    inradius,
    projected_volume_floats,
    segment,
    volume,
)
from .randbodies import random_body, rng_for


@dataclass
class BezoutReport:
    """Outcome of a functional evaluation, search, or inequality check."""

    kind: str
    value: object                 # Fraction for exact paths, float otherwise
    witness: tuple                # JSON-ready descriptions of the extremal bodies
    certified: bool               # True iff every arithmetic step was rational
    margin: object                # slack of the checked inequality (sign: >=0 ok)
    ok: bool = True
    detail: dict = field(default_factory=dict)


def _describe(body: VPolytope, label: str) -> dict:
    return body_to_obj(body, name=label)


def _mv(*items) -> Rat:
    return mixed_volume(body_tuple(*items))


def _with_k_power(items, K: VPolytope, power: int):
    out = list(items)
    if power > 0:
        out.append((K, power))
    return out


def fenchel_form(A: VPolytope, B: VPolytope, K: VPolytope, b) -> Rat:
    """b V(A,K[n-1]) V(B,K[n-1]) - V(A,B,K[n-2]) V(K), exactly."""
    n = K.dim
    if A.dim != n or B.dim != n:
        raise DimensionMismatch("bodies disagree on dimension")
    vab = _mv(*_with_k_power([A, B], K, n - 2))
    va = first_mixed_volume(A, K)
    vb = first_mixed_volume(B, K)
    return canon(Fraction(b) * va * vb - Fraction(vab) * volume(K))


def bezout_form(bodies, K: VPolytope, b) -> Rat:
    """b V(A_1,K[n-1]) V(A_2,...,A_n,K) - V(A_1,...,A_n) V(K), exactly.

    Nonnegative for b >= b(K); zero at b = 1 whenever A_1 = K.
    """
    bodies = list(bodies)
    n = K.dim
    if len(bodies) != n:
        raise DimensionMismatch(f"need {n} bodies, got {len(bodies)}")
    v_all = _mv(*bodies)
    v_first = first_mixed_volume(bodies[0], K)
    v_rest = _mv(*bodies[1:], K)
    return canon(Fraction(b) * v_first * v_rest - Fraction(v_all) * volume(K))


def ratio_b2(A: VPolytope, B: VPolytope, K: VPolytope) -> Rat:
    """V(A,B,K[n-2]) V(K) / (V(A,K[n-1]) V(B,K[n-1])): a certified lower bound
    for the two-body Bezout constant of K."""
    n = K.dim
    va = first_mixed_volume(A, K)
    vb = first_mixed_volume(B, K)
    if va == 0 or vb == 0:
        raise DegenerateDenominator("V(.,K[n-1]) vanished: argument too degenerate")
    vab = _mv(*_with_k_power([A, B], K, n - 2))
    return canon(Fraction(vab) * volume(K) / (Fraction(va) * vb))


def ratio_b(bodies, K: VPolytope) -> Rat:
    """V(A_1,...,A_n) V(K) / (V(A_1,K[n-1]) V(A_2,...,A_n,K))."""
    bodies = list(bodies)
    n = K.dim
    if len(bodies) != n:
        raise DimensionMismatch(f"need {n} bodies, got {len(bodies)}")
    v_first = first_mixed_volume(bodies[0], K)
    v_rest = _mv(*bodies[1:], K)
    if v_first == 0 or v_rest == 0:
        raise DegenerateDenominator("denominator mixed volume vanished")
    v_all = _mv(*bodies)
    return canon(Fraction(v_all) * volume(K) / (Fraction(v_first) * v_rest))


def ratio_bprime(bodies, K: VPolytope) -> Rat:
    """V(L_1,...,L_{n-1},K) V(K) / (V(K,K,L_2,...,L_{n-1}) V(L_1,K[n-1]))."""
    bodies = list(bodies)
    n = K.dim
    if len(bodies) != n - 1:
        raise DimensionMismatch(f"need {n - 1} bodies, got {len(bodies)}")
    v_first = first_mixed_volume(bodies[0], K)
    v_kk = _mv(*bodies[1:], (K, 2))
    if v_first == 0 or v_kk == 0:
        raise DegenerateDenominator("denominator mixed volume vanished")
    v_num = _mv(*bodies, K)
    return canon(Fraction(v_num) * volume(K) / (Fraction(v_kk) * v_first))


# ---------------------------------------------------------------------------
# lower-bound search for the two-body constant


def _float_ratio_b2_segments(u, v, K_verts, n, vol_K):
    """ratio_b2([0,u],[0,v],K) for float unit directions via the projection
    formulas; cheap enough for a dense grid."""
    D = np.array([u, v])
    gram = D @ D.T
    detg = float(np.linalg.det(gram))
    if detg <= 1e-14:
        return 0.0
    p_u = projected_volume_floats(K_verts, np.array([u]))
    p_v = projected_volume_floats(K_verts, np.array([v]))
    if p_u <= 0 or p_v <= 0:
        return 0.0
    p_uv = projected_volume_floats(K_verts, D)
    # V(Lu,Lv,K[n-2]) = sqrt(detg) * (n-2)!/n! * p_uv ; V(Lu,K[n-1]) = p_u/n
    num = (detg ** 0.5) * (factorial(n - 2) / factorial(n)) * p_uv * vol_K
    den = (p_u / n) * (p_v / n)
    return num / den


def _fibonacci_sphere(count: int) -> np.ndarray:
    golden = (1 + 5 ** 0.5) / 2
    k = np.arange(count)
    z = 1 - (2 * k + 1) / count
    r = np.sqrt(np.maximum(0.0, 1 - z * z))
    theta = 2 * np.pi * k / golden
    return np.stack([r * np.cos(theta), r * np.sin(theta), z], axis=1)


def _rationalize_direction(u, max_den: int = 64):
    fracs = [Fraction(float(x)).limit_denominator(max_den) for x in u]
    if all(f == 0 for f in fracs):
        return None
    return primitive(tuple(fracs))


def search_b2_lower(
    K: VPolytope,
    budget: int = 10000,
    seed: int = 0,
    include_zonotopes: bool = False,
) -> BezoutReport:
    """Maximize ratio_b2 over certified candidate families: edge-direction
    segment pairs (exact), a floating sphere search over direction pairs
    re-certified through rationalization, facet-perturbation pairs (exact),
    and optionally random zonotope pairs.  The result is always an exact
    lower bound on the two-body constant of K."""
    from .exclusion import perturb_facet, stable_shift

    if not K.is_full_dimensional():
        raise DegenerateInput("search needs a full-dimensional body")
    n = K.dim
    candidates: list = []  # (value, witness_key, witness_objs, stage)

    def push(value, a_body, b_body, stage, a_label, b_label):
        wa = _describe(a_body, a_label)
        wb = _describe(b_body, b_label)
        key = sorted([str(wa["vertices"]), str(wb["vertices"])])
        candidates.append((Fraction(value), tuple(key), (wa, wb), stage))

    push(1, K, K, "baseline", "K", "K")

    dirs = edge_directions(K)
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            a, b = segment(dirs[i]), segment(dirs[j])
            try:
                val = ratio_b2(a, b, K)
            except DegenerateDenominator:
                continue
            push(val, a, b, "edge-pair", f"edge-dir {dirs[i]}", f"edge-dir {dirs[j]}")

    # facet perturbation pairs at combinatorially safe +-delta
    perts = []
    for fid in range(len(K.hull.facets)):
        for outward in (True, False):
            t = stable_shift(K, fid, outward=outward)
            t = canon(Fraction(t, 2))
            if t == 0:
                continue
            try:
                perts.append((fid, t, perturb_facet(K, fid, t).result))
            except Exception:
                continue
    pair_cap = max(64, budget // 50)
    for (fi, ti, Pi), (fj, tj, Pj) in itertools.islice(
        itertools.combinations(perts, 2), pair_cap
    ):
        try:
            val = ratio_b2(Pi, Pj, K)
        except DegenerateDenominator:
            continue
        push(val, Pi, Pj, "perturbation-pair", f"facet {fi} shift {ti}", f"facet {fj} shift {tj}")

    # floating sphere search over segment-direction pairs
    float_incumbent = None
    if n == 3:
        grid = _fibonacci_sphere(max(16, min(500, int(budget ** 0.5))))
    else:
        rng_np = np.random.default_rng(seed)
        raw = rng_np.standard_normal((max(16, min(2000, int(budget ** 0.5))), n))
        grid = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    K_verts = np.array([[float(x) for x in v] for v in K.vertices])
    vol_K = float(volume(K))
    pairs = itertools.combinations(range(len(grid)), 2)
    best_pair = None
    count = 0
    for i, j in pairs:
        if count >= budget:
            break
        count += 1
        val = _float_ratio_b2_segments(grid[i], grid[j], K_verts, n, vol_K)
        if float_incumbent is None or val > float_incumbent:
            float_incumbent = val
            best_pair = (grid[i].copy(), grid[j].copy())

    if best_pair is not None:
        from scipy.optimize import minimize

        def objective(x):
            u = x[:n] / np.linalg.norm(x[:n])
            v = x[n:] / np.linalg.norm(x[n:])
            return -_float_ratio_b2_segments(u, v, K_verts, n, vol_K)

        x0 = np.concatenate(best_pair)
        res = minimize(x0=x0, fun=objective, method="Nelder-Mead",
                       options={"maxiter": 400, "fatol": 1e-12})
        refined = (res.x[:n] / np.linalg.norm(res.x[:n]),
                   res.x[n:] / np.linalg.norm(res.x[n:]))
        float_incumbent = max(float_incumbent, -res.fun)
        for u, v in (best_pair, refined):
            du = _rationalize_direction(u)
            dv = _rationalize_direction(v)
            if du is None or dv is None or du == dv:
                continue
            a, b = segment(du), segment(dv)
            try:
                val = ratio_b2(a, b, K)
            except DegenerateDenominator:
                continue
            push(val, a, b, "sphere-search", f"direction {du}", f"direction {dv}")

    if include_zonotopes:
        rng = rng_for(seed, stream=17)
        for _ in range(24):
            segs_a = [random_body(rng, n, segment_prob=1.0) for _ in range(rng.randrange(2, n + 2))]
            segs_b = [random_body(rng, n, segment_prob=1.0) for _ in range(rng.randrange(2, n + 2))]
            from .mixed import scaled_sum

            za = scaled_sum(segs_a, [1] * len(segs_a))
            zb = scaled_sum(segs_b, [1] * len(segs_b))
            try:
                val = ratio_b2(za, zb, K)
            except DegenerateDenominator:
                continue
            push(val, za, zb, "zonotope-pair", "zonotope A", "zonotope B")

    best = max(candidates, key=lambda c: (c[0], [(-ord(ch)) for ch in "".join(c[1])]))
    value, _, witness, stage = best
    return BezoutReport(
        kind="b2-search",
        value=canon(value),
        witness=witness,
        certified=True,
        margin=canon(value - 1),
        detail={
            "stage": stage,
            "candidates": len(candidates),
            "float_incumbent": float_incumbent,
        },
    )


# ---------------------------------------------------------------------------
# inequality checkers


def diskant_check(K: VPolytope, L: VPolytope, precision: int = 60) -> BezoutReport:
    """Inradius inequality check at high floating precision, plus the exact
    derived bound r(K,L) >= V(K) / (n V(K[n-1],L))."""
    import mpmath

    if not (K.is_full_dimensional() and L.is_full_dimensional()):
        raise DegenerateInput("inradius inequality needs full-dimensional bodies")
    n = K.dim
    v1 = first_mixed_volume(L, K)
    v0 = volume(K)
    vl = volume(L)
    r, x = inradius(K, L)

    with mpmath.workdps(max(precision, 30)):
        fv1, fv0, fvl, fr = (_to_mpf(q) for q in (v1, v0, vl, r))
        e = mpmath.mpf(1) / (n - 1)
        lhs = fv1 ** (n * e) - fv0 * fvl ** e
        rhs = (fv1 ** e - fr * fvl ** e) ** n
        margin = lhs - rhs
        tol = mpmath.mpf(10) ** (-30) * max(1, abs(lhs), abs(rhs))
        ok = margin >= -tol
        margin_f = float(margin)

    derived_rhs = canon(Fraction(v0) / (n * Fraction(v1)))
    derived_ok = Fraction(r) >= Fraction(derived_rhs)
    return BezoutReport(
        kind="diskant",
        value=margin_f,
        witness=(_describe(K, "K"), _describe(L, "L")),
        certified=False,
        margin=margin_f,
        ok=bool(ok and derived_ok),
        detail={
            "inradius": r,
            "derived_bound": derived_rhs,
            "derived_bound_ok": derived_ok,
            "precision_digits": max(precision, 30),
        },
    )


def _to_mpf(q):
    import mpmath

    f = Fraction(q)
    return mpmath.mpf(f.numerator) / mpmath.mpf(f.denominator)


def xiao_bound_check(K: VPolytope, samples: int = 100, seed: int = 0) -> BezoutReport:
    """Sample random tuples and verify ratio_b <= n exactly."""
    n = K.dim
    rng = rng_for(seed, stream=5)
    max_ratio = Fraction(1)
    max_witness: tuple = (_describe(K, "K"),) * n
    tested = 0
    attempts = 0
    while tested < samples and attempts < samples * 20:
        attempts += 1
        bodies = [random_body(rng, n) for _ in range(n)]
        try:
            val = ratio_b(bodies, K)
        except DegenerateDenominator:
            continue
        tested += 1
        if val > max_ratio:
            max_ratio = Fraction(val)
            max_witness = tuple(_describe(b, f"A{i+1}") for i, b in enumerate(bodies))
    ok = max_ratio <= n
    return BezoutReport(
        kind="xiao",
        value=canon(max_ratio),
        witness=max_witness,
        certified=True,
        margin=canon(n - max_ratio),
        ok=ok,
        detail={"samples": tested, "bound": n},
    )


def fenchel_sharp_check(K: VPolytope, M: VPolytope, L: VPolytope) -> BezoutReport:
    """Exact check of the strengthened two-body inequality
    V(K,K)V(M,L) <= 2V(K,L)V(K,M) - V(L,L)V(K,M)^2/V(M,L),
    where V(.,.) abbreviates V_n(.,.,K[n-2])."""
    n = K.dim

    def pair(X, Y):
        return Fraction(_mv(*_with_k_power([X, Y], K, n - 2)))

    vml = pair(M, L)
    if vml == 0:
        raise DegenerateDenominator("V(M,L,K[n-2]) = 0")
    lhs = pair(K, K) * vml
    rhs = 2 * pair(K, L) * pair(K, M) - pair(L, L) * pair(K, M) ** 2 / vml
    margin = canon(rhs - lhs)
    return BezoutReport(
        kind="fenchel",
        value=margin,
        witness=(_describe(K, "K"), _describe(M, "M"), _describe(L, "L")),
        certified=True,
        margin=margin,
        ok=margin >= 0,
        detail={"sharp": True},
    )


def fgm_check(A: VPolytope, B: VPolytope, Cb: VPolytope, K: VPolytope) -> BezoutReport:
    """Exact check of the quotient superadditivity inequality
    V(B+C,B+C)/V(B+C,A) >= V(B,B)/V(B,A) + V(C,C)/V(C,A)
    with V(.,.) = V_n(.,.,K[n-2])."""
    from .polytope import minkowski_sum

    n = K.dim

    def pair(X, Y):
        return Fraction(_mv(*_with_k_power([X, Y], K, n - 2)))

    BC = minkowski_sum(B, Cb)
    den_bc, den_b, den_c = pair(BC, A), pair(B, A), pair(Cb, A)
    if 0 in (den_bc, den_b, den_c):
        raise DegenerateDenominator("a denominator mixed volume vanished")
    lhs = pair(BC, BC) / den_bc
    rhs = pair(B, B) / den_b + pair(Cb, Cb) / den_c
    margin = canon(lhs - rhs)
    return BezoutReport(
        kind="fgm",
        value=margin,
        witness=tuple(_describe(x, lbl) for x, lbl in ((A, "A"), (B, "B"), (Cb, "C"), (K, "K"))),
        certified=True,
        margin=margin,
        ok=margin >= 0,
    )


def rectangle_lemma_check(A: VPolytope, B: VPolytope) -> BezoutReport:
    """Exact planar bound V_2(A,B) <= (|pi_1 A||pi_2 B| + |pi_2 A||pi_1 B|)/2."""
    if A.dim != 2 or B.dim != 2:
        raise DimensionMismatch("rectangle bound is two-dimensional")

    def width(P, k):
        vals = [v[k] for v in P.vertices]
        return Fraction(max(vals) - min(vals))

    lhs = Fraction(_mv(A, B))
    rhs = (width(A, 0) * width(B, 1) + width(A, 1) * width(B, 0)) / 2
    margin = canon(rhs - lhs)
    return BezoutReport(
        kind="rectangle",
        value=margin,
        witness=(_describe(A, "A"), _describe(B, "B")),
        certified=True,
        margin=margin,
        ok=margin >= 0,
    )


def alexandrov_fenchel_check(K1: VPolytope, K2: VPolytope, rest) -> BezoutReport:
    """Exact V(K1,K2,rest)^2 >= V(K1,K1,rest) V(K2,K2,rest)."""
    rest = list(rest)
    v12 = Fraction(_mv(K1, K2, *rest))
    v11 = Fraction(_mv((K1, 2), *rest))
    v22 = Fraction(_mv((K2, 2), *rest))
    margin = canon(v12 ** 2 - v11 * v22)
    return BezoutReport(
        kind="alexandrov-fenchel",
        value=margin,
        witness=(_describe(K1, "K1"), _describe(K2, "K2")),
        certified=True,
        margin=margin,
        ok=margin >= 0,
    )
