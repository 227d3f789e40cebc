"""Seeded property sweeps over random rational bodies.

Each suite draws its bodies from a per-trial deterministic stream, evaluates
an inequality family exactly (or at documented float precision for the
inradius inequality), and reports violations.  The CLI check subcommands and
the acceptance tests share these implementations; trials are independent, so
they parallelize across a process pool with an index-ordered reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bezout import (
    alexandrov_fenchel_check,
    bezout_form,
    diskant_check,
    fenchel_form,
    fenchel_sharp_check,
    fgm_check,
    ratio_b,
    ratio_b2,
    rectangle_lemma_check,
)
from .bodies import simplex
from .errors import DegenerateDenominator
from .linalg import canon, det
from .mixed import body_tuple, mixed_volume
from .randbodies import (
    random_body,
    random_invertible_matrix,
    random_polytope,
    random_segment,
    rng_for,
)


@dataclass
class SuiteResult:
    name: str
    trials: int
    completed: int
    violations: list
    min_margin: object
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def _min_margin(a, b):
    if a is None:
        return b
    return a if Fraction(a) <= Fraction(b) else b


def _trial_simplex(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    delta = simplex(dim)
    A = random_body(rng, dim)
    B = random_body(rng, dim)
    f_margin = fenchel_form(A, B, delta, 1)
    bodies = [random_body(rng, dim) for _ in range(dim)]
    g_margin = bezout_form(bodies, delta, 1)
    margin = min(Fraction(f_margin), Fraction(g_margin))
    return {"ok": f_margin >= 0 and g_margin >= 0, "margin": canon(margin)}


def _trial_fenchel(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    K = random_polytope(rng, dim)
    A = random_body(rng, dim)
    B = random_body(rng, dim)
    margin = fenchel_form(A, B, K, 2)
    return {"ok": margin >= 0, "margin": canon(margin)}


def _trial_fenchel_sharp(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    K = random_polytope(rng, dim)
    M = random_polytope(rng, dim)
    L = random_polytope(rng, dim)
    rep = fenchel_sharp_check(K, M, L)
    return {"ok": rep.ok, "margin": rep.margin}


def _trial_fgm(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    A = random_polytope(rng, dim)
    B = random_polytope(rng, dim)
    C = random_polytope(rng, dim)
    K = random_polytope(rng, dim)
    rep = fgm_check(A, B, C, K)
    return {"ok": rep.ok, "margin": rep.margin}


def _trial_af(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    K1 = random_body(rng, dim)
    K2 = random_body(rng, dim)
    rest = [random_polytope(rng, dim) for _ in range(dim - 2)]
    rep = alexandrov_fenchel_check(K1, K2, rest)
    return {"ok": rep.ok, "margin": rep.margin}


def _trial_rectangle(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    A = random_body(rng, 2, segment_prob=0.25)
    B = random_body(rng, 2, segment_prob=0.25)
    rep = rectangle_lemma_check(A, B)
    return {"ok": rep.ok, "margin": rep.margin}


def _trial_diskant(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    K = random_polytope(rng, dim)
    L = random_polytope(rng, dim)
    rep = diskant_check(K, L, precision=(opts or {}).get("precision", 60))
    return {
        "ok": rep.ok,
        "margin": rep.margin,
        "derived_ok": rep.detail["derived_bound_ok"],
    }


def _trial_xiao(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    K = random_polytope(rng, dim)
    for _ in range(20):
        bodies = [random_body(rng, dim) for _ in range(dim)]
        try:
            val = ratio_b(bodies, K)
        except DegenerateDenominator:
            continue
        return {"ok": val <= dim, "margin": canon(dim - Fraction(val)), "ratio": val}
    return {"ok": True, "margin": dim - 1, "skipped": True}


def _trial_invariance(index: int, seed: int, dim: int, opts=None) -> dict:
    rng = rng_for(seed, index)
    K = random_polytope(rng, dim)
    A = random_polytope(rng, dim, npoints=dim + 1)
    B = random_segment(rng, dim)
    T = random_invertible_matrix(rng, dim)
    try:
        base = ratio_b2(A, B, K)
        mapped = ratio_b2(A.apply_matrix(T), B.apply_matrix(T), K.apply_matrix(T))
    except DegenerateDenominator:
        return {"ok": True, "margin": 0, "skipped": True}
    ratio_ok = base == mapped
    bodies = [A, B] + [K] * (dim - 2)
    mv = mixed_volume(body_tuple(*bodies))
    mv_t = mixed_volume(body_tuple(*(b.apply_matrix(T) for b in bodies)))
    d = det(T)
    cov_ok = mv_t == abs(d) * Fraction(mv)
    return {"ok": ratio_ok and cov_ok, "margin": 0, "det": d}


_SUITES = {
    "simplex": _trial_simplex,
    "fenchel": _trial_fenchel,
    "fenchel-sharp": _trial_fenchel_sharp,
    "fgm": _trial_fgm,
    "af": _trial_af,
    "rectangle": _trial_rectangle,
    "diskant": _trial_diskant,
    "xiao": _trial_xiao,
    "invariance": _trial_invariance,
}

SUITE_NAMES = tuple(_SUITES)


def run_trial(name: str, index: int, seed: int, dim: int, opts=None) -> dict:
    return _SUITES[name](index, seed, dim, opts)


def run_suite(name: str, trials: int, seed: int, dim: int = 3, jobs: int = 1,
              precision: int = 60) -> SuiteResult:
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r} (choose from {SUITE_NAMES})")
    results = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(
                    _pool_trial,
                    [(name, i, seed, dim, {"precision": precision}) for i in range(trials)],
                    chunksize=max(1, trials // (4 * jobs)),
                )
            )
    else:
        results = [run_trial(name, i, seed, dim, {"precision": precision}) for i in range(trials)]

    violations = []
    min_margin = None
    completed = 0
    for i, res in enumerate(results):
        if res.get("skipped"):
            continue
        completed += 1
        if not res["ok"]:
            violations.append({"trial": i, **{k: v for k, v in res.items() if k != "ok"}})
        if isinstance(res.get("margin"), (int, Fraction)):
            min_margin = _min_margin(min_margin, res["margin"])
    return SuiteResult(
        name=name,
        trials=trials,
        completed=completed,
        violations=violations,
        min_margin=min_margin,
    )


def _pool_trial(args) -> dict:
    name, index, seed, dim, opts = args
    return run_trial(name, index, seed, dim, opts)
