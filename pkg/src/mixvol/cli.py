"""Command-line front end.

Subcommands: volume, mixed, bezout {ratio|search}, check {...}, exclude
{isop|affine|sigma|weak}, perturb, bkk verify, corpus.  Reports are plain
text or canonical JSON (sorted keys, rationals as strings), fully determined
by the run configuration including the seed.

Exit codes: 0 success, 1 a checked inequality or assertion failed (a bug or a
genuine counterexample - loudly distinguished from operational errors), 2
input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from .bezout import (
    BezoutReport,
    ratio_b,
    ratio_b2,
    ratio_bprime,
    search_b2_lower,
)
from .bkk import bkk_verify
from .bodies import (
    CORPUS_KINDS,
    body_to_obj,
    corpus_generate,
    format_rational,
    load_body,
    parse_rational,
    save_body,
)
from .errors import MixvolError, ParseError, ValidationError
from .exclusion import (
    affine_isop_search,
    classify_omega,
    isop,
    perturb_facet,
    sigma_proportionality,
    weakly_decomposable_polytope,
)
from .mixed import body_tuple, mixed_volume, mixed_volume_oracle
from .polytope import volume
from .suites import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _encode(obj):
    """JSON-ready rendering: exact rationals as strings, bodies as objects."""
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(x) for x in obj]
    if is_dataclass(obj) and not isinstance(obj, type):
        return _encode(asdict(obj))
    if hasattr(obj, "vertices") and hasattr(obj, "hull"):
        return body_to_obj(obj)
    if hasattr(obj, "item") and callable(getattr(obj, "item", None)):
        try:
            return obj.item()
        except Exception:
            pass
    return obj


def _rat_str(value) -> str:
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return repr(value)


def _print_report(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_encode(report), sort_keys=True, indent=2))
        return
    for line in report.get("text_lines", []):
        print(line)


def _load(path):
    return load_body(path)


def _parse_body_spec(spec: str):
    """Parse "path.json:mult" into (body, multiplicity)."""
    if ":" in spec:
        path, mult_s = spec.rsplit(":", 1)
        try:
            mult = int(mult_s)
        except ValueError as exc:
            raise ParseError(f"bad multiplicity in {spec!r}") from exc
    else:
        path, mult = spec, 1
    return _load(path), mult


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (exit_code, report dict)


def _cmd_volume(args):
    P = _load(args.body)
    v = volume(P)
    # the exact pipeline is translation invariant, so a body without the
    # origin interior is flagged, never rejected
    origin_interior = P.is_full_dimensional() and all(
        f.offset > 0 for f in P.hull.facets
    )
    report = {
        "command": "volume",
        "body": body_to_obj(P),
        "volume": v,
        "origin_interior": origin_interior,
        "text_lines": [f"volume = {_rat_str(v)} ({float(v):.9g})"],
        "reproduce": f"mixvol volume --body {args.body}",
    }
    return EXIT_OK, report


def _cmd_mixed(args):
    pairs = [_parse_body_spec(s) for s in args.bodies]
    bt = body_tuple(*pairs)
    v = mixed_volume(bt)
    lines = [f"mixed volume = {_rat_str(v)} ({float(v):.9g})"]
    report = {
        "command": "mixed",
        "bodies": [{"body": body_to_obj(b), "multiplicity": m} for b, m in pairs],
        "mixed_volume": v,
        "certified": True,
        "reproduce": "mixvol mixed --bodies " + " ".join(args.bodies),
    }
    if args.oracle:
        w = mixed_volume_oracle(bt)
        report["oracle_value"] = w
        report["oracle_agrees"] = w == v
        lines.append(f"oracle value = {_rat_str(w)} (agrees: {w == v})")
        if w != v:
            report["text_lines"] = lines
            return EXIT_VIOLATION, report
    report["text_lines"] = lines
    return EXIT_OK, report


def _bezout_report_to_dict(rep: BezoutReport) -> dict:
    return {
        "kind": rep.kind,
        "value": rep.value,
        "witness": rep.witness,
        "certified": rep.certified,
        "margin": rep.margin,
        "ok": rep.ok,
        "detail": rep.detail,
    }


def _cmd_bezout(args):
    K = _load(args.K)
    if args.mode == "ratio":
        if args.kind == "b2":
            if not (args.A and args.B):
                raise ParseError("bezout ratio --kind b2 needs --A and --B")
            A = _load(args.A)
            B = _load(args.B)
            val = ratio_b2(A, B, K)
            witness = (body_to_obj(A, "A"), body_to_obj(B, "B"))
            reproduce = f"mixvol bezout ratio --K {args.K} --A {args.A} --B {args.B}"
        else:
            if not args.bodies:
                raise ParseError(f"bezout ratio --kind {args.kind} needs --bodies")
            bodies = [_load(p) for p in args.bodies]
            fn = ratio_b if args.kind == "b" else ratio_bprime
            val = fn(bodies, K)
            witness = tuple(body_to_obj(b, f"L{i+1}") for i, b in enumerate(bodies))
            reproduce = (
                f"mixvol bezout ratio --kind {args.kind} --K {args.K} "
                "--bodies " + " ".join(args.bodies)
            )
        report = {
            "command": "bezout ratio",
            "kind": f"{args.kind}-ratio",
            "value": val,
            "witness": witness,
            "certified": True,
            "text_lines": [f"{_rat_str(val)} (certified)"],
            "reproduce": reproduce,
        }
        return EXIT_OK, report
    rep = search_b2_lower(K, budget=args.budget, seed=args.seed,
                          include_zonotopes=args.zonotopes)
    report = {
        "command": "bezout search",
        "report": _bezout_report_to_dict(rep),
        "text_lines": [
            f"best certified lower bound: {_rat_str(rep.value)}",
            f"stage: {rep.detail['stage']}; candidates: {rep.detail['candidates']}",
            f"float incumbent: {rep.detail['float_incumbent']}",
        ],
        "reproduce": (
            f"mixvol bezout search --K {args.K} --budget {args.budget} --seed {args.seed}"
        ),
    }
    return EXIT_OK, report


def _cmd_check(args):
    name = args.suite
    dim = args.dim
    trials = args.trials
    if args.precision < 30:
        raise ValidationError("--precision must be at least 30")
    res = run_suite(name, trials=trials, seed=args.seed, dim=dim, jobs=args.jobs,
                    precision=args.precision)
    lines = [
        f"suite {name}: {res.completed}/{res.trials} instances, "
        f"{len(res.violations)} violations"
        + (f", min margin {_rat_str(res.min_margin)}" if res.min_margin is not None else "")
    ]
    report = {
        "command": f"check {name}",
        "suite": {
            "name": res.name,
            "trials": res.trials,
            "completed": res.completed,
            "violations": res.violations,
            "min_margin": res.min_margin,
        },
        "ok": res.ok,
        "text_lines": lines,
        "reproduce": (
            f"mixvol check {name} --trials {trials} --seed {args.seed} --dim {dim}"
        ),
    }
    return (EXIT_OK if res.ok else EXIT_VIOLATION), report


def _cmd_exclude(args):
    P = _load(args.P)
    if args.mode == "isop":
        rep = isop(P)
        lines = [
            f"Isop(P) = {rep.body_isop:.9g}; margin = {rep.margin:.9g}",
            f"condition: {rep.condition}"
            + (" (inconclusive tie)" if rep.inconclusive else ""),
            rep.conclusion,
        ]
        report = {
            "command": "exclude isop",
            "isop": {
                "body_isop": rep.body_isop,
                "per_facet": [
                    {"facet": fid, "isop": fi, "excluded": exc}
                    for fid, fi, exc in rep.per_facet
                ],
                "margin": rep.margin,
                "inconclusive": rep.inconclusive,
                "condition": rep.condition,
            },
            "text_lines": lines,
            "reproduce": f"mixvol exclude isop --P {args.P}",
        }
        return EXIT_OK, report
    if args.mode == "affine":
        T, ratio = affine_isop_search(P, budget=args.budget, seed=args.seed)
        report = {
            "command": "exclude affine",
            "best_ratio": ratio,
            "best_T": [[float(x) for x in row] for row in T],
            "exclusion": bool(ratio > 1 + 1e-6),
            "text_lines": [f"best affine Isop ratio: {ratio:.9g}"],
            "reproduce": (
                f"mixvol exclude affine --P {args.P} --budget {args.budget} --seed {args.seed}"
            ),
        }
        return EXIT_OK, report
    if args.mode == "sigma":
        t = parse_rational(args.t)
        reps = sigma_proportionality(P, args.facet, t)
        lines = []
        for r in reps:
            if r.proportional:
                lines.append(f"r={r.r}: proportional")
            else:
                lines.append(
                    f"r={r.r}: violation at normal {r.violating_normal} "
                    f"(expected {_rat_str(r.expected)}, got {_rat_str(r.actual)})"
                )
        report = {
            "command": "exclude sigma",
            "facet": args.facet,
            "t": t,
            "reports": [
                {
                    "r": r.r,
                    "proportional": r.proportional,
                    "violating_normal": r.violating_normal,
                    "expected": r.expected,
                    "actual": r.actual,
                }
                for r in reps
            ],
            "all_proportional": all(r.proportional for r in reps),
            "text_lines": lines,
            "reproduce": (
                f"mixvol exclude sigma --P {args.P} --facet {args.facet} --t {args.t}"
            ),
        }
        return EXIT_OK, report
    if args.mode == "weak":
        wd, witness = weakly_decomposable_polytope(P)
        lines = [f"weakly decomposable: {wd}"]
        report = {
            "command": "exclude weak",
            "weakly_decomposable": wd,
            "witness": body_to_obj(witness, "witness") if witness is not None else None,
            "text_lines": lines,
            "reproduce": f"mixvol exclude weak --P {args.P}",
        }
        return EXIT_OK, report
    if args.mode == "census":
        cen = classify_omega(P)
        report = {
            "command": "exclude census",
            "census": {
                "dim": cen.dim,
                "vertex_count": cen.vertex_count,
                "facet_count": cen.facet_count,
                "face_dim_histogram": cen.face_dim_histogram,
                "all_facets_top": cen.all_facets_top,
            },
            "text_lines": [
                f"{cen.facet_count} facet normals, all supporting "
                f"{cen.dim - 1}-dimensional faces: {cen.all_facets_top}"
            ],
            "reproduce": f"mixvol exclude census --P {args.P}",
        }
        return EXIT_OK, report
    raise ParseError(f"unknown exclude mode {args.mode!r}")


def _cmd_perturb(args):
    P = _load(args.P)
    t = parse_rational(args.t)
    pert = perturb_facet(P, args.facet, t)
    report = {
        "command": "perturb",
        "facet": args.facet,
        "t": t,
        "lambda_t": pert.lambda_t,
        "result": body_to_obj(pert.result, "perturbed"),
        "text_lines": [
            f"lambda_t = {_rat_str(pert.lambda_t)}; "
            f"{len(pert.result.vertices)} vertices, "
            f"{len(pert.result.hull.facets)} facets"
        ],
        "reproduce": f"mixvol perturb --P {args.P} --facet {args.facet} --t {args.t}",
    }
    return EXIT_OK, report


def _load_support(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read support file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, list) or not data:
        raise ValidationError("support file must hold a nonempty list of exponent pairs")
    out = []
    for e in data:
        if not (isinstance(e, list) and len(e) == 2):
            raise ValidationError(f"bad exponent pair {e!r}")
        a, b = e
        if not (isinstance(a, int) and isinstance(b, int) and a >= 0 and b >= 0):
            raise ValidationError(f"exponents must be nonnegative integers, got {e!r}")
        out.append((a, b))
    return out


def _cmd_bkk(args):
    s1 = _load_support(args.support1)
    s2 = _load_support(args.support2)
    summary = bkk_verify(s1, s2, trials=args.trials, seed=args.seed)
    ok = (
        summary.bezout_ok
        and summary.matches == summary.completed
        and summary.completed > 0
    )
    lines = [
        f"{summary.completed}/{summary.trials} non-degenerate trials "
        f"({summary.aborted} aborted)",
        f"counts: {list(summary.counts)}",
        f"expected count 2*V2 = {summary.bkk_value}; degree bound = {summary.bezout_bound}",
        f"match rate: {summary.match_rate:.3f}; max residual {summary.max_residual:.3g}",
    ]
    report = {
        "command": "bkk verify",
        "summary": {
            "trials": summary.trials,
            "completed": summary.completed,
            "aborted": summary.aborted,
            "matches": summary.matches,
            "counts": list(summary.counts),
            "bkk_value": summary.bkk_value,
            "bezout_bound": summary.bezout_bound,
            "max_residual": summary.max_residual,
            "match_rate": summary.match_rate,
        },
        "ok": ok,
        "text_lines": lines,
        "reproduce": (
            f"mixvol bkk verify --support1 {args.support1} --support2 {args.support2} "
            f"--trials {args.trials} --seed {args.seed}"
        ),
    }
    return (EXIT_OK if ok else EXIT_VIOLATION), report


def _cmd_corpus(args):
    body = corpus_generate(args.kind, args.n)
    out = args.out or f"{args.kind}-{args.n}.json"
    save_body(out, body, name=f"{args.kind}-{args.n}")
    report = {
        "command": "corpus",
        "kind": args.kind,
        "n": args.n,
        "path": out,
        "vertices": len(body.vertices),
        "text_lines": [f"wrote {out} ({len(body.vertices)} vertices)"],
        "reproduce": f"mixvol corpus --kind {args.kind} --n {args.n} --out {out}",
    }
    return EXIT_OK, report


# ---------------------------------------------------------------------------


def _add_global_args(parser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--budget", type=int, default=d(1000))
    parser.add_argument("--trials", type=int, default=d(100))
    parser.add_argument("--precision", type=int, default=d(60),
                        help="working digits for inradius-inequality checks (>= 30)")
    parser.add_argument("--jobs", type=int, default=d(os.cpu_count() or 1),
                        help="worker processes for property suites")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixvol",
        description="Exact mixed volumes, Bezout-type functionals, excluding "
        "conditions, and sparse-system root counts for rational polytopes.",
    )
    _add_global_args(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_args(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="exact volume of a body")
    p.add_argument("--body", required=True)
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("mixed", parents=[common], help="exact mixed volume of a body tuple")
    p.add_argument("--bodies", nargs="+", required=True,
                   metavar="PATH[:MULT]")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check with the polynomial-interpolation oracle")
    p.set_defaults(func=_cmd_mixed)

    p = sub.add_parser("bezout", parents=[common], help="two-body ratio or lower-bound search")
    p.add_argument("mode", choices=("ratio", "search"))
    p.add_argument("--K", required=True)
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--kind", choices=("b2", "b", "bprime"), default="b2")
    p.add_argument("--bodies", nargs="+", metavar="PATH",
                   help="tuple bodies for --kind b (n of them) or bprime (n-1)")
    p.add_argument("--zonotopes", action="store_true",
                   help="include random zonotope candidate pairs in the search")
    p.set_defaults(func=_cmd_bezout)

    p = sub.add_parser("check", parents=[common], help="seeded inequality property suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    p.add_argument("--dim", type=int, default=3)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("exclude", parents=[common], help="excluding conditions for minimizers")
    p.add_argument("mode", choices=("isop", "affine", "sigma", "weak", "census"))
    p.add_argument("--P", required=True)
    p.add_argument("--facet", type=int, default=0)
    p.add_argument("--t", default="1/4")
    p.set_defaults(func=_cmd_exclude)

    p = sub.add_parser("perturb", parents=[common], help="shift one facet offset exactly")
    p.add_argument("--P", required=True)
    p.add_argument("--facet", type=int, required=True)
    p.add_argument("--t", required=True, help="rational shift, e.g. 1/4 or -1/8")
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser("bkk", parents=[common], help="root-count verification for sparse systems")
    p.add_argument("mode", choices=("verify",))
    p.add_argument("--support1", required=True)
    p.add_argument("--support2", required=True)
    p.set_defaults(func=_cmd_bkk)

    p = sub.add_parser("corpus", parents=[common], help="write a canonical body file")
    p.add_argument("--kind", choices=CORPUS_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MixvolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        report = dict(report)
        report.pop("text_lines", None)
    _print_report(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
