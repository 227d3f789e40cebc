"""Body JSON format, rational (de)serialization, and the canonical corpus.

Body files are ``{"name": str, "dim": int, "vertices": [["num/den", ...], ...]}``
with every rational rendered as a string "p/q" or "p".  The loader enforces
the structural invariants (dimension range 2..6, irredundant vertex lists).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError, UnsupportedDimension, ValidationError
from .linalg import canon
from .polytope import VPolytope

MIN_DIM, MAX_DIM = 2, 6


def parse_rational(text):
    """Parse "p" or "p/q" into an exact rational."""
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise ParseError(f"rational must be a string or int, got {type(text).__name__}")
    try:
        if "/" in text:
            num, den = text.split("/")
            den_i = int(den)
            if den_i == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return canon(Fraction(int(num), den_i))
        return int(text)
    except ValueError as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def body_to_obj(P: VPolytope, name: str | None = None) -> dict:
    verts = sorted(P.vertices, key=lambda v: tuple(Fraction(x) for x in v))
    return {
        "name": name or P.name or "body",
        "dim": P.dim,
        "vertices": [[format_rational(x) for x in v] for v in verts],
    }


def body_from_obj(obj) -> VPolytope:
    if not isinstance(obj, dict):
        raise ParseError("body file must contain a JSON object")
    try:
        dim = obj["dim"]
        raw = obj["vertices"]
    except KeyError as exc:
        raise ParseError(f"body object missing field {exc}") from exc
    if not isinstance(dim, int) or not MIN_DIM <= dim <= MAX_DIM:
        raise ValidationError(f"dim must be an integer in [{MIN_DIM}, {MAX_DIM}], got {dim!r}")
    if not raw:
        raise ValidationError("vertex list is empty")
    verts = []
    for row in raw:
        if len(row) != dim:
            raise ValidationError(f"vertex {row} has wrong length (dim {dim})")
        verts.append(tuple(parse_rational(x) for x in row))
    P = VPolytope(verts, name=obj.get("name"))
    if len(P.vertices) != len(verts):
        raise ValidationError(
            f"vertex list is redundant: {len(verts)} given, {len(P.vertices)} extreme"
        )
    return P


def load_body(path) -> VPolytope:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read body file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc
    return body_from_obj(obj)


def save_body(path, P: VPolytope, name: str | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(body_to_obj(P, name), fh, indent=2, sort_keys=True)
        fh.write("\n")


def simplex(n: int) -> VPolytope:
    """conv(0, e_1, ..., e_n)."""
    pts = [tuple([0] * n)]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        pts.append(tuple(e))
    return VPolytope(pts, name=f"simplex-{n}")


def cube(n: int) -> VPolytope:
    """The unit cube [0,1]^n."""
    import itertools

    return VPolytope(list(itertools.product((0, 1), repeat=n)), name=f"cube-{n}")


def crosspolytope(n: int) -> VPolytope:
    """The l1 unit ball conv(+-e_i)."""
    pts = []
    for i in range(n):
        for s in (1, -1):
            e = [0] * n
            e[i] = s
            pts.append(tuple(e))
    return VPolytope(pts, name=f"crosspolytope-{n}")


def triangular_prism() -> VPolytope:
    """conv(0,e1,e2) x [0,1] in R^3."""
    base = [(0, 0), (1, 0), (0, 1)]
    return VPolytope(
        [(x, y, z) for (x, y) in base for z in (0, 1)], name="prism-3"
    )


def polygon_prism(k: int) -> VPolytope:
    """Prism over a convex k-gon with integer vertices (points on a parabola)."""
    base = [(j, j * j) for j in range(k)]
    return VPolytope(
        [(x, y, z) for (x, y) in base for z in (0, 1)], name=f"{k}gon-prism"
    )


def box(lengths) -> VPolytope:
    """Axis-aligned box prod [0, l_i]."""
    import itertools

    n = len(lengths)
    pts = [
        tuple(canon(b * l) for b, l in zip(bits, lengths))
        for bits in itertools.product((0, 1), repeat=n)
    ]
    return VPolytope(pts, name="box")


CORPUS_KINDS = ("simplex", "cube", "crosspolytope", "prism")


def corpus_generate(kind: str, n: int) -> VPolytope:
    """Canonical corpus body of the given kind and dimension."""
    if not MIN_DIM <= n <= MAX_DIM:
        raise UnsupportedDimension(f"dimension {n} outside [{MIN_DIM}, {MAX_DIM}]")
    if kind == "simplex":
        return simplex(n)
    if kind == "cube":
        return cube(n)
    if kind == "crosspolytope":
        return crosspolytope(n)
    if kind == "prism":
        if n != 3:
            raise UnsupportedDimension("prism corpus body is 3-dimensional")
        return triangular_prism()
    raise ParseError(f"unknown corpus kind {kind!r} (choose from {CORPUS_KINDS})")
