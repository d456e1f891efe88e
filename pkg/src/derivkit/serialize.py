"""Canonical JSON persistence.

Input is strict: rationals must already be reduced (``"2/4"`` is rejected
with the suggestion ``"1/2"``), terms and structure entries must be sorted,
and subspace bases must already be in reduced row-echelon form.  Output is
deterministic, so ``dumps(loads(text)) == text`` for canonical files.
"""

from __future__ import annotations

import json
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .algebra import FinAlg
from .errors import ParseError
from .linalg import Matrix, Subspace, span_canonical
from .poly.certificate import Gen, Product, Scale, Sum
from .poly.polynomial import MultiPoly


class Kind(Enum):
    ALGEBRA = "algebra"
    SUBSPACE = "subspace"
    POLY = "poly"
    CERTIFICATE = "certificate"
    MATRIX = "matrix"


class SchemaError(ParseError):
    """A JSON document does not match the expected schema; ``location`` is the field path."""


_RATIONAL = re.compile(r"(-?)(\d+)(?:/(\d+))?")


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(value, where: str = "value") -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(f"expected a rational string, got {value!r}", where)
    if isinstance(value, int):
        return Fraction(value)
    m = _RATIONAL.fullmatch(value)
    if not m:
        raise SchemaError(f"malformed rational {value!r}", where)
    sign, num, den = m.groups()
    x = Fraction(int(sign + num), int(den) if den else 1) if den != "0" else None
    if x is None:
        raise SchemaError(f"zero denominator in {value!r}", where)
    canonical = rational_to_str(x)
    if value != canonical:
        raise SchemaError(f"non-canonical rational {value!r}; write {canonical!r}", where)
    return x


def _expect(cond: bool, message: str, where: str) -> None:
    if not cond:
        raise SchemaError(message, where)


def _vector(value, where: str, length: int | None = None) -> tuple:
    _expect(isinstance(value, list), "expected an array", where)
    if length is not None:
        _expect(len(value) == length, f"expected {length} entries, got {len(value)}", where)
    return tuple(parse_rational(v, f"{where}[{i}]") for i, v in enumerate(value))


def _vec_json(v) -> list:
    return [rational_to_str(a) for a in v]


# -- encoders -------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> list:
    return [_vec_json(m.row(i)) for i in range(m.rows)]


def matrix_from_json(value, where: str = "$") -> Matrix:
    _expect(isinstance(value, list) and value, "expected a non-empty array of rows", where)
    rows = [_vector(r, f"{where}[{i}]") for i, r in enumerate(value)]
    width = len(rows[0])
    for i, r in enumerate(rows):
        _expect(len(r) == width, f"row has {len(r)} entries, expected {width}", f"{where}[{i}]")
    return Matrix.from_rows(rows)


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": [_vec_json(v) for v in s.basis]}


def subspace_from_json(value, where: str = "$") -> Subspace:
    _expect(isinstance(value, dict), "expected an object", where)
    n = value.get("ambient_dim")
    _expect(isinstance(n, int) and not isinstance(n, bool) and n >= 0,
            "ambient_dim must be a nonnegative integer", f"{where}.ambient_dim")
    basis = value.get("basis")
    _expect(isinstance(basis, list), "basis must be an array", f"{where}.basis")
    rows = tuple(_vector(r, f"{where}.basis[{i}]", n) for i, r in enumerate(basis))
    s = Subspace(n, rows)
    _expect(span_canonical(rows, n) == s, "basis is not in reduced row-echelon form",
            f"{where}.basis")
    return s


def algebra_to_json(a: FinAlg) -> dict:
    out = {"dim": a.dim, "labels": list(a.labels), "structure": []}
    for (i, j) in sorted(a.structure):
        coords = a.product(i, j)
        if any(coords):
            out["structure"].append([i, j, _vec_json(coords)])
    if a.unit is not None:
        out["unit"] = _vec_json(a.unit)
    if a.generator is not None:
        out["generator"] = _vec_json(a.generator)
    return out


def algebra_from_json(value, where: str = "$") -> FinAlg:
    _expect(isinstance(value, dict), "expected an object", where)
    unknown = set(value) - {"dim", "labels", "structure", "unit", "generator"}
    _expect(not unknown, f"unknown fields {sorted(unknown)}", where)
    dim = value.get("dim")
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
            "dim must be a positive integer", f"{where}.dim")
    labels = value.get("labels")
    _expect(isinstance(labels, list) and len(labels) == dim
            and all(isinstance(s, str) for s in labels),
            f"labels must be {dim} strings", f"{where}.labels")
    structure = value.get("structure")
    _expect(isinstance(structure, list), "structure must be an array", f"{where}.structure")
    table = {}
    prev = None
    for k, entry in enumerate(structure):
        loc = f"{where}.structure[{k}]"
        _expect(isinstance(entry, list) and len(entry) == 3, "entry must be [i, j, coords]", loc)
        i, j, coords = entry
        _expect(all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < dim
                    for x in (i, j)), "indices must be integers in range", loc)
        _expect(prev is None or (i, j) > prev, "entries must be sorted by (i, j) without repeats", loc)
        prev = (i, j)
        v = _vector(coords, f"{loc}[2]", dim)
        _expect(any(v), "zero products must be omitted", f"{loc}[2]")
        table[(i, j)] = v
    unit = _vector(value["unit"], f"{where}.unit", dim) if "unit" in value else None
    gen = _vector(value["generator"], f"{where}.generator", dim) if "generator" in value else None
    return FinAlg.from_dense(labels, table, unit, gen)


def poly_to_json(p: MultiPoly) -> dict:
    return {
        "variables": list(p.variables),
        "terms": [[list(e), rational_to_str(c)] for e, c in p.terms.items()],
    }


def poly_from_json(value, where: str = "$") -> MultiPoly:
    _expect(isinstance(value, dict), "expected an object", where)
    variables = value.get("variables")
    _expect(isinstance(variables, list) and all(isinstance(v, str) for v in variables)
            and len(set(variables)) == len(variables),
            "variables must be distinct strings", f"{where}.variables")
    terms = value.get("terms")
    _expect(isinstance(terms, list), "terms must be an array", f"{where}.terms")
    out = {}
    prev = None
    for k, t in enumerate(terms):
        loc = f"{where}.terms[{k}]"
        _expect(isinstance(t, list) and len(t) == 2, "term must be [exponents, coefficient]", loc)
        exps, c = t
        _expect(isinstance(exps, list) and len(exps) == len(variables)
                and all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps),
                "bad exponent vector", f"{loc}[0]")
        exps = tuple(exps)
        _expect(prev is None or exps < prev, "terms must be in descending lex order without repeats", loc)
        prev = exps
        c = parse_rational(c, f"{loc}[1]")
        _expect(c != 0, "zero coefficients must be omitted", f"{loc}[1]")
        out[exps] = c
    return MultiPoly(variables, out)


def cert_to_json(cert) -> dict:
    if isinstance(cert, Gen):
        return {"gen": poly_to_json(cert.f)}
    if isinstance(cert, Scale):
        return {"scale": {"c": rational_to_str(cert.c), "child": cert_to_json(cert.child)}}
    if isinstance(cert, Sum):
        return {"sum": [cert_to_json(c) for c in cert.children]}
    return {"product": [cert_to_json(c) for c in cert.children]}


def cert_from_json(value, where: str = "$"):
    _expect(isinstance(value, dict) and len(value) == 1,
            "certificate node must have exactly one tag", where)
    (tag, body), = value.items()
    loc = f"{where}.{tag}"
    if tag == "gen":
        f = poly_from_json(body, loc)
        _expect(len(f.variables) == 1, "gen holds a one-variable polynomial", loc)
        return Gen(f)
    if tag == "scale":
        _expect(isinstance(body, dict) and set(body) == {"c", "child"},
                "scale needs fields c and child", loc)
        return Scale(parse_rational(body["c"], f"{loc}.c"), cert_from_json(body["child"], f"{loc}.child"))
    if tag in ("sum", "product"):
        _expect(isinstance(body, list), f"{tag} needs an array", loc)
        children = tuple(cert_from_json(c, f"{loc}[{i}]") for i, c in enumerate(body))
        if tag == "sum":
            return Sum(children)
        _expect(bool(children), "product needs at least one factor", loc)
        return Product(children)
    raise SchemaError(f"unknown certificate tag {tag!r}", where)


_ENCODE = {
    Kind.ALGEBRA: algebra_to_json,
    Kind.SUBSPACE: subspace_to_json,
    Kind.POLY: poly_to_json,
    Kind.CERTIFICATE: cert_to_json,
    Kind.MATRIX: matrix_to_json,
}
_DECODE = {
    Kind.ALGEBRA: algebra_from_json,
    Kind.SUBSPACE: subspace_from_json,
    Kind.POLY: poly_from_json,
    Kind.CERTIFICATE: cert_from_json,
    Kind.MATRIX: matrix_from_json,
}


def to_json_text(obj) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def dumps(value, kind: Kind) -> str:
    return to_json_text(_ENCODE[kind](value))


def parse_json(text: str, source: str = "input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def loads(text: str, kind: Kind, source: str = "input"):
    return _DECODE[kind](parse_json(text, source))


def load(path, kind: Kind):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    return loads(text, kind, str(path))


def store(value, path, kind: Kind) -> None:
    Path(path).write_text(dumps(value, kind), encoding="utf-8")
