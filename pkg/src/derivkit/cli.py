"""Command-line front end: ``derivkit <command> ...``.

Exit status is 0 whenever an analysis completes (a NonMember verdict is a
result, not a failure), 2 for malformed input and 3 for violated
preconditions.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .algebra import diagonal_algebra, matrix_algebra, poly_quotient, scalar_algebra
from .bimodule import classify_dn_submodule, classify_lie_ideal, lambda_preserver
from .derivations import decide_L_property, semiideal_verify
from .errors import ParseError, PreconditionError
from .expectation import factor_expectation, partial_trace_second, signed_perm_average
from .freealg import f2_refutation
from .linalg import Matrix
from .poly import (
    PolynomialContext,
    TensorAlgebraContext,
    decide_membership_poly,
    decompose_one_variable,
    parse_poly,
    verify_certificate,
)
from .poly.membership import DEFAULT_MAX_DEGREE, doubled_variables, express_in_generators
from .poly.polynomial import MultiPoly

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION = 0, 2, 3


# -- input helpers ---------------------------------------------------------------

def read_input(value: str) -> tuple[str, str]:
    """Return (text, source) for a ``<path|inline>`` argument."""
    path = Path(value)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8"), str(path)
    except OSError:
        pass
    return value, "inline"


def read_json(value: str):
    text, source = read_input(value)
    return ser.parse_json(text, source)


def read_poly(value: str, variables=None) -> MultiPoly:
    text, source = read_input(value)
    if text.lstrip().startswith("{"):
        return ser.poly_from_json(ser.parse_json(text, source))
    try:
        return parse_poly(text.strip(), variables)
    except ParseError as exc:
        if source != "inline":
            raise ParseError(str(exc), source) from None
        raise


def read_matrix_list(value: str) -> list[Matrix]:
    data = read_json(value)
    if not isinstance(data, list) or not data:
        raise ser.SchemaError("expected a non-empty array of matrices", "$")
    if all(isinstance(r, list) and r and not isinstance(r[0], list) for r in data):
        data = [data]  # a single matrix
    return [ser.matrix_from_json(m, f"$[{i}]") for i, m in enumerate(data)]


_STANDARD = re.compile(r"(?:(M|D)(\d+)|scalar|P:(.+))")


def standard_algebra(name: str):
    """``M3`` (matrices), ``D4`` (diagonal), ``scalar``, ``P:x^3-2`` (ℚ[x]/(p))."""
    m = _STANDARD.fullmatch(name.strip())
    if not m:
        raise ParseError(f"unknown standard algebra {name!r}; use M<n>, D<n>, scalar or P:<poly>",
                         "--standard")
    kind, n, p = m.groups()
    if kind:
        n = int(n)
        if n < 1:
            raise PreconditionError("size must be at least 1")
        return matrix_algebra(n) if kind == "M" else diagonal_algebra(n)
    if p:
        return poly_quotient(parse_poly(p))
    return scalar_algebra()


def load_algebra(args):
    if args.algebra:
        return ser.load(args.algebra, ser.Kind.ALGEBRA)
    return standard_algebra(args.standard)


# -- commands --------------------------------------------------------------------

def cmd_lie_check(args) -> dict:
    b = load_algebra(args)
    v = decide_L_property(b)
    out = {"tlie_dim": v.tlie.dim, "nlie_dim": v.nlie.dim, "verdict": v.verdict}
    if v.witness is not None:
        out["witness"] = [ser.rational_to_str(c) for c in v.witness]
    if args.samples >= 0 and b.unit is not None:
        r = semiideal_verify(b, samples=args.samples, seed=args.seed)
        out["semiideal"] = {
            "left_ideal_dim": r.left_ideal.dim,
            "right_ideal_dim": r.right_ideal.dim,
            "left_equals_ker_m": r.left_ok,
            "right_equals_ker_m_op": r.right_ok,
            "meet_equals_nlie": r.meet_ok,
            "samples": r.samples,
            "sandwich_ok": r.sandwich_ok,
        }
    return out


def cmd_poly_decompose(args) -> dict:
    p = read_poly(args.input, ("x", "y"))
    cert = decompose_one_variable(p)
    check = verify_certificate(cert, PolynomialContext(), p)
    return {"certificate": ser.cert_to_json(cert), "replay_ok": check.passed}


def membership_report(p: MultiPoly, k: int, max_degree: int) -> dict:
    v = decide_membership_poly(p, k, max_degree=max_degree)
    out = {"verdict": v.verdict}
    if v.member:
        combo = express_in_generators(p, k) or []
        out["combination"] = [
            [ser.rational_to_str(c), [list(m) for m in monos]] for c, monos in combo
        ]
    else:
        out["degree"] = v.degree
        out["component"] = v.component.to_text()
        out["residual"] = v.residual.to_text()
    return out


def cmd_poly_member(args) -> dict:
    p = read_poly(args.input, doubled_variables(args.k))
    return {"polynomial": p.to_text(), **membership_report(p, args.k, args.max_degree)}


def cmd_classify_lie_ideal(args) -> dict:
    cls = classify_lie_ideal(args.n, read_matrix_list(args.gens))
    return {"class": cls.value}


def cmd_classify_dn(args) -> dict:
    form = classify_dn_submodule(args.n, read_matrix_list(args.gens))
    return {
        "G": ser.subspace_to_json(form.G),
        "K": [list(p) for p in sorted(form.K)],
        "dim": form.G.dim + len(form.K),
    }


def cmd_counterexample(args) -> dict:
    if args.which == "f2":
        r = f2_refutation()
        out = {
            "element": r.element.to_text(),
            "image": r.image.to_text(),
            "in_nlie": r.in_nlie,
            "verdict": r.verdict.verdict,
            "refutes": r.refutes,
        }
        if not r.verdict.member:
            out["degree"] = r.verdict.degree
        return out
    text = "(x1 - y1)*x2" if args.which == "p2" else "(x1 - y1)^2*x2"
    p = parse_poly(text, doubled_variables(2))
    return {"polynomial": p.to_text(), **membership_report(p, 2, args.max_degree)}


def cmd_lambda_check(args) -> dict:
    lam = ser.matrix_from_json(read_json(args.matrix))
    v = lambda_preserver(lam.to_rows(), samples=args.samples, seed=args.seed)
    out = {
        "verdict": v.verdict,
        "antidiagonal_sums": {str(n): ser.rational_to_str(c) for n, c in v.antidiagonal_sums.items()},
    }
    if v.witness is not None:
        out["witness"] = {
            "ring_exponent": v.witness.ring_exponent,
            "value": [ser.rational_to_str(c) for c in v.witness.value],
            "refutes": v.witness.refutes,
        }
    else:
        out["harness_checked"] = v.harness_checked
        out["certificate"] = ser.cert_to_json(v.certificate)
    return out


def cmd_expectation(args) -> dict:
    x = ser.matrix_from_json(read_json(args.input))
    if args.m is None:
        result = signed_perm_average(args.n, x)
        expected = Matrix.identity(args.n) * Fraction(x.trace(), args.n)
    else:
        result = factor_expectation(args.n, args.m, x)
        expected = partial_trace_second(args.n, args.m, x).kron(Matrix.identity(args.m)) * Fraction(1, args.m)
    return {"result": ser.matrix_to_json(result), "matches_trace_formula": result == expected}


def cmd_verify_cert(args) -> dict:
    text, source = read_input(args.cert)
    cert = ser.loads(text, ser.Kind.CERTIFICATE, source)
    if args.algebra or args.standard:
        ctx = TensorAlgebraContext(load_algebra(args))
        target = read_json(args.target)
        if not isinstance(target, list):
            raise ser.SchemaError("tensor target must be an array of rationals", "$")
        target = [ser.parse_rational(c, f"$[{i}]") for i, c in enumerate(target)]
        check = verify_certificate(cert, ctx, target)
        residual = [ser.rational_to_str(c) for c in check.residual]
    else:
        target = read_poly(args.target, ("x", "y"))
        check = verify_certificate(cert, PolynomialContext(), target)
        residual = check.residual.to_text()
    return {"passed": check.passed, "residual": residual}


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a machine-readable JSON report")

    parser = argparse.ArgumentParser(prog="derivkit", parents=[common],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, parent=sub, **kw):
        p = parent.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    def algebra_source(p, required=True):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--algebra", help="algebra JSON file")
        g.add_argument("--standard", help="M<n>, D<n>, scalar or P:<poly>")

    p = add("lie-check", cmd_lie_check, help="compare T_Lie(B) with N_Lie(B)")
    algebra_source(p)
    p.add_argument("--samples", type=int, default=200,
                   help="sandwich samples for the semi-ideal check (-1 skips it)")
    p.add_argument("--seed", type=int, default=0)

    poly = sub.add_parser("poly", help="polynomial membership tools")
    poly_sub = poly.add_subparsers(dest="action", required=True)
    p = add("decompose", cmd_poly_decompose, poly_sub, help="certificate for p(x,y) with p(x,x)=0")
    p.add_argument("--input", required=True, help="polynomial text, JSON, or a file holding either")
    p = add("member", cmd_poly_member, poly_sub, help="graded membership in doubled variables")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, default=1, help="number of base variables")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    cls = sub.add_parser("classify", help="classify generated Lie ideals and submodules")
    cls_sub = cls.add_subparsers(dest="action", required=True)
    for name, func in (("lie-ideal", cmd_classify_lie_ideal), ("dn-submodule", cmd_classify_dn)):
        p = add(name, func, cls_sub)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--gens", required=True, help="JSON array of n×n matrices (path or inline)")

    p = add("counterexample", cmd_counterexample, help="replay the graded refutations")
    p.add_argument("which", choices=("p2", "p2-cubed", "f2"))
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    p = add("lambda-check", cmd_lambda_check, help="does Σ λ_km a^k b a^m preserve Lie ideals")
    p.add_argument("--matrix", required=True, help="λ as a JSON matrix (path or inline)")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = add("expectation", cmd_expectation, help="exact signed-permutation averaging")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--input", required=True, help="matrix JSON (path or inline)")

    p = add("verify-cert", cmd_verify_cert, help="replay a certificate against a target")
    p.add_argument("--cert", required=True)
    p.add_argument("--target", required=True,
                   help="polynomial in x,y; or a tensor coordinate array with --algebra/--standard")
    algebra_source(p, required=False)
    return parser


# -- output ----------------------------------------------------------------------

def _text_lines(obj, indent=0):
    pad = "  " * indent
    for key, value in obj.items():
        if isinstance(value, dict):
            yield f"{pad}{key}:"
            yield from _text_lines(value, indent + 1)
        else:
            yield f"{pad}{key}: {value}"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_PRECONDITION
    if getattr(args, "json", False):
        stdout.write(ser.to_json_text(report))
    else:
        for line in _text_lines(report):
            print(line, file=stdout)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
