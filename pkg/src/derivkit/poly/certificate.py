"""Replayable membership certificates.

A certificate is an expression tree whose leaves ``Gen(f)`` stand for the
generator difference attached to a one-variable polynomial ``f``.  What a
leaf means depends on the evaluation context:

* :class:`PolynomialContext`: ``f(x) - f(y)``;
* :class:`TensorAlgebraContext`: ``f(g)⊗1 - 1⊗f(g)`` in ``C ⊗ C^op``;
* :class:`ElementaryOperatorsContext`: ``L_{f(a)} - R_{f(a)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch, PreconditionError
from ..linalg import Matrix, Vector, q, vadd, vscale, vsub, zero_vector
from .polynomial import MultiPoly


@dataclass(frozen=True)
class Gen:
    f: MultiPoly

    def __post_init__(self):
        if len(self.f.variables) != 1:
            raise PreconditionError("Gen leaves hold one-variable polynomials")


@dataclass(frozen=True)
class Scale:
    c: Fraction
    child: "Certificate"


@dataclass(frozen=True)
class Sum:
    children: tuple = ()


@dataclass(frozen=True)
class Product:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise PreconditionError("empty products are not allowed (no unit is adjoined)")


Certificate = Gen | Scale | Sum | Product


def leaves(cert) -> list[Gen]:
    if isinstance(cert, Gen):
        return [cert]
    if isinstance(cert, Scale):
        return leaves(cert.child)
    out = []
    for ch in cert.children:
        out.extend(leaves(ch))
    return out


def cert_to_text(cert) -> str:
    if isinstance(cert, Gen):
        return f"Gen({cert.f.to_text()})"
    if isinstance(cert, Scale):
        return f"{cert.c}*{cert_to_text(cert.child)}"
    if isinstance(cert, Sum):
        if not cert.children:
            return "0"
        return "(" + " + ".join(cert_to_text(c) for c in cert.children) + ")"
    return "·".join(cert_to_text(c) for c in cert.children)


# -- contexts -----------------------------------------------------------------

class PolynomialContext:
    """Gen(f) means f(x) - f(y) in the two-variable polynomial ring."""

    def __init__(self, x: str = "x", y: str = "y"):
        self.variables = (x, y)

    def gen(self, f: MultiPoly) -> MultiPoly:
        x, y = (MultiPoly.var(v, self.variables) for v in self.variables)
        (v,) = f.variables
        return f.substitute({v: x}, self.variables) - f.substitute({v: y}, self.variables)

    def zero(self):
        return MultiPoly.zero(self.variables)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, c, a):
        return a * c

    def coerce_target(self, target):
        if isinstance(target, str):
            from .polynomial import parse_poly
            target = parse_poly(target, self.variables)
        if not isinstance(target, MultiPoly):
            raise PreconditionError("polynomial context needs a polynomial target")
        return target.embed(self.variables)

    def residual(self, value, target):
        return value - target

    def is_zero(self, r) -> bool:
        return r.is_zero()


class TensorAlgebraContext:
    """Gen(f) means f(g)⊗1 - 1⊗f(g) inside tensor_square_op(algebra)."""

    def __init__(self, algebra, generator: Vector | None = None):
        from ..algebra import tensor_square_op

        self.algebra = algebra
        self.generator = generator if generator is not None else algebra.generator
        if self.generator is None:
            raise PreconditionError("tensor context needs a generator element of the algebra")
        self.tensor_algebra = tensor_square_op(algebra)

    def polynomial_at_generator(self, f: MultiPoly) -> Vector:
        a = self.algebra
        coeffs = f.univariate_coeffs() if f.terms else []
        value = zero_vector(a.dim)
        power = a.require_unit()
        for k, c in enumerate(coeffs):
            if k:
                power = a.mul(power, self.generator)
            if c:
                value = vadd(value, vscale(c, power))
        return value

    def gen(self, f: MultiPoly) -> Vector:
        from ..algebra import derivation_generator

        return derivation_generator(self.algebra, self.polynomial_at_generator(f))

    def zero(self):
        return zero_vector(self.tensor_algebra.dim)

    def add(self, a, b):
        return vadd(a, b)

    def mul(self, a, b):
        return self.tensor_algebra.mul(a, b)

    def scale(self, c, a):
        return vscale(c, a)

    def coerce_target(self, target):
        target = tuple(q(t) for t in target)
        if len(target) != self.tensor_algebra.dim:
            raise DimensionMismatch(
                f"target has {len(target)} coordinates, tensor square has dimension "
                f"{self.tensor_algebra.dim}"
            )
        return target

    def residual(self, value, target):
        return vsub(value, target)

    def is_zero(self, r) -> bool:
        return not any(r)


class ElementaryOperatorsContext:
    """Gen(f) means L_{f(a)} - R_{f(a)} acting on the module of ``rep``."""

    def __init__(self, rep, a: Vector):
        self.rep = rep
        self.a = tuple(q(c) for c in a)
        if len(self.a) != rep.algebra.dim:
            raise DimensionMismatch("element does not belong to the acting algebra")

    def gen(self, f: MultiPoly) -> Matrix:
        alg = self.rep.algebra
        coeffs = f.univariate_coeffs() if f.terms else []
        value = zero_vector(alg.dim)
        power = alg.require_unit()
        for k, c in enumerate(coeffs):
            if k:
                power = alg.mul(power, self.a)
            if c:
                value = vadd(value, vscale(c, power))
        return self.rep.left_op(value) - self.rep.right_op(value)

    def zero(self):
        return Matrix.zeros(self.rep.module_dim)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a @ b

    def scale(self, c, a):
        return a * c

    def coerce_target(self, target):
        if not isinstance(target, Matrix) or target.shape != (self.rep.module_dim,) * 2:
            raise DimensionMismatch("target must be a square operator matrix on the module")
        return target

    def residual(self, value, target):
        return value - target

    def is_zero(self, r) -> bool:
        return r.is_zero()


def evaluate(cert, context):
    if isinstance(cert, Gen):
        return context.gen(cert.f)
    if isinstance(cert, Scale):
        return context.scale(cert.c, evaluate(cert.child, context))
    if isinstance(cert, Sum):
        total = context.zero()
        for ch in cert.children:
            total = context.add(total, evaluate(ch, context))
        return total
    if isinstance(cert, Product):
        value = evaluate(cert.children[0], context)
        for ch in cert.children[1:]:
            value = context.mul(value, evaluate(ch, context))
        return value
    raise PreconditionError(f"not a certificate node: {cert!r}")


@dataclass(frozen=True)
class CertificateCheck:
    passed: bool
    residual: object


def verify_certificate(cert, context, target) -> CertificateCheck:
    """Evaluate ``cert`` exactly in ``context`` and compare with ``target``."""
    target = context.coerce_target(target)
    r = context.residual(evaluate(cert, context), target)
    return CertificateCheck(context.is_zero(r), r)


def scaled(c, child):
    c = q(c)
    if c == 1:
        return child
    return Scale(c, child)


def sum_of(children) -> "Certificate":
    children = tuple(children)
    if len(children) == 1:
        return children[0]
    return Sum(children)

