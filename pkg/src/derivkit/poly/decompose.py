"""Constructive membership for one generator.

Every ``p(x, y)`` with ``p(x, x) = 0`` is written as an explicit expression
in differences ``f(x) - f(y)``.  Working one uniform component ``q`` of
degree ``n`` at a time: divide ``q = (x - y) u``, choose
``λ = s(u) / n`` (``s`` = coefficient sum) so that ``u - λ h`` has coefficient
sum zero, where ``h = (x^n - y^n) / (x - y)``, and recurse on it.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PreconditionError
from ..linalg import q as to_q
from .certificate import Gen, Product, Sum, scaled, sum_of
from .polynomial import MultiPoly, uniform_components


def _check_two_vars(p: MultiPoly) -> None:
    if len(p.variables) != 2:
        raise PreconditionError(
            f"expected a polynomial in two variables (x, y), got {p.variables}"
        )


def diagonal_restriction(p: MultiPoly) -> MultiPoly:
    """p(x, x) as a polynomial in the first variable."""
    _check_two_vars(p)
    x = p.variables[0]
    out: dict = {}
    for (i, j), c in p.terms.items():
        out[(i + j,)] = out.get((i + j,), 0) + c
    return MultiPoly((x,), out)


def divide_by_difference(p: MultiPoly) -> MultiPoly:
    """Exact quotient p / (x - y); raises if the division leaves a remainder."""
    _check_two_vars(p)
    out = MultiPoly.zero(p.variables)
    for n, comp in uniform_components(p).items():
        a = [comp.coefficient((i, n - i)) for i in range(n + 1)]
        # (x - y) * sum b_i x^i y^(n-1-i) has x^i y^(n-i) coefficient b_(i-1) - b_i
        b = [Fraction(0)] * n
        carry = Fraction(0)
        for i in range(n, 0, -1):
            carry = a[i] + carry
            b[i - 1] = carry
        if n == 0 or a[0] + b[0] != 0:
            raise PreconditionError(f"x - y does not divide the degree-{n} component")
        out = out + MultiPoly(p.variables, {(i, n - 1 - i): b[i] for i in range(n)})
    return out


def complete_homogeneous(n: int, variables) -> MultiPoly:
    """x^n + x^(n-1) y + ... + y^n."""
    return MultiPoly(variables, {(i, n - i): 1 for i in range(n + 1)})


def _decompose_uniform(comp: MultiPoly, n: int):
    x = comp.variables[0]
    if comp.is_zero():
        return None
    if n == 1:
        return scaled(comp.coefficient((1, 0)), Gen(MultiPoly.var(x, (x,))))
    u = divide_by_difference(comp)
    lam = u.coefficient_sum() / n
    parts = []
    if lam:
        parts.append(scaled(lam, Gen(MultiPoly.monomial((n,), (x,)))))
    inner = u - complete_homogeneous(n - 1, comp.variables) * lam
    sub = _decompose_uniform(inner, n - 1)
    if sub is not None:
        parts.append(Product((Gen(MultiPoly.var(x, (x,))), sub)))
    return sum_of(parts)


def decompose_one_variable(p: MultiPoly):
    """Certificate expressing ``p`` through differences ``f(x) - f(y)``."""
    _check_two_vars(p)
    diag = diagonal_restriction(p)
    if not diag.is_zero():
        raise PreconditionError(
            f"polynomial does not vanish on the diagonal: p(x, x) = {diag.to_text()}"
        )
    parts = []
    for n, comp in uniform_components(p).items():
        cert = _decompose_uniform(comp, n)
        if cert is not None:
            parts.append(cert)
    if not parts:
        return Sum(())
    return sum_of(parts)


def _power_basis_check(c) -> None:
    g = c.generator
    if g is None or c.unit is None:
        raise PreconditionError("algebra has no recorded generator (build it as PolyQuotient)")
    power = c.unit
    for i in range(c.dim):
        if tuple(power) != c.basis(i):
            raise PreconditionError("algebra basis is not 1, g, g^2, ... for its generator")
        power = c.mul(power, g)


def transfer_quotient(c, t):
    """Certificate over ``C = ℚ[x]/(q)`` for an element ``t`` of N_Lie(C).

    ``t`` is lifted coefficientwise to ``g(x, y)``; with ``c(x) = g(x, x)``,
    which lies in ``(q)``, the polynomial ``g - c ⊗ 1`` vanishes on the
    diagonal and its one-variable certificate evaluates to ``t`` in ``C ⊗ C^op``.
    """
    from ..algebra import multiplication_maps

    t = tuple(to_q(a) for a in t)
    d = c.dim
    if len(t) != d * d:
        raise PreconditionError(f"element has {len(t)} coordinates, expected {d * d}")
    m, m_op = multiplication_maps(c)
    if any(m.apply(t)) or any(m_op.apply(t)):
        raise PreconditionError("element is not in N_Lie: its products do not vanish")
    _power_basis_check(c)
    variables = ("x", "y")
    lift = {}
    diag = {}
    for i in range(d):
        for j in range(d):
            coef = t[i * d + j]
            if coef:
                lift[(i, j)] = lift.get((i, j), 0) + coef
                diag[(i + j, 0)] = diag.get((i + j, 0), 0) + coef
    g = MultiPoly(variables, lift) - MultiPoly(variables, diag)
    return decompose_one_variable(g)
