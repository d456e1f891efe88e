"""Degree-by-degree membership test for the algebra generated by differences.

In ``ℚ[x1..xk] ⊗ ℚ[x1..xk] = ℚ[x1..xk, y1..yk]`` the subalgebra generated by
all ``a(x) - a(y)`` is spanned by products of monomial differences
``m(x) - m(y)``, each of which is homogeneous.  Membership therefore splits
over uniform components, and each component is a finite linear-algebra
question in the slice of its degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import PreconditionError
from ..linalg import EchelonBasis, Subspace
from .polynomial import MultiPoly, monomials_of_degree, uniform_components

DEFAULT_MAX_DEGREE = 12


def doubled_variables(k: int) -> tuple[str, ...]:
    """``(x, y)`` for one base variable, ``(x1..xk, y1..yk)`` otherwise."""
    if k < 1:
        raise PreconditionError("need at least one base variable")
    if k == 1:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(1, k + 1)) + tuple(f"y{i}" for i in range(1, k + 1))


def slice_basis(k: int, d: int) -> list[tuple[int, ...]]:
    """Monomial basis (descending lex) of the degree-d slice in 2k variables."""
    return monomials_of_degree(2 * k, d)


def slice_vector(p: MultiPoly, k: int, d: int) -> tuple:
    index = {e: i for i, e in enumerate(slice_basis(k, d))}
    out = [0] * len(index)
    for e, c in p.terms.items():
        if sum(e) != d:
            raise PreconditionError(f"term of degree {sum(e)} in the degree-{d} slice")
        out[index[e]] = c
    return tuple(out)


def slice_poly(v, k: int, d: int) -> MultiPoly:
    return MultiPoly(doubled_variables(k), dict(zip(slice_basis(k, d), v)))


def _difference(mono: tuple[int, ...], k: int) -> MultiPoly:
    variables = doubled_variables(k)
    zeros = (0,) * k
    return MultiPoly(variables, {mono + zeros: 1, zeros + mono: -1})


def generator_products(k: int, d: int):
    """Yield ``(monomials, product)`` for every multiset of nonconstant base
    monomials whose degrees sum to ``d``."""
    monos = [m for deg in range(1, d + 1) for m in monomials_of_degree(k, deg)]
    diffs = [_difference(m, k) for m in monos]
    degs = [sum(m) for m in monos]

    def rec(start, remaining, chosen, value):
        if remaining == 0:
            yield tuple(monos[i] for i in chosen), value
            return
        for i in range(start, len(monos)):
            if degs[i] > remaining:
                continue
            yield from rec(i, remaining - degs[i], chosen + [i],
                           diffs[i] if value is None else value * diffs[i])

    yield from rec(0, d, [], None)


@lru_cache(maxsize=None)
def graded_tlie_component(k: int, d: int) -> Subspace:
    """Degree-d part of the difference-generated subalgebra, in slice coordinates."""
    if k < 1 or d < 0:
        raise PreconditionError("need k >= 1 and d >= 0")
    n = len(slice_basis(k, d))
    e = EchelonBasis(n)
    if d == 0:
        return e.freeze()
    for _, prod in generator_products(k, d):
        e.add(slice_vector(prod, k, d))
    return e.freeze()


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    degree: int | None = None
    component: MultiPoly | None = None
    residual: MultiPoly | None = None

    @property
    def verdict(self) -> str:
        return "Member" if self.member else "NonMember"


def as_doubled(p: MultiPoly, k: int) -> MultiPoly:
    variables = doubled_variables(k)
    extra = [v for v in p.variables if v not in variables]
    used = [v for v in extra if any(e[p.variables.index(v)] for e in p.terms)]
    if used:
        raise PreconditionError(
            f"variables {used} are outside the doubled convention {variables}"
        )
    return p.embed(variables)


def decide_membership_poly(p: MultiPoly, k: int, max_degree: int | None = None) -> MembershipVerdict:
    """Member iff every uniform component lies in its graded component."""
    p = as_doubled(p, k)
    comps = uniform_components(p)
    if max_degree is not None and comps and max(comps) > max_degree:
        raise PreconditionError(
            f"polynomial has degree {max(comps)} above the cap {max_degree}"
        )
    for d, comp in comps.items():
        space = graded_tlie_component(k, d)
        r = space.echelon().reduce(slice_vector(comp, k, d))
        if any(r):
            return MembershipVerdict(False, d, comp, slice_poly(r, k, d))
    return MembershipVerdict(True)


def vanishes_on_diagonal(p: MultiPoly, k: int) -> bool:
    """Necessary condition for membership: p(x, x) = 0."""
    p = as_doubled(p, k)
    variables = doubled_variables(k)
    xs, ys = variables[:k], variables[k:]
    subs = {y: MultiPoly.var(x, variables) for x, y in zip(xs, ys)}
    return p.substitute(subs, variables).is_zero()


def express_in_generators(p: MultiPoly, k: int):
    """Explicit combination of generator products equal to ``p``.

    Returns a list of ``(coefficient, monomials)`` meaning
    ``coefficient * Π (m(x) - m(y))`` over the base monomials, or None when
    ``p`` is not a member.
    """
    from ..linalg import nullspace

    p = as_doubled(p, k)
    out = []
    for d, comp in uniform_components(p).items():
        if d == 0:
            return None
        gens = list(generator_products(k, d))
        target = slice_vector(comp, k, d)
        vectors = [slice_vector(g, k, d) for _, g in gens]
        rows = [[v[r] for v in vectors] + [-target[r]] for r in range(len(target))]
        ker = nullspace(rows, len(vectors) + 1)
        sol = next((b for b in ker.basis if b[-1]), None)
        if sol is None:
            return None
        scale = sol[-1]
        for c, (monos, _) in zip(sol[:-1], gens):
            if c:
                out.append((c / scale, monos))
    return out
