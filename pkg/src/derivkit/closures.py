"""Span-product closure engines.

Each engine grows a reduced echelon basis breadth-first: every newly added
basis vector is pushed through a fixed list of linear maps and anything that
leaves the current span is added.  The result is the smallest subspace
containing the seeds and invariant under all the maps.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import Callable, Iterable, Sequence

from .algebra import AlgElement, FinAlg
from .errors import DimensionMismatch, PreconditionError
from .linalg import EchelonBasis, Matrix, Subspace, q, vsub


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


def invariant_closure(
    ambient_dim: int,
    seeds: Iterable[Sequence],
    maps: Sequence[Callable[[Sequence], Sequence]],
) -> Subspace:
    """Smallest subspace containing ``seeds`` and invariant under ``maps``."""
    e = EchelonBasis(ambient_dim)
    queue = deque()
    for i, s in enumerate(seeds):
        if len(s) != ambient_dim:
            raise DimensionMismatch(f"seed {i} has length {len(s)}, expected {ambient_dim}", i)
        row = e.add(s)
        if row is not None:
            queue.append(row)
    while queue and len(e) < ambient_dim:
        v = queue.popleft()
        for f in maps:
            row = e.add(f(v))
            if row is not None:
                queue.append(row)
    return e.freeze()


def _coords(a: FinAlg, gens) -> list[tuple]:
    out = []
    for i, g in enumerate(gens):
        if isinstance(g, AlgElement):
            if g.algebra is not a:
                raise PreconditionError(f"generator {i} belongs to a different algebra")
            g = g.coords
        g = tuple(q(c) for c in g)
        if len(g) != a.dim:
            raise DimensionMismatch(
                f"generator {i} has {len(g)} coordinates, algebra has dimension {a.dim}", i
            )
        out.append(g)
    return out


def generated_subalgebra(a: FinAlg, gens, adjoin_unit: bool = False) -> Subspace:
    """Span of all nonempty products of generators (plus 1 if ``adjoin_unit``).

    Closing the span under right multiplication by each generator already
    produces every word, so the generators are the only multipliers needed.
    """
    gens = _coords(a, gens)
    if adjoin_unit:
        gens = gens + [a.require_unit("adjoin_unit")]
    maps = [lambda v, g=g: a.mul(v, g) for g in gens]
    return invariant_closure(a.dim, gens, maps)


def generated_one_sided_ideal(
    a: FinAlg,
    gens,
    side: Side = Side.LEFT,
    multipliers: Sequence[Sequence] | None = None,
) -> Subspace:
    """Smallest subspace containing ``gens`` with A·S ⊆ S, S·A ⊆ S, or both.

    ``multipliers`` may be any set generating ``a`` as a unital algebra;
    by default the whole basis is used.
    """
    gens = _coords(a, gens)
    mult = [a.basis(i) for i in range(a.dim)] if multipliers is None else _coords(a, multipliers)
    maps = []
    if side in (Side.LEFT, Side.TWO_SIDED):
        maps += [lambda v, m=m: a.mul(m, v) for m in mult]
    if side in (Side.RIGHT, Side.TWO_SIDED):
        maps += [lambda v, m=m: a.mul(v, m) for m in mult]
    return invariant_closure(a.dim, gens, maps)


def lie_closure(
    a: FinAlg,
    gens,
    acting: Sequence[Sequence] | None = None,
    module_actions: tuple[Sequence[Matrix], Sequence[Matrix]] | None = None,
) -> Subspace:
    """Smallest subspace containing ``gens`` closed under x -> ax - xa.

    ``acting`` spans the acting subalgebra (default: the basis of ``a``).
    Given ``module_actions = (left, right)``, one matrix per basis element of
    ``a``, the generators are module vectors and ``a`` acts by
    ``left(a) - right(a)``.
    """
    acting = [a.basis(i) for i in range(a.dim)] if acting is None else _coords(a, acting)
    if module_actions is None:
        gens = _coords(a, gens)
        maps = [lambda v, x=x: vsub(a.mul(x, v), a.mul(v, x)) for x in acting]
        return invariant_closure(a.dim, gens, maps)

    left, right = module_actions
    if len(left) != a.dim or len(right) != a.dim:
        raise DimensionMismatch("need one left and one right action matrix per basis element")
    n = left[0].rows
    for i, mat in enumerate(list(left) + list(right)):
        if mat.shape != (n, n):
            raise DimensionMismatch(f"action matrix {i} has shape {mat.shape}, expected ({n}, {n})", i)
    ops = []
    for x in acting:
        op = Matrix.zeros(n)
        for i, c in enumerate(x):
            if c:
                op = op + (left[i] - right[i]) * c
        ops.append(op)
    gens = [tuple(q(c) for c in g) for g in gens]
    return invariant_closure(n, gens, [op.apply for op in ops])
