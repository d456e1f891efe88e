"""Exact group averaging on matrix algebras.

The signed permutation matrices form a finite group whose commutant in
M_n is ℚ1, so averaging g x g^{-1} over it is exactly the normalized trace
map x -> (tr x / n) 1.  Everything stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .algebra import tensor
from .bimodule import dlie_vs_mlie, mn_on_mn, represent_elementary
from .derivations import nlie_subspace
from .errors import DimensionMismatch, PreconditionError
from .linalg import Matrix, Vector, vsub

MAX_GROUP_N = 4


@lru_cache(maxsize=None)
def signed_permutations(n: int) -> tuple[Matrix, ...]:
    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            entries = [0] * (n * n)
            for i, j in enumerate(perm):
                entries[i * n + j] = signs[i]
            out.append(Matrix(n, n, entries))
    return tuple(out)


def _check_square(x: Matrix, n: int) -> None:
    if x.shape != (n, n):
        raise DimensionMismatch(f"matrix of shape {x.shape}, expected ({n}, {n})")


def signed_perm_average(n: int, x: Matrix, max_n: int = MAX_GROUP_N) -> Matrix:
    """(1/|G|) Σ g x g^{-1} over the 2^n·n! signed permutations."""
    if n > max_n:
        raise PreconditionError(f"group of size 2^{n}·{n}! exceeds the guard n <= {max_n}")
    _check_square(x, n)
    group = signed_permutations(n)
    total = Matrix.zeros(n)
    for g in group:
        total = total + g @ x @ g.T  # g^{-1} = g^T
    return total * Fraction(1, len(group))


def factor_expectation(n: int, m: int, x: Matrix, max_n: int = MAX_GROUP_N) -> Matrix:
    """Average of (1⊗g) x (1⊗g)^{-1} over signed permutations g of size m.

    The result is (partial trace over the second factor / m) ⊗ 1_m.
    """
    if m > max_n:
        raise PreconditionError(f"group of size 2^{m}·{m}! exceeds the guard m <= {max_n}")
    _check_square(x, n * m)
    one = Matrix.identity(n)
    group = signed_permutations(m)
    total = Matrix.zeros(n * m)
    for g in group:
        u = one.kron(g)
        total = total + u @ x @ u.T
    return total * Fraction(1, len(group))


def partial_trace_second(n: int, m: int, x: Matrix) -> Matrix:
    _check_square(x, n * m)
    return Matrix(n, n, [
        sum((x[i * m + a, j * m + a] for a in range(m)), Fraction(0))
        for i in range(n) for j in range(n)
    ])


def averaging_operator(n: int) -> Matrix:
    """Matrix of x -> signed_perm_average(n, x) on M_n, row-major basis."""
    cols = [signed_perm_average(n, Matrix.unit(n, i, j)).entries
            for i in range(n) for j in range(n)]
    return Matrix.from_rows(cols).transpose()


@dataclass(frozen=True)
class ExpectationVerdict:
    n: int
    member: bool
    coords: Vector | None  # coordinates of E - I in the D_Lie basis
    operator: Matrix  # E - I
    summands_in_nlie: bool  # every g⊗g^{-1} - 1⊗1 satisfies both product conditions
    average_matches: bool  # (1/|G|) Σ (L_g R_{g^-1} - I) reproduces E - I


def expectation_in_dlie(n: int) -> ExpectationVerdict:
    """E - I lies in the algebra generated by the inner derivations of M_n."""
    if not 2 <= n <= 3:
        raise PreconditionError("expectation_in_dlie supports 2 <= n <= 3")
    rep = mn_on_mn(n)
    b = rep.algebra
    op = averaging_operator(n) - Matrix.identity(n * n)
    dlie = dlie_vs_mlie(rep).dlie
    coords = dlie.coords(op.entries)

    nlie = nlie_subspace(b).echelon()
    group = signed_permutations(n)
    one = b.unit
    in_nlie = True
    total = Matrix.zeros(n * n)
    for g in group:
        t = vsub(tensor(g.entries, g.T.entries), tensor(one, one))
        in_nlie = in_nlie and nlie.contains(t)
        total = total + represent_elementary(t, rep)
    total = total * Fraction(1, len(group))
    return ExpectationVerdict(n, coords is not None, coords, op, in_nlie, total == op)


