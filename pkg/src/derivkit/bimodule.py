"""Elementary operators on finite-dimensional bimodules and Lie-submodule classification.

Classification is done over ℚ.  The matrix-unit argument behind the four
Lie ideals of M_n uses only rational arithmetic, so the statement is the
same as over ℂ.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import (
    FinAlg,
    diagonal_algebra,
    matrix_algebra,
    poly_quotient,
    tensor,
)
from .closures import generated_subalgebra, lie_closure
from .derivations import nlie_subspace
from .errors import DimensionMismatch, InternalError, PreconditionError
from .linalg import Matrix, Subspace, Vector, combine, q, span_canonical, subspace_meet_join, vec
from .poly.certificate import ElementaryOperatorsContext, verify_certificate
from .poly.decompose import decompose_one_variable
from .poly.polynomial import MultiPoly


@dataclass(frozen=True, eq=False)
class BimoduleRep:
    """``algebra`` acting on a module of dimension ``module_dim``.

    ``left[i]`` and ``right[i]`` are the matrices of x -> e_i x and x -> x e_i.
    """

    algebra: FinAlg
    module_dim: int
    left: tuple
    right: tuple

    def __post_init__(self):
        if len(self.left) != self.algebra.dim or len(self.right) != self.algebra.dim:
            raise DimensionMismatch("need one left and one right matrix per basis element")
        for mat in self.left + self.right:
            if mat.shape != (self.module_dim, self.module_dim):
                raise DimensionMismatch(f"action matrix of shape {mat.shape}")

    def left_op(self, u: Sequence) -> Matrix:
        return _combine_mats(u, self.left, self.module_dim)

    def right_op(self, u: Sequence) -> Matrix:
        return _combine_mats(u, self.right, self.module_dim)

    def check_axioms(self) -> str | None:
        """Describe the first failing bimodule axiom, or None."""
        a = self.algebra
        for i in range(a.dim):
            for j in range(a.dim):
                eij = a.product(i, j)
                if self.left[i] @ self.left[j] != self.left_op(eij):
                    return f"left action not multiplicative at ({i}, {j})"
                if self.right[j] @ self.right[i] != self.right_op(eij):
                    return f"right action not anti-multiplicative at ({i}, {j})"
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    return f"left and right actions do not commute at ({i}, {j})"
        return None


def _combine_mats(u: Sequence, mats: Sequence[Matrix], n: int) -> Matrix:
    entries = combine([q(c) for c in u], [m.entries for m in mats], n * n)
    return Matrix(n, n, entries)


def regular_bimodule(b: FinAlg) -> BimoduleRep:
    left = tuple(b.left_matrix(b.basis(i)) for i in range(b.dim))
    right = tuple(b.right_matrix(b.basis(i)) for i in range(b.dim))
    return BimoduleRep(b, b.dim, left, right)


def matrix_bimodule(b: FinAlg, images: Sequence[Matrix]) -> BimoduleRep:
    """M_n as a bimodule over ``b``, basis element i acting as ``images[i]``."""
    if len(images) != b.dim:
        raise DimensionMismatch("need one image matrix per basis element")
    n = images[0].rows
    units = [Matrix.unit(n, j, k) for j in range(n) for k in range(n)]

    def op(f):
        return Matrix.from_rows([f(e).entries for e in units]).transpose()

    left = tuple(op(lambda x, m=m: m @ x) for m in images)
    right = tuple(op(lambda x, m=m: x @ m) for m in images)
    return BimoduleRep(b, n * n, left, right)


@lru_cache(maxsize=None)
def dn_on_mn(n: int) -> BimoduleRep:
    """M_n as a bimodule over the diagonal matrices D_n."""
    return matrix_bimodule(diagonal_algebra(n), [Matrix.unit(n, i, i) for i in range(n)])


@lru_cache(maxsize=None)
def mn_on_mn(n: int) -> BimoduleRep:
    return regular_bimodule(matrix_algebra(n))


def represent_elementary(t: Sequence, rep: BimoduleRep) -> Matrix:
    """Σ c_ij e_i⊗e_j  ->  Σ c_ij L_{e_i} R_{e_j}."""
    d = rep.algebra.dim
    if len(t) != d * d:
        raise DimensionMismatch(f"tensor has {len(t)} coordinates, expected {d * d}")
    n = rep.module_dim
    out = Matrix.zeros(n)
    for i in range(d):
        for j in range(d):
            c = q(t[i * d + j])
            if c:
                out = out + (rep.left[i] @ rep.right[j]) * c
    return out


@dataclass(frozen=True)
class DMReport:
    dlie: Subspace
    mlie: Subspace

    @property
    def equal(self) -> bool:
        return self.dlie == self.mlie


def dlie_vs_mlie(rep: BimoduleRep) -> DMReport:
    """Operator images of T_Lie (generated by L_a - R_a) and N_Lie, flattened row-major."""
    b = rep.algebra
    b.require_unit("dlie_vs_mlie")
    n = rep.module_dim
    ops = matrix_algebra(n)
    gens = [(rep.left[i] - rep.right[i]).entries for i in range(b.dim)]
    dlie = generated_subalgebra(ops, [g for g in gens if any(g)])
    mlie = span_canonical(
        [represent_elementary(v, rep).entries for v in nlie_subspace(b).basis], n * n
    )
    return DMReport(dlie, mlie)


@dataclass(frozen=True)
class HadamardReport:
    n: int
    dim: int
    positions: frozenset  # 1-based (j, k) with a nonzero multiplier somewhere
    entrywise: bool  # every image operator is entrywise multiplication
    kills_diagonal: bool
    is_full: bool  # image = all multipliers vanishing on the diagonal

    @property
    def ok(self) -> bool:
        return self.entrywise and self.kills_diagonal and self.is_full and self.dim == self.n ** 2 - self.n


def hadamard_check(n: int) -> HadamardReport:
    """N_Lie(D_n) acting on M_n is Hadamard multiplication by zero-diagonal matrices."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    rep = dn_on_mn(n)
    images = [represent_elementary(v, rep) for v in nlie_subspace(rep.algebra).basis]
    n2 = n * n
    entrywise = all(
        op[r, c] == 0 for op in images for r in range(n2) for c in range(n2) if r != c
    )
    diag_idx = [j * n + j for j in range(n)]
    kills = all(op[r, r] == 0 for op in images for r in diag_idx)
    positions = frozenset(
        (r // n + 1, r % n + 1) for op in images for r in range(n2) if op[r, r]
    )
    span = span_canonical([op.entries for op in images], n2 * n2)
    expected = span_canonical(
        [Matrix.unit(n2, r, r).entries for r in range(n2) if r not in diag_idx], n2 * n2
    )
    return HadamardReport(n, span.dim, positions, entrywise, kills, span == expected)


# -- classification -------------------------------------------------------------

@dataclass(frozen=True)
class LieSubmoduleForm:
    """S = G ⊕ Z(K): G in D_n coordinates, K a set of 1-based off-diagonal positions."""

    n: int
    G: Subspace
    K: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if any(j == k for j, k in self.K):
            raise PreconditionError("K must avoid the diagonal")

    def to_subspace(self) -> Subspace:
        n = self.n
        vectors = [_diag_to_flat(g, n) for g in self.G.basis]
        vectors += [Matrix.unit(n, j - 1, k - 1).entries for j, k in sorted(self.K)]
        return span_canonical(vectors, n * n)


def _diag_to_flat(g: Sequence, n: int) -> Vector:
    return Matrix.diag(list(g)).entries


def _flatten_gens(n: int, gens) -> list[Vector]:
    out = []
    for i, g in enumerate(gens):
        if not isinstance(g, Matrix):
            g = Matrix.from_rows(g)
        if g.shape != (n, n):
            raise DimensionMismatch(f"generator {i} has shape {g.shape}, expected ({n}, {n})", i)
        out.append(g.entries)
    return out


def diagonal_subspace(n: int) -> Subspace:
    return span_canonical([Matrix.unit(n, i, i).entries for i in range(n)], n * n)


def classify_dn_submodule(n: int, gens) -> LieSubmoduleForm:
    """Lie D_n-submodule of M_n generated by ``gens``, split as G ⊕ Z(K)."""
    rep = dn_on_mn(n)
    closure = lie_closure(rep.algebra, _flatten_gens(n, gens),
                          module_actions=(rep.left, rep.right))
    meet, _ = subspace_meet_join(closure, diagonal_subspace(n))
    G = span_canonical([[row[j * n + j] for j in range(n)] for row in meet.basis], n)
    K = frozenset(
        (j + 1, k + 1) for j in range(n) for k in range(n)
        if j != k and Matrix.unit(n, j, k).entries in closure
    )
    form = LieSubmoduleForm(n, G, K)
    if form.to_subspace() != closure:
        e = form.to_subspace().echelon()
        bad = next(v for v in closure.basis if not e.contains(v))
        raise InternalError("closure does not split as G ⊕ Z(K)", witness=bad)
    return form


class LieIdealClass(Enum):
    ZERO = "Zero"
    SCALARS = "Scalars"
    TRACELESS = "Traceless"
    FULL = "Full"


@lru_cache(maxsize=None)
def canonical_lie_ideals(n: int) -> dict:
    n2 = n * n
    traceless = [Matrix.unit(n, i, j).entries for i in range(n) for j in range(n) if i != j]
    traceless += [(Matrix.unit(n, i, i) - Matrix.unit(n, n - 1, n - 1)).entries for i in range(n - 1)]
    return {
        LieIdealClass.ZERO: Subspace.zero(n2),
        LieIdealClass.SCALARS: span_canonical([Matrix.identity(n).entries], n2),
        LieIdealClass.TRACELESS: span_canonical(traceless, n2),
        LieIdealClass.FULL: Subspace.full(n2),
    }


def lie_ideal_closure(n: int, gens) -> Subspace:
    return lie_closure(matrix_algebra(n), _flatten_gens(n, gens))


def classify_lie_ideal(n: int, gens) -> LieIdealClass:
    """Which of 0, ℚ1, traceless, M_n is the Lie ideal generated by ``gens``."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    closure = lie_ideal_closure(n, gens)
    for cls, space in canonical_lie_ideals(n).items():
        if closure == space:
            return cls
    raise InternalError("Lie ideal matches none of the four canonical ones", witness=closure)


# -- λ-matrices -------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaWitness:
    """In ℚ[t]/(t^N) with L = ℚt and a = b = t: value = Σ μ_n t^(n+1)."""

    ring_exponent: int
    value: Vector  # coordinates in basis 1, t, ..., t^(N-1)
    refutes: bool  # value ∉ ℚt


@dataclass(frozen=True)
class LambdaVerdict:
    valid: bool
    antidiagonal_sums: dict
    witness: LambdaWitness | None = None
    harness_checked: int = 0
    harness_failure: tuple | None = None
    certificate: object = None

    @property
    def verdict(self) -> str:
        return "Valid" if self.valid else "Invalid"


def normalize_lambda(lam) -> dict:
    """Accept a mapping (k, m) -> c or a matrix (nested sequence) λ[k][m]."""
    if isinstance(lam, Mapping):
        items = lam.items()
    else:
        items = (((k, m), c) for k, row in enumerate(lam) for m, c in enumerate(row))
    out = {}
    for (k, m), c in items:
        if k < 0 or m < 0:
            raise PreconditionError("λ indices must be nonnegative")
        c = q(c)
        if c:
            out[(int(k), int(m))] = c
    return out


def antidiagonal_sums(lam: Mapping) -> dict:
    mu: dict = {}
    for (k, m), c in lam.items():
        mu[k + m] = mu.get(k + m, Fraction(0)) + c
    return dict(sorted(mu.items()))


def sandwich(b: FinAlg, lam: Mapping, a: Sequence, x: Sequence) -> Vector:
    """Σ λ_km a^k x a^m computed in ``b``."""
    out = (Fraction(0),) * b.dim
    for (k, m), c in lam.items():
        v = b.mul(b.mul(b.power(a, k), x), b.power(a, m))
        out = tuple(o + c * w for o, w in zip(out, v))
    return out


def sandwich_operator(rep: BimoduleRep, lam: Mapping, a: Sequence) -> Matrix:
    """P(L_a, R_a) = Σ λ_km L_a^k R_a^m."""
    b = rep.algebra
    t = (Fraction(0),) * (b.dim ** 2)
    for (k, m), c in lam.items():
        piece = tensor(b.power(a, k), b.power(a, m))
        t = tuple(x + c * y for x, y in zip(t, piece))
    return represent_elementary(t, rep)


def lambda_polynomial(lam: Mapping) -> MultiPoly:
    """P(α, β) = Σ λ_km α^k β^m, in variables (x, y)."""
    return MultiPoly(("x", "y"), dict(lam))


def lambda_witness(lam: Mapping) -> LambdaWitness:
    mu = antidiagonal_sums(lam)
    big = max(mu, default=0) + 2
    ring = poly_quotient(MultiPoly.monomial((big,), ("t",)))
    t = ring.generator
    value = (Fraction(0),) * ring.dim
    for n_, c in mu.items():
        value = tuple(v + c * w for v, w in zip(value, ring.power(t, n_ + 1)))
    line = span_canonical([t], ring.dim)
    return LambdaWitness(big, value, value not in line)


def lambda_preserver(lam, samples: int = 20, seed: int = 0, harness_n: int = 3) -> LambdaVerdict:
    """Valid iff every anti-diagonal of λ sums to zero.

    Valid λ are exercised on the four Lie ideals of M_n (a random in M_n,
    b random in the ideal) and bridged to the one-generator certificate;
    invalid λ get the commutative witness ring.
    """
    lam = normalize_lambda(lam)
    mu = antidiagonal_sums(lam)
    if any(mu.values()):
        return LambdaVerdict(False, mu, witness=lambda_witness(lam))

    rng = random.Random(seed)
    alg = matrix_algebra(harness_n)
    checked, failure = 0, None
    for cls, ideal in canonical_lie_ideals(harness_n).items():
        if ideal.dim == 0:
            continue
        for _ in range(samples):
            a = vec(rng.randint(-2, 2) for _ in range(alg.dim))
            b = combine([rng.randint(-3, 3) for _ in range(ideal.dim)], ideal.basis, alg.dim)
            checked += 1
            if sandwich(alg, lam, a, b) not in ideal:
                failure = (cls, a, b)
                break
        if failure:
            break

    cert = decompose_one_variable(lambda_polynomial(lam))
    if failure is None and lam:
        rep = mn_on_mn(harness_n)
        a = vec(rng.randint(-2, 2) for _ in range(alg.dim))
        check = verify_certificate(cert, ElementaryOperatorsContext(rep, a),
                                   sandwich_operator(rep, lam, a))
        if not check.passed:
            raise InternalError("certificate replay disagrees with the sandwich operator")
    return LambdaVerdict(True, mu, None, checked, failure, cert)
