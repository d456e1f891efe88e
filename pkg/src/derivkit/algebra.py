"""Finite-dimensional associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, PreconditionError
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    basis_vector,
    nullspace,
    q,
    span_canonical,
    vec,
    vsub,
)


@dataclass(frozen=True, eq=False)
class FinAlg:
    """Algebra with basis ``labels`` and products ``e_i e_j = structure[i, j]``.

    ``structure`` is sparse: a missing pair means a zero product, and each
    stored value maps output index to a nonzero coefficient.  ``generator``
    optionally records a single element generating the algebra (set by
    ``PolyQuotient``).
    """

    dim: int
    labels: tuple[str, ...]
    structure: Mapping[tuple[int, int], Mapping[int, Fraction]]
    unit: Vector | None = None
    generator: Vector | None = None
    _by_left: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise DimensionMismatch(f"{len(self.labels)} labels for dimension {self.dim}")
        for (i, j), out in self.structure.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatch(f"structure index ({i}, {j}) out of range")
            if any(not (0 <= k < self.dim) for k in out):
                raise DimensionMismatch(f"product ({i}, {j}) has coordinate out of range")
        if self.unit is not None and len(self.unit) != self.dim:
            raise DimensionMismatch("unit has wrong length")
        by_left: dict[int, list] = {}
        for (i, j), out in sorted(self.structure.items()):
            if out:
                by_left.setdefault(i, []).append((j, tuple(out.items())))
        object.__setattr__(self, "_by_left", by_left)

    @classmethod
    def from_dense(cls, labels, table, unit=None, generator=None) -> "FinAlg":
        """Build from a mapping (i, j) -> dense coordinate vector."""
        dim = len(labels)
        structure = {}
        for (i, j), coords in table.items():
            if len(coords) != dim:
                raise DimensionMismatch(f"product ({i}, {j}) has {len(coords)} coordinates")
            out = {k: q(c) for k, c in enumerate(coords) if c}
            if out:
                structure[(i, j)] = out
        return cls(
            dim, tuple(labels), structure,
            None if unit is None else vec(unit),
            None if generator is None else vec(generator),
        )

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def product(self, i: int, j: int) -> Vector:
        out = [Fraction(0)] * self.dim
        for k, c in self.structure.get((i, j), {}).items():
            out[k] = c
        return tuple(out)

    def mul(self, u: Sequence, v: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        nz_v = [(j, b) for j, b in enumerate(v) if b]
        if not nz_v:
            return tuple(out)
        v_map = dict(nz_v)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, terms in self._by_left.get(i, ()):
                b = v_map.get(j)
                if b is None:
                    continue
                ab = a * b
                for k, c in terms:
                    out[k] += ab * c
        return tuple(out)

    def power(self, u: Sequence, n: int) -> Vector:
        if n == 0:
            if self.unit is None:
                raise PreconditionError("zeroth power needs a unital algebra")
            return self.unit
        r = tuple(u)
        for _ in range(n - 1):
            r = self.mul(r, u)
        return r

    def basis(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def element(self, coords) -> "AlgElement":
        return AlgElement(self, vec(coords))

    def left_matrix(self, u: Sequence) -> Matrix:
        """Matrix of x -> u x in the basis."""
        cols = [self.mul(u, self.basis(j)) for j in range(self.dim)]
        return Matrix.from_rows(cols).transpose()

    def right_matrix(self, u: Sequence) -> Matrix:
        """Matrix of x -> x u in the basis."""
        cols = [self.mul(self.basis(j), u) for j in range(self.dim)]
        return Matrix.from_rows(cols).transpose()

    def is_commutative(self) -> bool:
        return all(
            self.structure.get((i, j), {}) == self.structure.get((j, i), {})
            for i in range(self.dim) for j in range(i + 1, self.dim)
        )

    def require_unit(self, what: str = "this operation") -> Vector:
        if self.unit is None:
            raise PreconditionError(f"{what} requires a unital algebra")
        return self.unit


@dataclass(frozen=True)
class AlgElement:
    algebra: FinAlg
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise DimensionMismatch(
                f"element has {len(self.coords)} coordinates, algebra has dimension {self.algebra.dim}"
            )

    def _check(self, other: "AlgElement") -> None:
        if other.algebra is not self.algebra:
            raise PreconditionError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AlgElement(self.algebra, vsub(self.coords, other.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return AlgElement(self.algebra, self.algebra.mul(self.coords, other.coords))
        c = q(other)
        return AlgElement(self.algebra, tuple(c * a for a in self.coords))

    def __rmul__(self, c):
        return self * c

    def __neg__(self):
        return self * -1


# -- standard constructors ---------------------------------------------------

@dataclass(frozen=True)
class MatrixAlgebra:
    n: int


@dataclass(frozen=True)
class DiagonalAlgebra:
    n: int


@dataclass(frozen=True)
class PolyQuotient:
    p: object  # one-variable MultiPoly


@dataclass(frozen=True)
class DirectSum:
    a: FinAlg
    b: FinAlg


@dataclass(frozen=True)
class Unitization:
    a: FinAlg


@dataclass(frozen=True)
class Quotient:
    a: FinAlg
    ideal: Subspace


def build_standard_algebra(desc) -> FinAlg:
    if isinstance(desc, MatrixAlgebra):
        return matrix_algebra(desc.n)
    if isinstance(desc, DiagonalAlgebra):
        return diagonal_algebra(desc.n)
    if isinstance(desc, PolyQuotient):
        return poly_quotient(desc.p)
    if isinstance(desc, DirectSum):
        return direct_sum(desc.a, desc.b)
    if isinstance(desc, Unitization):
        return unitization(desc.a)
    if isinstance(desc, Quotient):
        return quotient(desc.a, desc.ideal)
    raise PreconditionError(f"unknown algebra description {desc!r}")


def matrix_algebra(n: int) -> FinAlg:
    """M_n with basis e_ij (index i*n + j), e_ij e_kl = δ_jk e_il."""
    if n < 1:
        raise PreconditionError("matrix size must be at least 1")
    one = Fraction(1)
    structure = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                structure[(i * n + j, j * n + l)] = {i * n + l: one}
    labels = tuple(f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1}_{j + 1}"
                   for i in range(n) for j in range(n))
    unit = [0] * (n * n)
    for i in range(n):
        unit[i * n + i] = 1
    return FinAlg(n * n, labels, structure, vec(unit))


def diagonal_algebra(n: int) -> FinAlg:
    if n < 1:
        raise PreconditionError("diagonal size must be at least 1")
    structure = {(i, i): {i: Fraction(1)} for i in range(n)}
    return FinAlg(n, tuple(f"d{i + 1}" for i in range(n)), structure, vec([1] * n))


def scalar_algebra() -> FinAlg:
    """The one-dimensional unital algebra span{1}."""
    return FinAlg(1, ("1",), {(0, 0): {0: Fraction(1)}}, vec([1]))


def poly_quotient(p) -> FinAlg:
    """ℚ[x]/(p) with basis 1, x, ..., x^(deg p - 1)."""
    if len(p.variables) != 1:
        raise PreconditionError("PolyQuotient needs a one-variable polynomial")
    coeffs = p.univariate_coeffs()  # index = exponent
    d = len(coeffs) - 1
    if d < 1:
        raise PreconditionError("PolyQuotient needs a polynomial of degree >= 1")
    if coeffs[d] != 1:
        raise PreconditionError(f"polynomial is not monic (leading coefficient {coeffs[d]})")
    # x^k reduced mod p, for k < 2d - 1
    powers: list[list[Fraction]] = []
    for k in range(2 * d - 1):
        if k < d:
            v = [Fraction(0)] * d
            v[k] = Fraction(1)
        else:
            prev = powers[k - 1]
            # multiply prev by x then replace x^d by -(p - x^d)
            top = prev[d - 1]
            v = [Fraction(0)] + prev[:d - 1]
            if top:
                for i in range(d):
                    v[i] -= top * coeffs[i]
        powers.append(v)
    structure = {}
    for i in range(d):
        for j in range(d):
            out = {k: c for k, c in enumerate(powers[i + j]) if c}
            if out:
                structure[(i, j)] = out
    name = p.variables[0]
    labels = tuple("1" if k == 0 else (name if k == 1 else f"{name}^{k}") for k in range(d))
    generator = powers[1] if d > 1 else [-coeffs[0]]
    return FinAlg(d, labels, structure, basis_vector(d, 0), vec(generator))


def direct_sum(a: FinAlg, b: FinAlg) -> FinAlg:
    n = a.dim
    structure = {}
    for (i, j), out in a.structure.items():
        structure[(i, j)] = dict(out)
    for (i, j), out in b.structure.items():
        structure[(i + n, j + n)] = {k + n: c for k, c in out.items()}
    labels = tuple(f"A.{s}" for s in a.labels) + tuple(f"B.{s}" for s in b.labels)
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = tuple(a.unit) + tuple(b.unit)
    return FinAlg(a.dim + b.dim, labels, structure, unit)


def unitization(a: FinAlg) -> FinAlg:
    """Adjoin a fresh unit as basis element 0."""
    structure = {(0, 0): {0: Fraction(1)}}
    for i in range(a.dim):
        structure[(0, i + 1)] = {i + 1: Fraction(1)}
        structure[(i + 1, 0)] = {i + 1: Fraction(1)}
    for (i, j), out in a.structure.items():
        structure[(i + 1, j + 1)] = {k + 1: c for k, c in out.items()}
    return FinAlg(a.dim + 1, ("1",) + a.labels, structure, basis_vector(a.dim + 1, 0))


def ideal_violation(a: FinAlg, ideal: Subspace):
    """First (side, basis index, ideal row) whose product leaves ``ideal``; None if two-sided."""
    e = ideal.echelon()
    for r, v in enumerate(ideal.basis):
        for i in range(a.dim):
            x = a.basis(i)
            if not e.contains(a.mul(x, v)):
                return ("left", i, r, a.mul(x, v))
            if not e.contains(a.mul(v, x)):
                return ("right", i, r, a.mul(v, x))
    return None


def quotient(a: FinAlg, ideal: Subspace) -> FinAlg:
    """A / ideal, with the non-pivot basis vectors as coset representatives."""
    if ideal.ambient_dim != a.dim:
        raise DimensionMismatch("ideal lives in a space of the wrong dimension")
    bad = ideal_violation(a, ideal)
    if bad is not None:
        side, i, r, prod = bad
        raise PreconditionError(
            f"subspace is not a two-sided ideal: {side} product of basis element "
            f"{a.labels[i]} with ideal basis vector {r} leaves it ({list(map(str, prod))})"
        )
    e = ideal.echelon()
    keep = [c for c in range(a.dim) if c not in set(ideal.pivots)]
    def project(v):
        r = e.reduce(v)
        return [r[c] for c in keep]

    table = {}
    for i, ci in enumerate(keep):
        for j, cj in enumerate(keep):
            table[(i, j)] = project(a.product(ci, cj))
    unit = project(a.unit) if a.unit is not None else None
    gen = project(a.generator) if a.generator is not None else None
    return FinAlg.from_dense([a.labels[c] for c in keep], table, unit, gen)


def opposite(a: FinAlg) -> FinAlg:
    structure = {(j, i): dict(out) for (i, j), out in a.structure.items()}
    return FinAlg(a.dim, a.labels, structure, a.unit, a.generator)


def tensor_square_op(b: FinAlg) -> FinAlg:
    """B ⊗ B^op with (a⊗b)(c⊗d) = ac ⊗ db; basis (i, j) at index i*dim + j."""
    b.require_unit("tensor_square_op")
    d = b.dim
    structure = {}
    for (i, k), ik in b.structure.items():
        for (l, j), lj in b.structure.items():
            # (e_i⊗e_j)(e_k⊗e_l) = e_i e_k ⊗ e_l e_j
            out = {}
            for p, c1 in ik.items():
                for r, c2 in lj.items():
                    out[p * d + r] = out.get(p * d + r, 0) + c1 * c2
            out = {key: c for key, c in out.items() if c}
            if out:
                structure[(i * d + j, k * d + l)] = out
    labels = tuple(f"{s}|{t}" for s in b.labels for t in b.labels)
    unit = tensor(b.unit, b.unit)
    return FinAlg(d * d, labels, structure, unit)


def tensor(u: Sequence, v: Sequence) -> Vector:
    """Coordinates of u ⊗ v in the basis of the tensor square."""
    return tuple(a * c for a in u for c in v)


def derivation_generator(b: FinAlg, u: Sequence) -> Vector:
    """Coordinates of u⊗1 - 1⊗u in tensor_square_op(b)."""
    one = b.require_unit("derivation generators")
    return vsub(tensor(u, one), tensor(one, u))


def multiplication_maps(b: FinAlg) -> tuple[Matrix, Matrix]:
    """Matrices of m(a⊗c) = ac and m_op(a⊗c) = ca, each dim × dim²."""
    b.require_unit("multiplication_maps")
    d = b.dim
    m_cols, mop_cols = [], []
    for i in range(d):
        for j in range(d):
            m_cols.append(b.product(i, j))
            mop_cols.append(b.product(j, i))
    return (Matrix.from_rows(m_cols).transpose(), Matrix.from_rows(mop_cols).transpose())


@dataclass(frozen=True)
class ValidationReport:
    associative: bool
    failing_triple: tuple[int, int, int] | None
    unit_ok: bool | None
    unit_failure: int | None = None

    @property
    def valid(self) -> bool:
        return self.associative and self.unit_ok is not False


def validate_algebra(a: FinAlg) -> ValidationReport:
    failing = None
    for i in range(a.dim):
        for j in range(a.dim):
            eij = a.product(i, j)
            for k in range(a.dim):
                lhs = a.mul(eij, a.basis(k))
                rhs = a.mul(a.basis(i), a.product(j, k))
                if lhs != rhs:
                    failing = (i, j, k)
                    break
            if failing:
                break
        if failing:
            break
    unit_ok, unit_failure = None, None
    if a.unit is not None:
        unit_ok = True
        for i in range(a.dim):
            e = a.basis(i)
            if a.mul(a.unit, e) != e or a.mul(e, a.unit) != e:
                unit_ok, unit_failure = False, i
                break
    return ValidationReport(failing is None, failing, unit_ok, unit_failure)


def kernel_of(m: Matrix) -> Subspace:
    return nullspace(m.to_rows(), m.cols)


def subspace_of(a: FinAlg, elements: Iterable[Sequence]) -> Subspace:
    return span_canonical(list(elements), a.dim)


def random_element(a: FinAlg, rng, lo: int = -3, hi: int = 3, density: float = 1.0) -> Vector:
    return tuple(
        Fraction(rng.randint(lo, hi)) if rng.random() < density else Fraction(0)
        for _ in range(a.dim)
    )

