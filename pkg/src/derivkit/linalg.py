"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`.  Subspaces are kept in
reduced row-echelon form, which makes equality of subspaces a plain
equality of field contents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]


def q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or 'p/q'")
    return Fraction(x)


def vec(values: Iterable) -> Vector:
    return tuple(q(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def basis_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = q(c)
    return tuple(c * a for a in v)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Linear combination ``sum(c_i * v_i)`` of length-``n`` vectors."""
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


def is_zero(v: Sequence) -> bool:
    return not any(v)


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis.

    Mutable helper for the closure engines; :meth:`freeze` produces the
    immutable :class:`Subspace`.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._rows: dict[int, list[Fraction]] = {}  # pivot column -> row

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        r = [q(a) for a in v]
        for p, row in self._rows.items():
            c = r[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        r[k] -= c * a
        return r

    def add(self, v: Sequence) -> list[Fraction] | None:
        """Add ``v``; return its normalized new row, or None if already spanned."""
        r = self.reduce(v)
        p = next((k for k, a in enumerate(r) if a), None)
        if p is None:
            return None
        inv = 1 / r[p]
        r = [a * inv for a in r]
        for row in self._rows.values():
            c = row[p]
            if c:
                for k, a in enumerate(r):
                    if a:
                        row[k] -= c * a
        self._rows[p] = r
        return r

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def freeze(self) -> "Subspace":
        basis = tuple(tuple(self._rows[p]) for p in sorted(self._rows))
        return Subspace(self.ambient_dim, basis)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple  # tuple of vectors in reduced row-echelon form

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, a in enumerate(row) if a) for row in self.basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(basis_vector(ambient_dim, i) for i in range(ambient_dim)))

    def echelon(self) -> EchelonBasis:
        e = EchelonBasis(self.ambient_dim)
        for p, row in zip(self.pivots, self.basis):
            e._rows[p] = list(row)
        return e

    def coords(self, v: Sequence) -> Vector | None:
        return membership_with_coords(v, self)

    def __contains__(self, v) -> bool:
        return self.coords(v) is not None

    def issubspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        e = other.echelon()
        return all(e.contains(row) for row in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_meet_join(self, other)[1]

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_meet_join(self, other)[0]


def _check_ambient(s1: Subspace, s2: Subspace) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {s1.ambient_dim} != {s2.ambient_dim}"
        )


def span_canonical(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    e = EchelonBasis(ambient_dim)
    for i, v in enumerate(vectors):
        if len(v) != ambient_dim:
            raise DimensionMismatch(
                f"vector {i} has length {len(v)}, expected {ambient_dim}", index=i
            )
        e.add([q(a) for a in v])
    return e.freeze()


def membership_with_coords(v: Sequence, s: Subspace) -> Vector | None:
    """Coordinates of ``v`` in ``s.basis``, or None when ``v`` is not in ``s``."""
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector has length {len(v)}, expected {s.ambient_dim}")
    v = [q(a) for a in v]
    coords = tuple(v[p] for p in s.pivots)
    residual = vsub(v, combine(coords, s.basis, s.ambient_dim))
    if any(residual):
        return None
    return coords


def nullspace(rows: Sequence[Sequence], ncols: int) -> Subspace:
    """Kernel ``{x : R x = 0}`` of the matrix with the given rows."""
    e = EchelonBasis(ncols)
    for r in rows:
        e.add(r)
    pivots = sorted(e._rows)
    free = [c for c in range(ncols) if c not in e._rows]
    kernel = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for p in pivots:
            x[p] = -e._rows[p][f]
        kernel.append(x)
    return span_canonical(kernel, ncols)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return span_canonical(rows, ncols).dim


def subspace_meet_join(s1: Subspace, s2: Subspace) -> tuple[Subspace, Subspace]:
    """Return ``(s1 ∩ s2, s1 + s2)``."""
    _check_ambient(s1, s2)
    n = s1.ambient_dim
    join = span_canonical(list(s1.basis) + list(s2.basis), n)
    # x in s1 ∩ s2  <=>  x = sum a_i u_i = sum b_j w_j; kernel of [U^T | -W^T].
    d1 = s1.dim
    cols = d1 + s2.dim
    rows = []
    for k in range(n):
        rows.append([u[k] for u in s1.basis] + [-w[k] for w in s2.basis])
    ker = nullspace(rows, cols)
    meet = span_canonical(
        [combine(z[:d1], s1.basis, n) for z in ker.basis], n
    )
    return meet, join


class Matrix:
    """Dense immutable rational matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(q(a) for a in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{len(entries)} entries given for a {rows}x{cols} matrix"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has length {len(r)}, expected {ncols}", i)
        return cls(len(rows), ncols, [a for r in rows for a in r])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit e_ij (0-based indices)."""
        e = [0] * (n * n)
        e[i * n + j] = 1
        return cls(n, n, e)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def flatten(self) -> Vector:
        return self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in self.row(i)) for i in range(self.rows))
        return f"Matrix([{body}])"

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} != {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, vadd(self.entries, other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, vsub(self.entries, other.entries))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, vscale(c, self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [Fraction(0)] * (n * p)
        for i in range(n):
            for k in range(m):
                c = a[i * m + k]
                if not c:
                    continue
                base = k * p
                for j in range(p):
                    d = b[base + j]
                    if d:
                        out[i * p + j] += c * d
        return Matrix(n, p, out)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for i in range(self.rows):
            row = self.entries[i * self.cols:(i + 1) * self.cols]
            out.append(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)))
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols, self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.shape))), Fraction(0))

    def kron(self, other: "Matrix") -> "Matrix":
        n, m = self.shape
        p, r = other.shape
        out = []
        for i in range(n):
            for k in range(p):
                for j in range(m):
                    a = self[i, j]
                    for l in range(r):
                        out.append(a * other[k, l])
        return Matrix(n * p, m * r, out)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def rank(self) -> int:
        return rank(self.to_rows(), self.cols)

    def kernel(self) -> Subspace:
        return nullspace(self.to_rows(), self.cols)

    def image(self) -> Subspace:
        return span_canonical(self.transpose().to_rows(), self.rows)
