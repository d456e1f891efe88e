"""T_Lie(B) and N_Lie(B) inside B ⊗ B^op.

T_Lie(B) is the (non-unital) subalgebra generated by the differences
``a⊗1 - 1⊗a``; N_Lie(B) consists of the tensors ``Σ a_k⊗b_k`` with
``Σ a_k b_k = 0`` and ``Σ b_k a_k = 0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    FinAlg,
    derivation_generator,
    kernel_of,
    multiplication_maps,
    random_element,
    tensor,
    tensor_square_op,
)
from .closures import Side, generated_one_sided_ideal, generated_subalgebra
from .linalg import Subspace, Vector, combine, nullspace, subspace_meet_join


def tlie_generators(b: FinAlg) -> list[Vector]:
    gens = [derivation_generator(b, b.basis(i)) for i in range(b.dim)]
    return [g for g in gens if any(g)]


def tlie_subspace(b: FinAlg, tensor_algebra: FinAlg | None = None) -> Subspace:
    t = tensor_algebra or tensor_square_op(b)
    return generated_subalgebra(t, tlie_generators(b))


def nlie_subspace(b: FinAlg) -> Subspace:
    m, m_op = multiplication_maps(b)
    return nullspace(m.to_rows() + m_op.to_rows(), m.cols)


@dataclass(frozen=True)
class LVerdict:
    equal: bool
    tlie: Subspace
    nlie: Subspace
    witness: Vector | None = None

    @property
    def verdict(self) -> str:
        return "Equal" if self.equal else "StrictWitness"


def decide_L_property(b: FinAlg) -> LVerdict:
    """Compare T_Lie(B) with N_Lie(B); on failure return a basis vector of N_Lie outside T_Lie."""
    t = tlie_subspace(b)
    n = nlie_subspace(b)
    if t == n:
        return LVerdict(True, t, n)
    e = t.echelon()
    witness = next(v for v in n.basis if not e.contains(v))
    return LVerdict(False, t, n, witness)


def tensor_multipliers(b: FinAlg) -> list[Vector]:
    """e_i⊗1 and 1⊗e_i: these generate B ⊗ B^op as a unital algebra."""
    one = b.require_unit()
    return [tensor(b.basis(i), one) for i in range(b.dim)] + [
        tensor(one, b.basis(i)) for i in range(b.dim)
    ]


@dataclass(frozen=True)
class SemiidealReport:
    left_ideal: Subspace
    ker_m: Subspace
    right_ideal: Subspace
    ker_m_op: Subspace
    meet: Subspace
    nlie: Subspace
    samples: int
    failed_sample: tuple | None

    @property
    def left_ok(self) -> bool:
        return self.left_ideal == self.ker_m

    @property
    def right_ok(self) -> bool:
        return self.right_ideal == self.ker_m_op

    @property
    def meet_ok(self) -> bool:
        return self.meet == self.nlie

    @property
    def sandwich_ok(self) -> bool:
        return self.failed_sample is None

    @property
    def ok(self) -> bool:
        return self.left_ok and self.right_ok and self.meet_ok and self.sandwich_ok


def semiideal_verify(b: FinAlg, samples: int = 200, seed: int = 0) -> SemiidealReport:
    """Check the one-sided ideal description of N_Lie and T·(B⊗B^op)·T ⊆ N_Lie."""
    t_alg = tensor_square_op(b)
    gens = tlie_generators(b)
    mult = tensor_multipliers(b)
    left = generated_one_sided_ideal(t_alg, gens, Side.LEFT, multipliers=mult)
    right = generated_one_sided_ideal(t_alg, gens, Side.RIGHT, multipliers=mult)
    m, m_op = multiplication_maps(b)
    ker_m, ker_mop = kernel_of(m), kernel_of(m_op)
    meet, _ = subspace_meet_join(left, right)
    nlie = nlie_subspace(b)

    failed = None
    tlie = tlie_subspace(b, t_alg)
    if tlie.dim and samples:
        rng = random.Random(seed)
        n_echelon = nlie.echelon()
        for k in range(samples):
            t1 = _random_in(tlie, rng)
            t2 = _random_in(tlie, rng)
            s = random_element(t_alg, rng, density=0.3)
            prod = t_alg.mul(t_alg.mul(t1, s), t2)
            if not n_echelon.contains(prod):
                failed = (k, t1, s, t2)
                break
    return SemiidealReport(left, ker_m, right, ker_mop, meet, nlie, samples, failed)


def _random_in(s: Subspace, rng: random.Random) -> Vector:
    coeffs = [rng.randint(-3, 3) for _ in range(s.dim)]
    return combine(coeffs, s.basis, s.ambient_dim)
