"""Acceptance criteria 1-10, all exact.

Each criterion is a function returning ``(ok, detail)``.  The pytest
wrappers record one PASS/FAIL line per criterion, printed in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.

Criteria 4 and 8 are expected to fail: the statements they check are false
(see the decisions ledger).  They are marked strict xfail so the suite stays
green while the FAIL lines remain visible, and the attainable parts of each
are asserted separately.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivkit.algebra import (
    derivation_generator,
    diagonal_algebra,
    matrix_algebra,
    multiplication_maps,
    poly_quotient,
    random_element,
    tensor_square_op,
)
from derivkit.bimodule import (
    LieIdealClass,
    antidiagonal_sums,
    canonical_lie_ideals,
    classify_dn_submodule,
    classify_lie_ideal,
    dn_on_mn,
    lambda_preserver,
    sandwich,
)
from derivkit.closures import generated_subalgebra, lie_closure
from derivkit.derivations import decide_L_property, semiideal_verify
from derivkit.expectation import expectation_in_dlie, signed_perm_average
from derivkit.freealg import f2_refutation, verify_lemma_identities
from derivkit.linalg import Matrix, combine, span_canonical, subspace_meet_join
from derivkit.poly import (
    MultiPoly,
    PolynomialContext,
    decide_membership_poly,
    decompose_one_variable,
    graded_tlie_component,
    parse_poly,
    verify_certificate,
)
from derivkit.poly.membership import doubled_variables

RESULTS: dict[int, tuple[bool, str]] = {}

QUOTIENTS = ["x^2", "x^3", "x^3 - 2", "x^4 - x"]


def single_generator_algebras():
    out = [(f"D{n}", diagonal_algebra(n), n) for n in range(1, 6)]
    out += [(f"Q[x]/({p})", poly_quotient(parse_poly(p)), parse_poly(p).degree()) for p in QUOTIENTS]
    return out


# -- criteria -----------------------------------------------------------------------

def criterion_1():
    parts = []
    ok = True
    for n in (2, 3):
        start = time.perf_counter()
        v = decide_L_property(matrix_algebra(n))
        elapsed = time.perf_counter() - start
        want = (n * n - 1) ** 2
        good = v.verdict == "Equal" and v.tlie.dim == v.nlie.dim == want
        if n == 3:
            good = good and elapsed < 60
        ok = ok and good
        parts.append(f"M{n}: {v.verdict} dim {v.tlie.dim}/{v.nlie.dim} in {elapsed:.2f}s")
    return ok, "; ".join(parts)


def criterion_2():
    bad = []
    for name, b, d in single_generator_algebras():
        v = decide_L_property(b)
        if not (v.verdict == "Equal" and v.tlie.dim == d * d - d):
            bad.append(f"{name}: {v.verdict} dim {v.tlie.dim}")
    detail = "D1..D5 and 4 quotients Equal with dim d²-d" if not bad else "; ".join(bad)
    return not bad, detail


def criterion_3():
    bad = []
    algebras = [("M2", matrix_algebra(2)), ("M3", matrix_algebra(3))]
    algebras += [(name, b) for name, b, _ in single_generator_algebras()]
    for name, b in algebras:
        r = semiideal_verify(b, samples=200, seed=1)
        if not r.ok:
            bad.append(f"{name}: left {r.left_ok} right {r.right_ok} meet {r.meet_ok} "
                       f"sandwich {r.sandwich_ok}")
    return not bad, f"{len(algebras)} algebras, 200 samples each" if not bad else "; ".join(bad)


def criterion_4():
    p2 = doubled_variables(2)
    parts, ok = [], True

    start = time.perf_counter()
    v = decide_membership_poly(parse_poly("(x1 - y1)*x2", p2), 2)
    good = (not v.member and v.degree == 2) and time.perf_counter() - start < 5
    ok &= good
    parts.append(f"(x1-y1)x2 {v.verdict}@{v.degree}: {'pass' if good else 'fail'}")

    start = time.perf_counter()
    v = decide_membership_poly(parse_poly("(x1 - y1)^2*x2", p2), 2)
    good = (not v.member and v.degree == 3) and time.perf_counter() - start < 5
    ok &= good
    parts.append(f"(x1-y1)^2x2 {v.verdict}: {'pass' if good else 'fail'}")

    start = time.perf_counter()
    r = f2_refutation()
    good = (not r.verdict.member) and time.perf_counter() - start < 5
    ok &= good
    parts.append(f"f2 {r.verdict.verdict}: {'pass' if good else 'fail'}")
    return ok, "; ".join(parts)


def random_diagonal_vanishing(rng: random.Random) -> MultiPoly:
    xy = ("x", "y")
    d = rng.randint(1, 12)
    q_terms = {}
    for _ in range(rng.randint(1, 6)):
        a = rng.randint(0, d - 1)
        b = rng.randint(0, d - 1 - a)
        q_terms[(a, b)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return MultiPoly(xy, {(1, 0): 1, (0, 1): -1}) * MultiPoly(xy, q_terms)


def criterion_5():
    rng = random.Random(2024)
    failures = 0
    for _ in range(100):
        p = random_diagonal_vanishing(rng)
        cert = decompose_one_variable(p)
        check = verify_certificate(cert, PolynomialContext(), p)
        failures += not (check.passed and check.residual.is_zero())
    dims = [graded_tlie_component(1, d).dim for d in range(1, 13)]
    complete = dims == list(range(1, 13))
    return failures == 0 and complete, (
        f"{100 - failures}/100 certificates replay with residual 0; "
        f"component dims d=1..12 {'match' if complete else dims}"
    )


def lie_ideal_corpus():
    def u(n, i, j):
        return Matrix.unit(n, i, j)

    cases = []
    for n in (2, 3, 4):
        one = Matrix.identity(n)
        cases += [
            (n, [], LieIdealClass.ZERO),
            (n, [one * 3, one * Fraction(-1, 2)], LieIdealClass.SCALARS),
            (n, [u(n, 0, 1) + u(n, 1, 0)] if n != 3 else [u(n, 0, 0) - u(n, 2, 2)],
             LieIdealClass.TRACELESS),
            (n, [one + u(n, 0, 1)] if n != 4 else [u(n, 3, 3)], LieIdealClass.FULL),
        ]
    return cases


def criterion_6():
    bad = []
    corpus = lie_ideal_corpus()
    for n, gens, want in corpus:
        got = classify_lie_ideal(n, gens)
        if got is not want:
            bad.append(f"n={n} expected {want.value} got {got.value}")

    rng = random.Random(6)
    trials = 0
    for n in (2, 3, 4):
        rep = dn_on_mn(n)
        for _ in range(50):
            gens = [Matrix(n, n, [rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(n * n)])
                    for _ in range(rng.randint(1, 3))]
            form = classify_dn_submodule(n, gens)
            closure = lie_closure(rep.algebra, [g.entries for g in gens],
                                  module_actions=(rep.left, rep.right))
            trials += 1
            if form.to_subspace() != closure or any(j == k for j, k in form.K):
                bad.append(f"dn-submodule n={n} mismatch")
    detail = f"{len(corpus)} Lie-ideal cases; {trials} D_n-submodule reconstructions"
    return not bad, detail if not bad else "; ".join(bad[:5])


def lambda_corpus():
    valid = [
        {(1, 0): 1, (0, 1): -1},
        {(2, 0): 1, (1, 1): -2, (0, 2): 1},
        {(0, 1): 1, (1, 0): -1},
        {(2, 0): 1, (0, 2): -1},
        {(1, 1): 1, (2, 0): -1},
        {(3, 0): 1, (0, 3): -1},
        {(3, 0): 1, (2, 1): -3, (1, 2): 3, (0, 3): -1},
        {(2, 1): 1, (1, 2): -1},
        {(1, 0): 2, (0, 1): -2, (2, 0): 5, (0, 2): -5},
        {(4, 0): Fraction(1, 2), (2, 2): Fraction(-1, 2)},
    ]
    invalid = [
        {(1, 0): 1},
        {(0, 1): 1},
        {(1, 0): 1, (0, 1): 1},
        {(2, 0): 1},
        {(1, 1): 1},
        {(1, 0): 1, (0, 1): -1, (2, 0): 1},
        {(3, 0): 1, (0, 3): 1},
        {(2, 1): 1, (1, 2): -1, (3, 0): Fraction(1, 3)},
        {(1, 0): 1, (0, 1): -2},
        {(4, 0): 1, (3, 1): -1, (0, 4): 1},
    ]
    return valid + invalid


def criterion_7():
    rng = random.Random(7)
    b = matrix_algebra(3)
    ideals = canonical_lie_ideals(3)
    bad = []
    corpus = lambda_corpus()
    for lam in corpus:
        expected_valid = not any(antidiagonal_sums(lam).values())
        v = lambda_preserver(lam, samples=10, seed=rng.randint(0, 10**6))
        if v.valid != expected_valid:
            bad.append(f"{lam}: {v.verdict}")
            continue
        if v.valid:
            if v.harness_failure is not None:
                bad.append(f"{lam}: harness failure")
            for space in ideals.values():
                for _ in range(5):
                    a = random_element(b, rng)
                    x = combine([rng.randint(-3, 3) for _ in space.basis], space.basis, b.dim)
                    if sandwich(b, lam, a, x) not in space:
                        bad.append(f"{lam}: leaves an ideal")
        elif not v.witness.refutes:
            bad.append(f"{lam}: witness does not refute")
    n_valid = sum(not any(antidiagonal_sums(lam).values()) for lam in corpus)
    detail = f"{len(corpus)} cases ({n_valid} Valid, {len(corpus) - n_valid} Invalid with witnesses)"
    return not bad, detail if not bad else "; ".join(bad[:5])


def criterion_8():
    r = verify_lemma_identities()
    ok_i, ok_ii = r.residual_i.is_zero(), r.residual_ii.is_zero()
    return ok_i and ok_ii, (
        f"(i) residual {r.residual_i.to_text()}; (ii) residual {r.residual_ii.to_text()} "
        f"(against -a⊗x³: {r.residual_ii_negated.to_text()})"
    )


def criterion_9():
    rng = random.Random(9)
    mismatches = 0
    for _ in range(100):
        n = rng.choice((2, 3))
        x = Matrix(n, n, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n * n)])
        mismatches += signed_perm_average(n, x) != Matrix.identity(n) * Fraction(x.trace(), n)
    members = {n: expectation_in_dlie(n) for n in (2, 3)}
    in_dlie = all(v.member and v.average_matches and v.summands_in_nlie for v in members.values())
    return mismatches == 0 and in_dlie, (
        f"{100 - mismatches}/100 averages equal (tr x/n)I; "
        f"E-I in D_Lie for n=2,3: {in_dlie}"
    )


# -- criterion 10: quantified properties ----------------------------------------------

_POOL = [matrix_algebra(2), diagonal_algebra(3), poly_quotient(parse_poly("x^3 - 2")),
         poly_quotient(parse_poly("x^3"))]
_SQUARES = [(b, tensor_square_op(b), *multiplication_maps(b)) for b in _POOL]
_M2 = matrix_algebra(2)


def _property_runs():
    counts = {}

    @settings(max_examples=200, database=None)
    @given(st.randoms(use_true_random=False), st.integers(0, len(_POOL) - 1), st.integers(1, 3))
    def tlie_in_nlie(rnd, i, length):
        b, t, m, m_op = _SQUARES[i]
        prod = None
        for _ in range(length):
            g = derivation_generator(b, random_element(b, rnd))
            prod = g if prod is None else t.mul(prod, g)
        assert not any(m.apply(prod)) and not any(m_op.apply(prod))
        counts["tlie_in_nlie"] = counts.get("tlie_in_nlie", 0) + 1

    @settings(max_examples=200, database=None)
    @given(st.randoms(use_true_random=False), st.integers(1, 3))
    def idempotence(rnd, k):
        gens = [random_element(_M2, rnd, density=0.5) for _ in range(k)]
        s = generated_subalgebra(_M2, gens)
        assert generated_subalgebra(_M2, list(s.basis)) == s
        l = lie_closure(_M2, gens)
        assert lie_closure(_M2, list(l.basis)) == l
        counts["idempotence"] = counts.get("idempotence", 0) + 1

    @settings(max_examples=200, database=None)
    @given(st.randoms(use_true_random=False), st.integers(0, 5))
    def determinism(rnd, k):
        vs = [[Fraction(rnd.randint(-3, 3)) for _ in range(5)] for _ in range(k)]
        other = [[c * s for c in v] for v, s in zip(vs, (rnd.choice([1, -1, 2, Fraction(1, 3)]) for _ in vs))]
        rnd.shuffle(other)
        assert span_canonical(vs, 5) == span_canonical(other, 5)
        counts["determinism"] = counts.get("determinism", 0) + 1

    @settings(max_examples=200, database=None)
    @given(st.randoms(use_true_random=False), st.integers(0, 4), st.integers(0, 4))
    def meet_join(rnd, k1, k2):
        def rand_space(k):
            return span_canonical([[rnd.randint(-2, 2) for _ in range(6)] for _ in range(k)], 6)

        s1, s2 = rand_space(k1), rand_space(k2)
        meet, join = subspace_meet_join(s1, s2)
        assert meet.dim + join.dim == s1.dim + s2.dim
        counts["meet_join"] = counts.get("meet_join", 0) + 1

    for prop in (tlie_in_nlie, idempotence, determinism, meet_join):
        prop()
    return counts


def criterion_10():
    try:
        counts = _property_runs()
    except AssertionError as exc:  # hypothesis re-raises the falsifying example
        return False, f"property failed: {exc}"
    ok = len(counts) == 4 and all(c >= 200 for c in counts.values())
    return ok, ", ".join(f"{k} x{v}" for k, v in counts.items())


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}
EXPECTED_FAILURES = {
    4: "(x1-y1)^2 x2 is a member of the difference algebra, so neither it nor the F2 "
       "sandwich can be refuted at degree 3 (see decisions ledger)",
    8: "identity (ii) holds with the opposite sign: the expansion is -a⊗x³ (see decisions ledger)",
}


def format_line(i: int, ok: bool, detail: str) -> str:
    return f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def record(i: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[i]()
    RESULTS[i] = (ok, detail)
    return ok, detail


# -- pytest wrappers ---------------------------------------------------------------

@pytest.mark.parametrize("i", [i for i in CRITERIA if i not in EXPECTED_FAILURES])
def test_criterion(i):
    ok, detail = record(i)
    assert ok, detail


@pytest.mark.parametrize("i", sorted(EXPECTED_FAILURES))
def test_unattainable_criterion(i, request):
    request.applymarker(pytest.mark.xfail(reason=EXPECTED_FAILURES[i], strict=True))
    ok, detail = record(i)
    assert ok, detail


def test_degree_two_refutation_holds():
    """The attainable part of criterion 4."""
    v = decide_membership_poly(parse_poly("(x1 - y1)*x2", doubled_variables(2)), 2)
    assert v.verdict == "NonMember" and v.degree == 2


def test_lemma_identity_one_holds():
    """The attainable part of criterion 8."""
    r = verify_lemma_identities()
    assert r.residual_i.is_zero() and r.membership_ok


def test_f2_sandwich_in_nlie():
    assert f2_refutation().in_nlie


if __name__ == "__main__":
    failed = 0
    for i in CRITERIA:
        ok, detail = CRITERIA[i]()
        failed += not ok
        print(format_line(i, ok, detail))
    sys.exit(1 if failed else 0)
