"""Free associative algebras, their tensor squares F ⊗ F^op, and abelianization.

Words are tuples of generator indices; the empty word is the unit.  Elements
of F ⊗ F^op are maps (word, word) -> coefficient with the op-twist built into
the product: (u⊗v)(w⊗z) = uw ⊗ zv.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ParseError, PreconditionError
from .linalg import q
from .poly.membership import MembershipVerdict, decide_membership_poly, doubled_variables
from .poly.polynomial import MultiPoly

Word = tuple


def _clean(terms: Mapping) -> dict:
    return {k: c for k, c in sorted(terms.items()) if c}


def _word_text(alphabet, w: Word) -> str:
    return ".".join(alphabet[i] for i in w) if w else "1"


def _parse_word(alphabet, text: str, where: str) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    out = []
    for part in text.split("."):
        part = part.strip()
        if part not in alphabet:
            raise ParseError(f"unknown generator {part!r}", where)
        out.append(alphabet.index(part))
    return tuple(out)


def _format_terms(items) -> str:
    if not items:
        return "0"
    text = ""
    for k, (c, body) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        piece = body if mag == 1 else f"{mag}*{body}"
        if k == 0:
            text = ("-" if sign == "-" else "") + piece
        else:
            text += f" {sign} {piece}"
    return text


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*)?\s*([^+-]+)")


def _split_terms(text: str):
    text = text.strip()
    if text == "0":
        return []
    pos, out = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("cannot parse term", f"column {pos + 1}")
        sign, coef, body = m.groups()
        if pos and not sign:
            raise ParseError("missing '+' or '-' between terms", f"column {pos + 1}")
        c = Fraction(coef) if coef else Fraction(1)
        out.append((-c if sign == "-" else c, body.strip(), pos + 1))
        pos = m.end()
    return out


@dataclass(frozen=True, eq=False)
class FreePoly:
    alphabet: tuple
    terms: Mapping  # word -> Fraction

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "terms", _clean({tuple(w): q(c) for w, c in self.terms.items()}))

    def __eq__(self, other):
        return (isinstance(other, FreePoly) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def to_text(self) -> str:
        return _format_terms([(c, _word_text(self.alphabet, w)) for w, c in self.terms.items()])

    __str__ = to_text

    @classmethod
    def parse(cls, text: str, alphabet) -> "FreePoly":
        alphabet = tuple(alphabet)
        terms: dict = {}
        for c, body, col in _split_terms(text):
            w = _parse_word(alphabet, body, f"column {col}")
            terms[w] = terms.get(w, 0) + c
        return cls(alphabet, terms)


@dataclass(frozen=True, eq=False)
class FreeTensor:
    """Element of F ⊗ F^op for the free algebra on ``alphabet``."""

    alphabet: tuple
    terms: Mapping  # (word, word) -> Fraction

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "terms", _clean(
            {(tuple(u), tuple(v)): q(c) for (u, v), c in self.terms.items()}
        ))

    @classmethod
    def pure(cls, alphabet, left: str | Word = (), right: str | Word = (), c=1) -> "FreeTensor":
        alphabet = tuple(alphabet)
        if isinstance(left, str):
            left = _parse_word(alphabet, left, "left factor")
        if isinstance(right, str):
            right = _parse_word(alphabet, right, "right factor")
        return cls(alphabet, {(tuple(left), tuple(right)): c})

    @classmethod
    def one(cls, alphabet) -> "FreeTensor":
        return cls.pure(alphabet)

    @classmethod
    def difference(cls, alphabet, word: str | Word) -> "FreeTensor":
        """u⊗1 - 1⊗u."""
        return cls.pure(alphabet, word, ()) - cls.pure(alphabet, (), word)

    def _check(self, other: "FreeTensor") -> None:
        if self.alphabet != other.alphabet:
            raise PreconditionError(f"alphabets differ: {self.alphabet} vs {other.alphabet}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return FreeTensor(self.alphabet, out)

    def __neg__(self):
        return FreeTensor(self.alphabet, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreeTensor):
            return free_tensor_multiply(self, other)
        c = q(other)
        return FreeTensor(self.alphabet, {k: c * a for k, a in self.terms.items()})

    def __rmul__(self, c):
        return self * c

    def __pow__(self, n: int):
        out = FreeTensor.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, FreeTensor) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.terms.items())))

    def __repr__(self):
        return f"FreeTensor({self.to_text()!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def m(self) -> FreePoly:
        """Σ u⊗v -> Σ uv."""
        out: dict = {}
        for (u, v), c in self.terms.items():
            out[u + v] = out.get(u + v, 0) + c
        return FreePoly(self.alphabet, out)

    def m_op(self) -> FreePoly:
        """Σ u⊗v -> Σ vu."""
        out: dict = {}
        for (u, v), c in self.terms.items():
            out[v + u] = out.get(v + u, 0) + c
        return FreePoly(self.alphabet, out)

    def filter_words(self, keep: Callable[[Word], bool]) -> "FreeTensor":
        """Drop every term with a tensor factor rejected by ``keep``."""
        return FreeTensor(self.alphabet, {
            (u, v): c for (u, v), c in self.terms.items() if keep(u) and keep(v)
        })

    def to_text(self) -> str:
        return _format_terms([
            (c, f"{_word_text(self.alphabet, u)}|{_word_text(self.alphabet, v)}")
            for (u, v), c in self.terms.items()
        ])

    __str__ = to_text

    @classmethod
    def parse(cls, text: str, alphabet) -> "FreeTensor":
        """Parse ``"a.b|1 - 2*1|b.a"``-style text."""
        alphabet = tuple(alphabet)
        terms: dict = {}
        for c, body, col in _split_terms(text):
            if body.count("|") != 1:
                raise ParseError("tensor term needs exactly one '|'", f"column {col}")
            left, right = body.split("|")
            key = (_parse_word(alphabet, left, f"column {col}"),
                   _parse_word(alphabet, right, f"column {col}"))
            terms[key] = terms.get(key, 0) + c
        return cls(alphabet, terms)


def free_tensor_multiply(s: FreeTensor, t: FreeTensor) -> FreeTensor:
    s._check(t)
    out: dict = {}
    for (u, v), c1 in s.terms.items():
        for (w, z), c2 in t.terms.items():
            key = (u + w, z + v)
            out[key] = out.get(key, 0) + c1 * c2
    return FreeTensor(s.alphabet, out)


def abelianize(t: FreeTensor, var_map: Mapping[str, int], k: int | None = None) -> MultiPoly:
    """Image under π⊗π, where π sends generator ``g`` to base variable ``var_map[g]``.

    Base variables are numbered from 0; the result lives in the doubled
    variables ``x1..xk, y1..yk`` (``x, y`` when k = 1).
    """
    missing = [g for g in t.alphabet if g not in var_map]
    if missing:
        raise PreconditionError(f"var_map does not cover generators {missing}")
    if k is None:
        k = max(var_map.values()) + 1
    if any(not 0 <= i < k for i in var_map.values()):
        raise PreconditionError("var_map refers to a base variable outside 0..k-1")
    variables = doubled_variables(k)
    idx = [var_map[g] for g in t.alphabet]
    out: dict = {}
    for (u, v), c in t.terms.items():
        exps = [0] * (2 * k)
        for letter in u:
            exps[idx[letter]] += 1
        for letter in v:
            exps[k + idx[letter]] += 1
        out[tuple(exps)] = out.get(tuple(exps), 0) + c
    return MultiPoly(variables, out)


def contains_adjacent(word: Word, pairs) -> bool:
    return any((word[i], word[i + 1]) in pairs for i in range(len(word) - 1))


@dataclass(frozen=True)
class LemmaReport:
    """Residuals of the two identities.

    ``residual_ii`` compares against ``a⊗x³`` as written; the expansion
    actually equals ``-a⊗x³``, recorded in ``residual_ii_negated``.  Either
    sign puts ``a⊗x³`` in T_Lie.
    """

    residual_i: FreeTensor
    residual_ii: FreeTensor
    residual_ii_unreduced: FreeTensor
    residual_ii_negated: FreeTensor

    @property
    def ok(self) -> bool:
        return self.residual_i.is_zero() and self.residual_ii.is_zero()

    @property
    def membership_ok(self) -> bool:
        """a⊗x³ is ± the product of T_Lie elements."""
        return self.residual_i.is_zero() and (
            self.residual_ii.is_zero() or self.residual_ii_negated.is_zero()
        )


def verify_lemma_identities() -> LemmaReport:
    """Expand the two tensor identities behind 1⊗x² - x⊗x and a⊗x³ lying in T_Lie.

    (i)  2(1⊗x² - x⊗x) = (x⊗1 - 1⊗x)² - (x²⊗1 - 1⊗x²);
    (ii) a⊗x³ = (1⊗x² - x⊗x)(a⊗1 - 1⊗a)(x⊗1 - 1⊗x) when ax = xa = 0.
    """
    alpha = ("x",)
    lhs = (FreeTensor.pure(alpha, "1", "x.x") - FreeTensor.pure(alpha, "x", "x")) * 2
    rhs = FreeTensor.difference(alpha, "x") ** 2 - FreeTensor.difference(alpha, "x.x")
    residual_i = lhs - rhs

    alpha = ("a", "x")
    a, x = 0, 1
    w = FreeTensor.pure(alpha, "1", "x.x") - FreeTensor.pure(alpha, "x", "x")
    expansion = w * FreeTensor.difference(alpha, "a") * FreeTensor.difference(alpha, "x")
    target = FreeTensor.pure(alpha, "a", "x.x.x")
    killed = {(a, x), (x, a)}
    reduced = expansion.filter_words(lambda word: not contains_adjacent(word, killed))
    return LemmaReport(residual_i, reduced - target, expansion - target, reduced + target)


@dataclass(frozen=True)
class F2Refutation:
    element: FreeTensor
    image: MultiPoly
    verdict: MembershipVerdict
    m_value: FreePoly
    m_op_value: FreePoly

    @property
    def refutes(self) -> bool:
        """True when the image lies outside T_Lie(P_2), which rules out z ∈ T_Lie(F_2)."""
        return not self.verdict.member

    @property
    def in_nlie(self) -> bool:
        return self.m_value.is_zero() and self.m_op_value.is_zero()


def f2_sandwich(middle: FreeTensor | None = None) -> FreeTensor:
    """z = (a⊗1 - 1⊗a)(b⊗1)(a⊗1 - 1⊗a) in F₂ ⊗ F₂^op."""
    alpha = ("a", "b")
    d = FreeTensor.difference(alpha, "a")
    if middle is None:
        middle = FreeTensor.pure(alpha, "b", "1")
    return d * middle * d


def f2_refutation(middle: FreeTensor | None = None) -> F2Refutation:
    """Push z through a -> x1, b -> x2 and test the image for membership."""
    z = f2_sandwich(middle)
    image = abelianize(z, {"a": 0, "b": 1}, k=2)
    verdict = decide_membership_poly(image, 2)
    return F2Refutation(z, image, verdict, z.m(), z.m_op())
