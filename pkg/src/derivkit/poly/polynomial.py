"""Sparse commutative polynomials with rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import ParseError, PreconditionError
from ..linalg import q


def _var_key(name: str):
    m = re.fullmatch(r"([A-Za-z_]+)(\d*)", name)
    if not m:
        return (name, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def sort_variables(names: Iterable[str]) -> tuple[str, ...]:
    """Natural order: x < x1 < x2 < ... < y < y1 ..."""
    return tuple(sorted(set(names), key=_var_key))


class MultiPoly:
    """Polynomial in named variables; ``terms`` maps exponent tuples to coefficients.

    Instances are treated as immutable.  Terms are iterated in descending
    lexicographic order of exponent vectors.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"repeated variable names in {self.variables}")
        n = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise PreconditionError(f"bad exponent vector {exps} for variables {self.variables}")
            c = q(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in sorted(clean.items(), reverse=True) if c}

    # -- construction ---------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], variables: Sequence[str], c=1) -> "MultiPoly":
        return cls(variables, {tuple(exps): c})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str = "x") -> "MultiPoly":
        return cls((var,), {(k,): c for k, c in enumerate(coeffs)})

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise PreconditionError(
                    f"variable sets differ: {self.variables} vs {other.variables}"
                )
            return other
        return MultiPoly.constant(other, self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = q(other)
            return MultiPoly(self.variables, {e: c * a for e, a in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PreconditionError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self == MultiPoly.constant(other, self.variables)
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, variables={self.variables})"

    def __str__(self):
        return self.to_text()

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_uniform(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def univariate_coeffs(self) -> list[Fraction]:
        if len(self.variables) != 1:
            raise PreconditionError("not a one-variable polynomial")
        d = self.degree()
        coeffs = [Fraction(0)] * (d + 1)
        for (k,), c in self.terms.items():
            coeffs[k] = c
        return coeffs

    # -- transformations -----------------------------------------------

    def embed(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset (or reordering) of the variables."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            unused = [v for v in missing if any(e[self.variables.index(v)] for e in self.terms)]
            if unused:
                raise PreconditionError(f"variables {unused} are not in {variables}")
        idx = {v: i for i, v in enumerate(variables)}
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for v, k in zip(self.variables, e):
                if k:
                    new[idx[v]] = k
            out[tuple(new)] = c
        return MultiPoly(variables, out)

    def substitute(self, values: Mapping[str, "MultiPoly"], variables: Sequence[str]) -> "MultiPoly":
        """Replace each variable by a polynomial over ``variables``."""
        variables = tuple(variables)
        images = []
        for v in self.variables:
            img = values.get(v)
            if img is None:
                img = MultiPoly.var(v, variables)
            elif not isinstance(img, MultiPoly):
                img = MultiPoly.constant(img, variables)
            images.append(img)
        out = MultiPoly.zero(variables)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, variables)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(self.variables, e):
                if k:
                    t *= q(values[v]) ** k
            total += t
        return total

    def uniform_components(self) -> dict[int, "MultiPoly"]:
        return uniform_components(self)

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            factors = []
            for v, k in zip(self.variables, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def uniform_components(p: MultiPoly) -> dict[int, MultiPoly]:
    """Split ``p`` into homogeneous pieces keyed by degree (ascending)."""
    buckets: dict[int, dict] = {}
    for e, c in p.terms.items():
        buckets.setdefault(sum(e), {})[e] = c
    return {d: MultiPoly(p.variables, buckets[d]) for d in sorted(buckets)}


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``d``, descending lex order."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", f"column {pos + 1}")
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("var", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message, tok=None):
        col = tok[2] + 1 if tok else len(self.text) + 1
        raise ParseError(message, f"column {col}")

    def expect(self, value):
        tok = self.take()
        if tok is None or tok[1] != value:
            self.error(f"expected {value!r}", tok)

    def parse(self) -> MultiPoly:
        if not self.tokens:
            self.error("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}", self.peek())
        return p

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term() * sign
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            t = self.term()
            p = p + t if tok[1] == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.take()
            if tok[1] == "/":
                nt = self.take()
                if nt is None or nt[0] != "num" or "/" in nt[1]:
                    self.error("division is only allowed by an integer literal", nt)
                if int(nt[1]) == 0:
                    self.error("division by zero", nt)
                p = p * Fraction(1, int(nt[1]))
            else:
                p = p * self.factor()
        return p

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            nt = self.take()
            if nt is None or nt[0] != "num" or "/" in nt[1]:
                self.error("exponent must be a nonnegative integer", nt)
            base = base ** int(nt[1])
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            self.error("unexpected end of input")
        kind, value, _ = tok
        if kind == "num":
            return MultiPoly.constant(Fraction(value), self.variables)
        if kind == "var":
            if value not in self.variables:
                self.error(f"unknown variable {value!r}", tok)
            return MultiPoly.var(value, self.variables)
        if value == "(":
            p = self.expr()
            self.expect(")")
            return p
        if value == "-":
            return -self.factor()
        self.error(f"unexpected {value!r}", tok)


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Parse ``"3/2*x1^2*y2 - (x-y)^2"``-style text.

    Without ``variables`` the variable names found in the text are used in
    natural order (``x < x1 < x2 < y < y1 ...``).
    """
    if variables is None:
        names = [v for kind, v, _ in _tokenize(text) if kind == "var"]
        variables = sort_variables(names)
    return _Parser(text, tuple(variables)).parse()
