"""Polynomials in named characteristic-class generators.

A :class:`CharClassExpr` is a commutative polynomial with rational
coefficients in generators such as ``p1(E)``, ``e(F)`` or an auxiliary odd
class like ``h5``.  Degrees are not intrinsic to a name (the degree of
``e(E)`` depends on the rank), so degree queries take a mapping from
generator name to degree.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotHomogeneous, ParseError

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

_PONT = re.compile(r"^p(\d+)\(([EF])\)$")


def generator_key(name: str) -> tuple[int, int, str]:
    """Sort key placing p_i(E) before e(E) before p_j(F) before e(F) before others."""
    m = _PONT.match(name)
    if m:
        return (0 if m.group(2) == "E" else 2, int(m.group(1)), "")
    if name == "e(E)":
        return (1, 0, "")
    if name == "e(F)":
        return (3, 0, "")
    return (4, 0, name)


def make_monomial(powers: Mapping[str, int] | Iterable[tuple[str, int]]) -> Monomial:
    items = powers.items() if isinstance(powers, Mapping) else powers
    acc: dict[str, int] = {}
    for name, exp in items:
        if exp < 0:
            raise ValueError(f"negative exponent for {name}")
        if exp:
            acc[name] = acc.get(name, 0) + exp
    return tuple(sorted(acc.items(), key=lambda kv: generator_key(kv[0])))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return make_monomial(list(a) + list(b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    powers = dict(b)
    return all(powers.get(name, 0) >= exp for name, exp in a)


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    powers = dict(b)
    for name, exp in a:
        powers[name] -= exp
    return make_monomial(powers)


def monomial_degree(mono: Monomial, degrees: Mapping[str, int]) -> int:
    try:
        return sum(degrees[name] * exp for name, exp in mono)
    except KeyError as exc:
        raise ParseError(f"unknown generator {exc.args[0]!r}") from None


def render_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(name if exp == 1 else f"{name}^{exp}" for name, exp in mono)


class CharClassExpr:
    """Rational polynomial in named generators.  Immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                key = make_monomial(mono)
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean

    @classmethod
    def constant(cls, c: Scalar) -> "CharClassExpr":
        return cls({(): c})

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "CharClassExpr":
        return cls({((name, exp),): 1})

    @classmethod
    def from_monomial(cls, mono: Monomial, coeff: Scalar = 1) -> "CharClassExpr":
        return cls({mono: coeff})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _mono_sort_key(kv[0])))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(make_monomial(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def generators(self) -> set[str]:
        return {name for mono in self._terms for name, _ in mono}

    # -- grading -----------------------------------------------------------
    def degrees(self, degrees: Mapping[str, int]) -> set[int]:
        return {monomial_degree(m, degrees) for m in self._terms}

    def degree(self, degrees: Mapping[str, int]) -> int | None:
        """Common degree of all terms; ``None`` for zero."""
        ds = self.degrees(degrees)
        if not ds:
            return None
        if len(ds) > 1:
            raise NotHomogeneous(f"{self} mixes degrees {sorted(ds)}")
        return ds.pop()

    def graded_part(self, degree: int, degrees: Mapping[str, int]) -> "CharClassExpr":
        return CharClassExpr(
            {m: c for m, c in self._terms.items() if monomial_degree(m, degrees) == degree}
        )

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: object) -> "CharClassExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return CharClassExpr(acc)

    __radd__ = __add__

    def __neg__(self) -> "CharClassExpr":
        return CharClassExpr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "CharClassExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "CharClassExpr":
        return (-self) + other

    def __mul__(self, other: object) -> "CharClassExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return CharClassExpr(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CharClassExpr":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ONE_EXPR
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: Scalar) -> "CharClassExpr":
        c = Fraction(c)
        return CharClassExpr({m: c * v for m, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"CharClassExpr({render(self)!r})"


def _mono_sort_key(mono: Monomial) -> tuple:
    return tuple((generator_key(name), -exp) for name, exp in mono)


def _coerce(value: object) -> CharClassExpr:
    if isinstance(value, CharClassExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return CharClassExpr.constant(value)
    return NotImplemented  # type: ignore[return-value]


ONE_EXPR = CharClassExpr.constant(1)
ZERO_EXPR = CharClassExpr()


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(x: CharClassExpr) -> str:
    """Render as ``coef*gen^k*gen`` terms joined by `` + `` / `` - ``."""
    if x.is_zero():
        return "0"
    out = []
    for i, (mono, coeff) in enumerate(x.items()):
        mag = abs(coeff)
        if not mono:
            body = _fmt(mag)
        elif mag == 1:
            body = render_monomial(mono)
        else:
            body = f"{_fmt(mag)}*{render_monomial(mono)}"
        if i == 0:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(out)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<gen>p\d+\([EF]\)|e\([EF]\))|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, known: set[str] | None) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.known = known

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} but found {tok[1]!r} in {self.text!r}")

    def parse(self) -> CharClassExpr:
        if not self.tokens:
            raise ParseError("empty expression")
        result = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return result

    def expr(self) -> CharClassExpr:
        result = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> CharClassExpr:
        result = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                result = result * rhs
            else:
                if rhs.generators():
                    raise ParseError(f"division by a non-constant in {self.text!r}")
                divisor = rhs.coefficient(())
                if divisor == 0:
                    raise ParseError(f"division by zero in {self.text!r}")
                result = result.scale(1 / divisor)
        return result

    def unary(self) -> CharClassExpr:
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> CharClassExpr:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(value)
        return base

    def atom(self) -> CharClassExpr:
        kind, value = self.take()
        if kind == "num":
            return CharClassExpr.constant(int(value))
        if kind in ("gen", "ident"):
            if self.known is not None and value not in self.known:
                raise ParseError(f"unknown generator {value!r}")
            return CharClassExpr.gen(value)
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {value!r} in {self.text!r}")


def parse(text: str, known: Iterable[str] | None = None) -> CharClassExpr:
    """Parse a class expression; ``known`` restricts the accepted generator names."""
    return _Parser(text, set(known) if known is not None else None).parse()
