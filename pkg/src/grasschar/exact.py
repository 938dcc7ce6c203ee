"""Exact scalars of the form ``q * sqrt(r) * pi^k``.

Every volume, inner product and Hodge-star coefficient handled by the package
is a single such monomial, so the type is closed under multiplication and
inversion, and addition is only defined between like monomials.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, IncompatibleMonomials, ParseError

RationalLike = Union[int, Fraction, str]


def _square_part(n: int) -> tuple[int, int]:
    """Split ``n >= 1`` as ``s**2 * f`` with ``f`` squarefree; return ``(s, f)``."""
    if n < 1:
        raise ValueError(f"radicand must be >= 1, got {n}")
    s, f, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            f *= d
        d += 1
    return s, f * n


@dataclass(frozen=True)
class ExactScalar:
    coeff: Fraction
    radicand: int = 1
    pi_pow: int = 0

    def __post_init__(self) -> None:
        coeff = Fraction(self.coeff)
        radicand = int(self.radicand)
        pi_pow = int(self.pi_pow)
        if coeff == 0:
            radicand, pi_pow = 1, 0
        else:
            s, radicand = _square_part(radicand)
            coeff *= s
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)
        object.__setattr__(self, "pi_pow", pi_pow)

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, q: RationalLike) -> "ExactScalar":
        return cls(Fraction(q))

    @classmethod
    def sqrt(cls, q: RationalLike) -> "ExactScalar":
        """Square root of a non-negative rational, folded to an integer radicand."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return ZERO
        # sqrt(p/d) = sqrt(p*d) / d
        return cls(Fraction(1, q.denominator), q.numerator * q.denominator)

    @classmethod
    def pi(cls, k: int = 1) -> "ExactScalar":
        return cls(Fraction(1), 1, k)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.coeff == 0

    def is_rational(self) -> bool:
        return self.radicand == 1 and self.pi_pow == 0

    def same_monomial(self, other: "ExactScalar") -> bool:
        return self.radicand == other.radicand and self.pi_pow == other.pi_pow

    def monomial(self) -> "ExactScalar":
        """The unit-coefficient monomial ``sqrt(r) * pi^k`` underlying ``self``."""
        return ExactScalar(Fraction(1), self.radicand, self.pi_pow)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeff

    # -- arithmetic --------------------------------------------------------
    def __mul__(self, other: object) -> "ExactScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(
            self.coeff * other.coeff,
            self.radicand * other.radicand,
            self.pi_pow + other.pi_pow,
        )

    __rmul__ = __mul__

    def __add__(self, other: object) -> "ExactScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if not self.same_monomial(other):
            raise IncompatibleMonomials(f"cannot add {self} and {other}")
        return ExactScalar(self.coeff + other.coeff, self.radicand, self.pi_pow)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.coeff, self.radicand, self.pi_pow)

    def __sub__(self, other: object) -> "ExactScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "ExactScalar":
        return (-self) + other

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # 1/(q sqrt(r)) = sqrt(r) / (q r)
        return ExactScalar(1 / (self.coeff * self.radicand), self.radicand, -self.pi_pow)

    def __truediv__(self, other: object) -> "ExactScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "ExactScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(self.radicand) * math.pi**self.pi_pow

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"ExactScalar({render(self)!r})"


def _coerce(value: object) -> "ExactScalar":
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar(Fraction(value))
    return NotImplemented  # type: ignore[return-value]


def normalize(coeff: RationalLike, radicand: int = 1, pi_pow: int = 0) -> ExactScalar:
    """Canonical ``ExactScalar`` with all square factors pulled out of the radicand."""
    if radicand < 1:
        raise ValueError(f"radicand must be >= 1, got {radicand}")
    return ExactScalar(Fraction(coeff), radicand, pi_pow)


def mul(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return a * b


def add(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return a + b


def inverse(a: ExactScalar) -> ExactScalar:
    return a.inverse()


ZERO = ExactScalar(Fraction(0))
ONE = ExactScalar(Fraction(1))
PI = ExactScalar(Fraction(1), 1, 1)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(x: ExactScalar) -> str:
    """Text form ``q * sqrt(r) * pi^k``; unit factors are elided."""
    if x.is_zero():
        return "0"
    factors = []
    if x.radicand != 1:
        factors.append(f"sqrt({x.radicand})")
    if x.pi_pow == 1:
        factors.append("pi")
    elif x.pi_pow != 0:
        factors.append(f"pi^{x.pi_pow}")
    if not factors:
        return _fmt_fraction(x.coeff)
    if x.coeff == 1:
        return " * ".join(factors)
    if x.coeff == -1:
        return "-" + " * ".join(factors)
    return " * ".join([_fmt_fraction(x.coeff)] + factors)


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_SQRT = re.compile(r"^sqrt\(\s*(\d+(?:\s*/\s*\d+)?)\s*\)$")
_PI = re.compile(r"^pi(?:\^\(?\s*([+-]?\d+)\s*\)?)?$")


def parse(text: str) -> ExactScalar:
    """Parse the grammar produced by :func:`render`.

    Factors are separated by ``*``; each is a rational literal ``a/b``,
    ``sqrt(q)`` with ``q`` a non-negative rational, ``pi`` or ``pi^k``.  A
    leading ``-`` negates the whole product.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty scalar")
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:].strip()
    elif s.startswith("+"):
        s = s[1:].strip()
    result = ONE
    for raw in s.split("*"):
        tok = raw.strip().replace(" ", "")
        if not tok:
            raise ParseError(f"empty factor in {text!r}")
        if _RATIONAL.match(tok):
            result = result * ExactScalar(Fraction(tok))
            continue
        m = _SQRT.match(tok)
        if m:
            result = result * ExactScalar.sqrt(Fraction(m.group(1).replace(" ", "")))
            continue
        m = _PI.match(tok)
        if m:
            result = result * ExactScalar.pi(int(m.group(1)) if m.group(1) else 1)
            continue
        raise ParseError(f"unrecognised factor {raw.strip()!r} in {text!r}")
    return result if sign > 0 else -result
