"""Poincaré duality via Gram matrices and cycle pairings, plus lattice tools.

Rational linear algebra (inverse, determinant, rank, solving) is delegated
to sympy's exact ``Matrix``.  The Smith normal form is computed here with
explicit unimodular transforms so that ``U * A * V = S`` can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from . import exact
from .charring import ManifoldModel, ScaledClass, basis_coordinates, integrate, star
from .errors import (
    IncompatibleMonomials,
    NotHomogeneous,
    SingularGram,
    SingularPairing,
    UnderdeterminedPairing,
)
from .exact import ExactScalar
from .expr import CharClassExpr

RationalMatrix = list[list[Fraction]]
IntMatrix = list[list[int]]


# -- cycle classes ---------------------------------------------------------


class CycleClass:
    """Formal rational combination of named cycles."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, Fraction | int] | None = None) -> None:
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if Fraction(v)}

    @classmethod
    def single(cls, name: str, coeff: Fraction | int = 1) -> "CycleClass":
        return cls({name: coeff})

    @property
    def terms(self) -> dict[str, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "CycleClass") -> "CycleClass":
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return CycleClass(acc)

    def __neg__(self) -> "CycleClass":
        return CycleClass({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "CycleClass") -> "CycleClass":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "CycleClass":
        return CycleClass({k: Fraction(c) * v for k, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycleClass):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self, order: Sequence[str] | None = None, explicit_unit: bool = False) -> str:
        """``2*[A] - [B]``; with ``explicit_unit`` unit coefficients print as ``1*``."""
        if not self._terms:
            return "0"
        names = list(self._terms)
        if order is not None:
            rank = {n: i for i, n in enumerate(order)}
            names.sort(key=lambda n: (rank.get(n, len(rank)), n))
        out = []
        for i, name in enumerate(names):
            c = self._terms[name]
            mag = abs(c)
            if mag == 1 and not explicit_unit:
                body = f"[{name}]"
            else:
                text = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
                body = f"{text}*[{name}]"
            if i == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"CycleClass({self.render()!r})"


def parse_cycle_class(text: str) -> CycleClass:
    """Inverse of :meth:`CycleClass.render`."""
    import re

    s = text.strip()
    if s == "0":
        return CycleClass()
    pattern = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?\[([^\]]+)\]\s*")
    pos, acc = 0, CycleClass()
    while pos < len(s):
        m = pattern.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse cycle class {text!r}")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        acc = acc + CycleClass.single(m.group(3), c)
        pos = m.end()
    return acc


# -- sympy bridging --------------------------------------------------------


def _to_sympy(rows: Sequence[Sequence[Fraction | int]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in r] for r in rows])


def _from_sympy(m: sympy.Matrix) -> RationalMatrix:
    return [[Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(m.cols)] for i in range(m.rows)]


def _require_square(rows: Sequence[Sequence]) -> int:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return n


# -- Gram matrices and dual bases --------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[ExactScalar, ...], ...]
    basis: tuple[CharClassExpr, ...]

    def factored(self) -> tuple[ExactScalar, RationalMatrix]:
        """Split into a unit monomial times a rational matrix."""
        mono = None
        for row in self.entries:
            for v in row:
                if v.is_zero():
                    continue
                if mono is None:
                    mono = v.monomial()
                elif not v.same_monomial(mono):
                    raise IncompatibleMonomials("Gram entries do not share a common monomial")
        if mono is None:
            return exact.ONE, [[Fraction(0)] * len(row) for row in self.entries]
        return mono, [[(v / mono).to_rational() for v in row] for row in self.entries]


def gram_matrix(basis: Sequence[CharClassExpr], m: ManifoldModel) -> GramMatrix:
    from .charring import inner_product

    entries = tuple(tuple(inner_product(x, y, m) for y in basis) for x in basis)
    return GramMatrix(entries, tuple(basis))


def dual_basis(g: GramMatrix, star_images: Sequence[ScaledClass]) -> list[ScaledClass]:
    """``psi_j = sum_l star_images[l] * (A^{-1})_{lj}``."""
    n = len(g.entries)
    if len(star_images) != n:
        raise ValueError("need one star image per basis class")
    mono, rational = g.factored()
    a = _to_sympy(rational)
    if n == 0:
        return []
    if a.det() == 0:
        raise SingularGram("Gram matrix is singular")
    inv = _from_sympy(a.inv())
    out = []
    for j in range(n):
        psi = ScaledClass(exact.ONE, CharClassExpr())
        for l in range(n):
            if inv[l][j]:
                psi = psi + star_images[l].scale(ExactScalar(inv[l][j]) / mono)
        out.append(psi)
    return out


def rational_class(s: ScaledClass) -> CharClassExpr:
    """Return the class of ``s`` if its scalar is rational."""
    if s.is_zero():
        return CharClassExpr()
    if not s.scalar.is_rational():
        raise IncompatibleMonomials(f"{s} is not a rational multiple of a class")
    return s.cls.scale(s.scalar.coeff)


def harmonic_dual_basis(basis: Sequence[CharClassExpr], m: ManifoldModel) -> list[CharClassExpr]:
    """Dual basis of ``basis`` from the star table and its Gram matrix."""
    g = gram_matrix(basis, m)
    return [rational_class(psi) for psi in dual_basis(g, [star(x, m) for x in basis])]


# -- Poincaré duals ----------------------------------------------------------


def _independent_cycles(m: ManifoldModel, degree: int) -> list:
    basis = m.basis(degree)
    chosen, rows = [], []
    for cyc in m.cycles_in_degree(degree):
        row = [cyc.pairings.get(mono, Fraction(0)) for mono in basis]
        trial = _to_sympy(rows + [row])
        if trial.rank() > len(rows):
            chosen.append(cyc)
            rows.append(row)
        if len(rows) == len(basis):
            break
    return chosen


def poincare_dual(x: CharClassExpr, m: ManifoldModel) -> CycleClass:
    """Cycle combination ``T`` with ``int_T eta = int_M x*eta`` for all ``eta``."""
    r = m.reduce(x)
    if r.is_zero():
        return CycleClass()
    q = m.degree_of(r)
    if q is None:
        return CycleClass()
    p = m.dim - q
    basis = m.basis(p)
    if not basis:
        return CycleClass()
    cycles = _independent_cycles(m, p)
    if len(cycles) < len(basis):
        raise UnderdeterminedPairing(
            f"{m.name} has only {len(cycles)} independent degree-{p} cycles, need {len(basis)}"
        )
    rhs = [integrate(r * CharClassExpr.from_monomial(eta), m) for eta in basis]
    # sum_j c_j * int_{S_j} eta_i = rhs_i
    mat = _to_sympy([[cyc.pairings.get(eta, Fraction(0)) for cyc in cycles] for eta in basis])
    sol = mat.LUsolve(_to_sympy([[v] for v in rhs]))
    return CycleClass({cyc.name: Fraction(int(sol[i].p), int(sol[i].q)) for i, cyc in enumerate(cycles)})


def cycle_pairing_vector(c: CycleClass, m: ManifoldModel, degree: int) -> list[Fraction]:
    """Integrals of ``c`` against each degree-``degree`` basis class."""
    out = [Fraction(0)] * len(m.basis(degree))
    for name, coeff in c.terms.items():
        cyc = m.cycles[name]
        if cyc.degree != degree:
            raise NotHomogeneous(f"cycle {name} has dimension {cyc.degree}, not {degree}")
        for i, mono in enumerate(m.basis(degree)):
            out[i] += coeff * cyc.pairings.get(mono, Fraction(0))
    return out


def integrate_over(c: CycleClass, x: CharClassExpr, m: ManifoldModel) -> Fraction:
    r = m.reduce(x)
    q = m.degree_of(r)
    if q is None:
        return Fraction(0)
    coords = basis_coordinates(r, m, q)
    vec = cycle_pairing_vector(c, m, q)
    return sum((a * b for a, b in zip(coords, vec)), Fraction(0))


# -- integer lattices ----------------------------------------------------------


def integral_dual_basis(p: Sequence[Sequence[int | Fraction]]) -> tuple[RationalMatrix, bool]:
    """Return ``C`` with ``C * p = I`` and whether every denominator divides 2.

    Rows of ``p`` are candidate classes and columns are cycles; row ``i`` of
    ``C`` expresses the class dual to cycle ``i`` in the candidate classes.
    """
    _require_square(p)
    a = _to_sympy(p)
    if a.det() == 0:
        raise SingularPairing("pairing matrix is singular")
    c = _from_sympy(a.inv())
    halves = all(2 % v.denominator == 0 for row in c for v in row)
    return c, halves


def lattice_index(p: Sequence[Sequence[int | Fraction]]) -> int:
    _require_square(p)
    det = _to_sympy(p).det()
    if det == 0:
        raise SingularPairing("pairing matrix is singular")
    value = Fraction(int(sympy.fraction(det)[0]), int(sympy.fraction(det)[1]))
    if value.denominator != 1:
        raise ValueError("lattice index needs an integer matrix")
    return abs(value.numerator)


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, S, V)`` with ``U*a*V = S`` diagonal and ``S[i][i] | S[i+1][i+1]``."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    s = [list(map(int, r)) for r in a]
    u, v = _identity(rows), _identity(cols)

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, k: int) -> None:  # row dst += k * row src
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, k: int) -> None:
        for r in s:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(s[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if s[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            pivot = s[t][t]
            clean = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // pivot))
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // pivot))
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % pivot),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return u, s, v


def matmul(a: Sequence[Sequence[int | Fraction]], b: Sequence[Sequence[int | Fraction]]) -> list[list]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def dual_combinations(
    c: RationalMatrix, labels: Sequence[str]
) -> list[CharClassExpr]:
    """Interpret rows of ``C`` as combinations of the labelled classes."""
    from .expr import parse

    classes = [parse(label) for label in labels]
    out = []
    for row in c:
        acc = CharClassExpr()
        for coeff, cls in zip(row, classes):
            acc = acc + cls.scale(coeff)
        out.append(acc)
    return out


def determinant(a: Iterable[Iterable[int | Fraction]]) -> Fraction:
    det = _to_sympy([list(r) for r in a]).det()
    num, den = sympy.fraction(det)
    return Fraction(int(num), int(den))
