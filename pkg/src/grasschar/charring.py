"""Cohomology models of individual Grassmannians.

A :class:`ManifoldModel` packages everything needed to compute with the
characteristic classes of one manifold: the graded generators, an ordered
list of rewrite rules defining a normal form, per-degree bases, the
integration functional on top degree, a Hodge-star table and named cycles
with their integrals against basis classes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from . import exact
from .errors import (
    CatalogError,
    IncompatibleMonomials,
    NotHomogeneous,
    NotTopDegree,
    ParseError,
    RewriteDiverged,
    StarUndefined,
)
from .exact import ExactScalar
from .expr import (
    CharClassExpr,
    Monomial,
    monomial_degree,
    monomial_divides,
    monomial_quotient,
    parse,
)
from .symfun import (
    BundleRoots,
    express_in_generators,
    grassmann_bundles,
    tensor_euler_roots,
    tensor_pontryagin_roots,
)

__all__ = [
    "CharClassExpr",
    "Cycle",
    "ManifoldModel",
    "ScaledClass",
    "euler_characteristic",
    "inner_product",
    "integrate",
    "reduce",
    "star",
    "tangent_euler_class",
    "tangent_pontryagin_class",
]

_MAX_REWRITE_DEPTH = 200
_GRASS_NAME = re.compile(r"^G\((\d+),(\d+)\)$")


@dataclass(frozen=True)
class ScaledClass:
    """A class multiplied by an exact scalar, kept with a unit-coefficient scalar."""

    scalar: ExactScalar
    cls: CharClassExpr

    def __post_init__(self) -> None:
        if self.cls.is_zero() or self.scalar.is_zero():
            object.__setattr__(self, "scalar", exact.ONE)
            object.__setattr__(self, "cls", CharClassExpr())
        elif self.scalar.coeff != 1:
            object.__setattr__(self, "cls", self.cls.scale(self.scalar.coeff))
            object.__setattr__(self, "scalar", self.scalar.monomial())

    def is_zero(self) -> bool:
        return self.cls.is_zero()

    def scale(self, s: ExactScalar | Fraction | int) -> "ScaledClass":
        if not isinstance(s, ExactScalar):
            s = ExactScalar(Fraction(s))
        return ScaledClass(self.scalar * s, self.cls)

    def __add__(self, other: "ScaledClass") -> "ScaledClass":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if not self.scalar.same_monomial(other.scalar):
            raise IncompatibleMonomials(f"cannot add {self} and {other}")
        return ScaledClass(self.scalar, self.cls + other.cls)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = list(self.cls.items())
        if len(terms) == 1:
            mono, coeff = terms[0]
            lead = ExactScalar(coeff, self.scalar.radicand, self.scalar.pi_pow)
            body = CharClassExpr.from_monomial(mono)
            if not mono:
                return str(lead)
            if lead == exact.ONE:
                return str(body)
            if lead == -exact.ONE:
                return f"-{body}"
            return f"{lead} * {body}"
        if self.scalar == exact.ONE:
            return str(self.cls)
        return f"{self.scalar} * ({self.cls})"


@dataclass(frozen=True)
class Cycle:
    name: str
    degree: int
    pairings: Mapping[Monomial, Fraction]
    note: str = ""


@dataclass
class ManifoldModel:
    name: str
    dim: int
    generators: dict[str, int]
    rules: list[tuple[Monomial, CharClassExpr]]
    bases: dict[int, list[Monomial]]
    integrals: dict[Monomial, Fraction]
    star_table: dict[Monomial, ScaledClass]
    cycles: dict[str, Cycle]
    poincare: list[int]
    relations: dict[str, dict[str, Any]] = field(default_factory=dict)
    fibrations: list[dict[str, Any]] = field(default_factory=list)
    embeddings: dict[str, dict[str, Any]] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)
    _nf_cache: dict[Monomial, CharClassExpr] = field(default_factory=dict, repr=False, compare=False)

    # -- identity ----------------------------------------------------------
    @property
    def kn(self) -> tuple[int, int]:
        m = _GRASS_NAME.match(self.name)
        if not m:
            raise CatalogError(f"model name {self.name!r} is not of the form G(k,n)")
        return int(m.group(1)), int(m.group(2))

    def bundles(self) -> tuple[BundleRoots, BundleRoots]:
        return grassmann_bundles(*self.kn)

    def parse(self, text: str) -> CharClassExpr:
        return parse(text, self.generators)

    def degree_of(self, x: CharClassExpr) -> int | None:
        return x.degree(self.generators)

    def basis(self, degree: int) -> list[Monomial]:
        return list(self.bases.get(degree, []))

    def cycles_in_degree(self, degree: int) -> list[Cycle]:
        return [c for c in self.cycles.values() if c.degree == degree]

    # -- normal form -------------------------------------------------------
    def _normal_form(self, mono: Monomial, depth: int) -> CharClassExpr:
        cached = self._nf_cache.get(mono)
        if cached is not None:
            return cached
        if depth > _MAX_REWRITE_DEPTH:
            raise RewriteDiverged(f"rewriting {mono} in {self.name} did not terminate")
        if monomial_degree(mono, self.generators) > self.dim:
            result = CharClassExpr()
        else:
            result = CharClassExpr.from_monomial(mono)
            for lhs, rhs in self.rules:
                if monomial_divides(lhs, mono):
                    rest = CharClassExpr.from_monomial(monomial_quotient(mono, lhs)) * rhs
                    result = self._reduce(rest, depth + 1)
                    break
        self._nf_cache[mono] = result
        return result

    def _reduce(self, x: CharClassExpr, depth: int) -> CharClassExpr:
        acc = CharClassExpr()
        for mono, coeff in x.terms.items():
            acc = acc + self._normal_form(mono, depth).scale(coeff)
        return acc

    def reduce(self, x: CharClassExpr) -> CharClassExpr:
        for name in x.generators():
            if name not in self.generators:
                raise ParseError(f"{name} is not a generator of {self.name}")
        return self._reduce(x, 0)


def reduce(x: CharClassExpr, m: ManifoldModel) -> CharClassExpr:
    """Normal form of ``x`` under the rewrite rules of ``m``."""
    return m.reduce(x)


def integrate(x: CharClassExpr, m: ManifoldModel) -> Fraction:
    r = m.reduce(x)
    total = Fraction(0)
    for mono, coeff in r.terms.items():
        deg = monomial_degree(mono, m.generators)
        if deg != m.dim:
            raise NotTopDegree(
                f"cannot integrate a degree-{deg} class over the {m.dim}-dimensional {m.name}"
            )
        if mono not in m.integrals:
            raise CatalogError(f"{m.name} records no integral for {CharClassExpr.from_monomial(mono)}")
        total += coeff * m.integrals[mono]
    return total


def basis_coordinates(x: CharClassExpr, m: ManifoldModel, degree: int) -> list[Fraction]:
    """Coordinates of the reduced class in the degree-``degree`` basis."""
    r = m.reduce(x)
    basis = m.basis(degree)
    index = {mono: i for i, mono in enumerate(basis)}
    coords = [Fraction(0)] * len(basis)
    for mono, coeff in r.terms.items():
        if mono not in index:
            raise StarUndefined(
                f"{CharClassExpr.from_monomial(mono)} is not a degree-{degree} basis class of {m.name}"
            )
        coords[index[mono]] += coeff
    return coords


def star(x: CharClassExpr, m: ManifoldModel) -> ScaledClass:
    """Hodge star of the harmonic representative of ``x``."""
    r = m.reduce(x)
    if r.is_zero():
        return ScaledClass(exact.ONE, CharClassExpr())
    try:
        q = m.degree_of(r)
    except NotHomogeneous as exc:
        raise StarUndefined(str(exc)) from None
    if q == 0 or q == m.dim:
        raise StarUndefined(f"the star table of {m.name} does not cover degree {q}")
    coords = basis_coordinates(r, m, q)
    result = ScaledClass(exact.ONE, CharClassExpr())
    for mono, c in zip(m.basis(q), coords):
        if not c:
            continue
        if mono not in m.star_table:
            raise StarUndefined(f"no star entry for {CharClassExpr.from_monomial(mono)} on {m.name}")
        result = result + m.star_table[mono].scale(c)
    return ScaledClass(result.scalar, m.reduce(result.cls))


def inner_product(x: CharClassExpr, y: CharClassExpr, m: ManifoldModel) -> ExactScalar:
    """``(x, y) = integral of x ∧ *y``."""
    dx, dy = m.degree_of(m.reduce(x)), m.degree_of(m.reduce(y))
    if dx is not None and dy is not None and dx != dy:
        raise NotHomogeneous(f"inner product of classes of degrees {dx} and {dy}")
    sy = star(y, m)
    if sy.is_zero() or m.reduce(x).is_zero():
        return exact.ZERO
    return sy.scalar * ExactScalar(integrate(x * sy.cls, m))


def tangent_euler_class(m: ManifoldModel) -> CharClassExpr:
    """Reduced Euler class of the tangent bundle ``E ⊗ F``."""
    e, f = m.bundles()
    return m.reduce(express_in_generators(tensor_euler_roots(e, f), e, f))


def tangent_pontryagin_class(m: ManifoldModel, i: int, reduced: bool = True) -> CharClassExpr:
    e, f = m.bundles()
    p = tensor_pontryagin_roots(e, f).root_degree_part(2 * i)
    expr = express_in_generators(p, e, f)
    return m.reduce(expr) if reduced else expr


def euler_characteristic(m: ManifoldModel) -> int:
    if m.dim % 2 == 1:
        return 0
    value = integrate(tangent_euler_class(m), m)
    if value.denominator != 1:
        raise CatalogError(f"non-integral Euler characteristic {value} for {m.name}")
    return int(value)


# -- document loading ------------------------------------------------------


def _monomial_from_text(text: str, generators: Mapping[str, int]) -> Monomial:
    expr = parse(text, generators)
    terms = list(expr.terms.items())
    if len(terms) != 1 or terms[0][1] != 1:
        raise CatalogError(f"{text!r} is not a single monomial")
    return terms[0][0]


def model_from_document(doc: Mapping[str, Any]) -> ManifoldModel:
    """Build a model from its JSON document (no semantic validation here)."""
    try:
        name = doc["name"]
        dim = int(doc["dim"])
        generators = {g["name"]: int(g["degree"]) for g in doc["generators"]}
        mono = lambda t: _monomial_from_text(t, generators)  # noqa: E731
        rules = [(mono(r["lhs"]), parse(r["rhs"], generators)) for r in doc.get("rules", [])]
        bases = {int(q): [mono(t) for t in items] for q, items in doc["bases"].items()}
        integrals = {mono(t): Fraction(v) for t, v in doc.get("integrals", {}).items()}
        star_table = {
            mono(t): ScaledClass(exact.parse(entry["scalar"]), parse(entry["class"], generators))
            for t, entry in doc.get("star", {}).items()
        }
        cycles = {
            cname: Cycle(
                cname,
                int(c["degree"]),
                {mono(t): Fraction(v) for t, v in c["pairings"].items()},
                c.get("note", ""),
            )
            for cname, c in doc.get("cycles", {}).items()
        }
        poincare = [int(b) for b in doc["poincare"]]
    except CatalogError:
        raise
    except (KeyError, TypeError, ValueError, ParseError) as exc:
        raise CatalogError(f"malformed model document {doc.get('name', '?')!r}: {exc}") from exc
    return ManifoldModel(
        name=name,
        dim=dim,
        generators=generators,
        rules=rules,
        bases=bases,
        integrals=integrals,
        star_table=star_table,
        cycles=cycles,
        poincare=poincare,
        relations=dict(doc.get("relations", {})),
        fibrations=list(doc.get("fibrations", [])),
        embeddings=dict(doc.get("embeddings", {})),
        notes=dict(doc.get("notes", {})),
    )
