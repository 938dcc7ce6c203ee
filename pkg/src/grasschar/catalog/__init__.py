"""The manifold catalog: loading, validation and catalog-level computations.

A catalog is a directory of JSON documents, one per manifold model plus any
number of ``"kind": "facts"`` documents holding recorded data that is not
computed (integral cohomology rows, torsion statements).  The default
catalog ships inside the package.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import sympy

from ..charring import (
    ManifoldModel,
    basis_coordinates,
    integrate,
    model_from_document,
    star,
)
from ..duality import CycleClass, cycle_pairing_vector
from ..errors import (
    CatalogError,
    GrasscharError,
    Infeasible,
    InvalidDescriptor,
    NoDataForDegree,
    UnknownManifold,
    UnknownRelation,
    UnsupportedTarget,
)
from ..expr import CharClassExpr, Monomial, make_monomial, monomial_degree, parse

__all__ = [
    "Catalog",
    "PairingTable",
    "PoincarePolynomial",
    "SphereBundleDescriptor",
    "cycle_pairing_table",
    "default_catalog",
    "gauss_map_class",
    "gysin_betti_solver",
    "homology_relation",
    "load_catalog",
    "poincare_polynomial",
    "tau_gauss_degree",
    "validate_model",
]


# -- value types -------------------------------------------------------------


@dataclass(frozen=True)
class PoincarePolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if any(c < 0 for c in self.coefficients):
            raise InvalidDescriptor("Betti numbers must be non-negative")

    @property
    def dim(self) -> int:
        return len(self.coefficients) - 1

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def check_manifold(self) -> None:
        """Raise unless this is the Poincaré polynomial of a closed orientable manifold."""
        if not self.coefficients or self.coefficients[0] != 1:
            raise CatalogError(f"Poincaré polynomial {self} must start with 1")
        if not self.is_palindromic():
            raise CatalogError(f"Poincaré polynomial {self} is not palindromic")

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * b for q, b in enumerate(self.coefficients))

    def total(self) -> int:
        return sum(self.coefficients)

    def __str__(self) -> str:
        parts = []
        for q, b in enumerate(self.coefficients):
            if not b:
                continue
            if q == 0:
                parts.append(str(b))
            else:
                power = "t" if q == 1 else f"t^{q}"
                parts.append(power if b == 1 else f"{b}{power}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SphereBundleDescriptor:
    fiber_dim: int
    total_betti: PoincarePolynomial
    base_dim: int
    euler_class_vanishes_rationally: bool = True

    def __post_init__(self) -> None:
        if self.fiber_dim < 1:
            raise InvalidDescriptor("fibre dimension must be positive")
        if self.base_dim != self.total_betti.dim - self.fiber_dim:
            raise InvalidDescriptor(
                f"base dimension {self.base_dim} != total dimension "
                f"{self.total_betti.dim} - fibre dimension {self.fiber_dim}"
            )


@dataclass(frozen=True)
class PairingTable:
    """Integrals of row classes over column cycles."""

    manifold: str
    degree: int
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.matrix]

    def render(self) -> str:
        width = max([len(r) for r in self.rows] + [1])
        cells = [[_fmt(v) for v in row] for row in self.matrix]
        colw = [
            max([len(c)] + [len(cells[i][j]) for i in range(len(cells))])
            for j, c in enumerate(self.cols)
        ]
        lines = [" " * width + "  " + "  ".join(c.rjust(w) for c, w in zip(self.cols, colw))]
        for label, row in zip(self.rows, cells):
            lines.append(label.ljust(width) + "  " + "  ".join(v.rjust(w) for v, w in zip(row, colw)))
        return "\n".join(lines)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- catalog -------------------------------------------------------------------


@dataclass
class Catalog:
    models: dict[str, ManifoldModel]
    facts: dict[str, Any] = field(default_factory=dict)
    source: str = "<package>"

    def model(self, name: str) -> ManifoldModel:
        key = _canonical_name(name)
        if key not in self.models:
            raise UnknownManifold(f"unknown manifold {name!r}")
        return self.models[key]

    def names(self) -> list[str]:
        return sorted(self.models, key=_name_sort_key)

    def relations(self) -> dict[str, tuple[str, dict[str, Any]]]:
        out = {}
        for m in self.models.values():
            for rid, rel in m.relations.items():
                out[rid] = (m.name, rel)
        return out


def _canonical_name(name: str) -> str:
    return re.sub(r"\s+", "", name)


def _name_sort_key(name: str) -> tuple:
    nums = [int(x) for x in re.findall(r"\d+", name)]
    return (nums, name)


def _package_data_dir():
    return resources.files("grasschar").joinpath("catalog/data")


def _read_documents(path: Path | None) -> tuple[list[dict[str, Any]], str]:
    docs = []
    if path is None:
        root = _package_data_dir()
        entries = sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)
        source = "<package>"
    else:
        root = Path(path)
        if not root.is_dir():
            raise CatalogError(f"catalog path {path} is not a directory")
        entries = sorted(root.glob("*.json"))
        source = str(root)
    for entry in entries:
        try:
            docs.append(json.loads(entry.read_text("utf-8")))
        except (OSError, json.JSONDecodeError) as exc:
            raise CatalogError(f"cannot read catalog document {entry.name}: {exc}") from exc
    if not docs:
        raise CatalogError(f"no catalog documents found in {source}")
    return docs, source


def load_catalog(path: Path | str | None = None, validate: bool = True) -> Catalog:
    docs, source = _read_documents(Path(path) if path is not None else None)
    models: dict[str, ManifoldModel] = {}
    facts: dict[str, Any] = {}
    for doc in docs:
        kind = doc.get("kind", "manifold")
        if kind == "facts":
            for key, value in doc.items():
                if key not in ("name", "kind"):
                    facts.setdefault(key, value if not isinstance(value, list) else [])
                    if isinstance(value, list):
                        facts[key].extend(value)
            continue
        if kind != "manifold":
            raise CatalogError(f"unknown document kind {kind!r}")
        model = model_from_document(doc)
        model.notes["tables"] = json.dumps(doc.get("tables", {}))
        if model.name in models:
            raise CatalogError(f"duplicate model {model.name}")
        models[model.name] = model
    catalog = Catalog(models, facts, source)
    if validate:
        for model in models.values():
            validate_model(model, catalog)
    return catalog


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog(None)


def _resolve(catalog: Catalog | None) -> Catalog:
    return catalog if catalog is not None else default_catalog()


# -- validation ------------------------------------------------------------------


def _monomials_up_to(generators: Mapping[str, int], max_degree: int) -> Iterable[Monomial]:
    names = sorted(generators, key=lambda g: generators[g])

    def rec(i: int, budget: int, acc: list[tuple[str, int]]):
        if i == len(names):
            yield make_monomial(acc)
            return
        deg = generators[names[i]]
        k = 0
        while k * deg <= budget:
            yield from rec(i + 1, budget - k * deg, acc + ([(names[i], k)] if k else []))
            k += 1

    yield from rec(0, max_degree, [])


def _leading_minors_positive(rows: list[list[Fraction]]) -> bool:
    mat = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])
    return all(mat[:k, :k].det() > 0 for k in range(1, mat.rows + 1))


def validate_model(m: ManifoldModel, catalog: Catalog | None = None) -> None:
    """Check every structural invariant of a model; raise CatalogError on failure."""
    try:
        _validate(m, catalog)
    except CatalogError:
        raise
    except GrasscharError as exc:
        raise CatalogError(f"{m.name}: {exc}") from exc


def _validate(m: ManifoldModel, catalog: Catalog | None) -> None:
    name = m.name
    poly = PoincarePolynomial(tuple(m.poincare))
    if poly.dim != m.dim:
        raise CatalogError(f"{name}: Poincaré polynomial has degree {poly.dim}, expected {m.dim}")
    poly.check_manifold()
    if any(d <= 0 for d in m.generators.values()):
        raise CatalogError(f"{name}: generator degrees must be positive")

    for lhs, rhs in m.rules:
        dl = monomial_degree(lhs, m.generators)
        for mono in rhs.terms:
            if monomial_degree(mono, m.generators) != dl:
                raise CatalogError(f"{name}: rule for {CharClassExpr.from_monomial(lhs)} is not degree-preserving")

    for q, betti in enumerate(m.poincare):
        basis = m.basis(q)
        if len(basis) != betti:
            raise CatalogError(f"{name}: degree {q} has {len(basis)} basis classes but Betti number {betti}")
        for mono in basis:
            if monomial_degree(mono, m.generators) != q:
                raise CatalogError(f"{name}: basis class {CharClassExpr.from_monomial(mono)} is not of degree {q}")
            if m.reduce(CharClassExpr.from_monomial(mono)) != CharClassExpr.from_monomial(mono):
                raise CatalogError(f"{name}: basis class {CharClassExpr.from_monomial(mono)} is not in normal form")
    extra = [q for q in m.bases if not 0 <= q <= m.dim]
    if extra:
        raise CatalogError(f"{name}: basis listed for out-of-range degrees {extra}")

    for mono in _monomials_up_to(m.generators, m.dim):
        reduced = m.reduce(CharClassExpr.from_monomial(mono))
        for rmono in reduced.terms:
            q = monomial_degree(rmono, m.generators)
            if rmono not in m.bases.get(q, []):
                raise CatalogError(
                    f"{name}: {CharClassExpr.from_monomial(mono)} reduces to "
                    f"{CharClassExpr.from_monomial(rmono)}, outside the degree-{q} basis"
                )

    top = set(m.basis(m.dim))
    if set(m.integrals) != top:
        raise CatalogError(f"{name}: integrals must be given exactly for the top-degree basis")
    if any(v == 0 for v in m.integrals.values()):
        raise CatalogError(f"{name}: top-degree integral must be nonzero")

    _validate_star(m)

    for cyc in m.cycles.values():
        if not 0 < cyc.degree <= m.dim:
            raise CatalogError(f"{name}: cycle {cyc.name} has invalid dimension {cyc.degree}")
        for mono in cyc.pairings:
            if mono not in m.bases.get(cyc.degree, []):
                raise CatalogError(
                    f"{name}: cycle {cyc.name} pairs with {CharClassExpr.from_monomial(mono)}, "
                    f"not a degree-{cyc.degree} basis class"
                )

    for rid, rel in m.relations.items():
        for side in ("lhs", "rhs"):
            for cname in rel.get(side, {}):
                if cname not in m.cycles:
                    raise CatalogError(f"{name}: relation {rid} mentions unknown cycle {cname}")

    tables = json.loads(m.notes.get("tables", "{}"))
    for deg, spec in tables.items():
        for cname in spec["cols"]:
            if cname not in m.cycles or m.cycles[cname].degree != int(deg):
                raise CatalogError(f"{name}: table column {cname} is not a degree-{deg} cycle")
        for row in spec["rows"]:
            m.parse(row)

    if catalog is not None:
        _validate_embeddings(m, catalog)


def _validate_star(m: ManifoldModel) -> None:
    name = m.name
    for q in range(1, m.dim):
        basis = m.basis(q)
        if not basis:
            continue
        for mono in basis:
            if mono not in m.star_table:
                raise CatalogError(f"{name}: no star entry for {CharClassExpr.from_monomial(mono)}")
            x = CharClassExpr.from_monomial(mono)
            sx = star(x, m)
            if m.degree_of(sx.cls) not in (None, m.dim - q):
                raise CatalogError(f"{name}: star of {x} does not have degree {m.dim - q}")
            ssx = star(sx.cls, m).scale(sx.scalar)
            sign = (-1) ** (q * (m.dim - q))
            if not ssx.scalar.is_rational() or m.reduce(ssx.cls.scale(ssx.scalar.coeff)) != x.scale(sign):
                raise CatalogError(f"{name}: star applied twice to {x} is not {sign} times itself")
        from ..duality import gram_matrix

        gram = gram_matrix([CharClassExpr.from_monomial(b) for b in basis], m)
        _, rational = gram.factored()
        n = len(rational)
        if any(rational[i][j] != rational[j][i] for i in range(n) for j in range(n)):
            raise CatalogError(f"{name}: degree-{q} Gram matrix is not symmetric")
        if not _leading_minors_positive(rational):
            raise CatalogError(f"{name}: degree-{q} Gram matrix is not positive definite")
    for mono in m.star_table:
        q = monomial_degree(mono, m.generators)
        if q in (0, m.dim):
            raise CatalogError(f"{name}: star table may not cover degree {q}")


def restrict(x: CharClassExpr, images: Mapping[str, CharClassExpr], sub: ManifoldModel) -> CharClassExpr:
    """Pull back ``x`` along an embedding given by generator images."""
    acc = CharClassExpr()
    for mono, coeff in x.terms.items():
        term = CharClassExpr.constant(coeff)
        for gen, k in mono:
            if gen not in images:
                raise CatalogError(f"embedding gives no image for generator {gen}")
            term = term * images[gen] ** k
        acc = acc + term
    return sub.reduce(acc)


def embedding_images(m: ManifoldModel, cycle: str, catalog: Catalog) -> tuple[ManifoldModel, dict[str, CharClassExpr]]:
    spec = m.embeddings[cycle]
    sub = catalog.model(spec["model"])
    images = {gen: parse(text, sub.generators) for gen, text in spec["images"].items()}
    return sub, images


def _validate_embeddings(m: ManifoldModel, catalog: Catalog) -> None:
    for cname, spec in m.embeddings.items():
        if cname not in m.cycles:
            raise CatalogError(f"{m.name}: embedding for unknown cycle {cname}")
        if spec["model"] not in catalog.models:
            continue  # an external catalog may omit the submanifold model
        sub, images = embedding_images(m, cname, catalog)
        missing = set(m.generators) - set(images)
        if missing:
            raise CatalogError(f"{m.name}: embedding of {cname} misses images for {sorted(missing)}")
        cyc = m.cycles[cname]
        if sub.dim != cyc.degree:
            raise CatalogError(f"{m.name}: {cname} has dimension {cyc.degree} but {sub.name} has {sub.dim}")
        for mono in m.basis(cyc.degree):
            value = integrate(restrict(CharClassExpr.from_monomial(mono), images, sub), sub)
            stored = cyc.pairings.get(mono, Fraction(0))
            if value != stored:
                raise CatalogError(
                    f"{m.name}: integral of {CharClassExpr.from_monomial(mono)} over {cname} is "
                    f"{value} by restriction to {sub.name} but {stored} in the table"
                )


# -- catalog operations -------------------------------------------------------------


def poincare_polynomial(name: str, catalog: Catalog | None = None) -> PoincarePolynomial:
    return PoincarePolynomial(tuple(_resolve(catalog).model(name).poincare))


def cycle_pairing_table(
    name: str,
    degree: int,
    catalog: Catalog | None = None,
    rows: Sequence[str] | None = None,
    cols: Sequence[str] | None = None,
) -> PairingTable:
    """Integrals of classes (rows) over cycles (columns) in one degree.

    Without explicit labels the model's preferred table for that degree is
    used, falling back to basis classes against all cycles of that degree.
    """
    m = _resolve(catalog).model(name)
    cycles = m.cycles_in_degree(degree)
    if not cycles and not rows:
        raise NoDataForDegree(f"{m.name} has no cycles of dimension {degree}")
    preferred = json.loads(m.notes.get("tables", "{}")).get(str(degree), {})
    row_labels = list(rows or preferred.get("rows") or [str(CharClassExpr.from_monomial(b)) for b in m.basis(degree)])
    col_labels = list(cols or preferred.get("cols") or [c.name for c in cycles])
    for c in col_labels:
        if c not in m.cycles:
            raise NoDataForDegree(f"{m.name} has no cycle named {c}")
    matrix = []
    for label in row_labels:
        x = m.parse(label)
        coords = basis_coordinates(x, m, degree)
        row = []
        for c in col_labels:
            vec = cycle_pairing_vector(CycleClass.single(c), m, degree)
            row.append(sum((a * b for a, b in zip(coords, vec)), Fraction(0)))
        matrix.append(tuple(row))
    return PairingTable(m.name, degree, tuple(row_labels), tuple(col_labels), tuple(matrix))


def gysin_betti_solver(d: SphereBundleDescriptor) -> PoincarePolynomial:
    """Betti numbers of the base of a sphere bundle with rationally trivial Euler class.

    Solves ``b[q] + b[q - m] = total[q]`` degree by degree.
    """
    if not d.euler_class_vanishes_rationally:
        raise Infeasible("the rational solver needs a rationally vanishing Euler class")
    m, n = d.fiber_dim, d.base_dim
    total = d.total_betti.coefficients
    b = [0] * (n + 1)
    for q, t in enumerate(total):
        lower = b[q - m] if 0 <= q - m <= n else 0
        value = t - lower
        if q <= n:
            if value < 0:
                raise Infeasible(f"negative Betti number forced in degree {q}")
            b[q] = value
        elif value != 0:
            raise Infeasible(f"total Betti number in degree {q} is inconsistent with the base")
    return PoincarePolynomial(tuple(b))


_G2_TARGET = re.compile(r"^G\(2,(N|\d+)\)$")


def gauss_map_class(target: str, chi: int, sign: int = 0, lam: Fraction | int = 0) -> CycleClass:
    """Homology class of the Gauss image of a closed oriented immersed manifold."""
    t = _canonical_name(target)
    half = Fraction(1, 2)
    if _G2_TARGET.match(t):
        return CycleClass({"G(2,3)": half * chi})
    if t == "G(4,8)":
        return CycleClass({"G(4,5)": half * chi, "G(1,5)": Fraction(lam), "G(2,4)": Fraction(3, 2) * sign})
    if t in ("G(4,7)", "G(4,6)"):
        return CycleClass({"G(4,5)": half * chi, "G(2,4)": Fraction(3, 2) * sign})
    raise UnsupportedTarget(f"no Gauss-map formula for target {target!r}")


def tau_gauss_degree(normal_euler_cubed_integral: Fraction | int, chi: int) -> Fraction:
    """Degree of the composite of the Gauss map with the fibration G(2,8) -> S^6."""
    return Fraction(normal_euler_cubed_integral) / 2 + Fraction(chi, 2)


def homology_relation(name: str, catalog: Catalog | None = None) -> tuple[str, CycleClass, CycleClass]:
    """Return ``(ambient manifold, lhs, rhs)`` for a recorded homology relation."""
    rels = _resolve(catalog).relations()
    if name not in rels:
        raise UnknownRelation(f"unknown relation {name!r}")
    ambient, rel = rels[name]
    return ambient, CycleClass(rel["lhs"]), CycleClass(rel["rhs"])


def relation_holds(name: str, catalog: Catalog | None = None) -> bool:
    cat = _resolve(catalog)
    ambient, lhs, rhs = homology_relation(name, cat)
    m = cat.model(ambient)
    degrees = {m.cycles[c].degree for c in list(lhs.terms) + list(rhs.terms)}
    if len(degrees) != 1:
        return False
    (deg,) = degrees
    return cycle_pairing_vector(lhs, m, deg) == cycle_pairing_vector(rhs, m, deg)


def fibration_descriptor(model_name: str, fib_id: str, catalog: Catalog | None = None) -> SphereBundleDescriptor:
    m = _resolve(catalog).model(model_name)
    for fib in m.fibrations:
        if fib["id"] == fib_id:
            return SphereBundleDescriptor(
                int(fib["fiber_dim"]),
                PoincarePolynomial(tuple(m.poincare)),
                int(fib["base_dim"]),
                bool(fib.get("euler_class_vanishes_rationally", True)),
            )
    raise UnknownRelation(f"{model_name} has no fibration {fib_id!r}")
