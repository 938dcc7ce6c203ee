"""Acceptance suite: re-derive every recorded number and compare.

Each check has an id of the form ``group.detail``, the acceptance criterion
it belongs to, a citation string (looked up in ``data/citations.json`` by
longest id prefix), the expected value, the computed value and a status.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations
from math import comb, factorial, gcd
from typing import Callable, Iterable, Sequence

import sympy

from . import exact
from .catalog import (
    Catalog,
    PoincarePolynomial,
    cycle_pairing_table,
    default_catalog,
    embedding_images,
    fibration_descriptor,
    gauss_map_class,
    gysin_betti_solver,
    homology_relation,
    restrict,
    tau_gauss_degree,
    validate_model,
)
from .charring import (
    ManifoldModel,
    ScaledClass,
    euler_characteristic,
    inner_product,
    integrate,
    star,
    tangent_euler_class,
    tangent_pontryagin_class,
)
from .duality import (
    CycleClass,
    cycle_pairing_vector,
    determinant,
    dual_combinations,
    gram_matrix,
    harmonic_dual_basis,
    integral_dual_basis,
    integrate_over,
    lattice_index,
    matmul,
    poincare_dual,
    rational_class,
    smith_normal_form,
)
from .exact import ExactScalar
from .expr import CharClassExpr
from .volumes import (
    catalog_space_volume,
    grassmann_volume,
    grassmann_volume_via_groups,
    parse_descriptor,
    slag_volume,
    sphere_volume,
    su_volume,
    so_volume,
    volume,
)

GROUP_CRITERION = {
    "volumes": 1,
    "rings": 2,
    "splitting": 3,
    "euler": 4,
    "inner": 5,
    "duality": 6,
    "crosscheck": 6,
    "catalog": 6,
    "lattice": 7,
    "relations": 8,
    "gysin": 9,
    "facts": 9,
    "gauss": 10,
}

SNF_SAMPLES = 200
SNF_SEED = 20240607


@dataclass(frozen=True)
class Check:
    id: str
    criterion: int
    citation: str
    expected: str
    computed: str
    status: str
    note: str = ""


@dataclass
class VerifyReport:
    checks: list[Check]
    catalog: str = "<package>"
    generated_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            counts[c.status] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        return {
            "generated_at": self.generated_at,
            "catalog": self.catalog,
            "summary": self.summary,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def render_table(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{c.status.upper():7} {c.id}")
            lines.append(f"        expected: {c.expected}")
            if c.status != "pass" or c.computed != c.expected:
                lines.append(f"        computed: {c.computed}")
            if c.note:
                lines.append(f"        note: {c.note}")
        s = self.summary
        lines.append(f"{s['total']} checks: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)


@dataclass(frozen=True)
class Outcome:
    """A computed value together with an explicit verdict."""

    computed: str
    ok: bool
    note: str = ""


@lru_cache(maxsize=1)
def citations() -> dict[str, str]:
    text = resources.files("grasschar").joinpath("data/citations.json").read_text("utf-8")
    return json.loads(text)["citations"]


def citation_for(check_id: str) -> str:
    table = citations()
    best = ""
    for prefix in table:
        if check_id.startswith(prefix) and len(prefix) > len(best):
            best = prefix
    if not best:
        raise KeyError(f"no citation covers check {check_id!r}")
    return table[best]


# -- formatting helpers ------------------------------------------------------------


def fmt_q(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_matrix(rows: Iterable[Iterable[Fraction | int]]) -> str:
    return "[" + ", ".join("[" + ", ".join(fmt_q(v) for v in row) + "]" for row in rows) + "]"


def fmt_classes(xs: Iterable[CharClassExpr]) -> str:
    return "; ".join(str(x) for x in xs)


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# -- the suite -------------------------------------------------------------------


class _Suite:
    def __init__(self, catalog: Catalog, pattern: str | None, criterion: int | None) -> None:
        self.catalog = catalog
        self.pattern = re.compile(pattern) if pattern else None
        self.criterion = criterion
        self.checks: list[Check] = []

    def model(self, name: str) -> ManifoldModel:
        return self.catalog.model(name)

    def wanted(self, check_id: str) -> bool:
        crit = GROUP_CRITERION[check_id.split(".", 1)[0]]
        if self.criterion is not None and crit != self.criterion:
            return False
        return self.pattern is None or bool(self.pattern.search(check_id))

    def add(self, check_id: str, expected: str, compute: Callable[[], str | Outcome], note: str = "") -> None:
        if not self.wanted(check_id):
            return
        crit = GROUP_CRITERION[check_id.split(".", 1)[0]]
        try:
            value = compute()
        except Exception as exc:  # a crash is a failed check, not a crashed report
            value = Outcome(f"error: {type(exc).__name__}: {exc}", False)
        if isinstance(value, Outcome):
            computed, ok = value.computed, value.ok
            note = "; ".join(n for n in (note, value.note) if n)
        else:
            computed, ok = value, value == expected
        self.checks.append(
            Check(check_id, crit, citation_for(check_id), expected, computed, "pass" if ok else "fail", note)
        )

    def skip(self, check_id: str, expected: str, reason: str) -> None:
        if not self.wanted(check_id):
            return
        crit = GROUP_CRITERION[check_id.split(".", 1)[0]]
        self.checks.append(Check(check_id, crit, citation_for(check_id), expected, "not computed", "skipped", reason))


def _scalar_check(suite: _Suite, check_id: str, expected: ExactScalar, compute: Callable[[], ExactScalar]) -> None:
    suite.add(check_id, str(expected), lambda: str(compute()))


# -- criterion 1: volumes ---------------------------------------------------------


def _volumes(s: _Suite) -> None:
    pi = ExactScalar.pi
    for n in range(1, 7):
        expected = ExactScalar(Fraction(2 * 2**n, factorial(n)), 1, n)
        _scalar_check(s, f"volumes.G(2,{n + 2})", expected, lambda n=n: grassmann_volume(2, n + 2))
    listed = {
        (3, 6): ExactScalar(Fraction(2, 3)) * pi(5),
        (3, 7): ExactScalar(Fraction(16, 45)) * pi(6),
        (3, 8): ExactScalar(Fraction(2, 45)) * pi(8),
        (4, 8): ExactScalar(Fraction(8, 135)) * pi(8),
    }
    for (k, n), expected in listed.items():
        _scalar_check(s, f"volumes.G({k},{n})", expected, lambda k=k, n=n: grassmann_volume(k, n))
    for n in range(1, 9):
        expected = ExactScalar(Fraction(2, factorial(n - 1)), 1, n)
        _scalar_check(s, f"volumes.S({2 * n - 1})", expected, lambda n=n: sphere_volume(2 * n - 1))
    _scalar_check(s, "volumes.SLAG(3)", exact.parse("sqrt(3/2) * pi^3"), lambda: slag_volume(3))
    _scalar_check(s, "volumes.SLAG(3).groups", slag_volume(3), lambda: su_volume(3) / so_volume(3))
    for n in range(2, 10):
        for k in range(1, n):
            _scalar_check(
                s,
                f"volumes.two-forms.G({k},{n})",
                grassmann_volume(k, n),
                lambda k=k, n=n: grassmann_volume_via_groups(k, n),
            )
    # catalog spaces: recorded value against the volume relation that produced it
    routes = {
        "ASSOC": lambda: ExactScalar(9) * grassmann_volume(3, 8) / sphere_volume(7),
        "ASSOC~": lambda: catalog_space_volume("ASSOC"),
        "CAY": lambda: grassmann_volume(3, 7),
        "M": lambda: ExactScalar(Fraction(5, 9)) * pi(2) * catalog_space_volume("ASSOC"),
        "PONT": lambda: exact.parse("sqrt(2/3)") * grassmann_volume(2, 4),
    }
    recorded = {
        "ASSOC": "6/5 * pi^4",
        "ASSOC~": "6/5 * pi^4",
        "CAY": "16/45 * pi^6",
        "M": "2/3 * pi^6",
        "PONT": "4/3 * sqrt(6) * pi^2",
    }
    for name, route in routes.items():
        _scalar_check(s, f"volumes.catalog.{name}.recorded", exact.parse(recorded[name]),
                      lambda name=name: volume(parse_descriptor(name)))
        _scalar_check(s, f"volumes.catalog.{name}.route", exact.parse(recorded[name]), route)


# -- criterion 2: ring relations ---------------------------------------------------


def _total_pontryagin(m: ManifoldModel, bundle: str) -> CharClassExpr:
    total = CharClassExpr.constant(1)
    for g in m.generators:
        if re.fullmatch(rf"p\d+\({bundle}\)", g):
            total = total + CharClassExpr.gen(g)
    return total


def _rings(s: _Suite) -> None:
    for name in s.catalog.names():
        m = s.model(name)
        s.add(
            f"rings.product.{name}",
            "1",
            lambda m=m: str(m.reduce(_total_pontryagin(m, "E") * _total_pontryagin(m, "F"))),
        )
    for n in range(1, 4):
        N = 2 * n + 2
        m = s.model(f"G(2,{N})")
        # invert p(E) = 1 + e^2 as a power series: p(F) = sum_q (-1)^q e^{2q}
        for q in range(1, n + 1):
            expected = CharClassExpr.gen("e(E)", 2 * q).scale((-1) ** q)
            s.add(f"rings.pF.G(2,{N}).p{q}(F)", str(expected), lambda m=m, q=q: str(m.reduce(m.parse(f"p{q}(F)"))))
    m = s.model("G(4,8)")
    identities = [
        ("e(E)*e(F)", "0"),
        ("p1(E)", "-p1(F)"),
        ("p2(E)", "e(E)^2"),
        ("p2(F)", "e(F)^2"),
        ("p1(E)^2", "p2(E) + p2(F)"),
        ("p1(E)*p2(E)", "1/2*p1(E)^3"),
        ("p1(E)*p2(F)", "1/2*p1(E)^3"),
        ("p1(E)^2*e(E)", "e(E)^3"),
        ("p1(F)^2*e(F)", "e(F)^3"),
    ]
    for lhs, rhs in identities:
        s.add(f"rings.G(4,8).{lhs}={rhs}", "0", lambda lhs=lhs, rhs=rhs: str(m.reduce(m.parse(lhs) - m.parse(rhs))))


# -- criterion 3: splitting principle ----------------------------------------------


def _splitting(s: _Suite) -> None:
    def euler_check(name: str, expected_text: str) -> None:
        m = s.model(name)
        expected = m.reduce(m.parse(expected_text))
        s.add(f"splitting.euler.{name}", f"{expected_text} = {expected}",
              lambda: f"{expected_text} = {tangent_euler_class(m)}"
              if tangent_euler_class(m) == expected else str(tangent_euler_class(m)))

    for n in range(1, 4):
        euler_check(f"G(2,{2 * n + 2})", f"{n + 1}*e(E)^{2 * n}")
    for n in range(1, 3):
        euler_check(f"G(2,{2 * n + 3})", f"{n + 1}*e(E)^{2 * n + 1}")
    euler_check("G(3,7)", "3*e(F)^3")
    euler_check("G(4,8)", "6*e(E)^4")
    m48 = s.model("G(4,8)")
    s.add("splitting.euler.G(4,8).E=F", "0", lambda: str(m48.reduce(m48.parse("6*e(E)^4 - 6*e(F)^4"))))

    for k, n in [(1, 2), (1, 3), (1, 4), (2, 4)]:
        m = s.model(f"G({2 * k},{2 * n})")
        expected = m.reduce(m.parse(f"{2 * (n - 2 * k)}*p1(E)"))
        s.add(f"splitting.p1.G({2 * k},{2 * n})", str(expected), lambda m=m: str(tangent_pontryagin_class(m, 1)))
    s.add("splitting.p1.G(4,8).unreduced", "4*p1(E) + 4*p1(F)",
          lambda: str(tangent_pontryagin_class(m48, 1, reduced=False)))
    for n in range(1, 4):
        m = s.model(f"G(2,{2 * n + 2})")
        p1 = m.reduce(m.parse(f"{2 * (n - 1)}*e(E)^2"))
        p2 = m.reduce(m.parse(f"{2 * n * n - 5 * n + 9}*e(E)^4"))
        s.add(f"splitting.plane-pontryagin.G(2,{2 * n + 2}).p1", str(p1), lambda m=m: str(tangent_pontryagin_class(m, 1)))
        s.add(f"splitting.plane-pontryagin.G(2,{2 * n + 2}).p2", str(p2), lambda m=m: str(tangent_pontryagin_class(m, 2)))


# -- criterion 4: Euler characteristics ------------------------------------------------


def _euler(s: _Suite) -> None:
    expected = {f"G(2,{2 * n + 2})": 2 * n + 2 for n in range(1, 4)}
    expected.update({"G(3,7)": 6, "G(4,8)": 12, "G(3,6)": 0, "G(3,8)": 0})
    for name, chi in expected.items():
        m = s.model(name)
        s.add(f"euler.chi.{name}", str(chi), lambda m=m: str(euler_characteristic(m)))
    for name in s.catalog.names():
        m = s.model(name)
        p = PoincarePolynomial(tuple(m.poincare))

        def compare(m=m, p=p) -> Outcome:
            chi = euler_characteristic(m)
            alt = p.euler_characteristic()
            ok = chi == alt and (m.dim % 2 == 1 or chi == p.total())
            return Outcome(f"engine {chi}, Poincaré {alt}, coefficient sum {p.total()}", ok)

        alt = p.euler_characteristic()
        exp = f"engine {alt}, Poincaré {alt}, coefficient sum {p.total()}"
        s.add(f"euler.poincare.{name}", exp, compare)


# -- criterion 5: inner products -------------------------------------------------------


def _inner(s: _Suite) -> None:
    pi = ExactScalar.pi
    values = [
        ("G(3,6)", "p1(E)", "p1(E)", "3/2 * pi"),
        ("G(3,7)", "p1(E)", "p1(E)", "8/5 * pi^2"),
        ("G(3,7)", "e(F)", "e(F)", "pi^2"),
        ("G(3,7)", "p1(E)", "e(F)", "0"),
        ("G(3,8)", "p1(E)", "p1(E)", "1/3 * pi^4"),
        ("G(3,8)", "p1(E)^2", "p1(E)^2", "5/2"),
        ("G(4,8)", "e(E)", "e(E)", "4/15 * pi^4"),
        ("G(4,8)", "e(F)", "e(F)", "4/15 * pi^4"),
        ("G(4,8)", "1/2*p1(E)", "p1(E)", "4/15 * pi^4"),
        ("G(4,8)", "e(E)", "e(F)", "0"),
        ("G(4,8)", "e(E)", "p1(E)", "0"),
        ("G(4,8)", "e(F)", "p1(E)", "0"),
    ]
    for name, x, y, value in values:
        m = s.model(name)
        s.add(f"inner.{name}.({x},{y})", value,
              lambda m=m, x=x, y=y: str(inner_product(m.parse(x), m.parse(y), m)))
    # the same numbers through the volume formulas
    routes = [
        ("G(3,6).(p1(E),p1(E))", "G(3,6)", "p1(E)",
         lambda: ExactScalar(36) / (ExactScalar(2) * pi()) ** 4 * grassmann_volume(3, 6)),
        ("G(3,8).(p1(E),p1(E))", "G(3,8)", "p1(E)",
         lambda: ExactScalar(15) / (ExactScalar(2) * pi(4)) * grassmann_volume(3, 8)),
        ("G(3,8).(p1(E)^2,p1(E)^2)", "G(3,8)", "p1(E)^2",
         lambda: ExactScalar(225) / (ExactScalar(4) * pi(8)) * grassmann_volume(3, 8)),
    ]
    for N in range(3, 9):
        for k in range(1, N - 2):
            routes.append((
                f"G(2,{N}).(e(E)^{k},e(E)^{k})", f"G(2,{N})", f"e(E)^{k}",
                lambda N=N, k=k: ExactScalar(factorial(k) ** 2 * comb(N - 2, k))
                / (ExactScalar(2) * pi()) ** (2 * k) * grassmann_volume(2, N),
            ))
    for cid, name, x, route in routes:
        m = s.model(name)
        s.add(f"inner.volume-route.{cid}", str(route()),
              lambda m=m, x=x: str(inner_product(m.parse(x), m.parse(x), m)))
    m = s.model("G(4,8)")
    labels = ["e(E)", "e(F)", "1/2*(p1(E)+e(E)-e(F))"]
    # A = (4/15) pi^4 * rational; the factored form keeps a unit scalar
    rational = [[1, 0, Fraction(1, 2)], [0, 1, Fraction(-1, 2)], [Fraction(1, 2), Fraction(-1, 2), 1]]
    a_rows = [[Fraction(4, 15) * v for v in row] for row in rational]

    def gram48() -> str:
        g = gram_matrix([m.parse(t) for t in labels], m)
        mono, rows = g.factored()
        return f"{mono} * {fmt_matrix(rows)}"

    s.add("inner.G(4,8).gram", f"{pi(4)} * {fmt_matrix(a_rows)}", gram48)


# -- criterion 6: star closure and duality ----------------------------------------------


def _star_twice(x: CharClassExpr, m: ManifoldModel) -> ScaledClass:
    once = star(x, m)
    acc = ScaledClass(exact.ONE, CharClassExpr())
    for mono, coeff in once.cls.items():
        acc = acc + star(CharClassExpr.from_monomial(mono), m).scale(coeff)
    return acc.scale(once.scalar)


def _pd(m: ManifoldModel, text: str, order: Sequence[str] | None = None) -> str:
    return poincare_dual(m.parse(text), m).render(order)


def _duality(s: _Suite) -> None:
    for name in s.catalog.names():
        m = s.model(name)
        s.add(f"catalog.validate.{name}", "valid", lambda m=m: (validate_model(m, s.catalog), "valid")[1])
        for q in sorted(m.bases):
            if q in (0, m.dim):
                continue
            for mono in m.basis(q):
                x = CharClassExpr.from_monomial(mono)
                sign = (-1) ** (q * (m.dim - q))
                s.add(f"duality.star-star.{name}.{x}", str(ScaledClass(exact.ONE, x.scale(sign))),
                      lambda x=x, m=m: str(_star_twice(x, m)))
            basis = [CharClassExpr.from_monomial(b) for b in m.basis(q)]
            if not all(b in m.star_table for b in m.basis(q)):
                continue

            def delta(m=m, basis=basis) -> str:
                psi = harmonic_dual_basis(basis, m)
                return fmt_matrix([[integrate(phi * p, m) for p in psi] for phi in basis])

            s.add(f"duality.dual-basis.{name}.H{q}", fmt_matrix(_identity(len(basis))), delta)

    _generators_g36(s)
    _generators_g2n(s)
    _generators_g37(s)
    _generators_g38(s)
    _generators_g48(s)
    _crosschecks(s)


def _generator_pairing(m: ManifoldModel, classes: Sequence[str], cycles: Sequence[str]) -> Outcome:
    """Integer, unimodular pairing between candidate classes and cycles."""
    table = cycle_pairing_table(m.name, m.cycles[cycles[0]].degree, rows=classes, cols=cycles)
    rows = table.as_lists()
    integral = all(v.denominator == 1 for row in rows for v in row)
    det = determinant(rows)
    return Outcome(f"{fmt_matrix(rows)}, det {fmt_q(det)}", integral and abs(det) == 1)


def _generators_g36(s: _Suite) -> None:
    m = s.model("G(3,6)")
    s.add("duality.G(3,6).1/2*p1(E).generator", "integral, |det| = 1",
          lambda: _generator_pairing(m, ["1/2*p1(E)"], ["G(2,4)"]))
    s.add("duality.G(3,6).1/2*p1(E).dual", "[SLAG]", lambda: _pd(m, "1/2*p1(E)"))

    def scaled_star() -> str:
        a = inner_product(m.parse("p1(E)"), m.parse("p1(E)"), m)
        sc = star(m.parse("p1(E)"), m).scale(ExactScalar(Fraction(4, 3)) / ExactScalar.pi())
        return f"{rational_class(sc)} (a = {a})"

    s.add("duality.G(3,6).4/(3pi)*star(p1(E))", "h5 (a = 3/2 * pi)", scaled_star)
    s.add("duality.G(3,6).h5.generator", "integral, |det| = 1", lambda: _generator_pairing(m, ["h5"], ["SLAG"]))
    s.add("duality.G(3,6).h5.dual", "[G(2,4)]", lambda: _pd(m, "h5"))


def _generators_g2n(s: _Suite) -> None:
    for N in range(5, 9):
        m = s.model(f"G(2,{N})")
        for k in range(1, N - 2):
            if 2 * k + 2 < N:
                s.add(f"duality.G(2,{N}).e^{k}.generator", "integral, |det| = 1",
                      lambda m=m, k=k: _generator_pairing(m, [f"e(E)^{k}"], [f"CP^{k}"]))
                s.add(f"duality.G(2,{N}).e^{k}.dual", f"[G(2,{N - k})]",
                      lambda m=m, k=k: _pd(m, f"e(E)^{k}"))

                def half_star(m=m, k=k) -> str:
                    x = m.parse(f"e(E)^{k}")
                    a = inner_product(x, x, m)
                    return str(rational_class(star(x, m).scale(a.inverse())))

                s.add(f"duality.G(2,{N}).star(e^{k})/a", f"1/2*e(E)^{N - k - 2}", half_star)
            elif 2 * k + 2 > N:
                s.add(f"duality.G(2,{N}).1/2*e^{k}.generator", "integral, |det| = 1",
                      lambda m=m, k=k: _generator_pairing(m, [f"1/2*e(E)^{k}"], [f"G(2,{k + 2})"]))
                sign = (-1) ** (N - k)
                cp = CycleClass.single(f"CP^{N - k - 2}", sign).render()
                s.add(f"duality.G(2,{N}).1/2*e^{k}.dual", cp, lambda m=m, k=k: _pd(m, f"1/2*e(E)^{k}"),
                      note="closes with n = N; reading n from N = 2n+2 or 2n+3 gives a negative CP index")
        if N % 2 == 0:
            n = (N - 2) // 2
            sg = (-1) ** n
            plus, minus = f"1/2*({sg}*e(E)^{n} + e(F))", f"1/2*({sg}*e(E)^{n} - e(F))"
            s.add(f"duality.G(2,{N}).middle.generators", "integral, |det| = 1",
                  lambda m=m, n=n, plus=plus, minus=minus: _generator_pairing(m, [plus, minus], [f"CP^{n}", f"CPbar^{n}"]))
            swap = "" if n % 2 == 0 else "the integral of e(F)^2 is (-1)^n * 2, so for odd n the two duals are exchanged"
            s.add(f"duality.G(2,{N}).middle.plus.dual", f"[CP^{n}]", lambda m=m, plus=plus: _pd(m, plus), note=swap)
            s.add(f"duality.G(2,{N}).middle.minus.dual", f"[CPbar^{n}]", lambda m=m, minus=minus: _pd(m, minus), note=swap)


def _generators_g37(s: _Suite) -> None:
    m = s.model("G(3,7)")
    s.add("duality.G(3,7).H4.generators", "integral, |det| = 1",
          lambda: _generator_pairing(m, ["1/2*(p1(E)+e(F))", "1/2*(p1(E)-e(F))"], ["CP^2", "CPbar^2"]))
    s.add("duality.G(3,7).H4.plus.dual", "[ASSOC]", lambda: _pd(m, "1/2*(p1(E)+e(F))"))
    s.add("duality.G(3,7).H4.minus.dual", "[ASSOC~]", lambda: _pd(m, "1/2*(p1(E)-e(F))"),
          note="with the orientation of ASSOC~ fixed by its recorded integrals the dual is -[ASSOC~]")
    s.add("duality.G(3,7).H8.generators", "integral, |det| = 1",
          lambda: _generator_pairing(m, ["1/2*(p1(E)*e(F)+e(F)^2)", "1/2*(p1(E)*e(F)-e(F)^2)"], ["ASSOC", "ASSOC~"]))
    s.add("duality.G(3,7).H8.plus.dual", "[CP^2]", lambda: _pd(m, "1/2*(p1(E)*e(F)+e(F)^2)"))
    s.add("duality.G(3,7).H8.minus.dual", "[CPbar^2]", lambda: _pd(m, "1/2*(p1(E)*e(F)-e(F)^2)"))

    def uct() -> str:
        t = cycle_pairing_table("G(3,7)", 8, s.catalog,
                                rows=["1/2*(p1(E)*e(F)+e(F)^2)", "1/2*(p1(E)*e(F)-e(F)^2)"],
                                cols=["ASSOC", "ASSOC~"])
        return fmt_matrix(t.as_lists())

    s.add("duality.G(3,7).H8.uct-dual", fmt_matrix(_identity(2)), uct,
          note="the orientation of ASSOC~ fixed by its recorded integrals turns the second diagonal entry into -1")


def _generators_g38(s: _Suite) -> None:
    m = s.model("G(3,8)")

    def scaled(text: str, factor: ExactScalar) -> CharClassExpr:
        return rational_class(star(m.parse(text), m).scale(factor))

    s.add("duality.G(3,8).p1.dual", "[M]", lambda: _pd(m, "p1(E)"))
    s.add("duality.G(3,8).3/pi^4*star(p1).dual", "[CP^2]",
          lambda: poincare_dual(scaled("p1(E)", ExactScalar(3) / ExactScalar.pi(4)), m).render())
    s.add("duality.G(3,8).p1^2.dual", "[f(S^7)]", lambda: _pd(m, "p1(E)^2"))
    s.add("duality.G(3,8).p2(F).dual", "[f(S^7)]", lambda: _pd(m, "p2(F)"))
    s.add("duality.G(3,8).2/5*star(p1^2).dual", "[ASSOC]",
          lambda: poincare_dual(scaled("p1(E)^2", ExactScalar(Fraction(2, 5))), m).render())
    s.add("duality.G(3,8).3/pi^4*star(p1).on-M", "1",
          lambda: fmt_q(integrate_over(CycleClass.single("M"), scaled("p1(E)", ExactScalar(3) / ExactScalar.pi(4)), m)))
    s.add("duality.G(3,8).2/5*star(p1^2).on-f(S^7)", "1",
          lambda: fmt_q(integrate_over(CycleClass.single("f(S^7)"), scaled("p1(E)^2", ExactScalar(Fraction(2, 5))), m)))


def _generators_g48(s: _Suite) -> None:
    m = s.model("G(4,8)")
    h4 = ["e(E)", "e(F)", "1/2*(p1(E)+e(E)-e(F))"]
    s.add("duality.G(4,8).H4.generators", "integral, |det| = 1",
          lambda: _generator_pairing(m, h4, ["*CP^2", "CP^2", "G(2,4)"]))
    for cls, cyc in zip(h4, ["[G(4,7)]", "[G(3,7)]", "[G(4,7)] - [G(3,7)] + [CAY]"]):
        s.add(f"duality.G(4,8).H4.{cls}.dual", cyc,
              lambda cls=cls: _pd(m, cls, ["G(4,7)", "G(3,7)", "CAY"]))
    for text, value in [("e(E)", "2/15 * pi^4 * e(E)^3"), ("e(F)", "2/15 * pi^4 * e(F)^3"),
                        ("p1(E)", "4/15 * pi^4 * p1(E)*e(E)^2")]:
        s.add(f"duality.G(4,8).star({text})", value, lambda text=text: str(star(m.parse(text), m)),
              note="p1(E)^3 reduces to 2*p1(E)*e(E)^2")
    dual12 = ["1/2*e(E)^3 - 1/4*p1(E)^3", "1/2*e(F)^3 + 1/4*p1(E)^3", "1/2*p1(E)^3"]
    s.add("duality.G(4,8).H12.harmonic-dual", fmt_classes(m.reduce(m.parse(t)) for t in dual12),
          lambda: fmt_classes(harmonic_dual_basis([m.parse(t) for t in h4], m)))
    s.add("duality.G(4,8).H12.cycle-generators", "integral, |det| = 1",
          lambda: _generator_pairing(m, dual12, ["G(4,7)", "G(3,7)", "CAY"]),
          note="the cycles are tested against the harmonic dual classes, which generate the integral lattice")

    def halves() -> Outcome:
        t = cycle_pairing_table("G(4,8)", 12, s.catalog,
                                rows=["1/2*e(E)^3", "1/2*e(F)^3", "1/2*p1(E)^3"],
                                cols=["G(4,7)", "G(3,7)", "CAY"])
        rows = t.as_lists()
        ok = all(v.denominator == 1 for row in rows for v in row) and abs(determinant(rows)) == 1
        return Outcome(f"{fmt_matrix(rows)}, det {fmt_q(determinant(rows))}", ok)

    s.add("duality.G(4,8).H12.half-classes", "integral, |det| = 1", halves,
          note="1/2*e(E)^3 = (first harmonic dual class) + 1/2*(third), so its integral over CAY is -1/2")
    h8 = ["1/2*(e(F)^2+p1(E)*e(F))", "1/2*(e(F)^2-p1(E)*e(F))",
          "1/2*(e(E)^2+p1(E)*e(E))", "1/2*(e(E)^2-p1(E)*e(E))"]
    c8 = ["ASSOC", "ASSOC~", "*ASSOC", "*ASSOC~"]

    def table8() -> str:
        t = cycle_pairing_table("G(4,8)", 8, s.catalog, rows=h8, cols=c8)
        return fmt_matrix(t.as_lists())

    s.add("duality.G(4,8).H8.table", fmt_matrix(_identity(4)), table8)
    for cls, cyc in zip(h8, c8):
        s.add(f"duality.G(4,8).H8.{cls}.dual", f"[{cyc}]", lambda cls=cls: _pd(m, cls))


def _crosschecks(s: _Suite) -> None:
    pi = ExactScalar.pi
    m36, m37, m38, m48 = (s.model(n) for n in ("G(3,6)", "G(3,7)", "G(3,8)", "G(4,8)"))
    v = lambda name: volume(parse_descriptor(name))  # noqa: E731

    def slag_route() -> str:
        a = inner_product(m36.parse("p1(E)"), m36.parse("p1(E)"), m36)
        return str(a.inverse() * exact.parse("sqrt(6)") / (ExactScalar(4) * pi(2)) * v("SLAG(3)"))

    def slag_engine() -> str:
        a = inner_product(m36.parse("p1(E)"), m36.parse("p1(E)"), m36)
        x = rational_class(star(m36.parse("p1(E)"), m36).scale(a.inverse()))
        return fmt_q(integrate_over(CycleClass.single("SLAG"), x, m36))

    s.add("crosscheck.G(3,6).SLAG.volume", "1/2", slag_route)
    s.add("crosscheck.G(3,6).SLAG.engine", "1/2", slag_engine)
    s.add("crosscheck.G(3,6).PONT.p1", "2",
          lambda: fmt_q(integrate_over(CycleClass.single("PONT"), m36.parse("p1(E)"), m36)),
          note="the calibrating form is the first Pontryagin form of E; the tangent p1 of G(3,6) vanishes")
    s.add("crosscheck.G(3,7).ASSOC.volume", "1",
          lambda: str(ExactScalar(Fraction(5, 4)) / pi(2) * ExactScalar(Fraction(2, 3)) / pi(2) * v("ASSOC")))
    s.add("crosscheck.G(3,7).ASSOC.engine", "1",
          lambda: fmt_q(integrate_over(CycleClass.single("ASSOC"), m37.parse("p1(E)*e(F)"), m37)))

    def m_bound() -> Outcome:
        a = inner_product(m38.parse("p1(E)"), m38.parse("p1(E)"), m38)
        bound = ExactScalar(2) * v("M") / (ExactScalar(3) * a * pi(2))
        x = rational_class(star(m38.parse("p1(E)"), m38).scale(a.inverse()))
        value = integrate_over(CycleClass.single("M"), x, m38)
        return Outcome(f"bound {bound}, integral {fmt_q(value)}", bound == ExactScalar(Fraction(4, 3)) and value == 1)

    s.add("crosscheck.G(3,8).M.comass", "bound 4/3, integral 1", m_bound)
    s.add("crosscheck.G(3,8).f(S^7).volume", "1",
          lambda: str(ExactScalar(Fraction(2, 5)) / (ExactScalar(2) * pi(4)) * ExactScalar(15) * sphere_volume(7)))

    def cay_route() -> str:
        a = inner_product(m48.parse("e(E)"), m48.parse("e(E)"), m48)
        return str((ExactScalar(2) * a).inverse() * ExactScalar(3) / (ExactScalar(4) * pi(2)) * v("CAY"))

    def cay_engine() -> str:
        a = inner_product(m48.parse("e(E)"), m48.parse("e(E)"), m48)
        x = rational_class(star(m48.parse("p1(E)"), m48).scale((ExactScalar(2) * a).inverse()))
        return fmt_q(integrate_over(CycleClass.single("CAY"), x, m48))

    s.add("crosscheck.G(4,8).CAY.volume", "1/2", cay_route)
    s.add("crosscheck.G(4,8).CAY.engine", "1/2", cay_engine)


# -- criterion 7: lattices and Smith normal form ------------------------------------


def _det_int(a: Sequence[Sequence[int]]) -> int:
    """Laplace expansion; only used on small matrices."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in a[1:]]
            total += (-1) ** j * a[0][j] * _det_int(minor)
    return total


def determinantal_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors from gcds of k-by-k minors, ``d_k / d_{k-1}``."""
    rows, cols = len(a), len(a[0]) if a else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, _det_int([[a[i][j] for j in ci] for i in ri]))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def snf_properties(a: Sequence[Sequence[int]]) -> list[str]:
    """Return the list of violated Smith-normal-form properties (empty when fine)."""
    u, sm, v = smith_normal_form(a)
    problems = []
    if matmul(matmul(u, a), v) != sm:
        problems.append("U*A*V != S")
    if abs(_det_int(u)) != 1 or abs(_det_int(v)) != 1:
        problems.append("U or V not unimodular")
    n = min(len(sm), len(sm[0]) if sm else 0)
    if any(sm[i][j] for i in range(len(sm)) for j in range(len(sm[0])) if i != j):
        problems.append("S not diagonal")
    diag = [sm[i][i] for i in range(n)]
    if any(d < 0 for d in diag):
        problems.append("negative diagonal entry")
    for i in range(n - 1):
        if diag[i] == 0 and diag[i + 1] != 0 or diag[i] and diag[i + 1] % diag[i]:
            problems.append("divisibility chain broken")
            break
    if diag != determinantal_invariants(a):
        problems.append(f"diagonal {diag} != determinantal oracle {determinantal_invariants(a)}")
    return problems


def random_int_matrices(count: int = SNF_SAMPLES, seed: int = SNF_SEED, size: int = 4, bound: int = 9):
    rng = random.Random(seed)
    for _ in range(count):
        yield [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]


def _lattice(s: _Suite) -> None:
    m = s.model("G(4,8)")

    def table4():
        return cycle_pairing_table("G(4,8)", 4, s.catalog)

    s.add("lattice.G(4,8).H4.table", "[[0, 1, 0], [1, 0, 0], [1, -1, 2]]", lambda: fmt_matrix(table4().as_lists()))
    s.add("lattice.G(4,8).H4.index", "2", lambda: str(lattice_index(table4().as_lists())))

    def duals() -> str:
        t = table4()
        c, halves = integral_dual_basis(t.as_lists())
        combos = dual_combinations(c, t.rows)
        body = "; ".join(f"{col} -> {m.reduce(x)}" for col, x in zip(t.cols, combos))
        return f"{body} (denominators divide 2: {halves})"

    expected = "; ".join(
        f"{col} -> {m.reduce(m.parse(x))}"
        for col, x in zip(["CP^2", "*CP^2", "G(2,4)"], ["e(F)", "e(E)", "1/2*(p1(E)+e(E)-e(F))"])
    )
    s.add("lattice.G(4,8).H4.integral-dual", f"{expected} (denominators divide 2: True)", duals)
    for n in range(1, 4):
        N = 2 * n + 2
        mm = s.model(f"G(2,{N})")

        def middle(mm=mm, n=n, N=N) -> str:
            t = cycle_pairing_table(mm.name, 2 * n, s.catalog, rows=[f"e(E)^{n}", "e(F)"],
                                    cols=[f"CP^{n}", f"CPbar^{n}"])
            c, halves = integral_dual_basis(t.as_lists())
            combos = [mm.reduce(x) for x in dual_combinations(c, t.rows)]
            return f"{fmt_classes(combos)} (index {lattice_index(t.as_lists())}, halves {halves})"

        sg = (-1) ** n
        exp = fmt_classes(mm.reduce(mm.parse(t)) for t in
                          (f"1/2*({sg}*e(E)^{n} + e(F))", f"1/2*({sg}*e(E)^{n} - e(F))"))
        s.add(f"lattice.G(2,{N}).middle.integral-dual", f"{exp} (index 2, halves True)", middle)
    for cid, a, diag in [
        ("identity", [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
        ("G(4,8)-H4", [[0, 1, 0], [1, 0, 0], [1, -1, 2]], [1, 1, 2]),
        ("diag(2,3)", [[2, 0], [0, 3]], [1, 6]),
    ]:
        def example(a=a) -> str:
            _, sm, _ = smith_normal_form(a)
            problems = snf_properties(a)
            return f"diag {[sm[i][i] for i in range(len(sm))]}" + (f" ({'; '.join(problems)})" if problems else "")

        s.add(f"lattice.snf.{cid}", f"diag {diag}", example)

    def random_snf() -> Outcome:
        bad = []
        for i, a in enumerate(random_int_matrices()):
            problems = snf_properties(a)
            if problems:
                bad.append(f"#{i}: {problems[0]}")
        return Outcome(f"{SNF_SAMPLES - len(bad)}/{SNF_SAMPLES} matrices satisfy every property"
                       + (f" ({'; '.join(bad[:3])})" if bad else ""), not bad)

    s.add("lattice.snf.random", f"{SNF_SAMPLES}/{SNF_SAMPLES} matrices satisfy every property", random_snf,
          note=f"seed {SNF_SEED}, 4x4 entries in [-9, 9], oracle: gcd of k-minors")


# -- criterion 8: homology relations --------------------------------------------------


def _relations(s: _Suite) -> None:
    for rid in sorted(s.catalog.relations()):
        def both_sides(rid=rid) -> Outcome:
            ambient, lhs, rhs = homology_relation(rid, s.catalog)
            m = s.model(ambient)
            deg = m.cycles[next(iter(lhs.terms))].degree
            left, right = cycle_pairing_vector(lhs, m, deg), cycle_pairing_vector(rhs, m, deg)
            return Outcome(f"{lhs} pairs {fmt_matrix([left])[1:-1]}, {rhs} pairs {fmt_matrix([right])[1:-1]}",
                           left == right)

        ambient, lhs, rhs = homology_relation(rid, s.catalog)
        s.add(f"relations.{rid}", f"{lhs} = {rhs}", both_sides)

    # the catalogued relations of G(2,N) must be exactly the closed-form ones
    for N in range(4, 9):
        mm = s.model(f"G(2,{N})")
        for k in range(1, N - 2):
            rid = f"G(2,{N}):G(2,{k + 2})"
            if 2 * k + 2 < N:
                want = CycleClass.single(f"CP^{k}", 2 * (-1) ** k)
            elif 2 * k + 2 == N:
                want = CycleClass({f"CP^{k}": (-1) ** k, f"CPbar^{k}": (-1) ** k})
            else:
                continue
            s.add(f"relations.closed-form.{rid}", f"[G(2,{k + 2})] = {want}", lambda rid=rid: _relation_text(rid, s))

    m48 = s.model("G(4,8)")
    s.add("relations.G(4,8).H12.table", "[[2, 0, -1], [0, 2, 1], [0, 0, 2]]",
          lambda: fmt_matrix(cycle_pairing_table("G(4,8)", 12, s.catalog).as_lists()))
    for cyc in ("G(4,7)", "G(3,7)"):
        def by_restriction(cyc=cyc) -> str:
            sub, images = embedding_images(m48, cyc, s.catalog)
            values = [integrate(restrict(m48.parse(t), images, sub), sub) for t in ("e(E)^3", "e(F)^3", "p1(E)^3")]
            return fmt_matrix([values])

        stored = fmt_matrix([[integrate_over(CycleClass.single(cyc), m48.parse(t), m48)
                              for t in ("e(E)^3", "e(F)^3", "p1(E)^3")]])
        s.add(f"relations.G(4,8).H12.{cyc}.restriction", stored, by_restriction)
    s.add("relations.G(3,7).H8.table", "[[1, 1, 2], [1, -1, 0]]",
          lambda: fmt_matrix(cycle_pairing_table("G(3,7)", 8, s.catalog, cols=["ASSOC", "ASSOC~", "G(2,6)"]).as_lists()))
    s.add("relations.G(3,7).H4.table", "[[1, 1], [1, -1]]",
          lambda: fmt_matrix(cycle_pairing_table("G(3,7)", 4, s.catalog).as_lists()))


def _relation_text(rid: str, s: _Suite) -> str:
    _, lhs, rhs = homology_relation(rid, s.catalog)
    return f"{lhs} = {rhs}"


# -- criterion 9: Gysin and recorded cohomology ----------------------------------------


_GROUP_RANK = {"0": (0, 0), "R": (1, 0), "Z": (1, 0), "Z2": (0, 1)}


def _gysin(s: _Suite) -> None:
    s.add("gysin.G(2,7)->ASSOC", "(1, 0, 0, 0, 1, 0, 0, 0, 1)",
          lambda: str(gysin_betti_solver(fibration_descriptor("G(2,7)", "G(2,7)->ASSOC", s.catalog)).coefficients))
    coh = s.catalog.facts.get("cohomology", {}).get("ASSOC")
    if coh is None:
        s.skip("facts.ASSOC", "recorded cohomology rows", "catalog has no cohomology facts for ASSOC")
        return
    real = tuple(1 if g == "R" else 0 for g in coh["R"])
    s.add("gysin.ASSOC.real-row", str(real),
          lambda: str(gysin_betti_solver(fibration_descriptor("G(2,7)", "G(2,7)->ASSOC", s.catalog)).coefficients))
    s.add("facts.ASSOC.free-ranks", str(real), lambda: str(tuple(_GROUP_RANK[g][0] for g in coh["Z"])))

    def uct() -> Outcome:
        z, z2 = coh["Z"], coh["Z2"]
        n = len(z)
        dims = []
        for q in range(n):
            free, tors = _GROUP_RANK[z[q]]
            tors_next = _GROUP_RANK[z[q + 1]][1] if q + 1 < n else 0
            dims.append(free + tors + tors_next)
        recorded = [_GROUP_RANK[g][1] for g in z2]
        return Outcome(f"predicted {dims}, recorded {recorded}", dims == recorded)

    s.add("facts.ASSOC.universal-coefficients", "predicted Z2 dimensions equal the recorded row", uct)
    s.add("facts.ASSOC.poincare-duality", "free ranks palindromic",
          lambda: "free ranks palindromic" if real == real[::-1] else f"not palindromic: {real}")
    for item in s.catalog.facts.get("torsion", []):
        s.skip(f"facts.torsion.{item['id']}", item["statement"], "torsion is recorded, not computed")
    for ident in s.catalog.facts.get("class_identities", []):
        m = s.model(ident["model"])
        for cyc, value in ident.get("expected_integrals", {}).items():
            s.add(f"facts.{ident['id']}.{cyc}", value,
                  lambda m=m, ident=ident, cyc=cyc: fmt_q(integrate_over(CycleClass.single(cyc), m.parse(ident["class"]), m)))


# -- criterion 10: Gauss maps ---------------------------------------------------------


def _solve_cycles(m: ManifoldModel, cycles: Sequence[str], classes: Sequence[str], values: Sequence[Fraction]) -> CycleClass:
    """Cycle combination with prescribed integrals of the given classes."""

    rows = []
    for text in classes:
        rows.append([integrate_over(CycleClass.single(c), m.parse(text), m) for c in cycles])
    mat = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])
    rhs = sympy.Matrix([sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in values])
    sol = mat.LUsolve(rhs)
    return CycleClass({c: Fraction(int(sol[i].p), int(sol[i].q)) for i, c in enumerate(cycles)})


def _gauss(s: _Suite) -> None:
    examples = [
        (("G(4,8)", 2, 0, 0), "1*[G(4,5)]"),
        (("G(2,N)", 2, 0, 0), "1*[G(2,3)]"),
        (("G(4,8)", 24, -16, 0), "12*[G(4,5)] - 24*[G(2,4)]"),
        (("G(2,N)", 0, 0, 0), "0"),
    ]
    order = ["G(4,5)", "G(1,5)", "G(2,4)", "G(2,3)"]
    for (target, chi, sign, lam), want in examples:
        s.add(f"gauss.formula.{target}.chi={chi},sign={sign},lambda={lam}", want,
              lambda a=(target, chi, sign, lam): gauss_map_class(a[0], a[1], a[2], a[3]).render(order, explicit_unit=True))
    m48 = s.model("G(4,8)")
    for chi, sign, lam in [(2, 0, 0), (24, -16, 0), (0, 0, 1), (-4, 2, Fraction(3, 2))]:
        # the Gauss image pairs with e(E), e(F), p1(E) as chi, 2*lambda, 3*Sign
        s.add(f"gauss.solve.G(4,8).chi={chi},sign={sign},lambda={lam}",
              gauss_map_class("G(4,8)", chi, sign, lam).render(order),
              lambda chi=chi, sign=sign, lam=lam: _solve_cycles(
                  m48, ["G(4,5)", "G(1,5)", "G(2,4)"], ["e(E)", "e(F)", "p1(E)"],
                  [Fraction(chi), 2 * Fraction(lam), Fraction(3 * sign)]).render(order))
    for N in range(4, 9):
        m = s.model(f"G(2,{N})")
        for chi in (2, -6):
            s.add(f"gauss.solve.G(2,{N}).chi={chi}", gauss_map_class(f"G(2,{N})", chi).render(),
                  lambda m=m, chi=chi: _solve_cycles(m, ["G(2,3)"], ["e(E)"], [Fraction(chi)]).render())
    m28 = s.model("G(2,8)")
    section = "1/2*e(E)^3 + 1/2*e(F)"
    for normal, chi, want in [(0, 2, 1), (0, 0, 0), (4, 2, 3)]:
        s.add(f"gauss.tau.formula.({normal},{chi})", str(want), lambda normal=normal, chi=chi: fmt_q(tau_gauss_degree(normal, chi)))

        def through_cycles(normal=normal, chi=chi) -> str:
            image = _solve_cycles(m28, ["CP^3", "CPbar^3"], ["e(E)^3", "e(F)"], [Fraction(normal), Fraction(chi)])
            return fmt_q(integrate_over(image, m28.parse(section), m28))

        s.add(f"gauss.tau.cycles.({normal},{chi})", str(want), through_cycles)


# -- entry point -------------------------------------------------------------------


_SECTIONS = [_volumes, _rings, _splitting, _euler, _inner, _duality, _lattice, _relations, _gysin, _gauss]


def run_checks(
    pattern: str | None = None,
    criterion: int | None = None,
    catalog: Catalog | None = None,
) -> VerifyReport:
    cat = catalog if catalog is not None else default_catalog()
    suite = _Suite(cat, pattern, criterion)
    for section in _SECTIONS:
        section(suite)
    return VerifyReport(suite.checks, cat.source)
