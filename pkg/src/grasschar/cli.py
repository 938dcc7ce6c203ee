"""Command-line interface: ``grasschar <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 bad input or catalog,
3 unknown entity, 4 contract violation (for example integrating a class
that is not of top degree).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import exact
from .catalog import (
    Catalog,
    PoincarePolynomial,
    SphereBundleDescriptor,
    cycle_pairing_table,
    default_catalog,
    fibration_descriptor,
    gauss_map_class,
    gysin_betti_solver,
    load_catalog,
    tau_gauss_degree,
)
from .charring import integrate, star
from .duality import (
    dual_combinations,
    harmonic_dual_basis,
    integral_dual_basis,
    lattice_index,
    poincare_dual,
    smith_normal_form,
)
from .errors import CatalogError, GrasscharError, InvalidDescriptor, ParseError, UnknownEntity
from .expr import CharClassExpr
from .verify import fmt_matrix, fmt_q, run_checks
from .volumes import parse_descriptor, volume

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_UNKNOWN, EXIT_CONTRACT = 0, 1, 2, 3, 4

GAUSS_ORDER = ["G(4,5)", "G(1,5)", "G(2,4)", "G(2,3)"]


def _catalog(args: argparse.Namespace) -> Catalog:
    return load_catalog(args.catalog) if args.catalog else default_catalog()


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").strip("()[]").split(",") if t)
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


# -- commands ------------------------------------------------------------------


def cmd_volume(args: argparse.Namespace) -> int:
    value = volume(parse_descriptor(args.space))
    print(exact.render(value))
    if args.approx:
        print(f"{float(value):.12g}")
    return EXIT_OK


def cmd_class(args: argparse.Namespace) -> int:
    m = _catalog(args).model(args.manifold)
    x = m.parse(args.expression)
    if args.action == "reduce":
        print(m.reduce(x))
    elif args.action == "integrate":
        print(fmt_q(integrate(x, m)))
    elif args.action == "star":
        print(star(x, m))
    else:
        print(poincare_dual(x, m))
    return EXIT_OK


def cmd_dual_basis(args: argparse.Namespace) -> int:
    m = _catalog(args).model(args.manifold)
    if args.classes:
        basis = [m.parse(t) for t in args.classes]
    else:
        basis = [CharClassExpr.from_monomial(b) for b in m.basis(args.degree)]
        if not basis:
            raise InvalidDescriptor(f"{m.name} has no classes in degree {args.degree}")
    for phi, psi in zip(basis, harmonic_dual_basis(basis, m)):
        print(f"{phi} -> {psi}")
    return EXIT_OK


def cmd_pairing(args: argparse.Namespace) -> int:
    table = cycle_pairing_table(args.manifold, args.degree, _catalog(args), args.rows, args.cols)
    print(table.render())
    if args.integral_dual:
        c, halves = integral_dual_basis(table.as_lists())
        m = _catalog(args).model(args.manifold)
        for col, cls in zip(table.cols, dual_combinations(c, table.rows)):
            print(f"[{col}] -> {m.reduce(cls)}")
        print(f"index {lattice_index(table.as_lists())}, denominators divide 2: {halves}")
    return EXIT_OK


def cmd_snf(args: argparse.Namespace) -> int:
    try:
        a = json.loads(args.matrix)
        if not (isinstance(a, list) and a and all(isinstance(r, list) and len(r) == len(a[0]) for r in a)):
            raise ValueError("need a non-empty rectangular list of rows")
        a = [[int(v) if isinstance(v, int) else _raise_int(v) for v in row] for row in a]
    except (json.JSONDecodeError, ValueError) as exc:
        raise ParseError(f"cannot parse integer matrix {args.matrix!r}: {exc}") from exc
    u, s, v = smith_normal_form(a)
    print(f"U = {json.dumps(u)}")
    print(f"S = {json.dumps(s)}")
    print(f"V = {json.dumps(v)}")
    return EXIT_OK


def _raise_int(v: object) -> int:
    raise ValueError(f"{v!r} is not an integer")


def cmd_gysin(args: argparse.Namespace) -> int:
    if args.fibration:
        model = args.model or args.fibration.split("->")[0]
        d = fibration_descriptor(model, args.fibration, _catalog(args))
    else:
        if args.total is None or args.fiber_dim is None:
            raise ParseError("give --fibration or both --total and --fiber-dim")
        total = PoincarePolynomial(_int_list(args.total))
        d = SphereBundleDescriptor(args.fiber_dim, total, total.dim - args.fiber_dim, True)
    p = gysin_betti_solver(d)
    print(",".join(map(str, p.coefficients)))
    print(p)
    return EXIT_OK


def cmd_gauss(args: argparse.Namespace) -> int:
    if args.tau is not None:
        print(fmt_q(tau_gauss_degree(_fraction(args.tau), args.chi)))
        return EXIT_OK
    c = gauss_map_class(args.target, args.chi, args.sign, _fraction(args.lam))
    print(c.render(GAUSS_ORDER, explicit_unit=True))
    return EXIT_OK


def cmd_betti(args: argparse.Namespace) -> int:
    m = _catalog(args).model(args.manifold)
    p = PoincarePolynomial(tuple(m.poincare))
    print(",".join(map(str, p.coefficients)))
    print(p)
    print(f"euler characteristic {p.euler_characteristic()}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_checks(args.filter, args.criterion, _catalog(args))
    print(report.render_table())
    if args.json:
        Path(args.json).write_text(report.to_json(), "utf-8")
    return EXIT_OK if report.ok else EXIT_VERIFY


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grasschar", description="Exact characteristic-class computations on Grassmannians.")
    parser.add_argument("--catalog", help="directory of catalog JSON documents (default: bundled catalog)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="exact volume of a space, e.g. G(3,7), SO(5), SLAG(3), S(6), ASSOC")
    p.add_argument("space")
    p.add_argument("--approx", action="store_true", help="also print a decimal approximation")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("class", help="reduce, integrate, star or dualize a characteristic class")
    p.add_argument("manifold")
    p.add_argument("expression")
    p.add_argument("action", choices=["reduce", "integrate", "star", "dual"])
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("dual-basis", help="harmonic dual basis of a degree")
    p.add_argument("manifold")
    p.add_argument("degree", type=int)
    p.add_argument("--classes", nargs="+", help="basis classes (default: the catalog basis)")
    p.set_defaults(func=cmd_dual_basis)

    p = sub.add_parser("pairing", help="integrals of classes over the cycles of one degree")
    p.add_argument("manifold")
    p.add_argument("degree", type=int)
    p.add_argument("--rows", nargs="+", help="row classes")
    p.add_argument("--cols", nargs="+", help="column cycles")
    p.add_argument("--integral-dual", action="store_true", help="also print the integral dual basis")
    p.set_defaults(func=cmd_pairing)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix given as JSON")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("gysin", help="Betti numbers of the base of a sphere bundle")
    p.add_argument("--fibration", help="catalog fibration id, e.g. 'G(2,7)->ASSOC'")
    p.add_argument("--model", help="model holding the fibration (default: the part before '->')")
    p.add_argument("--total", help="Betti numbers of the total space, comma separated")
    p.add_argument("--fiber-dim", type=int)
    p.set_defaults(func=cmd_gysin)

    p = sub.add_parser("gauss", help="homology class of a Gauss image")
    p.add_argument("--target", required=True, help="G(2,N), G(2,<n>), G(4,8), G(4,7) or G(4,6)")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--sign", type=int, default=0)
    p.add_argument("--lambda", dest="lam", default="0")
    p.add_argument("--tau", help="integral of e^3 of the normal bundle; prints the degree of tau o g instead")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("betti", help="Poincaré polynomial of a catalog model")
    p.add_argument("manifold")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--json", help="write the report as JSON to this path")
    p.add_argument("--filter", help="regular expression selecting check ids")
    p.add_argument("--criterion", type=int, choices=range(1, 11))
    p.set_defaults(func=cmd_verify)
    return parser


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, UnknownEntity):
        return EXIT_UNKNOWN
    if isinstance(exc, (ParseError, InvalidDescriptor, CatalogError, OSError)):
        return EXIT_INPUT
    if isinstance(exc, GrasscharError):
        return EXIT_CONTRACT
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GrasscharError, OSError, ValueError) as exc:
        print(f"grasschar: error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    raise SystemExit(main())
