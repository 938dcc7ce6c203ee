"""Generate catalog documents for the infinite families G(2, N) and G(1, 2n+1).

The shipped JSON files for these families are produced by this module; run
``python -m grasschar.catalog.families --write`` after changing it.  A test
checks that the shipped files match the generator output.
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any

from ..exact import ExactScalar, render

G2_RANGE = range(3, 9)
SPHERE_RANGE = (3, 5, 7)


def _power(gen: str, k: int) -> str:
    if k == 0:
        return "1"
    return gen if k == 1 else f"{gen}^{k}"


def _signed(expr: str, sign: int) -> str:
    return expr if sign > 0 else f"-{expr}"


def g2_document(N: int) -> dict[str, Any]:
    """Cohomology model of G(2, N); ``m = N - 2`` is the rank of F."""
    m = N - 2
    dim = 2 * m
    middle = m % 2 == 0
    n = m // 2
    e = "e(E)"

    generators = [{"name": e, "degree": 2}, {"name": "p1(E)", "degree": 4}]
    generators += [{"name": f"p{j}(F)", "degree": 4 * j} for j in range(1, m // 2 + 1)]
    if middle:
        generators.append({"name": "e(F)", "degree": m})

    rules = [{"lhs": "p1(E)", "rhs": "e(E)^2"}]
    rules += [
        {"lhs": f"p{j}(F)", "rhs": _signed(_power(e, 2 * j), (-1) ** j)}
        for j in range(1, m // 2 + 1)
    ]
    if middle:
        rules.append({"lhs": "e(E)*e(F)", "rhs": "0"})
        rules.append({"lhs": "e(F)^2", "rhs": _signed(_power(e, 2 * n), (-1) ** n)})

    bases = {str(2 * k): [_power(e, k)] for k in range(m + 1)}
    if middle:
        bases[str(m)].append("e(F)")

    star: dict[str, Any] = {}
    for k in range(1, m):
        scalar = ExactScalar(
            Fraction(factorial(k), factorial(m - k)) * Fraction(2) ** (m - 2 * k), 1, m - 2 * k
        )
        star[_power(e, k)] = {"scalar": render(scalar), "class": _power(e, m - k)}
    if middle:
        star["e(F)"] = {"scalar": "1", "class": _signed("e(F)", (-1) ** n)}

    cycles: dict[str, Any] = {}
    relations: dict[str, Any] = {}
    embeddings: dict[str, Any] = {}
    for k in range(1, m):
        mono = _power(e, k)
        at_middle = middle and k == n
        if 2 * k + 2 <= N:
            pair = {mono: (-1) ** k}
            if at_middle:
                pair["e(F)"] = 1
            cycles[f"CP^{k}"] = {"degree": 2 * k, "pairings": pair}
        if at_middle:
            cycles[f"CPbar^{k}"] = {"degree": 2 * k, "pairings": {mono: (-1) ** k, "e(F)": -1}}
        sub = f"G(2,{k + 2})"
        pair = {mono: 2}
        if at_middle:
            pair["e(F)"] = 0
        cycles[sub] = {"degree": 2 * k, "pairings": pair}
        images = {e: e, "p1(E)": "p1(E)"}
        images.update({f"p{j}(F)": _signed(_power(e, 2 * j), (-1) ** j) for j in range(1, m // 2 + 1)})
        if middle:
            images["e(F)"] = "0"
        embeddings[sub] = {"model": sub, "images": images}
        if at_middle:
            sphere = f"G(1,{2 * n + 1})"
            cycles[sphere] = {"degree": 2 * k, "pairings": {mono: 0, "e(F)": 2}}
            images = {e: "0", "p1(E)": "0", "e(F)": "e(F)"}
            images.update({f"p{j}(F)": f"p{j}(F)" for j in range(1, m // 2 + 1)})
            embeddings[sphere] = {"model": sphere, "images": images}
            sign = (-1) ** n
            relations[f"G(2,{N}):{sub}"] = {
                "lhs": {sub: 1},
                "rhs": {f"CP^{k}": sign, f"CPbar^{k}": sign},
            }
            relations[f"G(2,{N}):{sphere}"] = {
                "lhs": {sphere: 1},
                "rhs": {f"CP^{k}": 1, f"CPbar^{k}": -1},
            }
        elif 2 * k + 2 < N:
            relations[f"G(2,{N}):{sub}"] = {"lhs": {sub: 1}, "rhs": {f"CP^{k}": 2 * (-1) ** k}}

    poincare = [0] * (dim + 1)
    for k in range(m + 1):
        poincare[2 * k] += 1
    if middle:
        poincare[m] += 1

    doc: dict[str, Any] = {
        "name": f"G(2,{N})",
        "kind": "manifold",
        "dim": dim,
        "generators": generators,
        "rules": rules,
        "bases": bases,
        "integrals": {_power(e, m): "2"},
        "star": star,
        "cycles": cycles,
        "poincare": poincare,
    }
    if relations:
        doc["relations"] = relations
    if embeddings:
        doc["embeddings"] = embeddings
    if N == 7:
        doc["fibrations"] = [
            {
                "id": "G(2,7)->ASSOC",
                "base": "ASSOC",
                "fiber_dim": 2,
                "base_dim": 8,
                "euler_class_vanishes_rationally": True,
            }
        ]
    return doc


def sphere_document(N: int) -> dict[str, Any]:
    """Model of G(1, N) = S^(N-1) for odd N."""
    if N % 2 == 0:
        raise ValueError("only odd N gives an even-dimensional sphere with e(F)")
    dim = N - 1
    generators = [{"name": f"p{j}(F)", "degree": 4 * j} for j in range(1, dim // 2 + 1)]
    generators.append({"name": "e(F)", "degree": dim})
    poincare = [0] * (dim + 1)
    poincare[0] = poincare[dim] = 1
    return {
        "name": f"G(1,{N})",
        "kind": "manifold",
        "dim": dim,
        "generators": generators,
        "rules": [{"lhs": g["name"], "rhs": "0"} for g in generators[:-1]],
        "bases": {"0": ["1"], str(dim): ["e(F)"]},
        "integrals": {"e(F)": "2"},
        "star": {},
        "cycles": {},
        "poincare": poincare,
    }


def generated_documents() -> dict[str, dict[str, Any]]:
    docs = {f"G(2,{N})": g2_document(N) for N in G2_RANGE}
    docs.update({f"G(1,{N})": sphere_document(N) for N in SPHERE_RANGE})
    return docs


def file_name(model_name: str) -> str:
    """``G(2,6)`` -> ``G2_6.json``."""
    inner = model_name[model_name.index("(") + 1 : -1].replace(",", "_")
    return f"G{inner}.json"


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--write", action="store_true", help="overwrite the shipped files")
    parser.add_argument("--dir", type=Path, default=Path(__file__).parent / "data")
    args = parser.parse_args(argv)
    stale = []
    for name, doc in generated_documents().items():
        path = args.dir / file_name(name)
        text = dumps(doc)
        if not path.exists() or path.read_text("utf-8") != text:
            stale.append(path.name)
            if args.write:
                path.write_text(text, "utf-8")
    for name in stale:
        print(("wrote " if args.write else "stale ") + name)
    return 0 if args.write or not stale else 1


if __name__ == "__main__":
    raise SystemExit(main())
