"""Independent oracles used by the tests.

None of these call into the engine's rewriting, star tables or catalog
integrals; they recompute the same quantities from scratch by other means.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd, prod
from typing import Iterator, Mapping, Sequence

import sympy

# -- localization on oriented Grassmannians -------------------------------------


def fixed_points(k: int, n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Torus-fixed oriented k-planes: (planes in E, planes in F, orientation sign)."""
    if k % 2 == 1 and n % 2 == 0:
        raise ValueError(f"G({k},{n}) has no isolated torus-fixed points")
    r = n // 2
    for chosen in combinations(range(r), k // 2):
        rest = tuple(j for j in range(r) if j not in chosen)
        for sigma in (1, -1):
            yield chosen, rest, sigma


def _elementary(values: Sequence[Fraction], i: int) -> Fraction:
    return sum((prod(c) for c in combinations(values, i)), Fraction(0))


def evaluate_at(
    k: int, n: int, mono: Sequence[tuple[str, int]], point, x: Sequence[Fraction]
) -> tuple[Fraction, Fraction]:
    """Value of a generator monomial and of the tangent Euler class at a fixed point."""
    chosen, rest, sigma = point
    a = [x[i] for i in chosen]
    b = [x[j] for j in rest]
    # E and F flip orientation together because E + F is the oriented R^n
    if a:
        a[0] *= sigma
    if b:
        b[0] *= sigma
    e_has_line = k % 2 == 1
    f_has_line = (n - k) % 2 == 1
    values = {}
    sq_a, sq_b = [v * v for v in a], [v * v for v in b]
    for i in range(1, len(a) + 1):
        values[f"p{i}(E)"] = _elementary(sq_a, i)
    for j in range(1, len(b) + 1):
        values[f"p{j}(F)"] = _elementary(sq_b, j)
    if not e_has_line:
        values["e(E)"] = prod(a, start=Fraction(1)) if a else Fraction(sigma)
    if not f_has_line:
        values["e(F)"] = prod(b, start=Fraction(1)) if b else Fraction(sigma)
    value = Fraction(1)
    for name, power in mono:
        value *= values[name] ** power
    euler = prod((u * u - v * v for u in a for v in b), start=Fraction(1))
    if e_has_line:
        euler *= prod(b, start=Fraction(1))
    if f_has_line:
        euler *= prod(a, start=Fraction(1))
    return value, euler


def localized_integral(k: int, n: int, mono: Sequence[tuple[str, int]], x: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for point in fixed_points(k, n):
        value, euler = evaluate_at(k, n, mono, point, x)
        total += value / euler
    return total


def generator_degrees(k: int, n: int) -> dict[str, int]:
    gens = {f"p{i}(E)": 4 * i for i in range(1, k // 2 + 1)}
    gens.update({f"p{j}(F)": 4 * j for j in range(1, (n - k) // 2 + 1)})
    if k % 2 == 0:
        gens["e(E)"] = k
    if (n - k) % 2 == 0:
        gens["e(F)"] = n - k
    return gens


def top_monomials(degrees: Mapping[str, int], top: int) -> list[tuple[tuple[str, int], ...]]:
    names = sorted(degrees)
    out = []
    bounds = [top // degrees[g] for g in names]
    for powers in product(*(range(b + 1) for b in bounds)):
        if sum(p * degrees[g] for p, g in zip(powers, names)) == top:
            out.append(tuple((g, p) for g, p in zip(names, powers) if p))
    return out


# -- Smith normal form -----------------------------------------------------------


def minor_gcds(a: Sequence[Sequence[int]]) -> list[int]:
    """``d_k`` = gcd of all k-by-k minors (sympy determinants)."""
    rows, cols = len(a), len(a[0])
    out = []
    for size in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), size):
            for ci in combinations(range(cols), size):
                g = gcd(g, int(sympy.Matrix([[a[i][j] for j in ci] for i in ri]).det()))
        out.append(g)
    return out


def invariant_factors(a: Sequence[Sequence[int]]) -> list[int]:
    d = minor_gcds(a)
    out, prev = [], 1
    for i, g in enumerate(d):
        if g == 0:
            return out + [0] * (len(d) - i)
        out.append(g // prev)
        prev = g
    return out


# -- volumes -------------------------------------------------------------------


def sphere_volume_gamma(m: int) -> sympy.Expr:
    """``2 pi^((m+1)/2) / Gamma((m+1)/2)``."""
    h = sympy.Rational(m + 1, 2)
    return sympy.simplify(2 * sympy.pi**h / sympy.gamma(h))


def so_volume_product(n: int) -> sympy.Expr:
    """``V(SO(n)) = 2^((n-1)(n-2)/4)... `` built directly as a product of spheres."""
    v = sympy.Integer(1)
    for j in range(1, n):
        v *= sympy.sqrt(2) ** j * sphere_volume_gamma(j)
    return sympy.simplify(v)


def exact_to_sympy(x) -> sympy.Expr:
    return sympy.Rational(x.coeff.numerator, x.coeff.denominator) * sympy.sqrt(x.radicand) * sympy.pi**x.pi_pow
