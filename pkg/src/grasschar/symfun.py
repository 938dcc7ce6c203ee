"""Splitting-principle computations on formal roots.

A bundle of real rank ``2a`` (or ``2a + 1``) is modelled by ``a`` paired roots
plus, for odd rank, one zero root.  The canonical bundle ``E`` uses roots
``x_1..x_a`` and its complement ``F`` uses ``y_1..y_b``.  Polynomials in these
roots are converted back into Pontryagin and Euler generators by
:func:`express_in_generators`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .errors import NotExpressible, OddRankNoEuler
from .expr import CharClassExpr, make_monomial

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class BundleRoots:
    label: str
    paired_count: int
    has_zero_root: bool = False

    def __post_init__(self) -> None:
        if self.label not in ("E", "F"):
            raise ValueError(f"bundle label must be 'E' or 'F', got {self.label!r}")
        if self.paired_count < 0:
            raise ValueError("paired_count must be non-negative")
        if self.rank < 1:
            raise ValueError("bundle rank must be at least 1")

    @property
    def rank(self) -> int:
        return 2 * self.paired_count + (1 if self.has_zero_root else 0)

    @classmethod
    def of_rank(cls, label: str, rank: int) -> "BundleRoots":
        return cls(label, rank // 2, rank % 2 == 1)


def grassmann_bundles(k: int, n: int) -> tuple[BundleRoots, BundleRoots]:
    """Root descriptors of the canonical bundles over G(k, n)."""
    return BundleRoots.of_rank("E", k), BundleRoots.of_rank("F", n - k)


class RootPolynomial:
    """Rational polynomial in ``nx`` x-roots followed by ``ny`` y-roots."""

    __slots__ = ("nx", "ny", "_terms")

    def __init__(self, nx: int, ny: int, terms: Mapping[Exponents, Fraction | int] | None = None):
        self.nx = nx
        self.ny = ny
        clean: dict[Exponents, Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nx + ny:
                raise ValueError(f"exponent vector {exps} does not have arity {nx + ny}")
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = clean.get(tuple(exps), Fraction(0)) + c
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, c: Fraction | int, nx: int = 0, ny: int = 0) -> "RootPolynomial":
        return cls(nx, ny, {(0,) * (nx + ny): c})

    @classmethod
    def x(cls, i: int, nx: int, ny: int = 0) -> "RootPolynomial":
        exps = [0] * (nx + ny)
        exps[i] = 1
        return cls(nx, ny, {tuple(exps): 1})

    @classmethod
    def y(cls, j: int, ny: int, nx: int = 0) -> "RootPolynomial":
        exps = [0] * (nx + ny)
        exps[nx + j] = 1
        return cls(nx, ny, {tuple(exps): 1})

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def padded(self, nx: int, ny: int) -> "RootPolynomial":
        if nx < self.nx or ny < self.ny:
            raise ValueError("cannot shrink the variable set of a root polynomial")
        if (nx, ny) == (self.nx, self.ny):
            return self
        out = {}
        for e, c in self._terms.items():
            xs, ys = e[: self.nx], e[self.nx :]
            out[xs + (0,) * (nx - self.nx) + ys + (0,) * (ny - self.ny)] = c
        return RootPolynomial(nx, ny, out)

    def _aligned(self, other: "RootPolynomial") -> tuple["RootPolynomial", "RootPolynomial"]:
        nx, ny = max(self.nx, other.nx), max(self.ny, other.ny)
        return self.padded(nx, ny), other.padded(nx, ny)

    def __add__(self, other: object) -> "RootPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        acc = dict(a._terms)
        for e, c in b._terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return RootPolynomial(a.nx, a.ny, acc)

    __radd__ = __add__

    def __neg__(self) -> "RootPolynomial":
        return RootPolynomial(self.nx, self.ny, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "RootPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "RootPolynomial":
        return (-self) + other

    def __mul__(self, other: object) -> "RootPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        acc: dict[Exponents, Fraction] = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(u + v for u, v in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return RootPolynomial(a.nx, a.ny, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RootPolynomial":
        result = RootPolynomial.constant(1, self.nx, self.ny)
        for _ in range(n):
            result = result * self
        return result

    def _coerce(self, other: object) -> "RootPolynomial":
        if isinstance(other, RootPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RootPolynomial.constant(other, self.nx, self.ny)
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        return hash(frozenset(self.padded(self.nx, self.ny)._terms.items()))

    def root_degree_part(self, total: int) -> "RootPolynomial":
        """Terms whose exponents sum to ``total`` (cohomological degree ``2*total``)."""
        return RootPolynomial(
            self.nx, self.ny, {e: c for e, c in self._terms.items() if sum(e) == total}
        )

    def __repr__(self) -> str:
        return f"RootPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nx)] + [f"y{j + 1}" for j in range(self.ny)]
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


def _family_shape(b: BundleRoots) -> tuple[int, int]:
    return (b.paired_count, 0) if b.label == "E" else (0, b.paired_count)


def _variable(b: BundleRoots, i: int) -> RootPolynomial:
    nx, ny = _family_shape(b)
    return RootPolynomial.x(i, nx, ny) if b.label == "E" else RootPolynomial.y(i, ny, nx)


def total_pontryagin_roots(b: BundleRoots) -> RootPolynomial:
    nx, ny = _family_shape(b)
    result = RootPolynomial.constant(1, nx, ny)
    for i in range(b.paired_count):
        v = _variable(b, i)
        result = result * (1 + v * v)
    return result


def euler_roots(b: BundleRoots) -> RootPolynomial:
    if b.has_zero_root:
        raise OddRankNoEuler(f"bundle {b.label} of odd rank {b.rank} has no Euler class")
    nx, ny = _family_shape(b)
    result = RootPolynomial.constant(1, nx, ny)
    for i in range(b.paired_count):
        result = result * _variable(b, i)
    return result


def _check_pair(e: BundleRoots, f: BundleRoots) -> None:
    if e.label != "E" or f.label != "F":
        raise ValueError("expected an E bundle followed by an F bundle")


def tensor_euler_roots(e: BundleRoots, f: BundleRoots) -> RootPolynomial:
    """Euler class of the real tensor product ``E ⊗ F`` in root form.

    Each pair of paired roots contributes ``x_i^2 - y_a^2``; a zero root of one
    bundle against a paired root ``v`` of the other contributes ``v``.
    """
    _check_pair(e, f)
    if e.has_zero_root and f.has_zero_root:
        raise OddRankNoEuler("tensor product of two odd-rank bundles has odd rank")
    nx, ny = e.paired_count, f.paired_count
    xs = [RootPolynomial.x(i, nx, ny) for i in range(nx)]
    ys = [RootPolynomial.y(j, ny, nx) for j in range(ny)]
    result = RootPolynomial.constant(1, nx, ny)
    for x in xs:
        for y in ys:
            result = result * (x * x - y * y)
    if f.has_zero_root:
        for x in xs:
            result = result * x
    if e.has_zero_root:
        for y in ys:
            result = result * y
    return result


def tensor_pontryagin_roots(e: BundleRoots, f: BundleRoots) -> RootPolynomial:
    """Total Pontryagin class of ``E ⊗ F`` in root form."""
    _check_pair(e, f)
    nx, ny = e.paired_count, f.paired_count
    xs = [RootPolynomial.x(i, nx, ny) for i in range(nx)]
    ys = [RootPolynomial.y(j, ny, nx) for j in range(ny)]
    result = RootPolynomial.constant(1, nx, ny)
    for x in xs:
        for y in ys:
            x2, y2 = x * x, y * y
            result = result * (1 + 2 * (x2 + y2) + (x2 - y2) * (x2 - y2))
    if f.has_zero_root:
        for x in xs:
            result = result * (1 + x * x)
    if e.has_zero_root:
        for y in ys:
            result = result * (1 + y * y)
    return result


# -- rewriting into generators ---------------------------------------------


def _check_invariance(p: RootPolynomial, fam: slice, zero_root: bool, label: str) -> None:
    terms = p.terms
    width = len(range(*fam.indices(p.nx + p.ny)))
    for e, c in terms.items():
        block = e[fam]
        for i in range(width - 1):
            swapped = list(e)
            start = fam.start or 0
            swapped[start + i], swapped[start + i + 1] = swapped[start + i + 1], swapped[start + i]
            if terms.get(tuple(swapped), Fraction(0)) != c:
                raise NotExpressible(f"not symmetric in the {label} roots")
        parities = {k % 2 for k in block}
        if zero_root and 1 in parities:
            raise NotExpressible(f"not invariant under sign changes of the {label} roots")
        if width >= 2 and len(parities) > 1:
            raise NotExpressible(f"not invariant under sign changes of the {label} roots")


def _elementary(k: int, start: int, count: int, arity: int) -> dict[Exponents, Fraction]:
    out: dict[Exponents, Fraction] = {}
    for combo in combinations(range(start, start + count), k):
        e = [0] * arity
        for i in combo:
            e[i] = 1
        out[tuple(e)] = Fraction(1)
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    acc: dict[Exponents, Fraction] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(u + v for u, v in zip(e1, e2))
            acc[e] = acc.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in acc.items() if c}


def _symmetric_reduce(
    poly: dict[Exponents, Fraction], nx: int, ny: int
) -> CharClassExpr:
    """Write a polynomial symmetric in each family via elementary symmetric functions.

    The input lives in squared variables: exponent ``k`` stands for ``v^(2k)``,
    and ``e_i`` of the x-family becomes ``p_i(E)``.
    """
    arity = nx + ny
    elem = {("E", i): _elementary(i, 0, nx, arity) for i in range(1, nx + 1)}
    elem.update({("F", j): _elementary(j, nx, ny, arity) for j in range(1, ny + 1)})
    poly = dict(poly)
    out: dict = {}
    guard = 0
    while poly:
        guard += 1
        if guard > 100000:
            raise NotExpressible("symmetric reduction did not terminate")
        lead = max(poly)
        c = poly[lead]
        xs, ys = lead[:nx], lead[nx:]
        if any(xs[i] < xs[i + 1] for i in range(nx - 1)) or any(
            ys[i] < ys[i + 1] for i in range(ny - 1)
        ):
            raise NotExpressible("polynomial is not symmetric")
        powers: dict[str, int] = {}
        sub = {(0,) * arity: Fraction(1)}
        for fam, vals, count in (("E", xs, nx), ("F", ys, ny)):
            for i in range(count):
                nxt = vals[i + 1] if i + 1 < count else 0
                k = vals[i] - nxt
                if k:
                    powers[f"p{i + 1}({fam})"] = k
                    for _ in range(k):
                        sub = _poly_mul(sub, elem[(fam, i + 1)])
        mono = make_monomial(powers)
        out[mono] = out.get(mono, Fraction(0)) + c
        for e, v in sub.items():
            poly[e] = poly.get(e, Fraction(0)) - c * v
            if not poly[e]:
                del poly[e]
    return CharClassExpr(out)


def express_in_generators(p: RootPolynomial, e: BundleRoots, f: BundleRoots) -> CharClassExpr:
    """Rewrite a root polynomial as a polynomial in p_i(E), e(E), p_j(F), e(F).

    The product of all roots of a family is factored out at most once per
    term, so the Euler class appears to power 0 or 1 and its square is
    expressed through the top Pontryagin class.
    """
    _check_pair(e, f)
    nx, ny = e.paired_count, f.paired_count
    if p.nx > nx or p.ny > ny:
        raise NotExpressible("polynomial uses more roots than the bundles provide")
    p = p.padded(nx, ny)
    _check_invariance(p, slice(0, nx), e.has_zero_root, "E")
    _check_invariance(p, slice(nx, nx + ny), f.has_zero_root, "F")

    groups: dict[tuple[int, int], dict[Exponents, Fraction]] = {}
    for exps, c in p.terms.items():
        xs, ys = exps[:nx], exps[nx:]
        ex = 1 if nx and xs[0] % 2 == 1 else 0
        ey = 1 if ny and ys[0] % 2 == 1 else 0
        halved = tuple((k - ex) // 2 for k in xs) + tuple((k - ey) // 2 for k in ys)
        groups.setdefault((ex, ey), {})[halved] = c

    result = CharClassExpr()
    for (ex, ey), poly in groups.items():
        sym = _symmetric_reduce(poly, nx, ny)
        euler = CharClassExpr.constant(1)
        if ex:
            euler = euler * CharClassExpr.gen("e(E)")
        if ey:
            euler = euler * CharClassExpr.gen("e(F)")
        result = result + euler * sym
    return result


def to_roots(x: CharClassExpr, e: BundleRoots, f: BundleRoots) -> RootPolynomial:
    """Expand a generator polynomial back into roots (inverse of the above)."""
    _check_pair(e, f)
    nx, ny = e.paired_count, f.paired_count
    arity = nx + ny
    images: dict[str, RootPolynomial] = {}
    for i in range(1, nx + 1):
        images[f"p{i}(E)"] = RootPolynomial(
            nx, ny, {tuple(2 * k for k in ex): 1 for ex in _elementary(i, 0, nx, arity)}
        )
    for j in range(1, ny + 1):
        images[f"p{j}(F)"] = RootPolynomial(
            nx, ny, {tuple(2 * k for k in ex): 1 for ex in _elementary(j, nx, ny, arity)}
        )
    if not e.has_zero_root:
        images["e(E)"] = euler_roots(e).padded(nx, ny)
    if not f.has_zero_root:
        images["e(F)"] = euler_roots(f).padded(nx, ny)
    result = RootPolynomial(nx, ny)
    for mono, c in x.terms.items():
        term = RootPolynomial.constant(c, nx, ny)
        for name, k in mono:
            if name not in images:
                raise NotExpressible(f"generator {name} has no root expression for these bundles")
            term = term * images[name] ** k
        result = result + term
    return result
