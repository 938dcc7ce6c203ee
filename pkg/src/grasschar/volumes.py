"""Exact volumes of spheres, classical groups and their homogeneous spaces.

All metrics are the ones induced from the standard matrix embeddings, so
``V(S^1) = 2*pi`` and the group volumes satisfy the fibration recursions
implemented below.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial

from . import exact
from .errors import InvalidDescriptor, UnknownEntity
from .exact import ExactScalar

KINDS = ("S", "SO", "U", "SU", "G", "GC", "SLAG", "CatalogSpace")


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: str
    params: tuple[int, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidDescriptor(f"unknown space kind {self.kind!r}")
        p = self.params
        if self.kind == "CatalogSpace":
            if not self.name:
                raise InvalidDescriptor("catalog space needs a name")
            return
        if self.kind in ("G", "GC"):
            if len(p) != 2 or not (1 <= p[0] <= p[1] - 1):
                raise InvalidDescriptor(f"{self.kind}{p}: need 1 <= k <= n-1")
        elif self.kind == "S":
            if len(p) != 1 or p[0] < 0:
                raise InvalidDescriptor(f"S{p}: need a dimension >= 0")
        elif len(p) != 1 or p[0] < 1:
            raise InvalidDescriptor(f"{self.kind}{p}: need n >= 1")

    def __str__(self) -> str:
        if self.kind == "CatalogSpace":
            return self.name
        return f"{self.kind}({','.join(map(str, self.params))})"


def sphere_volume(m: int) -> ExactScalar:
    """Volume of the unit sphere ``S^m``."""
    if m < 0:
        raise InvalidDescriptor("sphere dimension must be non-negative")
    if m == 0:
        return ExactScalar(2)
    if m % 2 == 1:
        n = (m + 1) // 2
        return ExactScalar(Fraction(2, factorial(n - 1)), 1, n)
    n = m // 2
    return ExactScalar(Fraction(2 ** (2 * n + 1) * factorial(n), factorial(2 * n)), 1, n)


def _sqrt2_power(e: int) -> ExactScalar:
    """``2^(e/2)`` for an integer ``e``."""
    return ExactScalar.sqrt(2) ** e


@lru_cache(maxsize=None)
def so_volume(n: int) -> ExactScalar:
    if n < 1:
        raise InvalidDescriptor("SO(n) needs n >= 1")
    if n == 1:
        return exact.ONE
    return _sqrt2_power(n - 1) * sphere_volume(n - 1) * so_volume(n - 1)


@lru_cache(maxsize=None)
def u_volume(n: int) -> ExactScalar:
    if n < 1:
        raise InvalidDescriptor("U(n) needs n >= 1")
    if n == 1:
        return ExactScalar(2, 1, 1)
    return ExactScalar(2 ** (n - 1)) * sphere_volume(2 * n - 1) * u_volume(n - 1)


@lru_cache(maxsize=None)
def su_volume(n: int) -> ExactScalar:
    if n < 1:
        raise InvalidDescriptor("SU(n) needs n >= 1")
    if n == 1:
        return exact.ONE
    step = ExactScalar(2 ** (n - 1)) * ExactScalar.sqrt(Fraction(n, n - 1))
    return step * sphere_volume(2 * n - 1) * su_volume(n - 1)


def grassmann_volume(k: int, n: int) -> ExactScalar:
    """Sphere-ratio form: ``V(S^{n-1})...V(S^{n-k}) / (V(S^{k-1})...V(S^1))``."""
    if not 1 <= k <= n - 1:
        raise InvalidDescriptor(f"G({k},{n}): need 1 <= k <= n-1")
    num = exact.ONE
    for j in range(n - k, n):
        num = num * sphere_volume(j)
    den = exact.ONE
    for j in range(1, k):
        den = den * sphere_volume(j)
    return num / den


def grassmann_volume_via_groups(k: int, n: int) -> ExactScalar:
    """Quotient form ``V(SO(n)) / (2^{k(n-k)/2} V(SO(k)) V(SO(n-k)))``."""
    if not 1 <= k <= n - 1:
        raise InvalidDescriptor(f"G({k},{n}): need 1 <= k <= n-1")
    return so_volume(n) / (_sqrt2_power(k * (n - k)) * so_volume(k) * so_volume(n - k))


def complex_grassmann_volume(k: int, n: int) -> ExactScalar:
    if not 1 <= k <= n - 1:
        raise InvalidDescriptor(f"GC({k},{n}): need 1 <= k <= n-1")
    return u_volume(n) / (u_volume(k) * u_volume(n - k))


def slag_volume(n: int) -> ExactScalar:
    """Volume of the special Lagrangian Grassmannian ``SU(n)/SO(n)``."""
    return su_volume(n) / so_volume(n)


@lru_cache(maxsize=1)
def _catalog_spaces() -> dict[str, dict]:
    text = resources.files("grasschar").joinpath("data/spaces.json").read_text("utf-8")
    return json.loads(text)["spaces"]


def catalog_space_names() -> list[str]:
    return sorted(_catalog_spaces())


def catalog_space_volume(name: str) -> ExactScalar:
    spaces = _catalog_spaces()
    if name not in spaces:
        raise UnknownEntity(f"no recorded volume for {name!r}")
    entry = spaces[name]
    value = exact.parse(entry["factor"])
    if "times" in entry:
        value = value * volume(parse_descriptor(entry["times"]))
    return value


def volume(s: SpaceDescriptor) -> ExactScalar:
    p = s.params
    if s.kind == "S":
        return sphere_volume(p[0])
    if s.kind == "SO":
        return so_volume(p[0])
    if s.kind == "U":
        return u_volume(p[0])
    if s.kind == "SU":
        return su_volume(p[0])
    if s.kind == "G":
        return grassmann_volume(*p)
    if s.kind == "GC":
        return complex_grassmann_volume(*p)
    if s.kind == "SLAG":
        return slag_volume(p[0])
    return catalog_space_volume(s.name)


_DESCRIPTOR = re.compile(r"^\s*(S|SO|U|SU|G|GC|SLAG)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def parse_descriptor(text: str) -> SpaceDescriptor:
    """Parse ``S(6)``, ``SO(5)``, ``G(3,7)``, ``GC(2,4)``, ``SLAG(3)`` or a catalog name."""
    m = _DESCRIPTOR.match(text)
    if m:
        params = tuple(int(g) for g in m.groups()[1:] if g is not None)
        return SpaceDescriptor(m.group(1), params)
    name = text.strip()
    if name in _catalog_spaces():
        return SpaceDescriptor("CatalogSpace", (), name)
    raise InvalidDescriptor(f"cannot parse space descriptor {text!r}")
