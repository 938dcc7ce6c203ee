from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from grasschar import exact
from grasschar.errors import InvalidDescriptor, UnknownEntity
from grasschar.exact import ExactScalar
from grasschar.volumes import (
    SpaceDescriptor,
    catalog_space_names,
    complex_grassmann_volume,
    grassmann_volume,
    grassmann_volume_via_groups,
    parse_descriptor,
    slag_volume,
    so_volume,
    sphere_volume,
    su_volume,
    u_volume,
    volume,
)

from oracles import exact_to_sympy, so_volume_product, sphere_volume_gamma


def same(x: ExactScalar, y: sympy.Expr) -> bool:
    return sympy.simplify(exact_to_sympy(x) - y) == 0


@pytest.mark.parametrize("m", range(0, 16))
def test_sphere_matches_gamma_formula(m):
    assert same(sphere_volume(m), sphere_volume_gamma(m))


@pytest.mark.parametrize("n", range(1, 10))
def test_so_matches_sphere_product(n):
    assert same(so_volume(n), so_volume_product(n))


@pytest.mark.parametrize("n", range(1, 7))
def test_oriented_plane_grassmannians(n):
    expected = ExactScalar(Fraction(2 * 2**n, factorial(n)), 1, n)
    assert volume(parse_descriptor(f"G(2,{n + 2})")) == expected


@pytest.mark.parametrize(
    "text, value",
    [
        ("G(3,6)", "2/3 * pi^5"),
        ("G(3,7)", "16/45 * pi^6"),
        ("G(3,8)", "2/45 * pi^8"),
        ("G(4,8)", "8/135 * pi^8"),
        ("SLAG(3)", "1/2 * sqrt(6) * pi^3"),
        ("S(6)", "16/15 * pi^3"),
    ],
)
def test_listed_constants(text, value):
    assert volume(parse_descriptor(text)) == exact.parse(value)


@pytest.mark.parametrize("n", range(1, 9))
def test_odd_spheres(n):
    assert sphere_volume(2 * n - 1) == ExactScalar(Fraction(2, factorial(n - 1)), 1, n)


@pytest.mark.parametrize("n", range(2, 10))
def test_two_grassmann_forms_agree(n):
    for k in range(1, n):
        assert grassmann_volume(k, n) == grassmann_volume_via_groups(k, n)


@given(st.integers(min_value=2, max_value=9), st.data())
def test_grassmann_duality(n, data):
    k = data.draw(st.integers(min_value=1, max_value=n - 1))
    assert grassmann_volume(k, n) == grassmann_volume(n - k, n)
    assert complex_grassmann_volume(k, n) == complex_grassmann_volume(n - k, n)


def test_g1_is_a_sphere():
    for n in range(2, 9):
        assert grassmann_volume(1, n) == sphere_volume(n - 1)


def test_unitary_groups_and_slag():
    assert u_volume(1) == ExactScalar(2, 1, 1)
    assert same(u_volume(2), 2 * sympy.pi * sphere_volume_gamma(3) * 2)
    assert su_volume(1) == exact.ONE
    assert slag_volume(3) == su_volume(3) / so_volume(3)


def test_catalog_spaces():
    names = catalog_space_names()
    assert {"ASSOC", "CAY", "PONT"} <= set(names)
    assert volume(parse_descriptor("ASSOC")) == exact.parse("6/5 * pi^4")
    assert volume(parse_descriptor("CAY")) == volume(parse_descriptor("G(3,7)"))


@pytest.mark.parametrize("text", ["G(0,3)", "G(3,3)", "X(2)", "G(2)", "", "S(-1)", "SO(0)", "nope"])
def test_bad_descriptors(text):
    with pytest.raises(InvalidDescriptor):
        volume(parse_descriptor(text))


def test_descriptor_validation():
    with pytest.raises(InvalidDescriptor):
        SpaceDescriptor("Q", (1,))
    with pytest.raises(InvalidDescriptor):
        SpaceDescriptor("CatalogSpace")
    with pytest.raises(UnknownEntity):
        volume(SpaceDescriptor("CatalogSpace", (), "NOPE"))
    assert str(parse_descriptor(" G( 3 , 7 ) ")) == "G(3,7)"
