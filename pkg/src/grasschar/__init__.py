"""Exact characteristic-class computations on real Grassmann manifolds."""

from __future__ import annotations

from .charring import (
    CharClassExpr,
    ManifoldModel,
    ScaledClass,
    euler_characteristic,
    inner_product,
    integrate,
    reduce,
    star,
    tangent_euler_class,
    tangent_pontryagin_class,
)
from .catalog import default_catalog, load_catalog
from .duality import CycleClass, harmonic_dual_basis, integral_dual_basis, poincare_dual, smith_normal_form
from .exact import ExactScalar
from .verify import run_checks
from .volumes import SpaceDescriptor, parse_descriptor, volume

__all__ = [
    "CharClassExpr",
    "CycleClass",
    "ExactScalar",
    "ManifoldModel",
    "ScaledClass",
    "SpaceDescriptor",
    "default_catalog",
    "euler_characteristic",
    "harmonic_dual_basis",
    "inner_product",
    "integral_dual_basis",
    "integrate",
    "load_catalog",
    "parse_descriptor",
    "poincare_dual",
    "reduce",
    "run_checks",
    "smith_normal_form",
    "star",
    "tangent_euler_class",
    "tangent_pontryagin_class",
    "volume",
]
