"""Exact classification and free-action certification for Eschenburg and Bazaikin spaces."""
from __future__ import annotations

from .atlas import group_diagram, isometry_descriptor
from .espaces import BazParams, E2Params, EschParams, TwistedFlag, classify_family, parse_space
from .exact_arith import RationalAngle, solve_congruence_system
from .fixed_point import action_is_free, so3_factor_is_free
from .group_catalog import IsometryTuple, build_group, close_subgroup, lift_su2_group
from .invariants import distinguish_pair, e2_invariants
from .search import SweepConfig, enumerate_canonical, verify_theorems

__all__ = [
    "BazParams", "E2Params", "EschParams", "IsometryTuple", "RationalAngle", "SweepConfig", "TwistedFlag",
    "action_is_free", "build_group", "classify_family", "close_subgroup", "distinguish_pair",
    "e2_invariants", "enumerate_canonical", "group_diagram", "isometry_descriptor", "lift_su2_group",
    "parse_space", "so3_factor_is_free", "solve_congruence_system", "verify_theorems",
]
