"""Qualitative integrals on Dragonfly algebras (residuated chains with an unknown value)."""

from .algebra import STAR, ChainScale, Comparison, Kind, ResiduatedSystem, le_linear, parse_scale_spec
from .capacity import Capacity, Universe, conjugate, enumerate_capacities, validate_capacity
from .identification import CapacityInterval, Datum, check_admissible, identify, intersect
from .integrals import (IntegralKind, evaluate, integral_residuum_D, integral_residuum_L,
                        integral_tnorm_D, integral_tnorm_L, sugeno)

__all__ = [
    "STAR", "ChainScale", "Comparison", "Kind", "ResiduatedSystem", "le_linear", "parse_scale_spec",
    "Capacity", "Universe", "conjugate", "enumerate_capacities", "validate_capacity",
    "CapacityInterval", "Datum", "check_admissible", "identify", "intersect",
    "IntegralKind", "evaluate", "integral_residuum_D", "integral_residuum_L",
    "integral_tnorm_D", "integral_tnorm_L", "sugeno",
]
