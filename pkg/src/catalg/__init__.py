"""Exact computations with finite categories, their algebras, and induction of precosheaves."""

from __future__ import annotations

from .errors import CatalgError, PreconditionError, SpecError, TwistingAxiomError, WellDefinednessError
from .linalg import GF, QQ, LinearMap, PrimeField, Subspace, parse_field

__all__ = [
    "CatalgError",
    "PreconditionError",
    "SpecError",
    "TwistingAxiomError",
    "WellDefinednessError",
    "GF",
    "QQ",
    "LinearMap",
    "PrimeField",
    "Subspace",
    "parse_field",
]
__version__ = "0.1.0"
