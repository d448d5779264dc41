"""Exact Belyi maps on the projective line with prescribed ramified and avoided points."""

from __future__ import annotations

from .errors import BelyiError, InvalidInput, ResourceLimit, VerificationFailure
from .fields import QQ, PrimeField
from .orbits import OrbitSet, parse_orbit_set
from .pipeline import construct_tame, construct_wild, cover_family, verify_artifact
from .poly import Polynomial, resultant

__version__ = "0.1.0"

__all__ = [
    "BelyiError",
    "InvalidInput",
    "OrbitSet",
    "Polynomial",
    "PrimeField",
    "QQ",
    "ResourceLimit",
    "VerificationFailure",
    "construct_tame",
    "construct_wild",
    "cover_family",
    "parse_orbit_set",
    "resultant",
    "verify_artifact",
]
