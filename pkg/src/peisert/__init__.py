"""Exact Smith and critical group computations for Peisert and Paley graphs."""

from peisert.field import FieldTable, build_field
from peisert.digits import CarryContext
from peisert.galois_ring import GaloisRing
from peisert.snf import AbelianGroup, DivisorProfile, local_divisors, rank_mod_p, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CarryContext",
    "DivisorProfile",
    "FieldTable",
    "GaloisRing",
    "build_field",
    "local_divisors",
    "rank_mod_p",
    "smith_normal_form",
]
