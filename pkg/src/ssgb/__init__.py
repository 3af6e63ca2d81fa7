"""Groebner bases over prime fields with a simple signature-based algorithm."""

from .algebra import PrimeField, Polynomial, Ring, poly_normal_form
from .engine import (
    EngineOptions,
    incremental_groebner,
    interreduce,
    simple_signature_groebner,
)
from .frontend import format_basis, gen_benchmark, parse_system
from .labeled import LabeledPolynomial
from .oracle import buchberger, is_groebner_basis
from .stats import RunStats

__all__ = [
    "EngineOptions",
    "LabeledPolynomial",
    "Polynomial",
    "PrimeField",
    "Ring",
    "RunStats",
    "buchberger",
    "format_basis",
    "gen_benchmark",
    "incremental_groebner",
    "interreduce",
    "is_groebner_basis",
    "parse_system",
    "poly_normal_form",
    "simple_signature_groebner",
]
