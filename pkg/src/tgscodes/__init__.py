"""Finite ternary Gamma-semirings, their k-ideals, quotients and codes."""
from .algebra import Tgs, check_axioms, load_tgs, product
from .codes import (
    Code,
    build_phi,
    code_params,
    constraint_code,
    generated_code,
    ideal_power_code,
    kernel_code,
)
from .decoder import build_coset_table, coset_table_for, decode, simulate_channel
from .errors import BoundExceeded, InvalidStructure, MalformedInput, TgsError, UsageError
from .ideals import KIdeal, enumerate_k_ideals, ideal_lattice, is_k_ideal
from .quotient import build_quotient

__version__ = "0.1.0"

__all__ = [
    "BoundExceeded",
    "Code",
    "InvalidStructure",
    "KIdeal",
    "MalformedInput",
    "Tgs",
    "TgsError",
    "UsageError",
    "build_coset_table",
    "build_phi",
    "build_quotient",
    "check_axioms",
    "code_params",
    "constraint_code",
    "coset_table_for",
    "decode",
    "enumerate_k_ideals",
    "generated_code",
    "ideal_lattice",
    "ideal_power_code",
    "is_k_ideal",
    "kernel_code",
    "load_tgs",
    "product",
    "simulate_channel",
]
