"""Exact triple-binomial sums, their alternation mod p, and Jordan-block tensor checks."""
from .arith import Residue, binomial, binomial_mod, is_prime
from .gfp import FpMatrix, JordanType, jordan_type, rank
from .tensorrep import (
    DecompositionSpec,
    TensorVector,
    build_generator,
    check_generator,
    decompose_closed,
    decompose_rank,
)
from .theoremcheck import SweepSummary, TheoremReport, sweep, verify_theorem
from .triplesums import Params, SumTable, enumerate_params, f_eval, f_table

__version__ = "0.1.0"

__all__ = [
    "DecompositionSpec",
    "FpMatrix",
    "JordanType",
    "Params",
    "Residue",
    "SumTable",
    "SweepSummary",
    "TensorVector",
    "TheoremReport",
    "binomial",
    "binomial_mod",
    "build_generator",
    "check_generator",
    "decompose_closed",
    "decompose_rank",
    "enumerate_params",
    "f_eval",
    "f_table",
    "is_prime",
    "jordan_type",
    "rank",
    "sweep",
    "verify_theorem",
]
