"""Solvers for Pigeonhole Equal Sums: given positive w_1..w_n with sum < 2^n - 1,
find two distinct index subsets with equal sums."""

from .dispatch import SolveConfig, SolveResult, solve_auto, solve_with
from .instance import Instance, SolutionPair, prefix_reduce, validate, verify

__all__ = ["Instance", "SolutionPair", "SolveConfig", "SolveResult", "prefix_reduce",
           "solve_auto", "solve_with", "validate", "verify"]
