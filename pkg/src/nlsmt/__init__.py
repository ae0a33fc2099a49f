"""Exact solver for quantifier-free non-linear constraints over the reals.

The solver separates problems into a linear clause set and unit non-linear
bounds, searches for rational models by trail extension, and resolves
conflicts with arithmetical resolution (linear case) or numerically
constructed local linearisations (non-linear case).  All arithmetic is exact
rational; verdicts are genuine sat/unsat, never delta-approximations.
"""

from .lowering import lower, problem_to_smtlib
from .rationals import Rat
from .smtlib import parse
from .solver import Limits, Solver, Verdict, solve

__all__ = ["Limits", "Rat", "Solver", "Verdict", "lower", "parse", "problem_to_smtlib", "solve"]

__version__ = "0.1.0"
