"""Exact-rational satisfiability and model evaluation for fuzzy modal logics
over the propositional base {0, fuzzy negation, truncated constant
subtraction, minimum}, with pluggable modal operators: fuzzy-relational
diamonds, the probabilistic operators G and M{p}, and labelled diamonds over
finite metric label spaces (fuzzy or crisp)."""

from .lp import CapExceeded
from .metricspace import MetricSpace
from .models import FiniteModel, check_sequent, eval_formula
from .numerics import Comp, EMPTY, Interval, UNIT, parse_interval, parse_rational
from .logics import LOGIC_NAMES, get_logic
from .sequents import Sequent
from .solver import SolveStats, SolverCaps, Verdict, sat, sat_threshold
from .syntax import Formula, parse, to_text

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Comp",
    "EMPTY",
    "FiniteModel",
    "Formula",
    "Interval",
    "LOGIC_NAMES",
    "MetricSpace",
    "Sequent",
    "SolveStats",
    "SolverCaps",
    "UNIT",
    "Verdict",
    "check_sequent",
    "eval_formula",
    "get_logic",
    "parse",
    "parse_interval",
    "parse_rational",
    "sat",
    "sat_threshold",
    "to_text",
]
