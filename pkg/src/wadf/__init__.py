"""Exact reasoning for weighted abstract dialectical frameworks."""
from .errors import (
    BudgetExceeded,
    NotConvergedError,
    ParseError,
    StructureError,
    UnsupportedError,
    ValidationError,
    WadfError,
)
from .formula import Atom, Conj, Const, Disj, Neg, evaluate, parse_formula, range_evaluate, render_formula
from .framework import Framework, build_framework, is_acyclic, parse_framework, serialize_framework
from .operator import (
    Grounded,
    Interpretation,
    NotConverged,
    all_undefined,
    gamma,
    gamma_at,
    interpretation,
    kleene_iterate,
    leq_interp,
)
from .semantics import (
    enumerate_semantics,
    is_admissible,
    is_complete,
    is_grounded,
    is_model,
    is_preferred,
    is_stable,
    parse_assumed,
    reduct,
)
from .valuation import U, Belnap, Classical, Custom, IntervalGrid, UnitFlat, UnitRefined, WM, make_structure

__version__ = "0.1.0"
