"""Grounded, admissible, complete, preferred, model and W-stable semantics.

Enumeration is a backtracking search over statements in declared order.  As
soon as a statement and all of its parents carry values, its admissibility
(or fixpoint) condition is decided and the branch pruned.

On the infinite unit structures the search ranges over *candidate values*:
the closure of ``{0, 0.5, 1}`` and all formula constants under ``1 - x``.
Values of isolated solutions always lie in that set, but continuum families
(e.g. every ``{a ↦ x}`` for ``φ_a = a`` under the flat ordering) are only
sampled there.  :func:`is_exhaustive` tells the two situations apart.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, NotConvergedError, UnsupportedError, ValidationError
from .formula import constants, fold_negated_constants, substitute
from .framework import Framework
from .operator import (
    Interpretation,
    NotConverged,
    get_operator,
    kleene_iterate,
    leq_interp,
)
from .valuation import ONE, U, ZERO, Structure, parse_rational, render_rational

__all__ = [
    "SEMANTICS",
    "DEFAULT_CAP",
    "ExplicitValues",
    "IntervalUnion",
    "Piece",
    "parse_assumed",
    "StableVerdict",
    "Predicate",
    "parse_predicate",
    "QueryResult",
    "is_admissible",
    "is_complete",
    "is_model",
    "is_grounded",
    "is_preferred",
    "is_exhaustive",
    "candidate_values",
    "enumerate_semantics",
    "reduct",
    "is_stable",
    "query",
    "credulous_query",
    "skeptical_query",
    "sort_interpretations",
]

SEMANTICS = ("grounded", "admissible", "complete", "preferred", "model", "stable")
DEFAULT_CAP = 2 ** 22


# -- assumed value sets ----------------------------------------------------

class ExplicitValues:
    """Finite set of assumed values."""

    def __init__(self, values):
        self.values = tuple(values)
        self._set = frozenset(self.values)

    def __contains__(self, x):
        return x is not U and x in self._set

    def __eq__(self, other):
        return isinstance(other, ExplicitValues) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def render(self, structure: Structure) -> str:
        ordered = sorted(self._set, key=structure.sort_key)
        return "{" + ",".join(structure.render(x) for x in ordered) + "}"


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __contains__(self, x):
        if not isinstance(x, Fraction):
            return False
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def render(self):
        return (("[" if self.lo_closed else "(") + render_rational(self.lo) + "," +
                render_rational(self.hi) + ("]" if self.hi_closed else ")"))


class IntervalUnion:
    """Union of endpoint-tagged rational intervals, e.g. ``[0,0.5)``."""

    def __init__(self, pieces):
        self.pieces = tuple(pieces)

    def __contains__(self, x):
        return x is not U and any(x in p for p in self.pieces)

    def __eq__(self, other):
        return isinstance(other, IntervalUnion) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def render(self, structure=None) -> str:
        return " u ".join(p.render() for p in self.pieces) if self.pieces else "{}"


_PIECE = re.compile(r"^([\[\(\]])\s*([^,\s]+)\s*,\s*([^,\s\]\)\[]+)\s*([\]\)\[])$")


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_assumed(text: str, structure: Structure):
    """Parse ``{v1,v2}`` or a union of intervals such as ``[0,0.2] u (0.5,1]``.

    Half-open intervals may also be written with reversed brackets,
    ``[0,0.5[``.  Interval syntax needs a numeric structure.
    """
    text = text.strip()
    if text.startswith("{"):
        if not text.endswith("}"):
            raise ValidationError(f"bad assumed-value set {text!r}")
        return ExplicitValues(structure.parse_value(p) for p in _split_top(text[1:-1]))
    if not structure.numeric:
        raise ValidationError(f"interval syntax needs a numeric structure, not {structure.header()}")
    pieces = []
    for chunk in re.split(r"\s+u\s+", text):
        m = _PIECE.match(chunk.strip())
        if not m:
            raise ValidationError(f"bad interval {chunk!r}")
        left, lo, hi, right = m.groups()
        lo, hi = parse_rational(lo), parse_rational(hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise ValidationError(f"interval {chunk!r} is not inside [0,1]")
        pieces.append(Piece(lo, hi, left == "[", right == "]"))
    return IntervalUnion(pieces)


# -- verification ----------------------------------------------------------

def _op(fw, engine, budget):
    return get_operator(fw, engine, budget)


def is_admissible(fw: Framework, v: Interpretation, engine="auto", budget=None) -> bool:
    return leq_interp(fw, v, _op(fw, engine, budget)(v))


def is_complete(fw: Framework, v: Interpretation, engine="auto", budget=None) -> bool:
    return _op(fw, engine, budget)(v) == v


def is_model(fw: Framework, v: Interpretation, engine="auto", budget=None) -> bool:
    return v.total and is_complete(fw, v, engine, budget)


def is_grounded(fw: Framework, v: Interpretation, engine="auto", budget=None, max_steps=None) -> bool:
    """Raises :class:`NotConvergedError` when iteration hits the step guard."""
    leq_interp(fw, v, v)
    outcome = kleene_iterate(fw, max_steps, engine, budget)
    if isinstance(outcome, NotConverged):
        raise NotConvergedError(f"no fixpoint within {outcome.steps} steps; grounded membership is indeterminate")
    return outcome.interpretation == v


def is_preferred(fw: Framework, v: Interpretation, engine="auto", budget=None) -> bool:
    """Admissible with no admissible strict extension (finite structures only)."""
    if not fw.structure.finite:
        raise UnsupportedError("preferred semantics needs a finite structure")
    if not is_admissible(fw, v, engine, budget):
        return False
    up = fw.structure.upward
    domains = [[x] + [y for y in up(x) if y != x] for x in v.values]
    for w in _search(fw, _op(fw, engine, budget), domains, "admissible"):
        if w != v:
            return False
    return True


# -- enumeration -----------------------------------------------------------

def candidate_values(fw: Framework) -> list:
    """Finite value set searched on unit structures (see module docstring)."""
    seeds = {ZERO, Fraction(1, 2), ONE}
    for phi in fw.acceptance.values():
        seeds.update(constants(phi))
    return sorted(seeds | {ONE - x for x in seeds})


def _domain(fw):
    vals = fw.structure.values()
    return list(vals) if vals is not None else candidate_values(fw)


def is_exhaustive(fw: Framework, sem: str) -> bool:
    """Whether :func:`enumerate_semantics` returns the full set for ``sem``."""
    return fw.structure.finite or sem == "grounded"


def _search(fw, op, domains, mode):
    """Yield interpretations over ``domains`` meeting ``mode`` coordinatewise."""
    n = len(fw.statements)
    if n == 0:
        yield Interpretation((), ())
        return
    checks = [[] for _ in range(n)]
    for j, s in enumerate(fw.statements):
        last = max([j] + [fw.index[p] for p in fw.parents[s]])
        checks[last].append(j)
    leq = fw.structure.leq
    values = [None] * n
    admissible = mode == "admissible"

    def ok(i):
        for j in checks[i]:
            g = op.coordinate(values, j)
            if admissible:
                if not leq(values[j], g):
                    return False
            elif values[j] != g:
                return False
        return True

    def rec(i):
        for x in domains[i]:
            values[i] = x
            if ok(i):
                if i + 1 == n:
                    yield Interpretation(fw.statements, values, fw.index)
                else:
                    yield from rec(i + 1)
        values[i] = None

    yield from rec(0)


def sort_interpretations(fw: Framework, vs) -> list:
    key = fw.structure.sort_key
    return sorted(vs, key=lambda v: tuple(key(x) for x in v.values))


def _check_cap(fw, domains, cap):
    size = 1
    for d in domains:
        size *= len(d)
    if size > cap:
        raise BudgetExceeded(size, cap, what="interpretation")


def _maximal(fw, admissible):
    """≤i-maximal elements; a strict extension always has strictly larger rank."""
    rank = fw.structure.rank
    ordered = sorted(admissible, key=lambda v: -sum(rank(x) for x in v.values))
    maximal = []
    for v in ordered:
        if not any(leq_interp(fw, v, m) for m in maximal):
            maximal.append(v)
    return maximal


def enumerate_semantics(fw: Framework, sem: str, assumed=None, engine="auto", budget=None,
                        cap: int = DEFAULT_CAP, max_steps=None) -> list:
    """All interpretations of ``fw`` under ``sem``, in canonical order.

    ``assumed`` is the assumed-value set for ``sem="stable"``.
    """
    if sem not in SEMANTICS:
        raise ValidationError(f"unknown semantics {sem!r}")
    if sem == "grounded":
        outcome = kleene_iterate(fw, max_steps, engine, budget)
        if isinstance(outcome, NotConverged):
            raise NotConvergedError(f"no fixpoint within {outcome.steps} steps")
        return [outcome.interpretation]
    if sem == "preferred" and not fw.structure.finite:
        raise UnsupportedError("preferred semantics needs a finite structure")
    if sem == "stable" and assumed is None:
        raise ValidationError("stable semantics needs an assumed-value set")
    op = _op(fw, engine, budget)
    dom = _domain(fw)
    if sem in ("model", "stable"):
        domains = [dom] * len(fw.statements)
    else:
        domains = [[U] + dom] * len(fw.statements)
    _check_cap(fw, domains, cap)
    mode = "admissible" if sem in ("admissible", "preferred") else "complete"
    found = list(_search(fw, op, domains, mode))
    if sem == "preferred":
        found = _maximal(fw, found)
    elif sem == "stable":
        found = [v for v in found if is_stable(fw, v, assumed, engine, budget, max_steps).stable]
    return sort_interpretations(fw, found)


# -- reduct and stability --------------------------------------------------

def reduct(fw: Framework, v: Interpretation, assumed) -> Framework:
    """Drop statements whose value is assumed; their atoms become constants.

    Negated constants produced by the substitution are folded, so ``!b``
    with ``b`` assumed at 0.5 reads ``0.5``.
    """
    leq_interp(fw, v, v)
    if not v.total:
        raise ValidationError("reduct needs a total interpretation")
    kept = [s for s in fw.statements if v[s] not in assumed]
    fixed = {s: v[s] for s in fw.statements if v[s] in assumed}
    acceptance = {s: fold_negated_constants(substitute(fw.acceptance[s], fixed), fw.structure) for s in kept}
    return Framework(fw.structure, kept, acceptance)


@dataclass(frozen=True)
class StableVerdict:
    status: str  # "stable" | "not-stable" | "unknown"
    witness: str | None = None
    reason: str = ""
    reduct: Framework | None = None
    reduct_grounded: Interpretation | None = None

    @property
    def stable(self) -> bool:
        return self.status == "stable"


def is_stable(fw: Framework, v: Interpretation, assumed, engine="auto", budget=None,
              max_steps=None) -> StableVerdict:
    """W-stability of ``v``.  Non-models are answered ``not-stable``."""
    leq_interp(fw, v, v)
    for s in fw.statements:
        if v[s] is U:
            return StableVerdict("not-stable", s, "not total")
    g = _op(fw, engine, budget)(v)
    for s in fw.statements:
        if g[s] != v[s]:
            return StableVerdict("not-stable", s, "not a model")
    red = reduct(fw, v, assumed)
    outcome = kleene_iterate(red, max_steps, engine, budget)
    if isinstance(outcome, NotConverged):
        return StableVerdict("unknown", None, "reduct iteration did not converge", red, outcome.interpretation)
    vg = outcome.interpretation
    for s in red.statements:
        if vg[s] != v[s]:
            return StableVerdict("not-stable", s, "reduct grounded value differs", red, vg)
    return StableVerdict("stable", None, "", red, vg)


# -- queries ---------------------------------------------------------------

@dataclass(frozen=True)
class Predicate:
    op: str  # "eq" | "ge" | "le"
    value: object

    def __call__(self, x) -> bool:
        if x is U:
            return False
        if self.op == "eq":
            return x == self.value
        if self.op == "ge":
            return x >= self.value
        return x <= self.value


def parse_predicate(text: str, structure: Structure) -> Predicate:
    op, sep, rest = text.partition(":")
    if not sep or op not in ("eq", "ge", "le"):
        raise ValidationError(f"bad predicate {text!r}; expected eq:/ge:/le:<value>")
    if op != "eq" and not structure.numeric:
        raise UnsupportedError(f"order predicate on unordered structure {structure.header()}")
    return Predicate(op, structure.parse_value(rest))


@dataclass(frozen=True)
class QueryResult:
    answer: bool
    witness: Interpretation | None
    count: int


def query(fw: Framework, sem: str, s: str, pred: Predicate, mode: str = "credulous",
          assumed=None, **opts) -> QueryResult:
    """Credulous: some interpretation satisfies ``pred`` at ``s``; skeptical: all do.

    The witness is the first satisfying interpretation (credulous) or the
    first counterexample (skeptical).
    """
    if s not in fw.index:
        raise ValidationError(f"unknown statement {s}")
    if mode not in ("credulous", "skeptical"):
        raise ValidationError(f"unknown query mode {mode!r}")
    if pred.op != "eq" and not fw.structure.numeric:
        raise UnsupportedError(f"order predicate on unordered structure {fw.structure.header()}")
    results = enumerate_semantics(fw, sem, assumed, **opts)
    for v in results:
        hit = pred(v[s])
        if mode == "credulous" and hit:
            return QueryResult(True, v, len(results))
        if mode == "skeptical" and not hit:
            return QueryResult(False, v, len(results))
    return QueryResult(mode == "skeptical", None, len(results))


def credulous_query(fw, sem, s, pred, assumed=None, **opts) -> bool:
    return query(fw, sem, s, pred, "credulous", assumed, **opts).answer


def skeptical_query(fw, sem, s, pred, assumed=None, **opts) -> bool:
    return query(fw, sem, s, pred, "skeptical", assumed, **opts).answer
