"""Partial interpretations, completions and the characteristic operator.

Two engines compute one coordinate of the operator:

* ``finite``: fold the acceptance formula over every parent completion into
  a running meet, completing one parent at a time with memoized partial
  results and stopping as soon as the meet hits ``u``.
* ``unit``: compute the exact image interval of the formula over the box of
  parent value ranges, then take the meet of that interval in closed form.

Only the parents of a statement are completed; the acceptance formula reads
nothing else, so the meet over full completions is the same.
"""
from __future__ import annotations

import itertools
import json
import math
from collections.abc import Mapping
from dataclasses import dataclass

from .errors import BudgetExceeded, UnsupportedError, ValidationError
from .formula import compile_formula, range_evaluate
from .framework import Framework
from .valuation import INFINITE, U, UnitFlat, UnitRefined, ValueRange

__all__ = [
    "DEFAULT_BUDGET",
    "Interpretation",
    "Grounded",
    "NotConverged",
    "Operator",
    "interpretation",
    "all_undefined",
    "leq_interp",
    "parent_completions",
    "completions",
    "completion_count",
    "get_operator",
    "gamma",
    "gamma_at",
    "default_max_steps",
    "kleene_iterate",
    "load_interpretation",
    "dump_interpretation",
]

DEFAULT_BUDGET = 2 ** 22


class Interpretation(Mapping):
    """Total map from the statements of a framework to values or ``u``."""

    __slots__ = ("statements", "values", "_index")

    def __init__(self, statements, values, index=None):
        self.statements = tuple(statements)
        self.values = tuple(values)
        if len(self.values) != len(self.statements):
            raise ValidationError("interpretation arity does not match statements")
        self._index = index if index is not None else {s: i for i, s in enumerate(self.statements)}

    def __getitem__(self, s):
        return self.values[self._index[s]]

    def __iter__(self):
        return iter(self.statements)

    def __len__(self):
        return len(self.statements)

    def __eq__(self, other):
        if isinstance(other, Interpretation):
            return self.statements == other.statements and self.values == other.values
        return Mapping.__eq__(self, other)

    def __hash__(self):
        return hash((self.statements, self.values))

    def __repr__(self):
        return "(" + ", ".join(repr(x) for x in self.values) + ")"

    @property
    def total(self) -> bool:
        return all(x is not U for x in self.values)

    def replace(self, **changes) -> "Interpretation":
        vals = list(self.values)
        for s, x in changes.items():
            vals[self._index[s]] = x
        return Interpretation(self.statements, vals, self._index)


@dataclass(frozen=True)
class Grounded:
    interpretation: Interpretation
    steps: int


@dataclass(frozen=True)
class NotConverged:
    interpretation: Interpretation
    steps: int


def interpretation(fw: Framework, mapping) -> Interpretation:
    """Checked interpretation for ``fw`` from a mapping or a value sequence."""
    if isinstance(mapping, Mapping):
        keys = set(mapping)
        if keys != set(fw.statements):
            missing = sorted(set(fw.statements) - keys)
            extra = sorted(keys - set(fw.statements))
            raise ValidationError(f"interpretation domain mismatch: missing {missing}, unknown {extra}")
        values = [mapping[s] for s in fw.statements]
    else:
        values = list(mapping)
    for x in values:
        fw.structure.check(x)
    return Interpretation(fw.statements, values, fw.index)


def all_undefined(fw: Framework) -> Interpretation:
    return Interpretation(fw.statements, (U,) * len(fw.statements), fw.index)


def _same_domain(fw, *vs):
    for v in vs:
        if not isinstance(v, Interpretation) or v.statements != fw.statements:
            raise ValidationError("interpretation domain does not match the framework")


def leq_interp(fw: Framework, v: Interpretation, w: Interpretation) -> bool:
    _same_domain(fw, v, w)
    leq = fw.structure.leq
    return all(leq(x, y) for x, y in zip(v.values, w.values))


def parent_completions(fw: Framework, v: Interpretation, s: str):
    """Completions of ``v`` restricted to the parents of ``s``.

    Finite structures give a lazy iterator of assignments; unit structures
    give a box mapping each parent to a :class:`ValueRange`.
    """
    _same_domain(fw, v)
    ps = fw.parents[s]
    up = fw.structure.upward
    if fw.structure.finite:
        return (dict(zip(ps, combo)) for combo in itertools.product(*(up(v[p]) for p in ps)))
    return {p: up(v[p]) for p in ps}


def completions(fw: Framework, v: Interpretation):
    """Iterate over the full completion set of ``v`` (finite structures)."""
    _same_domain(fw, v)
    if not fw.structure.finite:
        raise UnsupportedError("completions of unit interpretations are uncountable")
    up = fw.structure.upward
    for combo in itertools.product(*(up(x) for x in v.values)):
        yield Interpretation(fw.statements, combo, fw.index)


def completion_count(fw: Framework, v: Interpretation):
    """``|[v]_c|`` as an integer, or :data:`INFINITE`."""
    _same_domain(fw, v)
    total = 1
    for x in v.values:
        up = fw.structure.upward(x)
        if isinstance(up, ValueRange):
            if not up.degenerate:
                return INFINITE
        else:
            total *= len(up)
    return total


class Operator:
    """The characteristic operator of one framework, with per-coordinate memo.

    ``engine`` is ``"auto"``, ``"finite"`` or ``"unit"``; ``budget`` caps the
    number of completions evaluated per operator application.
    """

    def __init__(self, fw: Framework, engine: str = "auto", budget: int | None = None):
        structure = fw.structure
        if engine == "auto":
            engine = "finite" if structure.finite else "unit"
        if engine == "finite" and not structure.finite:
            raise UnsupportedError(f"finite engine cannot enumerate {structure.header()}")
        if engine == "unit" and not isinstance(structure, (UnitFlat, UnitRefined)):
            raise UnsupportedError(f"unit engine needs a unit structure, not {structure.header()}")
        if engine not in ("finite", "unit"):
            raise UnsupportedError(f"unknown engine {engine!r}")
        self.fw = fw
        self.engine = engine
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self._parent_idx = [tuple(fw.index[p] for p in fw.parents[s]) for s in fw.statements]
        self._cache = [{} for _ in fw.statements]
        if engine == "finite":
            self._compiled = [compile_formula(fw.acceptance[s], structure) for s in fw.statements]
            self._partial = [{} for _ in fw.statements]

    def _size(self, key):
        if self.engine == "unit":
            return 1
        up = self.fw.structure.upward
        return math.prod(len(up(x)) for x in key)

    def coordinate(self, values, j: int):
        """Operator value at statement index ``j`` for a value sequence."""
        key = tuple(values[i] for i in self._parent_idx[j])
        cache = self._cache[j]
        try:
            return cache[key]
        except KeyError:
            pass
        if self.engine == "finite":
            size = self._size(key)
            if size > self.budget:
                raise BudgetExceeded(size, self.budget)
            result = self._finite(j, key)
        else:
            result = self._unit(j, key)
        cache[key] = result
        return result

    def _finite(self, j, key):
        # Meet over completions, one parent at a time.  The memo is keyed by
        # (values, i): parents before i already hold completed values, the
        # rest still range over their upward sets, so keys sharing a suffix
        # share work.
        structure = self.fw.structure
        names = self.fw.parents[self.fw.statements[j]]
        fn = self._compiled[j]
        meet = structure.meet
        up = structure.upward
        memo = self._partial[j]
        n = len(key)

        def go(vals, i):
            if i == n:
                return fn(dict(zip(names, vals)))
            k = (vals, i)
            hit = memo.get(k)
            if hit is not None:
                return hit
            acc = None
            for y in up(vals[i]):
                r = go(vals[:i] + (y,) + vals[i + 1:], i + 1)
                acc = r if acc is None else meet(acc, r)
                if acc is U:
                    break
            memo[k] = acc
            return acc

        return go(tuple(key), 0)

    def _unit(self, j, key):
        structure = self.fw.structure
        s = self.fw.statements[j]
        box = {p: structure.upward(x) for p, x in zip(self.fw.parents[s], key)}
        r = range_evaluate(self.fw.acceptance[s], structure, box)
        if structure.flat:
            return r.lo if r.degenerate else U
        return UnitRefined.glb_range(r.lo, r.hi)

    def __call__(self, v: Interpretation) -> Interpretation:
        _same_domain(self.fw, v)
        vals = v.values
        if self.engine == "finite":
            total = sum(self._size(tuple(vals[i] for i in idx)) for idx in self._parent_idx)
            if total > self.budget:
                raise BudgetExceeded(total, self.budget)
        out = tuple(self.coordinate(vals, j) for j in range(len(vals)))
        return Interpretation(self.fw.statements, out, self.fw.index)


def get_operator(fw: Framework, engine: str = "auto", budget: int | None = None) -> Operator:
    """Shared memoizing operator for ``fw`` (frameworks are immutable)."""
    key = ("operator", engine, budget)
    op = fw._cache.get(key)
    if op is None:
        op = fw._cache[key] = Operator(fw, engine, budget)
    return op


def gamma(fw: Framework, v: Interpretation, engine: str = "auto", budget: int | None = None) -> Interpretation:
    return get_operator(fw, engine, budget)(v)


def gamma_at(fw: Framework, v: Interpretation, s: str, engine: str = "auto", budget: int | None = None):
    _same_domain(fw, v)
    if s not in fw.index:
        raise ValidationError(f"unknown statement {s}")
    return get_operator(fw, engine, budget).coordinate(v.values, fw.index[s])


def default_max_steps(fw: Framework) -> int:
    n = len(fw.statements)
    if fw.structure.finite:
        # every productive step raises some coordinate's rank; one more confirms
        return n * fw.structure.height() + 2
    return 2 * n + 8


def kleene_iterate(fw: Framework, max_steps: int | None = None, engine: str = "auto",
                   budget: int | None = None):
    """Iterate the operator from the all-``u`` interpretation.

    Returns :class:`Grounded` at the first exact fixpoint; such a fixpoint is
    the least one.  ``steps`` counts operator applications.
    """
    if max_steps is None:
        max_steps = default_max_steps(fw)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    op = get_operator(fw, engine, budget)
    v = all_undefined(fw)
    for step in range(1, max_steps + 1):
        nxt = op(v)
        if nxt == v:
            return Grounded(v, step)
        v = nxt
    return NotConverged(v, max_steps)


# -- JSON interpretation files ---------------------------------------------

def load_interpretation(fw: Framework, source) -> Interpretation:
    """Read ``{"a": "0.8", "b": "u"}`` (text or already-decoded dict)."""
    data = json.loads(source) if isinstance(source, str) else source
    if not isinstance(data, dict):
        raise ValidationError("interpretation file must hold a JSON object")
    parsed = {}
    for s, text in data.items():
        if not isinstance(text, str):
            raise ValidationError(f"value for {s} must be a string")
        parsed[s] = fw.structure.parse_partial(text)
    return interpretation(fw, parsed)


def dump_interpretation(fw: Framework, v: Interpretation) -> dict:
    render = fw.structure.render_partial
    return {s: render(x) for s, x in zip(v.statements, v.values)}
