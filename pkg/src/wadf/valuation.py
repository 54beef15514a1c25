"""Truth-value structures: value universes, information orderings and connectives.

Every structure adjoins the undefined value :data:`U` as the least element of
its information ordering.  Values are plain hashable Python objects owned by
a structure:

========================  ==========================================
kind                      value representation
========================  ==========================================
``classical``             ``"t"`` / ``"f"``
``unit-flat/refined``     :class:`fractions.Fraction` in [0, 1]
``w <m>``                 ``Fraction(k, m-1)``
``belnap``                ``"N"``, ``"F"``, ``"T"``, ``"B"``
``interval-grid <m>``     ``(lo, hi)`` tuple of Fractions
``custom``                declared symbol (``str``)
========================  ==========================================
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import StructureError, ValidationError

__all__ = [
    "U",
    "INFINITE",
    "ValueRange",
    "Structure",
    "Classical",
    "UnitFlat",
    "UnitRefined",
    "WM",
    "Belnap",
    "IntervalGrid",
    "Custom",
    "make_structure",
    "leq_info",
    "glb",
    "eval_conj",
    "eval_disj",
    "eval_neg",
    "validate_structure",
    "enumerate_values",
    "upward_set",
    "parse_rational",
    "render_rational",
]

HALF = Fraction(1, 2)
ZERO = Fraction(0)
ONE = Fraction(1)


class _Undefined:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "u"

    def __reduce__(self):
        return (_Undefined, ())


U = _Undefined()
"""The undefined value, least in every information ordering."""

INFINITE = "infinite"


@dataclass(frozen=True)
class ValueRange:
    """Closed rational interval ``[lo, hi]`` of unit values."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (ZERO <= self.lo <= self.hi <= ONE):
            raise ValueError(f"bad range [{self.lo}, {self.hi}]")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return isinstance(x, Fraction) and self.lo <= x <= self.hi


_RATIONAL = re.compile(r"^\d+(\.\d+)?(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``0.25``, ``1`` or ``1/3`` exactly."""
    text = text.strip()
    if not _RATIONAL.match(text) or ("." in text and "/" in text):
        raise ValidationError(f"not a rational literal: {text!r}")
    return Fraction(text)


def render_rational(q: Fraction) -> str:
    """Shortest exact decimal, or ``p/q`` when no finite decimal exists."""
    q = Fraction(q)
    den = q.denominator
    k = 0
    d = den
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    while (10 ** k) % den:
        k += 1
    if k == 0:
        return str(q.numerator)
    digits = q.numerator * (10 ** k // den)
    sign = "-" if digits < 0 else ""
    digits = abs(digits)
    whole, frac = divmod(digits, 10 ** k)
    return f"{sign}{whole}.{str(frac).rjust(k, '0').rstrip('0')}"


class Structure:
    """Abstract valuation structure.

    Subclasses provide the value universe, the information ordering on
    ``V ∪ {u}``, and the connectives.  Instances are immutable.
    """

    kind: str = "abstract"
    finite: bool = True
    flat: bool = False
    numeric: bool = False
    # keyword constants usable bare in formulas, e.g. ``t`` for classical
    keywords: tuple = ()

    # -- identity ---------------------------------------------------------
    def key(self) -> tuple:
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, Structure) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<{type(self).__name__} {self.header()}>"

    def header(self) -> str:
        """The ``structure ...`` declaration used in framework files."""
        return self.kind

    # -- membership -------------------------------------------------------
    def values(self):
        """Canonical tuple of values, or ``None`` for infinite kinds."""
        return None

    def contains(self, x) -> bool:
        raise NotImplementedError

    def check(self, x, partial: bool = True):
        if x is U and partial:
            return x
        if x is U or not self.contains(x):
            raise ValidationError(f"value {x!r} is not a member of structure {self.header()}")
        return x

    # -- ordering ---------------------------------------------------------
    def leq(self, x, y) -> bool:
        raise NotImplementedError

    def meet(self, x, y):
        raise NotImplementedError

    def glb(self, xs: Iterable):
        acc = None
        for x in xs:
            if x is U:
                return U
            acc = x if acc is None else self.meet(acc, x)
            if acc is U:
                return U
        if acc is None:
            raise ValueError("glb of an empty set")
        return acc

    def upward(self, x):
        """Values ``y ∈ V`` with ``x ≤i y``: a tuple, or a :class:`ValueRange`."""
        raise NotImplementedError

    def rank(self, x) -> int:
        """Length of the longest ≤i-chain from ``u`` to ``x`` (finite kinds)."""
        raise NotImplementedError

    def height(self) -> int:
        return max(self.rank(x) for x in self.values())

    # -- connectives ------------------------------------------------------
    def conj(self, x, y):
        raise NotImplementedError

    def disj(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def has_connective(self, name: str) -> bool:
        return True

    # -- text -------------------------------------------------------------
    def parse_value(self, text: str):
        raise NotImplementedError

    def parse_partial(self, text: str):
        text = text.strip()
        return U if text == "u" else self.parse_value(text)

    def render(self, x) -> str:
        raise NotImplementedError

    def render_partial(self, x) -> str:
        return "u" if x is U else self.render(x)

    def sort_key(self, x):
        """Canonical ordering key: ``u`` first, then the canonical value order."""
        if x is U:
            return (0,)
        return (1, self._index[x])

    def validate(self) -> list:
        return []


class _FiniteStructure(Structure):
    """Finite structure with the ordering given by a ``_leq_values`` predicate."""

    def _setup(self, values):
        self._values = tuple(values)
        self._index = {v: i for i, v in enumerate(self._values)}
        self._up = {x: tuple(y for y in self._values if self._leq_values(x, y)) for x in self._values}
        self._up[U] = self._values
        ranks = {}
        for x in sorted(self._values, key=lambda v: len(self._up[v]), reverse=True):
            below = [y for y in self._values if y != x and self._leq_values(y, x)]
            ranks[x] = 1 + max((ranks[y] for y in below), default=0)
        self._ranks = ranks

    def values(self):
        return self._values

    def contains(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def leq(self, x, y) -> bool:
        if x is U:
            return True
        if y is U:
            return False
        return self._leq_values(x, y)

    def _leq_values(self, x, y) -> bool:
        raise NotImplementedError

    def meet(self, x, y):
        if x is U or y is U:
            return U
        if self._leq_values(x, y):
            return x
        if self._leq_values(y, x):
            return y
        return self._meet_incomparable(x, y)

    def _meet_incomparable(self, x, y):
        return U

    def upward(self, x):
        return self._up[x]

    def rank(self, x) -> int:
        return 0 if x is U else self._ranks[x]


class _Flat(_FiniteStructure):
    flat = True

    def _leq_values(self, x, y):
        return x == y


class Classical(_Flat):
    """Two truth values ``t``, ``f`` with the flat ordering of ordinary ADFs."""

    kind = "classical"
    keywords = ("t", "f")

    def __init__(self):
        self._setup(("t", "f"))

    def conj(self, x, y):
        return "t" if x == "t" and y == "t" else "f"

    def disj(self, x, y):
        return "t" if x == "t" or y == "t" else "f"

    def neg(self, x):
        return "f" if x == "t" else "t"

    def parse_value(self, text):
        text = text.strip()
        if text not in ("t", "f"):
            raise ValidationError(f"constant {text!r} not in structure classical")
        return text

    def render(self, x):
        return x


class _MinMax:
    """min / max / 1−x connectives on rational values."""

    numeric = True

    def conj(self, x, y):
        return x if x <= y else y

    def disj(self, x, y):
        return x if x >= y else y

    def neg(self, x):
        return ONE - x

    def render(self, x):
        return render_rational(x)


class WM(_MinMax, _Flat):
    """``W_m = {k/(m-1) | 0 <= k <= m-1}`` with the flat ordering."""

    def __init__(self, m: int):
        if m < 2:
            raise StructureError(f"w {m}: need m >= 2")
        self.m = m
        self.kind = "w"
        self._setup(tuple(Fraction(k, m - 1) for k in range(m)))

    def key(self):
        return ("w", self.m)

    def header(self):
        return f"w {self.m}"

    def parse_value(self, text):
        q = parse_rational(text)
        if q not in self._index:
            raise ValidationError(f"constant {text} not in structure w {self.m}")
        return q


class _Unit(_MinMax, Structure):
    finite = False

    def values(self):
        return None

    def contains(self, x):
        return isinstance(x, Fraction) and ZERO <= x <= ONE

    def parse_value(self, text):
        q = parse_rational(text)
        if not ZERO <= q <= ONE:
            raise ValidationError(f"constant {text} not in structure {self.kind}")
        return q

    def sort_key(self, x):
        return (0,) if x is U else (1, x)

    def rank(self, x):
        raise NotImplementedError("unit structures have no finite ranks")


class UnitFlat(_Unit):
    """The unit interval with the flat information ordering."""

    kind = "unit-flat"
    flat = True

    def leq(self, x, y):
        return x is U or (y is not U and x == y)

    def meet(self, x, y):
        return x if (x is not U and x == y) else U

    def upward(self, x):
        if x is U:
            return ValueRange(ZERO, ONE)
        return ValueRange(x, x)


class UnitRefined(_Unit):
    """The unit interval ordered by distance from 0.5.

    ``0.5`` sits directly above ``u``; below 0.5 smaller values carry more
    information, above 0.5 larger ones do.
    """

    kind = "unit-refined"

    def leq(self, x, y):
        if x is U:
            return True
        if y is U:
            return False
        return x == y or y < x <= HALF or HALF <= x < y

    def meet(self, x, y):
        return self.glb((x, y))

    def glb(self, xs):
        lo = hi = None
        seen = False
        for x in xs:
            seen = True
            if x is U:
                return U
            lo = x if lo is None or x < lo else lo
            hi = x if hi is None or x > hi else hi
        if not seen:
            raise ValueError("glb of an empty set")
        return self.glb_range(lo, hi)

    @staticmethod
    def glb_range(lo, hi):
        """Meet of any set of values whose minimum is ``lo`` and maximum ``hi``."""
        if lo >= HALF:
            return lo
        if hi <= HALF:
            return hi
        return HALF

    def upward(self, x):
        if x is U or x == HALF:
            return ValueRange(ZERO, ONE)
        if x > HALF:
            return ValueRange(x, ONE)
        return ValueRange(ZERO, x)


class Belnap(_FiniteStructure):
    """Belnap's four values: N (none), F, T, B (both)."""

    kind = "belnap"
    keywords = ("N", "F", "T", "B")
    # truth order: F <t N <t T and F <t B <t T
    _TRUTH = {"F": 0, "N": 1, "B": 1, "T": 2}

    def __init__(self):
        self._setup(("N", "F", "T", "B"))

    def _leq_values(self, x, y):
        return x == y or x == "N" or y == "B"

    def _meet_incomparable(self, x, y):
        # only F and T are ≤i-incomparable
        return "N"

    def conj(self, x, y):
        if x == y:
            return x
        rx, ry = self._TRUTH[x], self._TRUTH[y]
        if rx == ry:  # N and B
            return "F"
        return x if rx < ry else y

    def disj(self, x, y):
        if x == y:
            return x
        rx, ry = self._TRUTH[x], self._TRUTH[y]
        if rx == ry:
            return "T"
        return x if rx > ry else y

    def neg(self, x):
        return {"F": "T", "T": "F"}.get(x, x)

    def truth_leq(self, x, y):
        return x == y or self._TRUTH[x] < self._TRUTH[y]

    def parse_value(self, text):
        text = text.strip()
        if text not in self._index:
            raise ValidationError(f"constant {text!r} not in structure belnap")
        return text

    def render(self, x):
        return x


class IntervalGrid(_FiniteStructure):
    """Subintervals of [0, 1] with endpoints on the grid ``k/(m-1)``.

    ``[a,b] ≤i [c,d]`` iff ``[c,d] ⊆ [a,b]``; the meet is the hull.
    """

    def __init__(self, m: int):
        if m < 2:
            raise StructureError(f"interval-grid {m}: need m >= 2")
        self.m = m
        self.kind = "interval-grid"
        grid = [Fraction(k, m - 1) for k in range(m)]
        self._grid = frozenset(grid)
        self._values = tuple((a, b) for a in grid for b in grid if a <= b)
        self._index = {v: i for i, v in enumerate(self._values)}
        self._up = {x: tuple(y for y in self._values if self._leq_values(x, y)) for x in self._values}
        self._up[U] = self._values

    def key(self):
        return ("interval-grid", self.m)

    def header(self):
        return f"interval-grid {self.m}"

    def _leq_values(self, x, y):
        return x[0] <= y[0] and y[1] <= x[1]

    def meet(self, x, y):
        if x is U or y is U:
            return U
        return (min(x[0], y[0]), max(x[1], y[1]))

    def rank(self, x):
        if x is U:
            return 0
        # widest interval [0,1] has rank 1; each grid step of shrinking adds one
        return 1 + (self.m - 1) - round((x[1] - x[0]) * (self.m - 1))

    def height(self):
        return self.m

    def conj(self, x, y):
        return (min(x[0], y[0]), min(x[1], y[1]))

    def disj(self, x, y):
        return (max(x[0], y[0]), max(x[1], y[1]))

    def neg(self, x):
        return (ONE - x[1], ONE - x[0])

    def parse_value(self, text):
        m = re.match(r"^\[\s*([^,\]]+)\s*,\s*([^,\]]+)\s*\]$", text.strip())
        if not m:
            raise ValidationError(f"not an interval literal: {text!r}")
        lo, hi = parse_rational(m.group(1)), parse_rational(m.group(2))
        if lo > hi or lo not in self._grid or hi not in self._grid:
            raise ValidationError(f"constant {text} not in structure {self.header()}")
        return (lo, hi)

    def render(self, x):
        return f"[{render_rational(x[0])},{render_rational(x[1])}]"


INFO_MEET = "info-meet"


class Custom(_FiniteStructure):
    """User-declared finite structure.

    The information order is given by Hasse edges ``(lower, upper)`` over the
    declared symbols, with ``u`` adjoined below everything.  Connectives are
    explicit tables; conjunction may instead be the preset ``info-meet``.
    Construct through :meth:`build` to get a validated instance.
    """

    kind = "custom"

    def __init__(self, values, edges=(), conj=None, disj=None, neg=None):
        self._values = tuple(values)
        self.edges = tuple(edges)
        self.conj_spec = conj
        self.disj_spec = disj
        self.neg_spec = neg
        self.flat = not self.edges
        self._index = {v: i for i, v in enumerate(self._values)}
        self._issues = []
        self._closure = self._transitive_closure()
        if not self._issues:
            self._setup(self._values)
            self._meets = {}
            self._issues.extend(self._compute_meets())
        self._issues.extend(self._check_tables())

    @classmethod
    def build(cls, values, edges=(), conj=None, disj=None, neg=None) -> "Custom":
        s = cls(values, edges, conj, disj, neg)
        if s._issues:
            raise StructureError(s._issues)
        return s

    def key(self):
        def table_key(t):
            if t is None or t == INFO_MEET:
                return t
            return tuple(sorted(t.items(), key=lambda kv: str(kv[0])))

        return ("custom", self._values, self.edges, table_key(self.conj_spec),
                table_key(self.disj_spec), table_key(self.neg_spec))

    def _transitive_closure(self):
        issues = self._issues
        seen = set()
        for v in self._values:
            if not isinstance(v, str) or not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", v):
                issues.append(f"bad value symbol {v!r}")
            elif v == "u":
                issues.append("value symbol 'u' is reserved for undefined")
            if v in seen:
                issues.append(f"duplicate value {v}")
            seen.add(v)
        above = {v: set() for v in self._values}
        for lo, hi in self.edges:
            for sym in (lo, hi):
                if sym not in self._index:
                    issues.append(f"order edge uses unknown value {sym}")
            if lo in above and hi in above:
                above[lo].add(hi)
        if issues:
            return {}
        closure = {}
        for v in self._values:
            stack, reach = list(above[v]), set()
            while stack:
                w = stack.pop()
                if w not in reach:
                    reach.add(w)
                    stack.extend(above[w])
            closure[v] = reach
        for v in self._values:
            if v in closure[v]:
                issues.append(f"order is cyclic through {v}")
                break
        return closure

    def _leq_values(self, x, y):
        return x == y or y in self._closure[x]

    def _compute_meets(self):
        issues = []
        vals = self._values
        for x, y in itertools.combinations(vals, 2):
            lower = [z for z in vals if self._leq_values(z, x) and self._leq_values(z, y)]
            maximal = [z for z in lower if not any(w != z and self._leq_values(z, w) for w in lower)]
            if len(maximal) > 1:
                issues.append(f"no greatest lower bound for ({x}, {y}): "
                              f"maximal lower bounds {', '.join(sorted(maximal))}")
                m = U
            else:
                m = maximal[0] if maximal else U
            self._meets[(x, y)] = self._meets[(y, x)] = m
        return issues

    def _meet_incomparable(self, x, y):
        return self._meets[(x, y)]

    def _check_tables(self):
        issues = []
        vals = self._values
        if self.conj_spec == INFO_MEET:
            if not self._issues:
                for x, y in itertools.combinations(vals, 2):
                    if self.meet(x, y) is U:
                        issues.append(f"conj = info-meet undefined for ({x}, {y}): they meet only at u")
        for name, table in (("conj", self.conj_spec), ("disj", self.disj_spec)):
            if table is None or table == INFO_MEET:
                continue
            if not isinstance(table, dict):
                issues.append(f"{name}: table must be a mapping")
                continue
            for x in vals:
                for y in vals:
                    if (x, y) not in table:
                        issues.append(f"{name} table missing entry ({x}, {y})")
                    elif table[(x, y)] not in self._index:
                        issues.append(f"{name} table entry ({x}, {y}) -> {table[(x, y)]} not a value")
            for k in table:
                if not (isinstance(k, tuple) and len(k) == 2 and k[0] in self._index and k[1] in self._index):
                    issues.append(f"{name} table has foreign key {k!r}")
        if self.neg_spec is not None:
            if not isinstance(self.neg_spec, dict):
                issues.append("neg: table must be a mapping")
            else:
                for x in vals:
                    if x not in self.neg_spec:
                        issues.append(f"neg table missing entry ({x})")
                    elif self.neg_spec[x] not in self._index:
                        issues.append(f"neg table entry {x} -> {self.neg_spec[x]} not a value")
                for k in self.neg_spec:
                    if k not in self._index:
                        issues.append(f"neg table has foreign key {k!r}")
        return issues

    def validate(self):
        return list(self._issues)

    def has_connective(self, name):
        return {"conj": self.conj_spec, "disj": self.disj_spec, "neg": self.neg_spec}[name] is not None

    def _undefined(self, name):
        raise ValidationError(f"connective {name} is not defined for this custom structure")

    def conj(self, x, y):
        if self.conj_spec == INFO_MEET:
            return self.meet(x, y)
        if self.conj_spec is None:
            self._undefined("conj")
        return self.conj_spec[(x, y)]

    def disj(self, x, y):
        if self.disj_spec is None:
            self._undefined("disj")
        return self.disj_spec[(x, y)]

    def neg(self, x):
        if self.neg_spec is None:
            self._undefined("neg")
        return self.neg_spec[x]

    def parse_value(self, text):
        text = text.strip()
        if text not in self._index:
            raise ValidationError(f"constant {text!r} not in custom structure")
        return text

    def render(self, x):
        return x


_BUILTIN = {"classical": Classical, "unit-flat": UnitFlat, "unit-refined": UnitRefined, "belnap": Belnap}


def make_structure(kind: str, m: int | None = None) -> Structure:
    """Builtin structure by name: ``classical``, ``unit-flat``, ``unit-refined``,
    ``belnap``, ``w`` (needs ``m``) or ``interval-grid`` (needs ``m``)."""
    if kind in _BUILTIN:
        if m is not None:
            raise StructureError(f"structure {kind} takes no parameter")
        return _BUILTIN[kind]()
    if kind in ("w", "interval-grid"):
        if m is None:
            raise StructureError(f"structure {kind} needs a size parameter")
        return WM(m) if kind == "w" else IntervalGrid(m)
    raise StructureError(f"unknown structure kind {kind!r}")


# -- functional surface ----------------------------------------------------

def _member(structure, x):
    structure.check(x, partial=True)


def leq_info(structure: Structure, x, y) -> bool:
    _member(structure, x)
    _member(structure, y)
    return structure.leq(x, y)


def glb(structure: Structure, xs):
    xs = list(xs)
    if not xs:
        raise ValueError("glb of an empty set")
    for x in xs:
        _member(structure, x)
    return structure.glb(xs)


def eval_conj(structure, x, y):
    structure.check(x, partial=False)
    structure.check(y, partial=False)
    return structure.conj(x, y)


def eval_disj(structure, x, y):
    structure.check(x, partial=False)
    structure.check(y, partial=False)
    return structure.disj(x, y)


def eval_neg(structure, x):
    structure.check(x, partial=False)
    return structure.neg(x)


def validate_structure(structure: Structure) -> list:
    """Problems with the structure as a list of messages; empty means valid."""
    issues = list(structure.validate())
    if structure.finite and not issues:
        vals = structure.values()
        for x in vals:
            if not structure.leq(U, x) or structure.leq(x, U):
                issues.append(f"u is not strictly below {x}")
        if structure.flat:
            for x, y in itertools.product(vals, vals):
                if structure.leq(x, y) != (x == y):
                    issues.append(f"flat ordering violated by ({x!r}, {y!r})")
    return issues


def enumerate_values(structure: Structure):
    vals = structure.values()
    return INFINITE if vals is None else list(vals)


def upward_set(structure: Structure, x):
    _member(structure, x)
    return structure.upward(x)
