"""Acceptance-condition formulas over statement atoms and structure constants.

Grammar (precedence ``!`` > ``&`` > ``|``, binary operators left-associative)::

    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | primary
    primary := '(' disj ')' | IDENT | NUMBER | '[' NUMBER ',' NUMBER ']' | '#' IDENT

Identifiers that are keyword constants of the structure (``t``/``f`` for
classical, ``N``/``F``/``T``/``B`` for Belnap) parse as constants.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from .errors import ParseError, UnsupportedError, ValidationError
from .valuation import Custom, Structure, UnitFlat, UnitRefined, ValueRange

__all__ = [
    "Atom",
    "Const",
    "Conj",
    "Disj",
    "Neg",
    "Formula",
    "parse_formula",
    "render_formula",
    "atoms",
    "constants",
    "connectives",
    "substitute",
    "fold_negated_constants",
    "evaluate",
    "compile_formula",
    "range_evaluate",
]


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Conj:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Disj:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Neg:
    inner: "Formula"


Formula = Union[Atom, Const, Conj, Disj, Neg]

# -- parsing ---------------------------------------------------------------

_NUM = r"\d+(?:\.\d+)?(?:/\d+)?"
_TOKEN = re.compile(
    rf"""(?P<ws>\s+)
       |(?P<interval>\[\s*{_NUM}\s*,\s*{_NUM}\s*\])
       |(?P<num>{_NUM})
       |(?P<sym>\#[A-Za-z_][A-Za-z0-9_]*)
       |(?P<ident>[A-Za-z_][A-Za-z0-9_]*)
       |(?P<op>[&|!()])""",
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        if m.lastgroup != "ws":
            kind = m.lastgroup
            out.append((kind if kind != "op" else m.group(), m.group(), pos + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, structure):
        self.tokens = _tokenize(text)
        self.i = 0
        self.structure = structure

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        f = self.disj()
        kind, text, col = self.tokens[self.i]
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", column=col)
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Disj(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = Conj(f, self.unary())
        return f

    def unary(self):
        if self.peek() == "!":
            self.take()
            return Neg(self.unary())
        return self.primary()

    def const(self, text, col):
        try:
            return Const(self.structure.parse_value(text))
        except ValidationError as exc:
            raise ParseError(str(exc), column=col) from None

    def primary(self):
        kind, text, col = self.take()
        if kind == "(":
            f = self.disj()
            k2, t2, c2 = self.take()
            if k2 != ")":
                raise ParseError(f"expected ')' but found {t2 or 'end of input'!r}", column=c2)
            return f
        if kind == "ident":
            if text in self.structure.keywords:
                return Const(text)
            return Atom(text)
        if kind in ("num", "interval"):
            return self.const(re.sub(r"\s+", "", text), col)
        if kind == "sym":
            if not isinstance(self.structure, Custom):
                raise ParseError(f"symbol constant {text} needs a custom structure", column=col)
            return self.const(text[1:], col)
        raise ParseError(f"unexpected {text or 'end of input'!r}", column=col)


def parse_formula(text: str, structure: Structure) -> Formula:
    return _Parser(text, structure).parse()


_PREC = {Disj: 1, Conj: 2, Neg: 3, Atom: 4, Const: 4}


def render_formula(f: Formula, structure: Structure) -> str:
    """Render with the fewest parentheses that still reproduce the same tree."""
    def wrap(g, needs):
        s = go(g)
        return f"({s})" if needs else s

    def go(g):
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, Const):
            r = structure.render(g.value)
            return f"#{r}" if isinstance(structure, Custom) else r
        if isinstance(g, Neg):
            return "!" + wrap(g.inner, _PREC[type(g.inner)] < 3)
        p = _PREC[type(g)]
        op = " & " if isinstance(g, Conj) else " | "
        return wrap(g.left, _PREC[type(g.left)] < p) + op + wrap(g.right, _PREC[type(g.right)] <= p)

    return go(f)


# -- structural queries ----------------------------------------------------

def atoms(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset((f.name,))
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Neg):
        return atoms(f.inner)
    return atoms(f.left) | atoms(f.right)


def _leaves(f, kind):
    if isinstance(f, kind):
        yield f
    if isinstance(f, Neg):
        yield from _leaves(f.inner, kind)
    elif isinstance(f, (Conj, Disj)):
        yield from _leaves(f.left, kind)
        yield from _leaves(f.right, kind)


def constants(f: Formula) -> list:
    return [c.value for c in _leaves(f, Const)]


def connectives(f: Formula) -> set:
    """Names (``conj``, ``disj``, ``neg``) of the connectives occurring in ``f``."""
    names = {Conj: "conj", Disj: "disj", Neg: "neg"}
    return {names[type(g)] for kind in names for g in _leaves(f, kind)}


def substitute(f: Formula, values: Mapping[str, object]) -> Formula:
    """Replace each atom named in ``values`` by the constant it maps to."""
    if isinstance(f, Atom):
        return Const(values[f.name]) if f.name in values else f
    if isinstance(f, Const):
        return f
    if isinstance(f, Neg):
        return Neg(substitute(f.inner, values))
    return type(f)(substitute(f.left, values), substitute(f.right, values))


def fold_negated_constants(f: Formula, structure: Structure) -> Formula:
    """Rewrite every ``!c`` with ``c`` a constant into the constant ``neg(c)``."""
    if isinstance(f, (Atom, Const)):
        return f
    if isinstance(f, Neg):
        inner = fold_negated_constants(f.inner, structure)
        return Const(structure.neg(inner.value)) if isinstance(inner, Const) else Neg(inner)
    return type(f)(fold_negated_constants(f.left, structure), fold_negated_constants(f.right, structure))


# -- point evaluation ------------------------------------------------------

def evaluate(f: Formula, structure: Structure, w: Mapping[str, object]):
    """Value of ``f`` under the total assignment ``w``."""
    if isinstance(f, Atom):
        try:
            return w[f.name]
        except KeyError:
            raise ValidationError(f"no value for atom {f.name}") from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Neg):
        return structure.neg(evaluate(f.inner, structure, w))
    left = evaluate(f.left, structure, w)
    right = evaluate(f.right, structure, w)
    if isinstance(f, Conj):
        return structure.conj(left, right)
    return structure.disj(left, right)


def compile_formula(f: Formula, structure: Structure) -> Callable[[Mapping], object]:
    """Closure equivalent to ``evaluate(f, structure, w)`` for hot loops."""
    if isinstance(f, Atom):
        name = f.name
        return lambda w: w[name]
    if isinstance(f, Const):
        value = f.value
        return lambda w: value
    if isinstance(f, Neg):
        inner = compile_formula(f.inner, structure)
        neg = structure.neg
        return lambda w: neg(inner(w))
    left = compile_formula(f.left, structure)
    right = compile_formula(f.right, structure)
    op = structure.conj if isinstance(f, Conj) else structure.disj
    return lambda w: op(left(w), right(w))


# -- range evaluation over unit boxes -------------------------------------
#
# Under min / max / 1-x every subformula equals one of its literals x, 1-x or
# a constant, so a formula is linear on each cell of the arrangement cut by
# x_i = c, x_i = 1-c, x_i = 0.5, x_i = x_j and x_i = 1-x_j.  Atoms occurring
# with one polarity only are monotone and sit at an endpoint.  Atoms occurring
# with both polarities range over the vertex coordinates of that arrangement,
# which lie in the closure of {0.5, constants, box endpoints} under 1-x.

def _nnf(f, negated=False):
    if isinstance(f, Atom):
        return ("lit", f.name, not negated)
    if isinstance(f, Const):
        return ("const", 1 - f.value if negated else f.value)
    if isinstance(f, Neg):
        return _nnf(f.inner, not negated)
    is_min = isinstance(f, Conj) != negated
    return ("min" if is_min else "max", _nnf(f.left, negated), _nnf(f.right, negated))


def _nnf_eval(node, w):
    tag = node[0]
    if tag == "lit":
        x = w[node[1]]
        return x if node[2] else 1 - x
    if tag == "const":
        return node[1]
    a = _nnf_eval(node[1], w)
    b = _nnf_eval(node[2], w)
    if tag == "min":
        return a if a <= b else b
    return a if a >= b else b


def _polarities(node, acc):
    tag = node[0]
    if tag == "lit":
        acc.setdefault(node[1], set()).add(node[2])
    elif tag in ("min", "max"):
        _polarities(node[1], acc)
        _polarities(node[2], acc)
    return acc


def range_evaluate(f: Formula, structure: Structure, box: Mapping[str, ValueRange]) -> ValueRange:
    """Exact image ``{evaluate(f, w) | w(s) ∈ box[s]}`` over unit-interval boxes."""
    if not isinstance(structure, (UnitFlat, UnitRefined)):
        raise UnsupportedError(f"range evaluation needs a unit structure, not {structure.header()}")
    node = _nnf(f)
    pol = _polarities(node, {})
    for a in pol:
        if a not in box:
            raise ValidationError(f"no range for atom {a}")
    mixed = sorted(a for a, p in pol.items() if len(p) == 2)
    if mixed:
        seeds = {Fraction(1, 2)}
        seeds.update(constants(f))
        for a in pol:
            seeds.update((box[a].lo, box[a].hi))
        cands = seeds | {1 - x for x in seeds}
        choices = []
        for a in mixed:
            r = box[a]
            choices.append(sorted({r.lo, r.hi} | {x for x in cands if r.lo < x < r.hi}))
    else:
        choices = []

    def extreme(upper):
        w = {}
        for a, p in pol.items():
            if len(p) == 1:
                increasing = True in p
                w[a] = box[a].hi if increasing == upper else box[a].lo
        best = None
        for combo in itertools.product(*choices):
            w.update(zip(mixed, combo))
            x = _nnf_eval(node, w)
            if best is None or (x > best if upper else x < best):
                best = x
        return best

    return ValueRange(extreme(False), extreme(True))
