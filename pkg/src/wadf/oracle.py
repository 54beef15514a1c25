"""Reference implementation of ordinary (two-valued) ADF semantics.

Kept independent of the weighted engines: formulas are compiled to truth
tables over *all* statements (an ``int`` bitmask with one bit per total
assignment), and the operator intersects the completion mask of a
three-valued interpretation with those tables.  No parent restriction, no
memoisation, no search pruning.

Interpretations here are tuples over ``"t"``, ``"f"``, ``"u"`` in statement
order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .formula import Atom, Conj, Const, Neg
from .valuation import U

__all__ = ["ClassicalADF", "classical_gamma", "classical_semantics", "check_embedding", "EmbeddingReport"]

MAX_STATEMENTS = 12


@dataclass(frozen=True)
class ClassicalADF:
    """Statements plus acceptance formulas as nested tuples::

        ("atom", name) | ("const", bool) | ("and", l, r) | ("or", l, r) | ("not", x)
    """

    statements: tuple
    formulas: tuple
    _tables: tuple = field(default=None, compare=False, repr=False)

    @classmethod
    def from_framework(cls, fw, truth=None) -> "ClassicalADF":
        """``truth`` maps a structure constant to a bool; by default only the
        classical ``t``/``f`` are accepted."""
        if truth is None:
            truth = _classical_truth

        def conv(f):
            if isinstance(f, Atom):
                return ("atom", f.name)
            if isinstance(f, Const):
                return ("const", truth(f.value))
            if isinstance(f, Neg):
                return ("not", conv(f.inner))
            return ("and" if isinstance(f, Conj) else "or", conv(f.left), conv(f.right))

        return cls(tuple(fw.statements), tuple(conv(fw.acceptance[s]) for s in fw.statements))

    @property
    def n(self):
        return len(self.statements)

    def tables(self):
        if self._tables is None:
            object.__setattr__(self, "_tables", tuple(_table(f, self.statements) for f in self.formulas))
        return self._tables


def _classical_truth(c):
    if c not in ("t", "f"):
        raise ValueError(f"not a classical constant: {c!r}")
    return c == "t"


@lru_cache(maxsize=None)
def _atom_mask(i, n):
    return sum(1 << k for k in range(2 ** n) if (k >> i) & 1)


def _table(formula, statements):
    n = len(statements)
    if n > MAX_STATEMENTS:
        raise ValueError(f"oracle handles at most {MAX_STATEMENTS} statements")
    full = (1 << (2 ** n)) - 1
    pos = {s: i for i, s in enumerate(statements)}

    def go(f):
        tag = f[0]
        if tag == "atom":
            return _atom_mask(pos[f[1]], n)
        if tag == "const":
            return full if f[1] else 0
        if tag == "not":
            return full & ~go(f[1])
        a, b = go(f[1]), go(f[2])
        return a & b if tag == "and" else a | b

    return go(formula)


def _completion_mask(v, n):
    mask = (1 << (2 ** n)) - 1
    for i, x in enumerate(v):
        if x == "t":
            mask &= _atom_mask(i, n)
        elif x == "f":
            mask &= ~_atom_mask(i, n)
    return mask


def classical_gamma(adf: ClassicalADF, v) -> tuple:
    """Three-valued operator: ``t``/``f`` where every two-valued completion agrees."""
    comp = _completion_mask(v, adf.n)
    out = []
    for table in adf.tables():
        if comp & ~table == 0:
            out.append("t")
        elif comp & table == 0:
            out.append("f")
        else:
            out.append("u")
    return tuple(out)


def _info_leq(v, w):
    return all(x == "u" or x == y for x, y in zip(v, w))


def _grounded(adf):
    v = ("u",) * adf.n
    while True:
        nxt = classical_gamma(adf, v)
        if nxt == v:
            return v
        v = nxt


def _reduct(adf, v):
    keep = [s for s, x in zip(adf.statements, v) if x == "t"]

    def sub(f):
        tag = f[0]
        if tag == "atom":
            return f if f[1] in keep else ("const", False)
        if tag == "const":
            return f
        if tag == "not":
            return ("not", sub(f[1]))
        return (tag, sub(f[1]), sub(f[2]))

    forms = tuple(sub(f) for s, f in zip(adf.statements, adf.formulas) if s in keep)
    return ClassicalADF(tuple(keep), forms)


def classical_semantics(adf: ClassicalADF) -> dict:
    """Brute-force result sets keyed by semantics name (``stable`` uses the usual
    reduct: keep true statements, set every other atom to false)."""
    interps = list(itertools.product("tfu", repeat=adf.n))
    adm, com = [], []
    for v in interps:
        g = classical_gamma(adf, v)
        if _info_leq(v, g):
            adm.append(v)
            if g == v:
                com.append(v)
    prf = [v for v in adm if not any(w != v and _info_leq(v, w) for w in adm)]
    md = [v for v in com if "u" not in v]
    stb = []
    for v in md:
        red = _reduct(adf, v)
        if all(x == "t" for x in _grounded(red)):
            stb.append(v)
    return {
        "grounded": {_grounded(adf)},
        "admissible": set(adm),
        "complete": set(com),
        "preferred": set(prf),
        "model": set(md),
        "stable": set(stb),
    }


@dataclass
class EmbeddingReport:
    mismatches: dict

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_embedding(fw) -> EmbeddingReport:
    """Compare all six semantics of the weighted engine on a classical
    framework against this oracle (stable taken with assumed set ``{f}``)."""
    from .semantics import ExplicitValues, enumerate_semantics

    adf = ClassicalADF.from_framework(fw)
    expected = classical_semantics(adf)
    mismatches = {}
    for sem, want in expected.items():
        got = enumerate_semantics(fw, sem, assumed=ExplicitValues(["f"]) if sem == "stable" else None)
        got = {tuple("u" if x is U else x for x in v.values) for v in got}
        if got != want:
            mismatches[sem] = {"engine_only": sorted(got - want), "oracle_only": sorted(want - got)}
    return EmbeddingReport(mismatches)
