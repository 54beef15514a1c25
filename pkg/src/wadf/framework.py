"""Weighted ADFs: statements, acceptance formulas and the framework file format.

Links and parents are derived from the acceptance formulas, never declared.

File format (UTF-8; lines starting with ``#`` are comments)::

    structure unit-flat
    statement a: 0.8
    statement b: !b
    statement c: a & b
    statement d: !b | 0.6

Custom structures add a declaration block after ``structure custom``::

    value no_tendency tendency_accept accept
    order no_tendency < tendency_accept
    order tendency_accept < accept
    conj = info-meet
    disj = table: accept accept -> accept; ...
    neg = table: accept -> no_tendency; ...
"""
from __future__ import annotations

import re
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ParseError, ValidationError
from .formula import Formula, atoms, connectives, constants, parse_formula, render_formula
from .valuation import INFO_MEET, Custom, Structure, make_structure

__all__ = [
    "Framework",
    "build_framework",
    "parents",
    "links",
    "is_acyclic",
    "parse_framework",
    "serialize_framework",
]

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Framework:
    """An immutable wADF bound to one valuation structure.

    Use :func:`build_framework` or :func:`parse_framework`; the constructor
    itself does not validate.
    """

    __slots__ = ("structure", "statements", "acceptance", "parents", "index", "_cache")

    def __init__(self, structure: Structure, statements, acceptance: Mapping[str, Formula]):
        self.structure = structure
        self.statements = tuple(statements)
        self.acceptance = MappingProxyType({s: acceptance[s] for s in self.statements})
        self.index = MappingProxyType({s: i for i, s in enumerate(self.statements)})
        self.parents = MappingProxyType({
            s: tuple(p for p in self.statements if p in atoms(self.acceptance[s]))
            for s in self.statements
        })
        self._cache = {}

    @property
    def links(self) -> frozenset:
        return frozenset((p, s) for s in self.statements for p in self.parents[s])

    def __eq__(self, other):
        return (isinstance(other, Framework) and self.structure == other.structure
                and self.statements == other.statements and self.acceptance == other.acceptance)

    def __hash__(self):
        return hash((self.structure, self.statements, tuple(self.acceptance.values())))

    def __len__(self):
        return len(self.statements)

    def __repr__(self):
        return f"<Framework {self.structure.header()} |S|={len(self.statements)}>"


def build_framework(structure: Structure, pairs: Iterable) -> Framework:
    """Validate ``(statement, formula)`` pairs into a :class:`Framework`.

    Formulas may be given as text.  Every problem found is collected before
    a :class:`ValidationError` is raised, so nothing half-built escapes.
    """
    issues = []
    statements, acceptance = [], {}
    for sid, phi in pairs:
        if not isinstance(sid, str) or not _IDENT.match(sid):
            issues.append(f"bad statement id {sid!r}")
            continue
        if sid in structure.keywords or sid == "u":
            issues.append(f"statement id {sid} clashes with a constant")
        if sid in acceptance:
            issues.append(f"duplicate statement {sid}")
            continue
        if isinstance(phi, str):
            try:
                phi = parse_formula(phi, structure)
            except ValidationError as exc:
                issues.append(f"statement {sid}: {exc}")
                continue
        statements.append(sid)
        acceptance[sid] = phi
    declared = set(statements)
    for sid in statements:
        phi = acceptance[sid]
        for a in sorted(atoms(phi) - declared):
            issues.append(f"statement {sid}: unknown atom {a}")
        for c in constants(phi):
            if not structure.contains(c):
                issues.append(f"statement {sid}: constant {c!r} not in structure")
        for name in sorted(connectives(phi)):
            if not structure.has_connective(name):
                issues.append(f"statement {sid}: connective {name} undefined in structure")
    if issues:
        raise ValidationError(issues)
    return Framework(structure, statements, acceptance)


def parents(fw: Framework, s: str) -> frozenset:
    if s not in fw.index:
        raise ValidationError(f"unknown statement {s}")
    return frozenset(fw.parents[s])


def links(fw: Framework) -> frozenset:
    return fw.links


def is_acyclic(fw: Framework) -> bool:
    """True iff the link graph has no directed cycle; self-loops count."""
    state = {}

    def visit(s):
        state[s] = 1
        for p in fw.parents[s]:
            mark = state.get(p)
            if mark == 1 or (mark is None and not visit(p)):
                return False
        state[s] = 2
        return True

    return all(state.get(s) == 2 or visit(s) for s in fw.statements)


# -- file format -----------------------------------------------------------

def _parse_header(rest, lineno):
    parts = rest.split()
    if not parts:
        raise ParseError("missing structure kind", line=lineno)
    kind = parts[0]
    compact = re.match(r"^w(\d+)$", kind)
    if compact and len(parts) == 1:
        kind, parts = "w", ["w", compact.group(1)]
    if kind == "custom" and len(parts) == 1:
        return "custom"
    try:
        if len(parts) == 2:
            m = int(parts[1])
        elif len(parts) == 1:
            m = None
        else:
            raise ParseError(f"bad structure declaration {rest!r}", line=lineno)
        return make_structure(kind, m)
    except ValueError:
        raise ParseError(f"bad structure size {parts[1]!r}", line=lineno) from None
    except ValidationError as exc:
        raise ParseError(str(exc), line=lineno) from None


def _parse_table(body, arity, lineno):
    table = {}
    for entry in filter(None, (e.strip() for e in body.split(";"))):
        lhs, sep, rhs = entry.partition("->")
        args = lhs.split()
        if not sep or len(args) != arity or len(rhs.split()) != 1:
            raise ParseError(f"bad table entry {entry!r}", line=lineno)
        key = tuple(args) if arity == 2 else args[0]
        if key in table:
            raise ParseError(f"duplicate table entry {entry!r}", line=lineno)
        table[key] = rhs.strip()
    return table


def parse_framework(text: str) -> Framework:
    structure = None
    custom = None
    pairs = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    if not lines:
        raise ParseError("empty framework file")
    lineno, first = lines[0]
    head, _, rest = first.partition(" ")
    if head != "structure":
        raise ParseError("first line must be 'structure <kind>'", line=lineno)
    declared = _parse_header(rest, lineno)
    if declared == "custom":
        custom = {"values": [], "edges": [], "conj": None, "disj": None, "neg": None}
    else:
        structure = declared

    seen_statement = False
    for lineno, line in lines[1:]:
        keyword, _, rest = line.partition(" ")
        if keyword == "statement":
            if structure is None:
                try:
                    structure = Custom.build(custom["values"], custom["edges"],
                                             custom["conj"], custom["disj"], custom["neg"])
                except ValidationError as exc:
                    raise ParseError(str(exc), line=lineno) from None
            seen_statement = True
            sid, colon, phi = rest.partition(":")
            if not colon:
                raise ParseError("expected 'statement <id>: <formula>'", line=lineno)
            try:
                formula = parse_formula(phi, structure)
            except ParseError as exc:
                col = None if exc.column is None else line.index(":") + 1 + exc.column
                raise ParseError(exc.message, line=lineno, column=col) from None
            pairs.append((sid.strip(), formula))
            continue
        if custom is None or seen_statement:
            raise ParseError(f"unexpected line {line!r}", line=lineno)
        if keyword == "value":
            custom["values"].extend(rest.split())
        elif keyword == "order":
            chain = [p.strip() for p in rest.split("<")]
            if len(chain) < 2 or not all(chain):
                raise ParseError(f"bad order declaration {line!r}", line=lineno)
            custom["edges"].extend(zip(chain, chain[1:]))
        elif keyword in ("conj", "disj", "neg"):
            _, eq, spec = line.partition("=")
            spec = spec.strip()
            if not eq or line.split("=")[0].strip() != keyword:
                raise ParseError(f"bad connective declaration {line!r}", line=lineno)
            if custom[keyword] is not None:
                raise ParseError(f"{keyword} declared twice", line=lineno)
            if spec == INFO_MEET and keyword == "conj":
                custom[keyword] = INFO_MEET
            elif spec.startswith("table:"):
                custom[keyword] = _parse_table(spec[len("table:"):], 1 if keyword == "neg" else 2, lineno)
            else:
                raise ParseError(f"bad connective definition {spec!r}", line=lineno)
        else:
            raise ParseError(f"unknown declaration {keyword!r}", line=lineno)
    if structure is None:
        try:
            structure = Custom.build(custom["values"], custom["edges"],
                                     custom["conj"], custom["disj"], custom["neg"])
        except ValidationError as exc:
            raise ParseError(str(exc), line=lines[-1][0]) from None
    return build_framework(structure, pairs)


def serialize_framework(fw: Framework) -> str:
    s = fw.structure
    out = [f"structure {s.header()}"]
    if isinstance(s, Custom):
        vals = s.values()
        out.append("value " + " ".join(vals))
        out.extend(f"order {lo} < {hi}" for lo, hi in s.edges)
        for name, spec in (("conj", s.conj_spec), ("disj", s.disj_spec)):
            if spec == INFO_MEET:
                out.append(f"{name} = {INFO_MEET}")
            elif spec is not None:
                entries = "; ".join(f"{x} {y} -> {spec[(x, y)]}" for x in vals for y in vals)
                out.append(f"{name} = table: {entries}")
        if s.neg_spec is not None:
            out.append("neg = table: " + "; ".join(f"{x} -> {s.neg_spec[x]}" for x in vals))
    for sid in fw.statements:
        out.append(f"statement {sid}: {render_formula(fw.acceptance[sid], s)}")
    return "\n".join(out) + "\n"
