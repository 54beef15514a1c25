"""``wadf`` command-line front end.

    wadf <solve|verify|query|stable|grounded|reduct> [flags] <framework-file>

Results are JSON documents carrying ``"format": 1``; ``reduct`` prints a
framework file instead.  Exit codes: 0 ok, 2 parse/validation, 3 unsupported
combination, 4 budget exceeded, 5 iteration non-convergence.  Every failure
writes one JSON line to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import NotConvergedError, UnsupportedError, ValidationError, WadfError
from .framework import parse_framework, serialize_framework
from .operator import NotConverged, dump_interpretation, get_operator, kleene_iterate, load_interpretation
from .semantics import (
    SEMANTICS,
    enumerate_semantics,
    is_admissible,
    is_exhaustive,
    is_preferred,
    is_stable,
    parse_assumed,
    parse_predicate,
    query,
    reduct,
)
from .valuation import U

FORMAT = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"usage: {message}")


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {n}")
    return n


def _build_parser():
    common = _Parser(add_help=False)
    common.add_argument("framework", help="framework file")
    common.add_argument("--engine", choices=("auto", "finite", "unit"), default="auto")
    common.add_argument("--max-steps", type=_positive, default=None)
    common.add_argument("--budget", type=_positive, default=None,
                        help="cap on completions per operator call and on enumerated interpretations "
                             "(default: $WADF_BUDGET or 2^22)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = _Parser(prog="wadf", description="Weighted ADF reasoner")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="enumerate a semantics")
    p.add_argument("--sem", choices=SEMANTICS, required=True)
    p.add_argument("--assumed", help="assumed values W (stable only)")

    p = sub.add_parser("grounded", parents=[common], help="compute the grounded interpretation")

    p = sub.add_parser("verify", parents=[common], help="check membership of an interpretation")
    p.add_argument("--sem", choices=SEMANTICS, required=True)
    p.add_argument("--interpretation", required=True)
    p.add_argument("--assumed", help="assumed values W (stable only)")

    p = sub.add_parser("query", parents=[common], help="credulous / skeptical acceptance")
    p.add_argument("--sem", choices=SEMANTICS, required=True)
    p.add_argument("--statement", required=True)
    p.add_argument("--pred", required=True, help="eq:<v>, ge:<v> or le:<v>")
    p.add_argument("--mode", choices=("credulous", "skeptical"), default="credulous")
    p.add_argument("--assumed", help="assumed values W (stable only)")

    p = sub.add_parser("stable", parents=[common], help="W-stability of a model")
    p.add_argument("--interpretation", required=True)
    p.add_argument("--assumed", required=True)

    p = sub.add_parser("reduct", parents=[common], help="print the v,W-reduct")
    p.add_argument("--interpretation", required=True)
    p.add_argument("--assumed", required=True)
    return parser


def _check_flags(args):
    sem = getattr(args, "sem", None)
    assumed = getattr(args, "assumed", None)
    if sem is not None:
        if sem == "stable" and assumed is None:
            raise ValidationError("--sem stable needs --assumed")
        if sem != "stable" and assumed is not None:
            raise ValidationError("--assumed only applies to --sem stable")


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("WADF_BUDGET")
    if env is None:
        return None
    try:
        n = int(env)
    except ValueError:
        raise ValidationError(f"WADF_BUDGET is not an integer: {env!r}") from None
    if n < 1:
        raise ValidationError("WADF_BUDGET must be >= 1")
    return n


def _opts(args, fw):
    budget = _budget(args)
    opts = {"engine": args.engine, "budget": budget, "max_steps": args.max_steps}
    get_operator(fw, args.engine, budget)  # reject bad engine/structure pairs up front
    return opts


def _engine_name(fw, args):
    return get_operator(fw, args.engine, _budget(args)).engine


def _header(args, fw, **extra):
    doc = {"format": FORMAT, "command": args.command, "structure": fw.structure.header(),
           "engine": _engine_name(fw, args)}
    doc.update(extra)
    return doc


def _enum(fw, sem, assumed, opts):
    kw = dict(opts)
    if opts["budget"] is not None:
        kw["cap"] = opts["budget"]
    return enumerate_semantics(fw, sem, assumed, **kw)


def cmd_solve(args, fw):
    opts = _opts(args, fw)
    sem = args.sem if args.command == "solve" else "grounded"
    assumed = parse_assumed(args.assumed, fw.structure) if getattr(args, "assumed", None) else None
    doc = _header(args, fw, semantics=sem)
    if assumed is not None:
        doc["assumed"] = assumed.render(fw.structure)
    if sem == "grounded":
        outcome = kleene_iterate(fw, opts["max_steps"], opts["engine"], opts["budget"])
        if isinstance(outcome, NotConverged):
            raise NotConvergedError(f"no fixpoint within {outcome.steps} steps")
        doc["steps"] = outcome.steps
        found = [outcome.interpretation]
    else:
        found = _enum(fw, sem, assumed, opts)
    doc["exhaustive"] = is_exhaustive(fw, sem)
    doc["count"] = len(found)
    doc["interpretations"] = [dump_interpretation(fw, v) for v in found]
    return doc


def _first_violation(fw, v, g, relation):
    for s in fw.statements:
        if not relation(v[s], g[s]):
            render = fw.structure.render_partial
            return {"statement": s, "value": render(v[s]), "gamma": render(g[s])}
    return None


def cmd_verify(args, fw):
    opts = _opts(args, fw)
    v = load_interpretation(fw, _read(args.interpretation))
    op = get_operator(fw, opts["engine"], opts["budget"])
    doc = _header(args, fw, semantics=args.sem, interpretation=dump_interpretation(fw, v))
    leq = fw.structure.leq
    sem = args.sem
    diag = None
    if sem == "admissible":
        g = op(v)
        diag = _first_violation(fw, v, g, leq)
        verdict = diag is None
    elif sem in ("complete", "model"):
        undefined = [s for s in fw.statements if v[s] is U]
        if sem == "model" and undefined:
            verdict, diag = False, {"statement": undefined[0], "reason": "undefined value in a model"}
        else:
            g = op(v)
            diag = _first_violation(fw, v, g, lambda x, y: x == y)
            verdict = diag is None
    elif sem == "preferred":
        if not fw.structure.finite:
            raise UnsupportedError("preferred semantics needs a finite structure")
        if not is_admissible(fw, v, opts["engine"], opts["budget"]):
            verdict = False
            diag = _first_violation(fw, v, op(v), leq)
            diag["reason"] = "not admissible"
        else:
            verdict = is_preferred(fw, v, opts["engine"], opts["budget"])
            if not verdict:
                diag = {"reason": "an admissible strict extension exists"}
    elif sem == "grounded":
        outcome = kleene_iterate(fw, opts["max_steps"], opts["engine"], opts["budget"])
        if isinstance(outcome, NotConverged):
            doc["verdict"] = "indeterminate"
            doc["diagnostic"] = {"reason": f"no fixpoint within {outcome.steps} steps"}
            _emit(args, doc)
            raise NotConvergedError(f"no fixpoint within {outcome.steps} steps; verdict indeterminate")
        gv = outcome.interpretation
        diag = _first_violation(fw, v, gv, lambda x, y: x == y)
        if diag is not None:
            diag["grounded"] = diag.pop("gamma")
        verdict = diag is None
    else:
        assumed = parse_assumed(args.assumed, fw.structure)
        res = is_stable(fw, v, assumed, opts["engine"], opts["budget"], opts["max_steps"])
        if res.status == "unknown":
            doc["verdict"] = "indeterminate"
            doc["diagnostic"] = {"reason": res.reason}
            _emit(args, doc)
            raise NotConvergedError(res.reason)
        verdict = res.stable
        if not verdict:
            diag = {"statement": res.witness, "reason": res.reason}
    doc["verdict"] = verdict
    doc["diagnostic"] = diag
    return doc


def cmd_stable(args, fw):
    opts = _opts(args, fw)
    v = load_interpretation(fw, _read(args.interpretation))
    assumed = parse_assumed(args.assumed, fw.structure)
    res = is_stable(fw, v, assumed, opts["engine"], opts["budget"], opts["max_steps"])
    doc = _header(args, fw, assumed=assumed.render(fw.structure), interpretation=dump_interpretation(fw, v))
    doc["verdict"] = res.status
    doc["witness"] = res.witness
    doc["reason"] = res.reason
    if res.reduct is not None:
        doc["reduct_statements"] = list(res.reduct.statements)
        doc["reduct_grounded"] = dump_interpretation(res.reduct, res.reduct_grounded)
    if res.status == "unknown":
        _emit(args, doc)
        raise NotConvergedError(res.reason)
    return doc


def cmd_query(args, fw):
    opts = _opts(args, fw)
    if args.statement not in fw.index:
        raise ValidationError(f"unknown statement {args.statement}")
    pred = parse_predicate(args.pred, fw.structure)
    assumed = parse_assumed(args.assumed, fw.structure) if args.assumed else None
    kw = dict(opts)
    if opts["budget"] is not None:
        kw["cap"] = opts["budget"]
    res = query(fw, args.sem, args.statement, pred, args.mode, assumed, **kw)
    doc = _header(args, fw, semantics=args.sem, mode=args.mode, statement=args.statement, predicate=args.pred)
    if assumed is not None:
        doc["assumed"] = assumed.render(fw.structure)
    doc["exhaustive"] = is_exhaustive(fw, args.sem)
    doc["count"] = res.count
    doc["answer"] = res.answer
    doc["witness"] = None if res.witness is None else dump_interpretation(fw, res.witness)
    return doc


def cmd_reduct(args, fw):
    _opts(args, fw)
    v = load_interpretation(fw, _read(args.interpretation))
    return serialize_framework(reduct(fw, v, parse_assumed(args.assumed, fw.structure)))


_COMMANDS = {
    "solve": cmd_solve,
    "grounded": cmd_solve,
    "verify": cmd_verify,
    "stable": cmd_stable,
    "query": cmd_query,
    "reduct": cmd_reduct,
}


def _emit(args, doc):
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        _check_flags(args)
        fw = parse_framework(_read(args.framework))
        result = _COMMANDS[args.command](args, fw)
        _emit(args, result)
        return 0
    except WadfError as exc:
        line = json.dumps({"error": exc.kind, "exit": exc.exit_code, "message": str(exc)})
        sys.stderr.write(line + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
