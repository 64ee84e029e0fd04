"""Command-line front end.

Exit codes: 0 for an affirmative answer (satisfiable, provable, complete,
bisimilar, true), 1 for a negative one, 2 for usage errors, malformed input
and exceeded resource caps.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .bisim import bisimilar, distinguishing_formula
from .complete import (complete, complete_wrt_model, hardness_reduction,
                       reduction_up_to_depth, satisfiable_and_complete)
from .errors import (FormulaSyntaxError, ModcompError, ModelFormatError,
                     PreconditionError, ResourceLimitError)
from .formula import md, negate, parse, size, variables
from .kripke import check, format_model, model_to_dict, parse_model
from .logics import LOGICS, get_logic
from .normalform import complete_up_to_depth, normal_forms_of
from .prover import find_model

OK, NO, ERROR = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _logic(name):
    try:
        return get_logic(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _load_model(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise _Usage(f"cannot read model file {path}: {e.strerror}")
    try:
        return parse_model(text)
    except ModelFormatError as e:
        raise ModelFormatError(f"{path}: {e}")


def _emit(args, text, payload):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_parse(args):
    f = parse(args.formula)
    _emit(args, str(f), {"formula": str(f), "md": md(f), "size": size(f),
                         "vars": sorted(variables(f))})
    return OK


def cmd_sat(args):
    f = parse(args.formula)
    m = find_model(args.logic, [f])
    word = "satisfiable" if m is not None else "unsatisfiable"
    payload = {"verdict": word, "model": None if m is None else model_to_dict(m)}
    text = word
    if m is not None and args.model:
        text += "\n" + format_model(m).rstrip()
    _emit(args, text, payload)
    return OK if m is not None else NO


def cmd_prove(args):
    f = parse(args.formula)
    m = find_model(args.logic, [negate(f)])
    word = "provable" if m is None else "not provable"
    payload = {"verdict": word, "countermodel": None if m is None else model_to_dict(m)}
    text = word
    if m is not None and args.model:
        text += "\n" + format_model(m).rstrip()
    _emit(args, text, payload)
    return OK if m is None else NO


def cmd_complete(args):
    f = parse(args.formula)
    logic = args.logic
    if args.up_to_depth:
        if logic != LOGICS["k"]:
            raise _Usage("--up-to-depth is only available for k")
        ok = complete_up_to_depth(f)
        word = "complete up to depth" if ok else "not complete up to depth"
        _emit(args, word, {"verdict": word, "depth": md(f)})
        return OK if ok else NO
    if args.require_sat:
        ok = satisfiable_and_complete(logic, f)
        word = "satisfiable and complete" if ok else "not satisfiable and complete"
        _emit(args, word, {"verdict": word})
        return OK if ok else NO
    if args.wrt_model:
        v = complete_wrt_model(logic, _load_model(args.wrt_model), f)
    else:
        v = complete(logic, f)
    if args.json:
        print(v.to_json(sort_keys=True))
    else:
        lines = [v.outcome]
        if args.witness and not v.complete:
            lines.append(f"psi: {v.psi}")
            for i, m in enumerate(v.witnesses or (), 1):
                lines.append(f"witness {i}:")
                lines.append(format_model(m).rstrip())
        print("\n".join(lines))
    return OK if v.complete else NO


def cmd_bisim(args):
    m1, m2 = _load_model(args.model1), _load_model(args.model2)
    if args.vars is None:
        P = m1.variables() | m2.variables()
    else:
        P = frozenset(v for v in args.vars.split(",") if v)
    same = bisimilar(m1, m2, P)
    word = "bisimilar" if same else "not bisimilar"
    psi = None if same else distinguishing_formula(m1, m2, P)
    text = word if psi is None else f"{word}\npsi: {psi}"
    _emit(args, text, {"verdict": word, "psi": None if psi is None else str(psi)})
    return OK if same else NO


def cmd_check(args):
    m = _load_model(args.model)
    f = parse(args.formula)
    if args.logic is not None and not m.is_model_for(args.logic):
        raise PreconditionError(f"the model is not based on a {args.logic} frame")
    ok = check(m, f)
    _emit(args, "true" if ok else "false", {"verdict": ok})
    return OK if ok else NO


def cmd_nf(args):
    f = parse(args.formula)
    forms = normal_forms_of(f)
    P = variables(f)
    if args.json:
        print(json.dumps({"forms": [str(nf) for nf in forms],
                          "formulas": [str(nf.formula(P)) for nf in forms]}))
    else:
        for nf in forms:
            print(nf.formula(P) if args.formulas else nf)
    return OK


def cmd_reduce(args):
    f = parse(args.formula)
    if args.up_to_depth is not None:
        out = reduction_up_to_depth(args.logic, f, args.up_to_depth)
    else:
        out = hardness_reduction(args.logic, f)
    _emit(args, str(out), {"formula": str(out)})
    return OK


def cmd_oracle(args):
    f = parse(args.formula)
    logic = args.logic
    n = args.states if args.states is not None else oracle.default_budget(logic, variables(f))
    if args.query == "sat":
        ok = oracle.brute_sat(logic, f, n)
        word = "satisfiable" if ok else "no model"
        _emit(args, f"{word} within {n} states", {"verdict": word, "states": n})
        return OK if ok else NO
    if args.query == "incomplete":
        pair = oracle.brute_incomplete(logic, f, n)
        if pair is None:
            _emit(args, f"no witness pair within {n} states",
                  {"verdict": "none", "states": n, "witnesses": None})
            return NO
        lines = [f"witness pair within {n} states"]
        for i, m in enumerate(pair, 1):
            lines += [f"witness {i}:", format_model(m).rstrip()]
        _emit(args, "\n".join(lines), {"verdict": "incomplete", "states": n,
                                      "witnesses": [model_to_dict(m) for m in pair]})
        return OK
    count = sum(1 for _ in oracle.enumerate_models(
        logic, oracle.ModelBudget(n, variables(f)), prune=not args.no_prune))
    _emit(args, str(count), {"count": count, "states": n})
    return OK


def build_parser():
    p = _Parser(prog="modcomp", description="Completeness of modal formulas from K to S5.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, helptext, logic=False):
        sp = sub.add_parser(name, help=helptext)
        if logic:
            sp.add_argument("--logic", "-l", type=_logic, default=LOGICS["k"],
                            help="one of: " + ", ".join(LOGICS) + " (default k)")
        sp.add_argument("--json", action="store_true", help="print a JSON object")
        sp.set_defaults(func=func)
        return sp

    sp = add("parse", cmd_parse, "parse and print a formula in normal form")
    sp.add_argument("formula")

    for name, func, helptext in (("sat", cmd_sat, "decide satisfiability"),
                                 ("prove", cmd_prove, "decide provability")):
        sp = add(name, func, helptext, logic=True)
        sp.add_argument("--model", action="store_true", help="print a (counter)model")
        sp.add_argument("formula")

    sp = add("complete", cmd_complete, "decide completeness", logic=True)
    sp.add_argument("--witness", action="store_true",
                    help="print the distinguishing formula and witness models")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--up-to-depth", action="store_true",
                      help="completeness up to the formula's modal depth (k only)")
    mode.add_argument("--require-sat", action="store_true",
                      help="satisfiable and complete")
    mode.add_argument("--wrt-model", metavar="FILE",
                      help="a model satisfying the formula, reused as a witness")
    sp.add_argument("formula")

    sp = add("bisim", cmd_bisim, "decide bisimilarity of two pointed models")
    sp.add_argument("model1")
    sp.add_argument("model2")
    sp.add_argument("--vars", help="comma-separated variables (default: all used)")

    sp = add("check", cmd_check, "model-check a formula at a model's point")
    sp.add_argument("--logic", "-l", type=_logic, default=None,
                    help="also require the model to fit this logic's frames")
    sp.add_argument("model")
    sp.add_argument("formula")

    sp = add("nf", cmd_nf, "print the normal forms of a formula (K)")
    sp.add_argument("--formulas", action="store_true", help="print forms as formulas")
    sp.add_argument("formula")

    sp = add("reduce", cmd_reduce, "print the hardness reduction of a formula", logic=True)
    sp.add_argument("--up-to-depth", type=int, metavar="D", default=None,
                    help="target completeness up to depth D instead")
    sp.add_argument("formula")

    sp = add("oracle", cmd_oracle, "brute-force checks by model enumeration", logic=True)
    sp.add_argument("query", choices=("sat", "incomplete", "count"))
    sp.add_argument("--states", "-n", type=int, default=None, help="state budget")
    sp.add_argument("--no-prune", action="store_true",
                    help="count isomorphic models separately")
    sp.add_argument("formula")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _Usage as e:
        print(str(e), file=sys.stderr)
        return ERROR
    except FormulaSyntaxError as e:
        print(f"error: formula: {e}", file=sys.stderr)
        return ERROR
    except ModelFormatError as e:
        print(f"error: model: {e}", file=sys.stderr)
        return ERROR
    except ResourceLimitError as e:
        print(f"error: resource limit in {e.module}: {e}", file=sys.stderr)
        return ERROR
    except ModcompError as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
