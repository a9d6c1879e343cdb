"""Command-line front end.

Exit codes: 0 = valid / satisfiable / satisfied, 1 = invalid /
unsatisfiable / not satisfied, 2 = usage or parse error, 3 = budget or
unsupported-fragment error.  Errors go to standard error with a
machine-parsable ``error[CODE]:`` prefix.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import BudgetExceeded, ParseError, PlqoError, UnsupportedNonlinear
from . import prop
from .parser import parse_classical, parse_plqo
from .syntax import PNeg
from .translate import (
    b_phi,
    q_adams,
    render_constraints,
    translate_atom,
)
from .syntax import atoms_of, prob_formulas_of
from .hilbert import load_assignment, load_structure, prob, satisfies
from .genmodel import GenericModelSpec, spec_to_json
from .decide import (
    Invalid,
    Satisfiable,
    Unsatisfiable,
    Valid,
    check_entail,
    check_sat,
    check_valid,
    derive_schema,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _read_formula_arg(raw):
    if raw.startswith("@"):
        with open(raw[1:]) as fh:
            return fh.read().strip()
    return raw


def _plqo(raw):
    return parse_plqo(_read_formula_arg(raw))


def _classical(raw):
    return parse_classical(_read_formula_arg(raw))


def _emit_countermodel(spec, rho, out_path, label):
    doc = spec_to_json(spec)
    if rho.numeric:
        doc["assignment"] = {f"x{k}": str(v) for k, v in sorted(rho.numeric.items())}
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
        print(f"{label} written to {out_path}")
    else:
        print(text)


def _emit_proof(proof, as_json):
    if as_json:
        print(json.dumps(proof.to_json(), indent=2))
    else:
        print(proof.render())


def _cmd_check(args):
    verdict = check_valid(_plqo(args.formula))
    if isinstance(verdict, Valid):
        print("VALID")
        _emit_proof(verdict.proof, args.json)
        return EXIT_TRUE
    print("INVALID")
    _emit_countermodel(verdict.spec, verdict.assignment, args.output, "countermodel")
    return EXIT_FALSE


def _cmd_sat(args):
    verdict = check_sat(_plqo(args.formula))
    if isinstance(verdict, Satisfiable):
        print("SATISFIABLE")
        _emit_countermodel(verdict.spec, verdict.assignment, args.output, "model")
        return EXIT_TRUE
    print("UNSATISFIABLE")
    _emit_proof(verdict.proof, args.json)
    return EXIT_FALSE


def _cmd_entail(args):
    premises = [_plqo(p) for p in args.premise]
    verdict = check_entail(premises, _plqo(args.conclusion))
    if isinstance(verdict, Valid):
        print("ENTAILED")
        _emit_proof(verdict.proof, args.json)
        return EXIT_TRUE
    print("NOT ENTAILED")
    _emit_countermodel(verdict.spec, verdict.assignment, args.output, "countermodel")
    return EXIT_FALSE


def _cmd_eval(args):
    tol = args.tol if args.float else None
    structure = load_structure(args.model, tol)
    rho = load_assignment(args.assign) if args.assign else None
    from .syntax import EMPTY_ASSIGNMENT

    rho = rho or EMPTY_ASSIGNMENT
    if args.prob:
        alpha = _classical(args.prob)
        print(f"prob = {prob(structure, alpha)}")
    if not args.formula:
        return EXIT_TRUE
    phi = _plqo(args.formula)
    if satisfies(structure, rho, phi):
        print("SATISFIED")
        return EXIT_TRUE
    print("NOT SATISFIED")
    return EXIT_FALSE


def _cmd_genmodel(args):
    symbols = [prop.PropSymbol(int(s.lstrip("B"))) for s in args.symbols]
    nc = []
    for pair in args.nc or []:
        names = pair.split(",")
        if len(names) != 2:
            raise PlqoError(f"nc pair must be two comma-separated symbols: {pair!r}")
        nc.append([prop.PropSymbol(int(n.strip().lstrip("B"))) for n in names])
    masses = [Fraction(m) for m in args.masses]
    spec = GenericModelSpec.make(symbols, nc, masses)
    text = json.dumps(spec_to_json(spec), indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(f"model written to {args.output}")
    else:
        print(text)
    return EXIT_TRUE


def _cmd_translate(args):
    phi = _plqo(args.formula)
    base = sorted(b_phi(phi))
    delta = prob_formulas_of(phi)
    print("# distribution system")
    print(render_constraints(q_adams(base, delta)))
    for atom in atoms_of(phi):
        print(f"# atom {atom}")
        print(render_constraints(translate_atom(atom)))
    return EXIT_TRUE


def _cmd_essential(args):
    alpha = _classical(args.formula)
    ess = sorted(prop.essential_symbols(alpha))
    print(" ".join(str(s) for s in ess) if ess else "(none)")
    return EXIT_TRUE


def _cmd_anf(args):
    print(prop.anf(_classical(args.formula)))
    return EXIT_TRUE


def _cmd_prove(args):
    if args.schema == "fig1":
        if not (args.alpha1 and args.alpha2):
            raise ParseError("fig1 needs --alpha1 and --alpha2", 0, 0)
        proof = derive_schema("fig1", _classical(args.alpha1), _classical(args.alpha2))
    else:
        proof = derive_schema(args.schema)
    _emit_proof(proof, args.json)
    return EXIT_TRUE


def build_parser():
    top = argparse.ArgumentParser(
        prog="plqo",
        description="Decide validity/satisfiability of observation-logic "
        "formulas, evaluate them on finite quantum structures, and emit "
        "calculus proofs or verified countermodels.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="proofs as JSON")
        p.add_argument("-o", "--output", help="write countermodel/model file here")

    p = sub.add_parser("check", help="decide validity")
    p.add_argument("formula", help="formula, or @file")
    add_common(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("sat", help="decide satisfiability")
    p.add_argument("formula")
    add_common(p)
    p.set_defaults(fn=_cmd_sat)

    p = sub.add_parser("entail", help="finite entailment")
    p.add_argument("--premise", action="append", default=[], help="repeatable")
    p.add_argument("--conclusion", required=True)
    add_common(p)
    p.set_defaults(fn=_cmd_entail)

    p = sub.add_parser("eval", help="evaluate on a structure file")
    p.add_argument("--model", required=True)
    p.add_argument("--assign", help="JSON assignment file")
    p.add_argument("--formula")
    p.add_argument("--prob", help="also print the probability of this classical formula")
    p.add_argument("--float", action="store_true", help="tolerance mode")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("genmodel", help="write a generic structure file")
    p.add_argument("--symbols", nargs="+", required=True)
    p.add_argument("--nc", nargs="*", help="pairs like B1,B2")
    p.add_argument("--masses", nargs="+", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_genmodel)

    p = sub.add_parser("translate", help="print the constraint translation")
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser("essential", help="essential symbols of a classical formula")
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_essential)

    p = sub.add_parser("anf", help="algebraic normal form of a classical formula")
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_anf)

    p = sub.add_parser("prove", help="emit a derivation schema")
    p.add_argument("--schema", required=True, choices=("fig1", "fig2", "obs_taut"))
    p.add_argument("--alpha1")
    p.add_argument("--alpha2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_prove)

    return top


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (BudgetExceeded, UnsupportedNonlinear) as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except PlqoError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error[io]: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
