"""Command-line front end: ``proofbench <verb> ...``.

Exit status is 0 when every verdict is ACCEPT (or feasibility matches the
SAT oracle), 1 on any REJECT or mismatch, and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from .algebraic import encode_linear_system, encode_poly_system, solvable_01
from .checkers import check_proof, proof_conclusion
from .cnf import cnf_formula, dnf_negation, read_dimacs, write_dimacs
from .formula import FormulaError, ParseError, brute_force_classify, render_formula
from .generators import (CNF, DNF, ParamError, TauInstance, gen_php, gen_tau, gen_tseitin,
                         parse_circuit, parse_graph, tau_cnf)
from .measure import all_accepted, measure_proof, run_corpus
from .php_proof import build_ef_proof_php
from .proofs import HilbertProof, read_proof, write_hilbert, write_resolution
from .search import FOUND, SearchBudget, BudgetError, min_resolution_steps
from .simulations import SourceInvalidError, UnsupportedPairError, translate

OK, FAIL, USAGE = 0, 1, 2
SYSTEMS = ("RES", "ER", "F", "EF", "SF")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_cnf(args):
    if getattr(args, "cnf", None):
        return read_dimacs(_read(args.cnf))
    if args.pigeons is None:
        raise UsageError("give a CNF file or --pigeons")
    holes = args.holes if args.holes is not None else args.pigeons - 1
    return gen_php(args.pigeons, holes, args.functionality, CNF)


def _load_proof(path: str):
    text = _read(path)
    base = os.path.dirname(os.path.abspath(path)) if path != "-" else None
    return read_proof(text, base)


def _write_proof(proof, out: Optional[str], stats: str = None, cnf=None) -> None:
    if isinstance(proof, HilbertProof):
        _emit(write_hilbert(proof, stats), out)
        return
    if cnf is not None and proof.cnf_path in (None, "-"):
        if not out:
            raise UsageError("refutation output needs -o so its CNF can be written beside it")
        side = out + ".cnf"
        _emit(write_dimacs(cnf), side)
        proof.cnf_path = os.path.basename(side)
    _emit(write_resolution(proof, stats=stats), out)


# -- verbs ---------------------------------------------------------------------------------

def cmd_gen(args) -> int:
    form = DNF if args.form == "dnf" else CNF
    if args.family == "php":
        if args.pigeons is None:
            raise UsageError("gen php needs --pigeons")
        holes = args.holes if args.holes is not None else args.pigeons - 1
        res = gen_php(args.pigeons, holes, args.functionality, form)
        text = write_dimacs(res) if form == CNF else render_formula(res) + "\n"
    else:
        if not args.input:
            raise UsageError(f"gen {args.family} needs an input file")
        if args.family == "tseitin":
            graph, charges = parse_graph(_read(args.input))
            cnf = gen_tseitin(graph, charges)
        else:
            if args.target is None:
                raise UsageError("gen tau needs --target")
            inst = TauInstance(parse_circuit(_read(args.input)), args.target)
            if form == DNF:
                _emit(render_formula(gen_tau(inst)) + "\n", args.output)
                return OK
            cnf = tau_cnf(inst)
        text = write_dimacs(cnf) if form == CNF else render_formula(dnf_negation(cnf)) + "\n"
    _emit(text, args.output)
    return OK


def cmd_check(args) -> int:
    try:
        proof, cnf = _load_proof(args.proof)
    except ParseError as exc:
        print(f"REJECT line=0 reason=PARSE_ERROR {exc}")
        return FAIL
    if args.cnf:
        cnf = read_dimacs(_read(args.cnf))
    if args.system and (getattr(proof, "variant", None) or proof.system) != args.system:
        print(f"REJECT line=0 reason=system is not {args.system}")
        return FAIL
    rep = check_proof(proof, cnf)
    print(rep)
    if rep.accepted and args.show_conclusion:
        print(render_formula(proof_conclusion(proof, cnf)))
    return OK if rep.accepted else FAIL


def cmd_translate(args) -> int:
    proof, cnf = _load_proof(args.proof)
    if args.cnf:
        cnf = read_dimacs(_read(args.cnf))
    source = getattr(proof, "variant", None) or proof.system
    res = translate(source, args.target, proof, cnf)
    _write_proof(res.proof, args.output, res.stats_line(), res.cnf)
    print(res.stats_line(), file=sys.stderr)
    return OK


def cmd_prove_php(args) -> int:
    n = args.n if args.n is not None else args.pigeons
    if n is None:
        raise UsageError("prove-php needs n")
    art = build_ef_proof_php(n, args.functionality)
    _emit(write_hilbert(art.proof, art.stats_line()), args.output)
    return OK


def cmd_encode(args) -> int:
    cnf = _load_cnf(args)
    system = encode_poly_system(cnf) if args.kind == "poly" else encode_linear_system(cnf)
    _emit(system.render(), args.output)
    if args.verify:
        sat = brute_force_classify(cnf_formula(cnf)) != "UNSATISFIABLE"
        feasible = solvable_01(system)
        print(f"satisfiable={int(sat)} feasible={int(feasible)}", file=sys.stderr)
        return OK if sat == feasible else FAIL
    return OK


def cmd_measure(args) -> int:
    proof, _ = _load_proof(args.proof)
    print(measure_proof(proof, os.path.basename(args.proof)))
    return OK


def cmd_search(args) -> int:
    cnf = _load_cnf(args)
    res = min_resolution_steps(cnf, SearchBudget(args.budget_lines, args.budget_secs))
    print(res)
    return OK if res.status == FOUND else FAIL


def cmd_corpus(args) -> int:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            rows = run_corpus(args.config, fh, args.jobs)
    else:
        rows = run_corpus(args.config, sys.stdout, args.jobs)
    return OK if all_accepted(rows) else FAIL


# -- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    php = argparse.ArgumentParser(add_help=False)
    php.add_argument("--pigeons", type=int)
    php.add_argument("--holes", type=int, help="defaults to pigeons - 1")
    php.add_argument("--functionality", action=argparse.BooleanOptionalAction, default=True,
                     help="include at-most-one-hole clauses (default on)")

    p = argparse.ArgumentParser(prog="proofbench", description="Propositional proof systems workbench.")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", parents=[common, php], help="generate PHP, Tseitin or tau formulas")
    g.add_argument("family", choices=("php", "tseitin", "tau"))
    g.add_argument("input", nargs="?", help="graph file (tseitin) or circuit file (tau)")
    g.add_argument("--form", choices=("cnf", "dnf"), default="cnf")
    g.add_argument("--target", help="output bit string b for tau")
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("check", help="check a proof file")
    c.add_argument("proof")
    c.add_argument("--cnf", help="override the CNF named in a refutation header")
    c.add_argument("--system", choices=SYSTEMS, help="require this declared system")
    c.add_argument("--show-conclusion", action="store_true")
    c.set_defaults(fn=cmd_check)

    t = sub.add_parser("translate", parents=[common], help="translate a proof between calculi")
    t.add_argument("proof")
    t.add_argument("--system", dest="target", choices=SYSTEMS, required=True, help="target calculus")
    t.add_argument("--cnf")
    t.set_defaults(fn=cmd_translate)

    pp = sub.add_parser("prove-php", parents=[common, php], help="EF proof of PHP_n")
    pp.add_argument("n", nargs="?", type=int)
    pp.set_defaults(fn=cmd_prove_php)

    e = sub.add_parser("encode", parents=[common, php], help="polynomial or 0-1 linear encoding of a CNF")
    e.add_argument("kind", choices=("poly", "ilp"))
    e.add_argument("cnf", nargs="?")
    e.add_argument("--verify", action="store_true", help="compare 0-1 feasibility with satisfiability")
    e.set_defaults(fn=cmd_encode)

    m = sub.add_parser("measure", help="steps and symbols of a proof")
    m.add_argument("proof")
    m.set_defaults(fn=cmd_measure)

    s = sub.add_parser("search-min-res", parents=[php], help="minimal resolution refutation length")
    s.add_argument("cnf", nargs="?")
    s.add_argument("--budget-lines", type=int, default=40)
    s.add_argument("--budget-secs", type=float, default=60.0)
    s.set_defaults(fn=cmd_search)

    r = sub.add_parser("corpus", parents=[common], help="run a JSON job list and write a CSV report")
    r.add_argument("config")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(fn=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args)
    except (UsageError, BudgetError, UnsupportedPairError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, FormulaError, ParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SourceInvalidError as exc:
        print(f"REJECT {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
