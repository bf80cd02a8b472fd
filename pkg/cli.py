"""
Command-line front end for the dependence logic workbench.

Each invocation answers one query. Verdicts go to stdout, diagnostics to
stderr. Exit codes: 0 true/valid/equivalent/ok, 1 false/invalid/inequivalent/
rejected, 2 usage error, 3 guard, fragment, model or file error.
"""
import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

from config_loader import ConfigLoader
from dependence_core import config as core_config
from dependence_core.decide import (EnumBudget, Verdict, Witness, characteristic_formula, equivalent,
                                    inexpressibility_scan, satisfiable, team_validity, validity)
from dependence_core.errors import LogicError
from dependence_core.formula_gen import random_formulas
from dependence_core.kripke_semantics import eval_global, eval_kripke
from dependence_core.models import Signature, load_model
from dependence_core.proof_system import check_derivation, load_derivation, soundness_audit
from dependence_core.syntax import Fragment, parse, props_of
from dependence_core.team_semantics import SplitStrategy, eval_team, team_fragment_of
from dependence_core.translations import translate

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_ERROR = 3


@dataclass
class Outcome:
    code: int
    verdict: str
    text: str
    witness: Optional[Witness] = None
    extra: dict = field(default_factory=dict)


def _fragment(value: str) -> Fragment:
    try:
        return Fragment(value)
    except ValueError:
        names = ", ".join(f.value for f in Fragment)
        raise argparse.ArgumentTypeError(f"unknown fragment '{value}' (choose from {names})") from None


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{value}'") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {number}")
    return number


def _signature(names: Optional[List[str]], default: Signature) -> Signature:
    return Signature.of(names) if names else default


def _symbols_of(*formulas) -> Signature:
    signature = Signature()
    for phi in formulas:
        signature = signature.union(props_of(phi).without(core_config.RESERVED_SYMBOL))
    return signature


def _from_verdict(verdict: Verdict) -> Outcome:
    return Outcome(EXIT_TRUE if verdict.result else EXIT_FALSE, verdict.word, verdict.format(), verdict.witness)


def _truth(value: bool) -> Outcome:
    word = "true" if value else "false"
    return Outcome(EXIT_TRUE if value else EXIT_FALSE, word, word + "\n")


# ------------------------------------------------------------------------------
# Subcommands
# ------------------------------------------------------------------------------

def cmd_parse(args, settings) -> Outcome:
    phi = parse(args.formula, args.fragment or Fragment.MIXED)
    return Outcome(EXIT_TRUE, "ok", f"{phi}\n", extra={"formula": str(phi)})


def cmd_eval(args, settings) -> Outcome:
    W = load_model(args.model)
    if args.semantics == "team":
        phi = parse(args.formula, args.fragment or Fragment.MIXED)
        fragment = args.fragment or team_fragment_of(phi)
        return _truth(eval_team(W, phi, fragment, SplitStrategy(args.strategy)))
    fragment = args.fragment or Fragment.MIXED
    phi = parse(args.formula, fragment)
    if args.world is None:
        return _truth(eval_global(W, phi, fragment))
    return _truth(eval_kripke(W, args.world, phi, fragment))


def cmd_validity(args, settings) -> Outcome:
    fragment = args.fragment or Fragment.MIXED
    phi = parse(args.formula, fragment)
    if fragment.is_team:
        return _from_verdict(team_validity(phi, fragment, jobs=settings.jobs))
    return _from_verdict(validity(phi, fragment, jobs=settings.jobs))


def cmd_sat(args, settings) -> Outcome:
    fragment = args.fragment or Fragment.MIXED
    return _from_verdict(satisfiable(parse(args.formula, fragment), fragment, jobs=settings.jobs))


def cmd_equiv(args, settings) -> Outcome:
    fragment = args.fragment or Fragment.MIXED
    phi, psi = parse(args.left, fragment), parse(args.right, fragment)
    return _from_verdict(equivalent(phi, psi, fragment, jobs=settings.jobs))


def cmd_translate(args, settings) -> Outcome:
    phi = parse(args.formula, args.source)
    out = translate(phi, args.source, args.target)
    return Outcome(EXIT_TRUE, "ok", f"{out}\n", extra={"formula": str(out)})


def cmd_charform(args, settings) -> Outcome:
    W = load_model(args.model)
    phi = characteristic_formula(W, _signature(args.sig, W.signature))
    return Outcome(EXIT_TRUE, "ok", f"{phi}\n", extra={"formula": str(phi)})


def cmd_check_proof(args, settings) -> Outcome:
    d = load_derivation(args.file)
    result = check_derivation(d, debug_mode=settings.debug_mode)
    if result.ok and args.audit:
        result = soundness_audit(d)
    word = "ok" if result.ok else "rejected"
    return Outcome(EXIT_TRUE if result.ok else EXIT_FALSE, word, result.format() + "\n",
                   extra={"line": result.line, "reason": result.reason})


def cmd_search(args, settings) -> Outcome:
    if not args.inexpressible:
        raise argparse.ArgumentTypeError("search needs --inexpressible")
    target = parse(args.target, Fragment.LD)
    budget = EnumBudget(_signature(args.sig, _symbols_of(target)),
                        args.max_size if args.max_size is not None else settings.search_max_size)
    found = inexpressibility_scan(target, budget)
    if found is None:
        return Outcome(EXIT_TRUE, "none", "none\n")
    return Outcome(EXIT_FALSE, "found", f"{found}\n", extra={"formula": str(found)})


def cmd_sample(args, settings) -> Outcome:
    signature = _signature(args.sig, Signature.of(settings.corpus_signature))
    count = args.count if args.count is not None else settings.corpus_count
    max_size = args.max_size if args.max_size is not None else settings.corpus_max_size
    corpus = random_formulas(args.fragment, signature, count, max_size, seed=settings.seed)
    texts = [str(phi) for phi in corpus]
    return Outcome(EXIT_TRUE, "ok", "".join(t + "\n" for t in texts), extra={"formulas": texts})


# ------------------------------------------------------------------------------
# Argument parsing
# ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dependence-workbench",
                                     description="Team and Kripke semantics for propositional dependence logics.")
    parser.add_argument("--json", action="store_true", default=None, help="print one JSON record")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled corpora")
    parser.add_argument("--jobs", type=_positive, default=None, help="worker processes for model scans")
    parser.add_argument("--debug", action="store_true", help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and print a formula")
    p.add_argument("--fragment", type=_fragment)
    p.add_argument("formula")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("eval", help="evaluate a formula on a model file")
    p.add_argument("--semantics", choices=["team", "kripke"], default="kripke")
    p.add_argument("--fragment", type=_fragment)
    p.add_argument("--model", required=True)
    p.add_argument("--world", type=int)
    p.add_argument("--strategy", choices=[s.value for s in SplitStrategy], default="general")
    p.add_argument("formula")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("validity", help="validity over all models on the formula's symbols")
    p.add_argument("--fragment", type=_fragment)
    p.add_argument("formula")
    p.set_defaults(handler=cmd_validity)

    p = sub.add_parser("sat", help="satisfiability in a nonempty model")
    p.add_argument("--fragment", type=_fragment)
    p.add_argument("formula")
    p.set_defaults(handler=cmd_sat)

    p = sub.add_parser("equiv", help="pointwise equivalence of two formulas")
    p.add_argument("--fragment", type=_fragment)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("translate", help="translate between languages")
    p.add_argument("--from", dest="source", type=_fragment, required=True)
    p.add_argument("--to", dest="target", type=_fragment, required=True)
    p.add_argument("formula")
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("charform", help="characteristic formula of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--sig", nargs="+")
    p.set_defaults(handler=cmd_charform)

    p = sub.add_parser("check-proof", help="check a .prf derivation")
    p.add_argument("file")
    p.add_argument("--audit", action="store_true", help="also check every line by brute force")
    p.set_defaults(handler=cmd_check_proof)

    p = sub.add_parser("search", help="bounded search for an equivalent formula of i")
    p.add_argument("--inexpressible", action="store_true")
    p.add_argument("--target", required=True)
    p.add_argument("--sig", nargs="+")
    p.add_argument("--max-size", type=_positive)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("sample", help="print a seeded formula corpus")
    p.add_argument("--fragment", type=_fragment, required=True)
    p.add_argument("--count", type=_positive)
    p.add_argument("--max-size", type=_positive)
    p.add_argument("--sig", nargs="+")
    p.set_defaults(handler=cmd_sample)
    return parser


def _settings(args) -> ConfigLoader:
    settings = ConfigLoader()
    if args.seed is not None:
        settings.seed = args.seed
    if args.jobs is not None:
        settings.jobs = args.jobs
    if args.json:
        settings.json_output = True
    if args.debug:
        settings.debug_mode = True
    core_config.DEBUG_MODE = settings.debug_mode
    return settings


def run(argv: List[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_TRUE

    settings = _settings(args)
    if settings.debug_mode:
        print(f"🔍 [CLI] {args.command}: {settings.describe()}", file=sys.stderr)

    started = time.perf_counter()
    try:
        outcome = args.handler(args, settings)
    except argparse.ArgumentTypeError as e:
        print(f"❌ [CLI] {e}", file=sys.stderr)
        return EXIT_USAGE
    except (LogicError, OSError) as e:
        print(f"❌ [CLI] {e}", file=sys.stderr)
        return EXIT_ERROR
    elapsed = time.perf_counter() - started

    if settings.json_output:
        record = {
            "verdict": outcome.verdict,
            "witness": outcome.witness.to_dict() if outcome.witness else None,
            "timings": {"seconds": round(elapsed, 6)},
        }
        record.update(outcome.extra)
        print(json.dumps(record))
    else:
        sys.stdout.write(outcome.text)
    return outcome.code
