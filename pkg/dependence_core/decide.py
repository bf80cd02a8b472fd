"""
Brute-force decision procedures over all SD-models on a formula's symbols.

Truth of every language here only depends on the symbols a formula mentions,
so scanning the 2^(2^n) models over props_of(phi) decides validity. Scans walk
models in subset-bitmask order and report the first failure, which keeps
countermodels reproducible; with jobs > 1 the index range is cut into chunks
run in worker processes and the smallest failing index still wins.
"""
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import config
from .errors import GuardError, ModelError, SchemaError, UnsupportedConstructError
from .formula_gen import enumerate_formulas
from .kripke_semantics import KripkeEvaluator
from .models import SDModel, Signature, enumerate_models, format_model, model_at, model_count, restrict
from .normal_forms import TypeConjunction
from .syntax import (Dep, Formula, Fragment, Implies, Not, Prop, And, Or, box_u, conjoin, const, dia_u,
                     disjoin, iff, props_of, require_fragment, split_iff, validate_fragment)
from .team_semantics import SplitStrategy, TeamEvaluator, team_fragment_of

_WORDS = {
    "validity": ("valid", "invalid"),
    "team_validity": ("valid", "invalid"),
    "satisfiable": ("satisfiable", "unsatisfiable"),
    "equivalence": ("equivalent", "inequivalent"),
    "team_vs_kripke": ("equivalent", "inequivalent"),
}


@dataclass(frozen=True)
class Witness:
    model: SDModel
    world: Optional[int] = None

    def describe(self) -> str:
        if self.world is None:
            return self.model.describe()
        return f"{self.model.describe()} at world {self.world} {{{','.join(sorted(self.model.names(self.world)))}}}"

    def to_dict(self) -> dict:
        return {
            "signature": list(self.model.signature.symbols),
            "worlds": [sorted(self.model.names(i)) for i in range(len(self.model))],
            "world": self.world,
        }


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a scan.

    Invalid, inequivalent and satisfiable verdicts carry the witness found;
    the others carry none.
    """
    result: bool
    witness: Optional[Witness] = None
    query: str = "validity"

    def __bool__(self):
        return self.result

    @property
    def word(self) -> str:
        yes, no = _WORDS.get(self.query, ("true", "false"))
        return yes if self.result else no

    def format(self) -> str:
        """Verdict word, then the witness as .sdm text with its world in a comment."""
        if self.witness is None:
            return self.word + "\n"
        lines = [self.word]
        if self.witness.world is not None:
            lines.append(f"# world {self.witness.world}")
        return "\n".join(lines) + "\n" + format_model(self.witness.model)


@dataclass(frozen=True)
class EnumBudget:
    signature: Signature
    max_size: int

    def __post_init__(self):
        self.signature.check_size(config.MAX_MODEL_SIGNATURE, "enumeration budget")
        if self.max_size < 1:
            raise GuardError(f"enumeration budget needs a positive formula size, got {self.max_size}")


# ------------------------------------------------------------------------------
# Scans
# ------------------------------------------------------------------------------

def _check_model(query: str, W: SDModel, formulas: Tuple[Formula, ...],
           strategy: SplitStrategy) -> Tuple[bool, Optional[int]]:
    """(found, world) for one model; found means the scan can stop here."""
    if query == "validity":
        values = KripkeEvaluator(W).vector(formulas[0])
        if not values.all():
            return True, int((~values).argmax())
    elif query == "satisfiable":
        if len(W):
            values = KripkeEvaluator(W).vector(formulas[0])
            if values.any():
                return True, int(values.argmax())
    elif query == "equivalence":
        evaluator = KripkeEvaluator(W)
        differ = evaluator.vector(formulas[0]) != evaluator.vector(formulas[1])
        if differ.any():
            return True, int(differ.argmax())
    elif query == "team_validity":
        if not TeamEvaluator(W, strategy).satisfies(formulas[0]):
            return True, None
    elif query == "team_vs_kripke":
        team = TeamEvaluator(W, strategy).satisfies(formulas[0])
        if team != bool(KripkeEvaluator(W).vector(formulas[1]).all()):
            return True, None
    else:
        raise ValueError(f"unknown query {query}")
    return False, None


def _scan_range(query: str, formulas: Tuple[Formula, ...], signature: Signature,
                strategy: SplitStrategy, start: int, stop: int) -> Optional[Tuple[int, Optional[int]]]:
    for mask in range(start, stop):
        found, world = _check_model(query, model_at(signature, mask), formulas, strategy)
        if found:
            return mask, world
    return None


def _chunks(count: int, jobs: int) -> List[Tuple[int, int]]:
    step = -(-count // jobs)
    return [(start, min(start + step, count)) for start in range(0, count, step)]


def _scan(query: str, formulas: Sequence[Formula], signature: Signature, jobs: int = 1,
          strategy: SplitStrategy = SplitStrategy.GENERAL) -> Verdict:
    formulas = tuple(formulas)
    count = model_count(signature)
    started = time.perf_counter()
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_scan_range, query, formulas, signature, strategy, start, stop)
                       for start, stop in _chunks(count, jobs)]
            results = [f.result() for f in futures]
        hit = next((r for r in results if r is not None), None)
    else:
        hit = _scan_range(query, formulas, signature, strategy, 0, count)

    # satisfiable finds what it looks for; the other queries look for failures
    positive = query == "satisfiable"
    if hit is None:
        verdict = Verdict(not positive, None, query)
    else:
        mask, world = hit
        verdict = Verdict(positive, Witness(model_at(signature, mask), world), query)
    if config.DEBUG_MODE:
        print(f"🔍 [Decide] {query} over {count} models on {signature}: {verdict.word} "
              f"({time.perf_counter() - started:.3f}s, jobs={jobs})", file=sys.stderr)
    return verdict


def _signature_of(*formulas: Formula) -> Signature:
    signature = Signature()
    for phi in formulas:
        signature = signature.union(props_of(phi).without(config.RESERVED_SYMBOL))
    signature.check_size(config.MAX_MODEL_SIGNATURE, "model enumeration")
    return signature


def _team_strategy(phi: Formula, signature: Signature) -> SplitStrategy:
    """PARTITION for downward-closed d formulas, GENERAL (size-guarded) otherwise."""
    if not validate_fragment(phi, Fragment.TEAM_D):
        return SplitStrategy.PARTITION
    if 1 << len(signature) > config.MAX_GENERAL_TEAM:
        raise GuardError(f"team scans with overlapping splits allow at most {config.MAX_GENERAL_TEAM} "
                         f"worlds; {signature} has {1 << len(signature)}")
    return SplitStrategy.GENERAL


def _require_kripke(fragment: Fragment, query: str):
    if fragment.is_team:
        raise UnsupportedConstructError(f"{query} is decided under Kripke semantics; "
                                        f"fragment {fragment.value} is a team logic")


def validity(phi: Formula, fragment: Fragment = Fragment.MIXED, jobs: int = 1) -> Verdict:
    """W,w |= phi for every model and world; the empty model is included and satisfies everything."""
    _require_kripke(fragment, "validity")
    require_fragment(phi, fragment)
    return _scan("validity", [phi], _signature_of(phi), jobs)


def satisfiable(phi: Formula, fragment: Fragment = Fragment.MIXED, jobs: int = 1) -> Verdict:
    _require_kripke(fragment, "satisfiability")
    require_fragment(phi, fragment)
    return _scan("satisfiable", [phi], _signature_of(phi), jobs)


def equivalent(phi: Formula, psi: Formula, fragment: Fragment = Fragment.MIXED, jobs: int = 1) -> Verdict:
    _require_kripke(fragment, "equivalence")
    require_fragment(phi, fragment)
    require_fragment(psi, fragment)
    return _scan("equivalence", [phi, psi], _signature_of(phi, psi), jobs)


def team_validity(phi: Formula, fragment: Fragment = Fragment.TEAM_D, jobs: int = 1) -> Verdict:
    if not fragment.is_team:
        raise UnsupportedConstructError(f"team validity needs a team fragment, got {fragment.value}")
    require_fragment(phi, fragment)
    signature = _signature_of(phi)
    return _scan("team_validity", [phi], signature, jobs, _team_strategy(phi, signature))


def team_vs_kripke(phi_team: Formula, psi_kripke: Formula, jobs: int = 1) -> Verdict:
    """W ||- phi_team iff W |= psi_kripke, over every model on the joint symbols."""
    team_fragment_of(phi_team)
    require_fragment(psi_kripke, Fragment.MIXED)
    signature = _signature_of(phi_team, psi_kripke)
    return _scan("team_vs_kripke", [phi_team, psi_kripke], signature, jobs,
                 _team_strategy(phi_team, signature))


# ------------------------------------------------------------------------------
# Definability
# ------------------------------------------------------------------------------

def characteristic_formula(W: SDModel, phi: Signature) -> Formula:
    """
    Conjunction of <u>chi_w for each distinct type chi_w of a world of W over phi,
    closed by [u] of their disjunction. Globally true in exactly the nonempty
    models phi-equivalent to W.
    """
    if W.is_empty:
        raise ModelError("the empty model has no characteristic formula")
    phi.check_size(config.MAX_MODEL_SIGNATURE, "characteristic formula")
    base = tuple(Prop(s) for s in phi)
    types = [TypeConjunction(base, polarity).formula() for polarity in sorted(set(restrict(W, phi).worlds))]
    return conjoin([dia_u(chi) for chi in types] + [box_u(disjoin(types))])


def defining_formula(models: Iterable[SDModel], phi: Signature) -> Formula:
    """Disjunction of the characteristic formulas of the nonempty members; the class must contain the empty model."""
    models = list(models)
    phi.check_size(config.MAX_SMALL_SIGNATURE, "defining formula")
    if not any(W.is_empty for W in models):
        raise ModelError("a definable class must contain the empty model")
    seen = []
    for W in models:
        if W.is_empty:
            continue
        key = frozenset(restrict(W, phi).worlds)
        if key not in seen:
            seen.append(key)
    members = [SDModel(phi, tuple(sorted(key))) for key in seen]
    return disjoin(characteristic_formula(W, phi) for W in members)


def inexpressibility_scan(target: Formula, budget: EnumBudget,
                          source: Fragment = Fragment.TEAM_I) -> Optional[Formula]:
    """First formula of the source team logic within budget whose team truth matches target's global truth."""
    if source is not Fragment.TEAM_I:
        raise UnsupportedConstructError(f"inexpressibility scans are only implemented from i, not {source.value}")
    require_fragment(target, Fragment.LD)
    signature = budget.signature
    missing = props_of(target).without(config.RESERVED_SYMBOL)
    if not missing.issubset(signature):
        raise GuardError(f"budget signature {signature} does not cover {missing}")
    if 1 << len(signature) > config.MAX_GENERAL_TEAM:
        raise GuardError(f"inexpressibility scans allow at most {config.MAX_GENERAL_TEAM} worlds per model")

    models = list(enumerate_models(signature))
    wanted = [bool(KripkeEvaluator(W).vector(target).all()) for W in models]
    evaluators = [TeamEvaluator(W) for W in models]
    checked = 0
    for candidate in enumerate_formulas(source, signature, budget.max_size):
        checked += 1
        if all(ev.satisfies(candidate) == want for ev, want in zip(evaluators, wanted)):
            if config.DEBUG_MODE:
                print(f"✅ [Decide] {candidate} matches {target} after {checked} candidates", file=sys.stderr)
            return candidate
    if config.DEBUG_MODE:
        print(f"🔍 [Decide] no match for {target} among {checked} candidates", file=sys.stderr)
    return None


# ------------------------------------------------------------------------------
# Valid principles of D
# ------------------------------------------------------------------------------

def dependence_principles(symbols: Sequence[str] = ("p", "q", "r")) -> Dict[str, Formula]:
    """Named instances of SD-valid schemata for D over three symbols."""
    p, q, r = (Prop(s) for s in symbols)
    return {
        "reflexivity": Dep((p,), p),
        "repeated_premises": Dep((p, p, p), p),
        "dependence_is_constant": const(Dep((p,), q)),
        "premise_monotonicity": Implies(Dep((p,), r), Dep((p, q), r)),
        "premise_permutation": iff(Dep((p, q), r), Dep((q, p), r)),
        "conclusion_conjunction": Implies(And(Dep((p,), q), Dep((p,), r)), Dep((p,), And(q, r))),
        "transitivity": Implies(And(Dep((p,), q), Dep((q,), r)), Dep((p,), r)),
        "negated_conclusion": iff(Dep((p, q), r), Dep((p, q), Not(r))),
        "constant_factor": Implies(const(p), Dep((q,), And(p, q))),
        "boolean_combination": And(Dep((p, q), Implies(p, q)), Dep((p, q), Or(p, Not(q)))),
    }


def dependence_rules(premise: Formula, gamma: Sequence[Formula]) -> Dict[str, Formula]:
    """
    Conclusions of the validity-preserving rules for D from a valid premise.

    NEC_D gives D(gamma; premise). EQ_D needs premise = a <-> b and gives
    D(gamma; a) <-> D(gamma; b).
    """
    gamma = tuple(gamma)
    out = {"NEC_D": Dep(gamma, premise)}
    parts = split_iff(premise)
    if parts is not None:
        a, b = parts
        out["EQ_D"] = iff(Dep(gamma, a), Dep(gamma, b))
    return out


def apply_dependence_rule(rule: str, premise: Formula, gamma: Sequence[Formula]) -> Formula:
    conclusions = dependence_rules(premise, gamma)
    if rule not in conclusions:
        raise SchemaError(f"{rule} does not apply to {premise}")
    return conclusions[rule]
