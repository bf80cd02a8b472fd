"""
Team satisfaction W ||- phi for the team logics D and I.

Teams are int bitmasks over the world indices of a model. Disjunction splits
the team into two covering subteams; GENERAL tries every overlapping cover,
PARTITION only disjoint ones (enough for the downward-closed D fragment).
"""
import itertools
import sys
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple

from . import config
from .errors import GuardError, ModelError, UnsupportedConstructError
from .models import SDModel, Signature, enumerate_models
from .syntax import (And, Dep, Formula, Fragment, Indep, Not, Or, Prop, props_of, require_fragment,
                     validate_fragment)
from .kripke_semantics import eval_global


class SplitStrategy(Enum):
    GENERAL = "general"
    PARTITION = "partition"


class TeamEvaluator:
    def __init__(self, model: SDModel, strategy: SplitStrategy = SplitStrategy.GENERAL,
                 debug_mode: bool = False):
        self.model = model
        self.strategy = strategy
        self.debug_mode = debug_mode
        self.full = (1 << len(model)) - 1
        self._masks: Dict[str, int] = {}
        self._memo: Dict[Tuple[int, int], bool] = {}
        self.splits_tried = 0

    def _mask(self, name: str) -> int:
        mask = self._masks.get(name)
        if mask is None:
            column = self.model.symbol_vector(name)
            mask = sum(1 << i for i, v in enumerate(column) if v)
            self._masks[name] = mask
        return mask

    def _rows(self, team: int, symbols) -> Iterator[Tuple[int, ...]]:
        masks = [self._mask(s.name) for s in symbols]
        i = 0
        while team >> i:
            if team >> i & 1:
                yield tuple(m >> i & 1 for m in masks)
            i += 1

    def satisfies(self, phi: Formula, team: Optional[int] = None) -> bool:
        team = self.full if team is None else team
        key = (id(phi), team)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._satisfies(phi, team)
            self._memo[key] = hit
        return hit

    def _satisfies(self, phi: Formula, team: int) -> bool:
        if isinstance(phi, Prop):
            return team & ~self._mask(phi.name) == 0
        if isinstance(phi, Not):
            if isinstance(phi.arg, Prop):
                return team & self._mask(phi.arg.name) == 0
            # negated D atom: only the empty team
            return team == 0
        if isinstance(phi, And):
            return self.satisfies(phi.left, team) and self.satisfies(phi.right, team)
        if isinstance(phi, Or):
            return self._split(phi, team)
        if isinstance(phi, Dep):
            return self._dependence(phi, team)
        if isinstance(phi, Indep):
            return self._independence(phi, team)
        raise UnsupportedConstructError(f"{type(phi).__name__} has no team semantics")

    def _split(self, phi: Or, team: int) -> bool:
        left = team
        while True:
            if self.satisfies(phi.left, left):
                rest = team & ~left
                if self.strategy is SplitStrategy.PARTITION:
                    self.splits_tried += 1
                    if self.satisfies(phi.right, rest):
                        return True
                else:
                    shared = left
                    while True:
                        self.splits_tried += 1
                        if self.satisfies(phi.right, rest | shared):
                            return True
                        if shared == 0:
                            break
                        shared = (shared - 1) & left
            if left == 0:
                return False
            left = (left - 1) & team

    def _dependence(self, phi: Dep, team: int) -> bool:
        seen: Dict[Tuple[int, ...], int] = {}
        for row in self._rows(team, phi.premises + (phi.conclusion,)):
            if seen.setdefault(row[:-1], row[-1]) != row[-1]:
                return False
        return True

    def _independence(self, phi: Indep, team: int) -> bool:
        k, m = len(phi.left), len(phi.conditions)
        lefts: Dict[tuple, set] = {}
        rights: Dict[tuple, set] = {}
        triples: Dict[tuple, set] = {}
        for row in self._rows(team, phi.left + phi.conditions + phi.right):
            l, c, r = row[:k], row[k:k + m], row[k + m:]
            lefts.setdefault(c, set()).add(l)
            rights.setdefault(c, set()).add(r)
            triples.setdefault(c, set()).add((l, r))
        return all(len(triples[c]) == len(lefts[c]) * len(rights[c]) for c in triples)


def _check_team_call(W: SDModel, phi: Formula, fragment: Fragment, strategy: SplitStrategy):
    if not fragment.is_team:
        raise UnsupportedConstructError(f"team semantics needs a team fragment, got {fragment.value}")
    require_fragment(phi, fragment)
    if strategy is SplitStrategy.PARTITION and validate_fragment(phi, Fragment.TEAM_D):
        raise UnsupportedConstructError("PARTITION splitting is only sound for formulas of d")
    if strategy is SplitStrategy.GENERAL and len(W) > config.MAX_GENERAL_TEAM:
        raise GuardError(f"GENERAL splitting allows at most {config.MAX_GENERAL_TEAM} worlds, got {len(W)}")
    unknown = [s for s in props_of(phi).without(config.RESERVED_SYMBOL) if s not in W.signature]
    if unknown:
        raise ModelError(f"symbol(s) {', '.join(unknown)} not in model signature {W.signature}")


def eval_team(W: SDModel, phi: Formula, fragment: Fragment = Fragment.TEAM_D,
              strategy: SplitStrategy = SplitStrategy.GENERAL) -> bool:
    _check_team_call(W, phi, fragment, strategy)
    evaluator = TeamEvaluator(W, strategy, debug_mode=config.DEBUG_MODE)
    verdict = evaluator.satisfies(phi)
    if evaluator.debug_mode:
        print(f"🔍 [Team] {len(W)} worlds, {evaluator.splits_tried} splits tried -> {verdict}", file=sys.stderr)
    return verdict


def team_fragment_of(phi: Formula) -> Fragment:
    """TEAM_D when phi passes it, else TEAM_I (raising if neither)."""
    if not validate_fragment(phi, Fragment.TEAM_D):
        return Fragment.TEAM_D
    require_fragment(phi, Fragment.TEAM_I)
    return Fragment.TEAM_I


def flatness_check(phi: Formula, signature: Signature) -> bool:
    """Team satisfaction agrees with truth at every world, on every model over the signature."""
    require_fragment(phi, Fragment.PL_NNF)
    signature.check_size(config.MAX_SMALL_SIGNATURE, "flatness check")
    for W in enumerate_models(signature):
        if eval_team(W, phi, Fragment.PL_NNF) != eval_global(W, phi, Fragment.MIXED):
            return False
    return True


def _subteams_by_size(count: int) -> Iterator[int]:
    for size in range(count):
        for combo in itertools.combinations(range(count), size):
            yield sum(1 << i for i in combo)


def downward_closure_counterexamples(phi: Formula, signature: Signature) -> Iterator[Tuple[SDModel, SDModel]]:
    """
    Every (W, U) with U a proper subteam of W, W ||- phi and not U ||- phi.

    Models come in enumeration order; within a model, smaller subteams come
    first and equal sizes follow world order.
    """
    fragment = team_fragment_of(phi)
    signature.check_size(config.MAX_SMALL_SIGNATURE, "downward closure scan")
    for W in enumerate_models(signature):
        _check_team_call(W, phi, fragment, SplitStrategy.GENERAL)
        evaluator = TeamEvaluator(W)
        if not evaluator.satisfies(phi):
            continue
        for mask in _subteams_by_size(len(W)):
            if not evaluator.satisfies(phi, mask):
                yield W, W.submodel(mask)


def downward_closure_scan(phi: Formula, signature: Signature) -> Optional[Tuple[SDModel, SDModel]]:
    return next(downward_closure_counterexamples(phi, signature), None)


def transfer_fixtures(signature: Signature) -> Tuple[SDModel, SDModel]:
    """
    The two-world model {{p},{}} and its one-world submodel {{}}.

    Built over the given signature plus p; every other symbol is false.
    """
    signature = signature.union(Signature(("p",)))
    return (SDModel.from_sets(signature, [{"p"}, set()]),
            SDModel.from_sets(signature, [set()]))


def transfer_check(phi: Formula) -> bool:
    """Satisfaction on {{p},{}} carries over to {{}}."""
    fragment = team_fragment_of(phi)
    U, U_prime = transfer_fixtures(props_of(phi).without(config.RESERVED_SYMBOL))
    return not eval_team(U, phi, fragment) or eval_team(U_prime, phi, fragment)
