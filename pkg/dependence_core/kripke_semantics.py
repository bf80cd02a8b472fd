"""
Pointed satisfaction W,w |= phi for the Kripke-style languages.

Every subformula is evaluated to a numpy truth vector over the worlds of the
model at once. D, I and relativised D are global: their vector is all-true or
all-false. [U] quantifies over the whole model.
"""
import sys
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from . import config
from .errors import ModelError
from .models import SDModel
from .syntax import (And, Dep, Formula, Fragment, Implies, Indep, Meta, Not, Or, Prop, RelDep, UBox,
                     postorder, props_of, require_fragment)


@dataclass(frozen=True, eq=False)
class TruthVector:
    model: SDModel
    formula: Formula
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return bool(self.values[index])

    def bits(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.values)


@dataclass(frozen=True)
class DeterminacyWitness:
    """
    A function from premise values to the target value.

    table holds the tuples realized in the model; every other tuple maps to
    default.
    """
    table: Dict[Tuple[int, ...], int] = field(hash=False)
    arity: int
    default: int = config.WITNESS_DEFAULT

    def apply(self, premise_values: Sequence[int]) -> int:
        return self.table.get(tuple(int(v) for v in premise_values), self.default)

    def full_table(self) -> Dict[Tuple[int, ...], int]:
        rows = {}
        for code in range(1 << self.arity):
            key = tuple(code >> (self.arity - 1 - i) & 1 for i in range(self.arity))
            rows[key] = self.apply(key)
        return rows

    def reconstructs(self, premises: Sequence[TruthVector], target: TruthVector) -> bool:
        return all(self.apply([p.values[i] for p in premises]) == int(target.values[i])
                   for i in range(len(target)))


# ------------------------------------------------------------------------------
# Vector primitives
# ------------------------------------------------------------------------------

def _row_codes(columns: Sequence[np.ndarray]) -> np.ndarray:
    """One integer per world identifying its row of premise values."""
    if len(columns) < 63:
        codes = np.zeros(columns[0].size, dtype=np.int64)
        for i, column in enumerate(columns):
            codes |= column.astype(np.int64) << i
        return codes
    _, inverse = np.unique(np.column_stack(columns), axis=0, return_inverse=True)
    return inverse.reshape(-1).astype(np.int64)


def determined(premises: Sequence[np.ndarray], target: np.ndarray) -> bool:
    if target.size == 0:
        return True
    if not premises:
        return bool(target.all() or not target.any())
    codes = _row_codes(premises)
    return np.unique(codes * 2 + target.astype(np.int64)).size == np.unique(codes).size


def independent(left: Sequence[np.ndarray], conditions: Sequence[np.ndarray],
                right: Sequence[np.ndarray]) -> bool:
    """Within each condition class, every realized left row meets every realized right row."""
    n = left[0].size
    if n == 0:
        return True
    c = _row_codes(conditions) if conditions else np.zeros(n, dtype=np.int64)
    l = _row_codes(left)
    r = _row_codes(right)
    lefts: Dict[int, set] = {}
    rights: Dict[int, set] = {}
    pairs: Dict[int, set] = {}
    for ci, li, ri in zip(c.tolist(), l.tolist(), r.tolist()):
        lefts.setdefault(ci, set()).add(li)
        rights.setdefault(ci, set()).add(ri)
        pairs.setdefault(ci, set()).add((li, ri))
    return all(len(pairs[ci]) == len(lefts[ci]) * len(rights[ci]) for ci in pairs)


class KripkeEvaluator:
    """
    Truth vectors of formulas over one model.

    The cache is keyed by node identity and keeps the node alive, so repeated
    and shared subformulas are evaluated once per evaluator.
    """

    def __init__(self, model: SDModel, debug_mode: bool = False):
        self.model = model
        self.size = len(model)
        self.debug_mode = debug_mode
        self._cache: Dict[int, Tuple[Formula, np.ndarray]] = {}

    def vector(self, phi: Formula) -> np.ndarray:
        hit = self._cache.get(id(phi))
        if hit is not None:
            return hit[1]
        for node in postorder(phi, known=self._cache):
            self._cache[id(node)] = (node, self._compute(node))
        if self.debug_mode:
            print(f"🔍 [Kripke] {len(self._cache)} cached vectors over {self.size} worlds", file=sys.stderr)
        return self._cache[id(phi)][1]

    def _get(self, node: Formula) -> np.ndarray:
        return self._cache[id(node)][1]

    def _compute(self, node: Formula) -> np.ndarray:
        if isinstance(node, Prop):
            return self.model.symbol_vector(node.name)
        if isinstance(node, Not):
            return ~self._get(node.arg)
        if isinstance(node, And):
            return self._get(node.left) & self._get(node.right)
        if isinstance(node, Or):
            return self._get(node.left) | self._get(node.right)
        if isinstance(node, Implies):
            return ~self._get(node.left) | self._get(node.right)
        if isinstance(node, UBox):
            return np.full(self.size, bool(self._get(node.arg).all()))
        if isinstance(node, Dep):
            verdict = determined([self._get(p) for p in node.premises], self._get(node.conclusion))
            return np.full(self.size, verdict)
        if isinstance(node, Indep):
            verdict = independent([self._get(x) for x in node.left],
                                  [self._get(x) for x in node.conditions],
                                  [self._get(x) for x in node.right])
            return np.full(self.size, verdict)
        if isinstance(node, RelDep):
            region = self._get(node.condition)
            verdict = determined([self._get(p)[region] for p in node.premises],
                                 self._get(node.conclusion)[region])
            return np.full(self.size, verdict)
        if isinstance(node, Meta):
            raise TypeError(f"schema letter ?{node.name} cannot be evaluated")
        raise TypeError(f"not a formula node: {node!r}")


# ------------------------------------------------------------------------------
# Operations
# ------------------------------------------------------------------------------

def _prepare(W: SDModel, phi: Formula, fragment: Fragment):
    require_fragment(phi, fragment)
    unknown = [s for s in props_of(phi).without(config.RESERVED_SYMBOL) if s not in W.signature]
    if unknown:
        raise ModelError(f"symbol(s) {', '.join(unknown)} not in model signature {W.signature}")


def truth_function(W: SDModel, phi: Formula, fragment: Fragment = Fragment.MIXED) -> TruthVector:
    _prepare(W, phi, fragment)
    return TruthVector(W, phi, KripkeEvaluator(W).vector(phi))


def eval_kripke(W: SDModel, w: int, phi: Formula, fragment: Fragment = Fragment.MIXED) -> bool:
    _prepare(W, phi, fragment)
    if not 0 <= w < len(W):
        raise ModelError(f"world index {w} out of range for a model with {len(W)} worlds")
    return bool(KripkeEvaluator(W).vector(phi)[w])


def eval_global(W: SDModel, phi: Formula, fragment: Fragment = Fragment.MIXED) -> bool:
    """True iff phi holds at every world; the empty model satisfies everything."""
    _prepare(W, phi, fragment)
    return bool(KripkeEvaluator(W).vector(phi).all())


def _same_model(vectors: Sequence[TruthVector]):
    first = vectors[0].model
    for tv in vectors[1:]:
        if tv.model is not first and (tv.model.signature != first.signature or tv.model.worlds != first.worlds):
            raise ModelError("truth vectors belong to different models")


def det_check(premises: Sequence[TruthVector], target: TruthVector) -> bool:
    _same_model(list(premises) + [target])
    return determined([p.values for p in premises], target.values)


def det_witness(premises: Sequence[TruthVector], target: TruthVector) -> Optional[DeterminacyWitness]:
    if not det_check(premises, target):
        return None
    table = {}
    for i in range(len(target)):
        table[tuple(int(p.values[i]) for p in premises)] = int(target.values[i])
    return DeterminacyWitness(table, len(premises))
