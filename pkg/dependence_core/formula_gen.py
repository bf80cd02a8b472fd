"""
Bounded and seeded formula corpora.

Sizes are node counts (formula_size). Enumeration is ordered by size, then by
construction order: atoms, unary, binary, ternary.
"""
import itertools
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .models import Signature
from .syntax import (And, Dep, Formula, Fragment, Implies, Indep, Not, Or, Prop, RelDep, UBox)

_CONSTANCY = (Fragment.LC, Fragment.LD, Fragment.LD_REL, Fragment.MIXED)
_DEPENDENCE = (Fragment.LD, Fragment.LD_REL, Fragment.MIXED)
_INDEPENDENCE = (Fragment.LI, Fragment.MIXED)
_RELATIVISED = (Fragment.LD_REL, Fragment.MIXED)
_UNIVERSAL = (Fragment.LU, Fragment.MIXED)


def _subsets(symbols: Sequence[str], nonempty: bool) -> List[Tuple[Prop, ...]]:
    out = []
    for k in range(1 if nonempty else 0, len(symbols) + 1):
        for combo in itertools.combinations(symbols, k):
            out.append(tuple(Prop(s) for s in combo))
    return out


def team_atoms(fragment: Fragment, signature: Signature) -> Dict[int, List[Formula]]:
    """Literals plus the fragment's D or I atoms over proposition symbols, grouped by size."""
    by_size: Dict[int, List[Formula]] = {}
    add = lambda phi, size: by_size.setdefault(size, []).append(phi)
    symbols = signature.symbols
    for s in symbols:
        add(Prop(s), 1)
    for s in symbols:
        add(Not(Prop(s)), 2)
    if fragment is Fragment.TEAM_D:
        for premises in _subsets(symbols, nonempty=False):
            for s in symbols:
                atom = Dep(premises, Prop(s))
                add(atom, 2 + len(premises))
                add(Not(atom), 3 + len(premises))
    elif fragment is Fragment.TEAM_I:
        for left in _subsets(symbols, nonempty=True):
            for conditions in _subsets(symbols, nonempty=False):
                for right in _subsets(symbols, nonempty=True):
                    add(Indep(left, conditions, right), 1 + len(left) + len(conditions) + len(right))
    return by_size


def _unary(fragment: Fragment) -> List[Callable[[Formula], Formula]]:
    ops = [Not]
    if fragment in _CONSTANCY:
        ops.append(lambda a: Dep((), a))
    if fragment in _UNIVERSAL:
        ops.append(UBox)
    return ops


def _binary(fragment: Fragment) -> List[Callable[[Formula, Formula], Formula]]:
    if fragment.is_team:
        return [And, Or]
    ops = [Implies, And, Or]
    if fragment in _DEPENDENCE:
        ops.append(lambda a, b: Dep((a,), b))
    if fragment in _INDEPENDENCE:
        ops.append(lambda a, b: Indep((a,), (), (b,)))
    if fragment in _RELATIVISED:
        ops.append(lambda a, b: RelDep(a, (), b))
    return ops


def _ternary(fragment: Fragment) -> List[Callable[[Formula, Formula, Formula], Formula]]:
    ops = []
    if fragment in _INDEPENDENCE:
        ops.append(lambda a, c, b: Indep((a,), (c,), (b,)))
    if fragment in _RELATIVISED:
        ops.append(lambda t, a, b: RelDep(t, (a,), b))
    return ops


def enumerate_formulas(fragment: Fragment, signature: Signature, max_size: int) -> Iterator[Formula]:
    """Every formula of the fragment with at most max_size nodes, structurally deduplicated."""
    if max_size < 1:
        raise ValueError("max_size must be positive")
    by_size: Dict[int, List[Formula]] = {}
    seen = set()
    atoms = team_atoms(fragment, signature) if fragment.is_team else {1: [Prop(s) for s in signature]}
    unary = [] if fragment.is_team else _unary(fragment)
    binary = _binary(fragment)
    ternary = [] if fragment.is_team else _ternary(fragment)

    for size in range(1, max_size + 1):
        layer: List[Formula] = []

        def emit(phi):
            if phi not in seen:
                seen.add(phi)
                layer.append(phi)

        for phi in atoms.get(size, []):
            emit(phi)
        for op in unary:
            for a in by_size.get(size - 1, []):
                emit(op(a))
        for op in binary:
            for left_size in range(1, size - 1):
                for a in by_size.get(left_size, []):
                    for b in by_size.get(size - 1 - left_size, []):
                        emit(op(a, b))
        for op in ternary:
            for i in range(1, size - 2):
                for j in range(1, size - 1 - i):
                    k = size - 1 - i - j
                    for a in by_size.get(i, []):
                        for c in by_size.get(j, []):
                            for b in by_size.get(k, []):
                                emit(op(a, c, b))
        by_size[size] = layer
        yield from layer


def random_formula(fragment: Fragment, signature: Signature, size: int,
                   rng: np.random.Generator) -> Formula:
    """A formula of the fragment with exactly size nodes when one exists, otherwise the closest smaller."""
    symbols = signature.symbols
    if fragment.is_team:
        atoms = team_atoms(fragment, signature)
        if size in atoms and (size < 3 or rng.random() < 0.3):
            pool = atoms[size]
            return pool[int(rng.integers(len(pool)))]
        if size < 3:
            return Prop(symbols[int(rng.integers(len(symbols)))])
        left = int(rng.integers(1, size - 1))
        op = _binary(fragment)[int(rng.integers(2))]
        return op(random_formula(fragment, signature, left, rng),
                  random_formula(fragment, signature, size - 1 - left, rng))

    if size <= 1:
        return Prop(symbols[int(rng.integers(len(symbols)))])
    kinds: List[Tuple[int, Callable]] = [(1, op) for op in _unary(fragment)]
    if size >= 3:
        kinds += [(2, op) for op in _binary(fragment)]
    if size >= 4:
        kinds += [(3, op) for op in _ternary(fragment)]
    arity, op = kinds[int(rng.integers(len(kinds)))]
    if arity == 1:
        return op(random_formula(fragment, signature, size - 1, rng))
    if arity == 2:
        left = int(rng.integers(1, size - 1))
        return op(random_formula(fragment, signature, left, rng),
                  random_formula(fragment, signature, size - 1 - left, rng))
    i = int(rng.integers(1, size - 2))
    j = int(rng.integers(1, size - 1 - i))
    return op(random_formula(fragment, signature, i, rng),
              random_formula(fragment, signature, j, rng),
              random_formula(fragment, signature, size - 1 - i - j, rng))


def random_formulas(fragment: Fragment, signature: Signature, count: int, max_size: int,
                    seed: int = 0) -> List[Formula]:
    if max_size < 1:
        raise ValueError("max_size must be positive")
    rng = np.random.default_rng(seed)
    return [random_formula(fragment, signature, int(rng.integers(1, max_size + 1)), rng)
            for _ in range(count)]
