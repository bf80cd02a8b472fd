"""
Types and type normal forms over a list of base formulas.

Both are kept symbolic (base list plus polarity bitmasks) and rendered to
formulas on demand. Canonical order everywhere is polarity bitmask ascending.
"""
import itertools
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from . import config
from .errors import GuardError
from .models import SDModel
from .syntax import Formula, Fragment, Not, conjoin, disjoin


@dataclass(frozen=True)
class TypeConjunction:
    base: Tuple[Formula, ...]
    polarity: int

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))

    def literals(self) -> List[Formula]:
        return [b if self.polarity >> i & 1 else Not(b) for i, b in enumerate(self.base)]

    def formula(self) -> Formula:
        return conjoin(self.literals())


@dataclass(frozen=True)
class TypeNormalForm:
    base: Tuple[Formula, ...]
    disjuncts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "disjuncts", tuple(sorted(set(self.disjuncts))))
        limit = 1 << len(self.base)
        if any(d < 0 or d >= limit for d in self.disjuncts):
            raise ValueError(f"polarity out of range for a base of {len(self.base)} formulas")

    @classmethod
    def full(cls, base: Sequence[Formula]) -> "TypeNormalForm":
        return cls(tuple(base), tuple(range(1 << len(base))))

    def __len__(self):
        return len(self.disjuncts)

    def types(self) -> List[TypeConjunction]:
        return [TypeConjunction(self.base, d) for d in self.disjuncts]

    def formula(self) -> Formula:
        return disjoin(t.formula() for t in self.types())

    def with_disjuncts(self, disjuncts) -> "TypeNormalForm":
        return TypeNormalForm(self.base, tuple(disjuncts))


@dataclass(frozen=True)
class SplitPair:
    left: TypeNormalForm
    right: TypeNormalForm


def types_over(base: Sequence[Formula]) -> List[TypeConjunction]:
    base = tuple(base)
    return [TypeConjunction(base, polarity) for polarity in range(1 << len(base))]


def dnf_over(base: Sequence[Formula]) -> Iterator[TypeNormalForm]:
    """All 2^(2^k) normal forms, in subset-bitmask order over the types."""
    base = tuple(base)
    if len(base) > config.MAX_DNF_BASE:
        raise GuardError(f"type normal forms need a base of at most {config.MAX_DNF_BASE} formulas, got {len(base)}")
    n_types = 1 << len(base)
    for mask in range(1 << n_types):
        yield TypeNormalForm(base, tuple(t for t in range(n_types) if mask >> t & 1))


def split_pairs(chi: TypeNormalForm) -> Iterator[SplitPair]:
    """Each disjunct goes left (0), right (1) or both (2); 3^n pairs."""
    for sides in itertools.product((0, 1, 2), repeat=len(chi.disjuncts)):
        left = [d for d, side in zip(chi.disjuncts, sides) if side != 1]
        right = [d for d, side in zip(chi.disjuncts, sides) if side != 0]
        yield SplitPair(chi.with_disjuncts(left), chi.with_disjuncts(right))


def type_of_world(W: SDModel, w: int, base: Sequence[Formula],
                  fragment: Fragment = Fragment.MIXED) -> TypeConjunction:
    from .kripke_semantics import eval_kripke

    polarity = 0
    for i, b in enumerate(base):
        if eval_kripke(W, w, b, fragment):
            polarity |= 1 << i
    return TypeConjunction(tuple(base), polarity)
