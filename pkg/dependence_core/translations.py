"""
Translations between the languages.

Every translation is a bottom-up rewrite that shares rebuilt subtrees, so the
output is a DAG whose unfolded size may be exponential. Families of disjuncts
and conjuncts follow the canonical normal-form order.
"""
from collections import deque
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import UnsupportedConstructError
from .normal_forms import TypeNormalForm, dnf_over, split_pairs, types_over
from .syntax import (And, Dep, Formula, Fragment, Implies, Indep, Not, Or, Prop, RelDep, UBox, box_u,
                     conjoin, const, dia_u, disjoin, iff, map_children, props_of, require_fragment,
                     rewrite)


# ------------------------------------------------------------------------------
# Expansions into the constancy language
# ------------------------------------------------------------------------------

def expand_dep(phi: Dep) -> Formula:
    """D(a1..ak; b) as the disjunction of [u](chi <-> b) over every type normal form chi of the a's."""
    if not isinstance(phi, Dep):
        raise UnsupportedConstructError("expand_dep needs a D node")
    return disjoin(box_u(iff(chi.formula(), phi.conclusion)) for chi in dnf_over(phi.premises))


def independence_conjunction(left: Sequence[Formula], conditions: Sequence[Formula],
                             right: Sequence[Formula], diamond: Callable[[Formula], Formula]) -> Formula:
    """
    Conjunction over (a, c, b) in Conj(left) x Conj(conditions) x Conj(right) of
    (<>(c & a) & <>(c & b)) -> <>((c & a) & b).
    """
    conjuncts = []
    for a in types_over(left):
        a_formula = a.formula()
        for c in types_over(conditions):
            ca = And(c.formula(), a_formula)
            for b in types_over(right):
                b_formula = b.formula()
                cb = And(ca.left, b_formula)
                conjuncts.append(Implies(And(diamond(ca), diamond(cb)), diamond(And(ca, b_formula))))
    return conjoin(conjuncts)


def expand_indep(phi: Indep) -> Formula:
    if not isinstance(phi, Indep):
        raise UnsupportedConstructError("expand_indep needs an I node")
    return independence_conjunction(phi.left, phi.conditions, phi.right, dia_u)


# ------------------------------------------------------------------------------
# Between the determinacy and independence languages
# ------------------------------------------------------------------------------

def t_ld_to_li(phi: Formula) -> Formula:
    """D(a1..ak; b) becomes I(b; a1..ak; b); everything else is kept."""
    require_fragment(phi, Fragment.LD)

    def step(node, rebuilt):
        if isinstance(node, Dep):
            b = rebuilt(node.conclusion)
            return Indep((b,), tuple(rebuilt(a) for a in node.premises), (b,))
        return map_children(node, rebuilt)

    return rewrite(phi, step)


def tprime_d_to_i(phi: Formula) -> Formula:
    """Team version of t on d; negated D atoms have no image."""
    require_fragment(phi, Fragment.TEAM_D)

    def step(node, rebuilt):
        if isinstance(node, Not) and isinstance(node.arg, Dep):
            raise UnsupportedConstructError(f"negated D atom {node} has no counterpart in i")
        if isinstance(node, Dep):
            return Indep((node.conclusion,), node.premises, (node.conclusion,))
        return map_children(node, rebuilt)

    return rewrite(phi, step)


def s_li_to_ld(phi: Formula) -> Formula:
    require_fragment(phi, Fragment.LI)

    def step(node, rebuilt):
        if isinstance(node, Indep):
            return independence_conjunction([rebuilt(x) for x in node.left],
                                            [rebuilt(x) for x in node.conditions],
                                            [rebuilt(x) for x in node.right], dia_u)
        return map_children(node, rebuilt)

    return rewrite(phi, step)


class _ChiTranslator:
    """t_chi over one base of proposition symbols, memoized on (chi, subformula)."""

    def __init__(self, base: Tuple[Formula, ...]):
        self.base = base
        self._memo: Dict[Tuple[Tuple[int, ...], int], Formula] = {}
        self._chi: Dict[Tuple[int, ...], Formula] = {}

    def chi_formula(self, disjuncts: Tuple[int, ...]) -> Formula:
        chi = self._chi.get(disjuncts)
        if chi is None:
            chi = TypeNormalForm(self.base, disjuncts).formula()
            self._chi[disjuncts] = chi
        return chi

    def translate(self, disjuncts: Tuple[int, ...], phi: Formula) -> Formula:
        key = (disjuncts, id(phi))
        out = self._memo.get(key)
        if out is None:
            out = self._translate(disjuncts, phi)
            self._memo[key] = out
        return out

    def _translate(self, disjuncts, phi):
        chi = self.chi_formula(disjuncts)
        if isinstance(phi, (Prop, Not)):
            return box_u(Implies(chi, phi))
        if isinstance(phi, And):
            return And(self.translate(disjuncts, phi.left), self.translate(disjuncts, phi.right))
        if isinstance(phi, Or):
            parent = TypeNormalForm(self.base, disjuncts)
            return disjoin(And(self.translate(pair.left.disjuncts, phi.left),
                               self.translate(pair.right.disjuncts, phi.right))
                           for pair in split_pairs(parent))
        if isinstance(phi, Indep):
            conjuncts = []
            lefts = [t.formula() for t in types_over(phi.left)]
            rights = [t.formula() for t in types_over(phi.right)]
            for c in types_over(phi.conditions):
                chi_c = And(chi, c.formula())
                for a in lefts:
                    chi_ca = And(chi_c, a)
                    for b in rights:
                        conjuncts.append(Implies(And(dia_u(chi_ca), dia_u(And(chi_c, b))),
                                                 dia_u(And(chi_ca, b))))
            return conjoin(conjuncts)
        raise UnsupportedConstructError(f"{type(phi).__name__} is not part of i")


def tchi_i_to_ld(phi: Formula) -> Formula:
    """
    t_chi(phi) with chi the disjunction of all types over the symbols of phi.

    W ||- phi in team semantics iff the result is valid in W.
    """
    require_fragment(phi, Fragment.TEAM_I)
    base = tuple(Prop(s) for s in props_of(phi))
    chi = TypeNormalForm.full(base)
    return _ChiTranslator(base).translate(chi.disjuncts, phi)


# ------------------------------------------------------------------------------
# Constancy and the universal box
# ------------------------------------------------------------------------------

def plus_lc_to_lu(phi: Formula) -> Formula:
    """C a becomes [U]a | [U]~a."""
    require_fragment(phi, Fragment.LC)

    def step(node, rebuilt):
        if isinstance(node, Dep):
            a = rebuilt(node.conclusion)
            return Or(UBox(a), UBox(Not(a)))
        return map_children(node, rebuilt)

    return rewrite(phi, step)


def circ_lu_to_lc(phi: Formula) -> Formula:
    """[U]a becomes a & C a."""
    require_fragment(phi, Fragment.LU)

    def step(node, rebuilt):
        if isinstance(node, UBox):
            a = rebuilt(node.arg)
            return And(a, const(a))
        return map_children(node, rebuilt)

    return rewrite(phi, step)


def star_lc_to_lc(phi: Formula) -> Formula:
    """C a becomes (a & C a) | (~a & C ~a)."""
    require_fragment(phi, Fragment.LC)

    def step(node, rebuilt):
        if isinstance(node, Dep):
            a = rebuilt(node.conclusion)
            not_a = Not(a)
            return Or(And(a, const(a)), And(not_a, const(not_a)))
        return map_children(node, rebuilt)

    return rewrite(phi, step)


def tr_ld_to_lc(phi: Formula) -> Formula:
    """D with premises becomes the disjunction of (chi <-> b) & C(chi <-> b) over chi in DNF."""
    require_fragment(phi, Fragment.LD)

    def step(node, rebuilt):
        if isinstance(node, Dep) and node.premises:
            b = rebuilt(node.conclusion)
            disjuncts = []
            for chi in dnf_over([rebuilt(a) for a in node.premises]):
                same = iff(chi.formula(), b)
                disjuncts.append(And(same, const(same)))
            return disjoin(disjuncts)
        return map_children(node, rebuilt)

    return rewrite(phi, step)


# ------------------------------------------------------------------------------
# Relativised determinacy
# ------------------------------------------------------------------------------

def relativised_constancy(theta: Formula, phi: Formula) -> RelDep:
    return RelDep(theta, (), phi)


def _relativised(theta: Formula, premises: List[Formula], conclusion: Formula) -> Formula:
    if not premises:
        return Or(box_u(Implies(theta, conclusion)), box_u(Implies(theta, Not(conclusion))))
    *rest, last = premises
    return And(_relativised(And(theta, last), rest, conclusion),
               _relativised(And(theta, Not(last)), rest, conclusion))


def reldep_eliminate(phi: Formula) -> Formula:
    """Splits off the last premise into the condition until only C^theta remains."""
    require_fragment(phi, Fragment.LD_REL)

    def step(node, rebuilt):
        if isinstance(node, RelDep):
            return _relativised(rebuilt(node.condition), [rebuilt(p) for p in node.premises],
                                rebuilt(node.conclusion))
        return map_children(node, rebuilt)

    return rewrite(phi, step)


# ------------------------------------------------------------------------------
# Language graph
# ------------------------------------------------------------------------------

def _inclusion(phi: Formula) -> Formula:
    return phi


TRANSLATION_EDGES: Dict[Tuple[Fragment, Fragment], Callable[[Formula], Formula]] = {
    (Fragment.TEAM_D, Fragment.TEAM_I): tprime_d_to_i,
    (Fragment.TEAM_I, Fragment.LD): tchi_i_to_ld,
    (Fragment.LD, Fragment.LI): t_ld_to_li,
    (Fragment.LI, Fragment.LD): s_li_to_ld,
    (Fragment.LD, Fragment.LC): tr_ld_to_lc,
    (Fragment.LC, Fragment.LU): plus_lc_to_lu,
    (Fragment.LU, Fragment.LC): circ_lu_to_lc,
    (Fragment.LD_REL, Fragment.LD): reldep_eliminate,
    (Fragment.LC, Fragment.LD): _inclusion,
    (Fragment.LD, Fragment.LD_REL): _inclusion,
}


def translation_path(source: Fragment, target: Fragment) -> List[Tuple[Fragment, Fragment]]:
    """Shortest chain of edges from source to target."""
    if source is target:
        return []
    previous = {source: None}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        for (a, b) in TRANSLATION_EDGES:
            if a is current and b not in previous:
                previous[b] = current
                queue.append(b)
    if target not in previous:
        raise UnsupportedConstructError(f"no translation from {source.value} to {target.value}")
    path = []
    node = target
    while previous[node] is not None:
        path.append((previous[node], node))
        node = previous[node]
    return path[::-1]


def translate(phi: Formula, source: Fragment, target: Fragment) -> Formula:
    require_fragment(phi, source)
    for edge in translation_path(source, target):
        phi = TRANSLATION_EDGES[edge](phi)
    return phi
