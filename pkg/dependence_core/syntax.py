"""
Formula syntax shared by every language of the workbench.

One tree type covers propositional logic, the team logics D and I and the
Kripke-style languages with C, D, I, relativised D and the universal box.
Abbreviations ([u], <u>, [u'], <u'>, <U>, #T, #F, <->) are expanded by the
parser, so the node kinds below are the whole grammar.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from . import config
from .errors import FormulaSyntaxError, FragmentError, ReservedSymbolError, Violation
from .models import SYMBOL_PATTERN as PROP_PATTERN, Signature


class Formula:
    """Base of all node kinds. Nodes are immutable and compared structurally."""

    def __str__(self):
        return to_text(self)


def _freeze(items) -> tuple:
    return tuple(items) if not isinstance(items, tuple) else items


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Meta(Formula):
    """Schema letter. Only axiom shapes contain these."""
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Dep(Formula):
    premises: Tuple[Formula, ...]
    conclusion: Formula

    def __post_init__(self):
        object.__setattr__(self, "premises", _freeze(self.premises))


@dataclass(frozen=True)
class Indep(Formula):
    left: Tuple[Formula, ...]
    conditions: Tuple[Formula, ...]
    right: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", _freeze(self.left))
        object.__setattr__(self, "conditions", _freeze(self.conditions))
        object.__setattr__(self, "right", _freeze(self.right))
        if not self.left or not self.right:
            raise ValueError("independence atom needs nonempty left and right lists")


@dataclass(frozen=True)
class RelDep(Formula):
    condition: Formula
    premises: Tuple[Formula, ...]
    conclusion: Formula

    def __post_init__(self):
        object.__setattr__(self, "premises", _freeze(self.premises))


@dataclass(frozen=True)
class UBox(Formula):
    arg: Formula


class Fragment(Enum):
    PL_NNF = "pl"
    TEAM_D = "d"
    TEAM_I = "i"
    LC = "lc"
    LD = "ld"
    LD_REL = "ld-rel"
    LI = "li"
    LU = "lu"
    MIXED = "mixed"

    @property
    def is_team(self) -> bool:
        return self in (Fragment.PL_NNF, Fragment.TEAM_D, Fragment.TEAM_I)


# ------------------------------------------------------------------------------
# Builders
# ------------------------------------------------------------------------------

def top() -> Formula:
    t = Prop(config.RESERVED_SYMBOL)
    return Or(t, Not(t))


def bottom() -> Formula:
    t = Prop(config.RESERVED_SYMBOL)
    return And(t, Not(t))


def const(phi: Formula) -> Formula:
    return Dep((), phi)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def box_u(phi: Formula) -> Formula:
    return And(phi, Dep((), phi))


def dia_u(phi: Formula) -> Formula:
    return Not(box_u(Not(phi)))


def box_uprime(phi: Formula) -> Formula:
    return And(phi, Indep((phi,), (), (phi,)))


def dia_uprime(phi: Formula) -> Formula:
    return Not(box_uprime(Not(phi)))


def dia_U(phi: Formula) -> Formula:
    return Not(UBox(Not(phi)))


def conjoin(items: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is #T."""
    result = None
    for item in items:
        result = item if result is None else And(result, item)
    return top() if result is None else result


def disjoin(items: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; the empty disjunction is #F."""
    result = None
    for item in items:
        result = item if result is None else Or(result, item)
    return bottom() if result is None else result


def is_top(node: Formula) -> bool:
    return (isinstance(node, Or) and _is_reserved(node.left)
            and isinstance(node.right, Not) and _is_reserved(node.right.arg))


def is_bottom(node: Formula) -> bool:
    return (isinstance(node, And) and _is_reserved(node.left)
            and isinstance(node.right, Not) and _is_reserved(node.right.arg))


def _is_reserved(node: Formula) -> bool:
    return isinstance(node, Prop) and node.name == config.RESERVED_SYMBOL


def is_literal(node: Formula) -> bool:
    return isinstance(node, Prop) or (isinstance(node, Not) and isinstance(node.arg, Prop))


def split_iff(node: Formula) -> Optional[Tuple[Formula, Formula]]:
    """(a, b) when node is the expansion of a <-> b, else None."""
    if (isinstance(node, And) and isinstance(node.left, Implies) and isinstance(node.right, Implies)
            and node.left.left == node.right.right and node.left.right == node.right.left):
        return node.left.left, node.left.right
    return None


# ------------------------------------------------------------------------------
# Traversal
# ------------------------------------------------------------------------------

def children(node: Formula) -> Tuple[Formula, ...]:
    if isinstance(node, (Prop, Meta)):
        return ()
    if isinstance(node, (Not, UBox)):
        return (node.arg,)
    if isinstance(node, (Implies, And, Or)):
        return (node.left, node.right)
    if isinstance(node, Dep):
        return node.premises + (node.conclusion,)
    if isinstance(node, Indep):
        return node.left + node.conditions + node.right
    if isinstance(node, RelDep):
        return (node.condition,) + node.premises + (node.conclusion,)
    raise TypeError(f"not a formula node: {node!r}")


def map_children(node: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    """Rebuild node with fn applied to each immediate subformula."""
    if isinstance(node, (Prop, Meta)):
        return node
    if isinstance(node, Not):
        return Not(fn(node.arg))
    if isinstance(node, UBox):
        return UBox(fn(node.arg))
    if isinstance(node, (Implies, And, Or)):
        return type(node)(fn(node.left), fn(node.right))
    if isinstance(node, Dep):
        return Dep(tuple(fn(p) for p in node.premises), fn(node.conclusion))
    if isinstance(node, Indep):
        return Indep(tuple(fn(x) for x in node.left),
                     tuple(fn(x) for x in node.conditions),
                     tuple(fn(x) for x in node.right))
    if isinstance(node, RelDep):
        return RelDep(fn(node.condition), tuple(fn(p) for p in node.premises), fn(node.conclusion))
    raise TypeError(f"not a formula node: {node!r}")


def postorder(root: Formula, known=None) -> Iterator[Formula]:
    """
    Yield every distinct node (by identity) once, children before parents.

    Shared subtrees are visited once. No recursion, so long left-folded
    chains are fine.

    Nodes whose id is in known are treated as already visited.
    """
    done = set()
    if known is None:
        known = ()
    stack: List[Tuple[Formula, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done or id(node) in known:
            continue
        if expanded:
            done.add(id(node))
            yield node
            continue
        stack.append((node, True))
        for child in reversed(children(node)):
            if id(child) not in done and id(child) not in known:
                stack.append((child, False))


def rewrite(root: Formula, fn: Callable[[Formula, Callable[[Formula], Formula]], Formula]) -> Formula:
    """
    Bottom-up rewrite with identity memo.

    fn(node, rebuilt) receives the original node and a function returning the
    already rewritten version of any of its children.
    """
    done: Dict[int, Formula] = {}
    lookup = lambda child: done[id(child)]
    for node in postorder(root):
        done[id(node)] = fn(node, lookup)
    return done[id(root)]


def formula_size(node: Formula) -> int:
    """Node count of the unfolded tree."""
    sizes: Dict[int, int] = {}
    for n in postorder(node):
        sizes[id(n)] = 1 + sum(sizes[id(child)] for child in children(n))
    return sizes[id(node)]


def props_of(phi: Formula) -> Signature:
    names = {node.name for node in postorder(phi) if isinstance(node, Prop)}
    return Signature.of(names)


# ------------------------------------------------------------------------------
# Substitution
# ------------------------------------------------------------------------------

def subst(theta: Formula, binding: Dict[str, Formula]) -> Formula:
    """Simultaneous uniform substitution of formulas for proposition symbols."""
    if not binding:
        return theta

    def step(node, rebuilt):
        if isinstance(node, Prop):
            return binding.get(node.name, node)
        return map_children(node, rebuilt)

    return rewrite(theta, step)


def bot_substitute(phi: Formula, k: int) -> Formula:
    """Replace every D node with more than k premises by #F, innermost first."""
    if k < 1:
        raise ValueError("k must be a positive integer")

    def step(node, rebuilt):
        out = map_children(node, rebuilt)
        if isinstance(out, Dep) and len(out.premises) > k:
            return bottom()
        return out

    return rewrite(phi, step)


# ------------------------------------------------------------------------------
# Fragments
# ------------------------------------------------------------------------------

_KRIPKE_KINDS = {
    Fragment.LC: (Prop, Not, Implies, And, Or, Dep),
    Fragment.LD: (Prop, Not, Implies, And, Or, Dep),
    Fragment.LD_REL: (Prop, Not, Implies, And, Or, Dep, RelDep),
    Fragment.LI: (Prop, Not, Implies, And, Or, Indep),
    Fragment.LU: (Prop, Not, Implies, And, Or, UBox),
    Fragment.MIXED: (Prop, Not, Implies, And, Or, Dep, Indep, RelDep, UBox),
}


def validate_fragment(phi: Formula, fragment: Fragment) -> List[Violation]:
    """Empty list when phi belongs to the fragment, otherwise one entry per broken rule."""
    violations: List[Violation] = []
    if fragment.is_team:
        _team_violations(phi, fragment, violations)
        return violations

    allowed = _KRIPKE_KINDS[fragment]
    for node in postorder(phi):
        if not isinstance(node, allowed):
            violations.append(Violation(node, f"{type(node).__name__} is not part of {fragment.value}"))
        elif fragment is Fragment.LC and isinstance(node, Dep) and node.premises:
            violations.append(Violation(node, "only C (D with no premises) is part of lc"))
    return violations


def _team_violations(node: Formula, fragment: Fragment, out: List[Violation]):
    if isinstance(node, Prop):
        return
    if isinstance(node, (And, Or)):
        _team_violations(node.left, fragment, out)
        _team_violations(node.right, fragment, out)
        return
    if isinstance(node, Not):
        if isinstance(node.arg, Prop):
            return
        if fragment is Fragment.TEAM_D and isinstance(node.arg, Dep):
            _atomic_arguments(node.arg, "D", out)
            return
        if isinstance(node.arg, Indep):
            out.append(Violation(node, "independence atoms may not occur negated"))
            return
        out.append(Violation(node, "negation only applies to proposition symbols"))
        return
    if isinstance(node, Dep) and fragment is Fragment.TEAM_D:
        _atomic_arguments(node, "D", out)
        return
    if isinstance(node, Indep) and fragment is Fragment.TEAM_I:
        _atomic_arguments(node, "I", out)
        return
    out.append(Violation(node, f"{type(node).__name__} is not part of {fragment.value}"))


def _atomic_arguments(node: Formula, label: str, out: List[Violation]):
    for arg in children(node):
        if not isinstance(arg, Prop):
            out.append(Violation(arg, f"non-atomic argument of {label}"))


def require_fragment(phi: Formula, fragment: Fragment) -> Formula:
    violations = validate_fragment(phi, fragment)
    if violations:
        raise FragmentError(fragment, violations)
    return phi


# ------------------------------------------------------------------------------
# Parsing
# ------------------------------------------------------------------------------

GRAMMAR = r"""
    ?start: iff

    ?iff: imp
        | imp "<->" imp                          -> iff

    ?imp: disj
        | disj "->" imp                          -> implies

    ?disj: conj
         | disj "|" conj                         -> or_

    ?conj: unary
         | conj "&" unary                        -> and_

    ?unary: "~" unary                            -> not_
          | "C" unary                            -> const
          | "[u]" unary                          -> box_u
          | "<u>" unary                          -> dia_u
          | "[u']" unary                         -> box_uprime
          | "<u'>" unary                         -> dia_uprime
          | "[U]" unary                          -> ubox
          | "<U>" unary                          -> dia_ubox
          | atom

    ?atom: PROP                                  -> prop
         | "#T"                                  -> top
         | "#F"                                  -> bottom
         | "(" iff ")"
         | "D" "(" [flist] ";" iff ")"           -> dep
         | "I" "(" flist ";" [flist] ";" flist ")" -> indep
         | "D^{" iff "}" "(" [flist] ";" iff ")" -> reldep

    flist: iff ("," iff)*

    PROP: /[a-z_][a-zA-Z0-9_]*/

    %import common.WS
    %ignore WS
"""


class _FormulaBuilder(Transformer):
    def prop(self, items):
        name = str(items[0])
        if name == config.RESERVED_SYMBOL:
            raise ReservedSymbolError(f"'{name}' is reserved for #T/#F")
        if not PROP_PATTERN.match(name):
            raise FormulaSyntaxError(f"invalid proposition symbol '{name}'",
                                     items[0].line, items[0].column)
        return Prop(name)

    def top(self, _):
        return top()

    def bottom(self, _):
        return bottom()

    def not_(self, items):
        return Not(items[0])

    def const(self, items):
        return const(items[0])

    def box_u(self, items):
        return box_u(items[0])

    def dia_u(self, items):
        return dia_u(items[0])

    def box_uprime(self, items):
        return box_uprime(items[0])

    def dia_uprime(self, items):
        return dia_uprime(items[0])

    def ubox(self, items):
        return UBox(items[0])

    def dia_ubox(self, items):
        return dia_U(items[0])

    def and_(self, items):
        return And(items[0], items[1])

    def or_(self, items):
        return Or(items[0], items[1])

    def implies(self, items):
        return Implies(items[0], items[1])

    def iff(self, items):
        return iff(items[0], items[1])

    def flist(self, items):
        return tuple(items)

    def dep(self, items):
        premises, conclusion = items
        return Dep(premises or (), conclusion)

    def indep(self, items):
        left, conditions, right = items
        return Indep(left, conditions or (), right)

    def reldep(self, items):
        condition, premises, conclusion = items
        return RelDep(condition, premises or (), conclusion)


_parser = Lark(GRAMMAR, parser="lalr", transformer=_FormulaBuilder())


def parse(text: str, fragment: Fragment = Fragment.MIXED) -> Formula:
    """Parse formula text and check it belongs to the fragment."""
    try:
        phi = _parser.parse(text)
    except VisitError as e:
        raise e.orig_exc
    except UnexpectedInput as e:
        line = getattr(e, "line", None)
        column = getattr(e, "column", None)
        if line is not None and line < 0:
            line = column = None
        raise FormulaSyntaxError(_describe(e, text), line, column) from None
    return require_fragment(phi, fragment)


def _describe(error: UnexpectedInput, text: str) -> str:
    token = getattr(error, "token", None)
    if token is not None:
        if token.type == "$END":
            return "unexpected end of input"
        return f"unexpected '{token}'"
    char = getattr(error, "char", None)
    if char is not None:
        return f"unexpected character '{char}'"
    return "malformed formula"


# ------------------------------------------------------------------------------
# Printing
# ------------------------------------------------------------------------------

def to_text(phi: Formula) -> str:
    """Canonical fully parenthesized text; parse(to_text(phi)) == phi."""
    texts: Dict[int, str] = {}
    for node in postorder(phi):
        texts[id(node)] = _render(node, texts)
    return texts[id(phi)]


def _render(node: Formula, texts: Dict[int, str]) -> str:
    t = lambda child: texts[id(child)]
    join = lambda items: ", ".join(t(x) for x in items)
    if is_top(node):
        return "#T"
    if is_bottom(node):
        return "#F"
    if isinstance(node, Prop):
        return node.name
    if isinstance(node, Meta):
        return f"?{node.name}"
    if isinstance(node, Not):
        return f"~{t(node.arg)}"
    if isinstance(node, UBox):
        return f"[U]{t(node.arg)}"
    if isinstance(node, Implies):
        return f"({t(node.left)} -> {t(node.right)})"
    if isinstance(node, And):
        return f"({t(node.left)} & {t(node.right)})"
    if isinstance(node, Or):
        return f"({t(node.left)} | {t(node.right)})"
    if isinstance(node, Dep):
        if not node.premises:
            return f"C {t(node.conclusion)}"
        return f"D({join(node.premises)}; {t(node.conclusion)})"
    if isinstance(node, Indep):
        return f"I({join(node.left)}; {join(node.conditions)}; {join(node.right)})"
    if isinstance(node, RelDep):
        return f"D^{{{t(node.condition)}}}({join(node.premises)}; {t(node.conclusion)})"
    raise TypeError(f"not a formula node: {node!r}")