"""
Hilbert-style axiom systems for the constancy, determinacy and independence
languages and for the universal box, with a line-by-line derivation checker.

Propositional reasoning is not axiomatized: a `taut` line is accepted when it
is a tautology of its Boolean skeleton, every C/D/I/[U] subformula being an
opaque atom.
"""
import re
import sys
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import config
from .errors import DerivationFormatError, FormulaSyntaxError, GuardError, LogicError, SchemaError
from .syntax import (And, Dep, Formula, Fragment, Implies, Indep, Meta, Not, Or, RelDep, UBox, children,
                     const, dia_U, dia_uprime, iff, map_children, parse, postorder, props_of, rewrite,
                     split_iff, top, validate_fragment)
from .translations import expand_dep, independence_conjunction


class AxiomSystemId(Enum):
    AXC = "AXC"
    AXLD = "AXLD"
    AXLI = "AXLI"
    S5U = "S5U"


class RuleKind(Enum):
    AXIOM = "ax"
    MP = "mp"
    EQC = "eqc"
    EQI = "eqi"
    NECU = "necu"
    NECC = "necc"
    TAUT = "taut"


SYSTEM_LANGUAGE = {
    AxiomSystemId.AXC: Fragment.LC,
    AxiomSystemId.AXLD: Fragment.LD,
    AxiomSystemId.AXLI: Fragment.LI,
    AxiomSystemId.S5U: Fragment.LU,
}

SYSTEM_RULES = {
    AxiomSystemId.AXC: {RuleKind.AXIOM, RuleKind.MP, RuleKind.EQC, RuleKind.NECC, RuleKind.TAUT},
    AxiomSystemId.AXLD: {RuleKind.AXIOM, RuleKind.MP, RuleKind.EQC, RuleKind.NECC, RuleKind.TAUT},
    AxiomSystemId.AXLI: {RuleKind.AXIOM, RuleKind.MP, RuleKind.EQI, RuleKind.TAUT},
    AxiomSystemId.S5U: {RuleKind.AXIOM, RuleKind.MP, RuleKind.NECU, RuleKind.TAUT},
}

_AXC_IDS = ("Ax1C", "Ax2C", "Ax3C", "Ax4C", "Ax5C")

AXIOM_IDS: Dict[AxiomSystemId, Tuple[str, ...]] = {
    AxiomSystemId.AXC: _AXC_IDS,
    AxiomSystemId.AXLD: _AXC_IDS + ("AxDk",),
    AxiomSystemId.AXLI: ("Ax1I", "Ax2I", "Ax3I", "Ax4I", "Ax5I", "AxIkmn"),
    AxiomSystemId.S5U: ("Ax1U", "Ax2U", "Ax3U"),
}

_PARAMETERS = {"AxDk": ("k",), "AxIkmn": ("k", "m", "n")}


# ------------------------------------------------------------------------------
# Schemata
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Schema:
    name: str
    system: AxiomSystemId
    shape: Formula
    params: Tuple[Tuple[str, int], ...] = ()

    @property
    def metavariables(self) -> Tuple[str, ...]:
        names = []
        for node in postorder(self.shape):
            if isinstance(node, Meta) and node.name not in names:
                names.append(node.name)
        return tuple(names)


def _metas(prefix: str, count: int) -> Tuple[Meta, ...]:
    return tuple(Meta(f"{prefix}{i}") for i in range(1, count + 1))


def _i_self(phi: Formula) -> Formula:
    return Indep((phi,), (), (phi,))


def _shape(axiom_id: str, params: Dict[str, int]) -> Formula:
    phi, psi = Meta("phi"), Meta("psi")
    if axiom_id == "Ax1C":
        return const(top())
    if axiom_id == "Ax2C":
        return iff(const(phi), const(Not(phi)))
    if axiom_id == "Ax3C":
        return const(And(phi, const(phi)))
    if axiom_id == "Ax4C":
        return Implies(And(const(phi), const(psi)), const(And(phi, psi)))
    if axiom_id == "Ax5C":
        return Implies(And(And(phi, const(phi)), const(Implies(phi, psi))), const(psi))
    if axiom_id == "AxDk":
        atom = Dep(_metas("phi", params["k"]), psi)
        return iff(atom, expand_dep(atom))
    if axiom_id == "Ax1I":
        return _i_self(top())
    if axiom_id == "Ax2I":
        return iff(_i_self(phi), _i_self(Not(phi)))
    if axiom_id == "Ax3I":
        return _i_self(And(phi, _i_self(phi)))
    if axiom_id == "Ax4I":
        return Implies(And(_i_self(phi), _i_self(psi)), _i_self(And(phi, psi)))
    if axiom_id == "Ax5I":
        return Implies(And(And(phi, _i_self(phi)), _i_self(Implies(phi, psi))), _i_self(psi))
    if axiom_id == "AxIkmn":
        left, conditions, right = (_metas("phi", params["k"]), _metas("theta", params["m"]),
                                   _metas("psi", params["n"]))
        return iff(Indep(left, conditions, right),
                   independence_conjunction(left, conditions, right, dia_uprime))
    if axiom_id == "Ax1U":
        return Implies(UBox(Implies(phi, psi)), Implies(UBox(phi), UBox(psi)))
    if axiom_id == "Ax2U":
        return Implies(UBox(phi), phi)
    if axiom_id == "Ax3U":
        return Implies(dia_U(phi), UBox(dia_U(phi)))
    raise SchemaError(f"unknown axiom {axiom_id}")


def _check_params(axiom_id: str, params: Dict[str, int]) -> Dict[str, int]:
    expected = _PARAMETERS.get(axiom_id, ())
    unknown = sorted(set(params) - set(expected))
    if unknown:
        raise SchemaError(f"{axiom_id} takes no parameter(s) {', '.join(unknown)}")
    missing = [p for p in expected if p not in params]
    if missing:
        raise SchemaError(f"{axiom_id} needs parameter(s) {', '.join(missing)}")
    if axiom_id == "AxDk":
        if params["k"] < 1:
            raise SchemaError(f"AxDk needs k >= 1, got {params['k']}")
        if params["k"] > config.MAX_DNF_BASE:
            raise GuardError(f"AxDk is limited to k <= {config.MAX_DNF_BASE}")
    if axiom_id == "AxIkmn":
        if params["k"] < 1 or params["n"] < 1 or params["m"] < 0:
            raise SchemaError(f"AxIkmn needs k, n >= 1 and m >= 0, got {params}")
        if max(params.values()) > config.MAX_DNF_BASE:
            raise GuardError(f"AxIkmn is limited to k, m, n <= {config.MAX_DNF_BASE}")
    return {name: params[name] for name in expected}


def axiom_schema(system: AxiomSystemId, axiom_id: str, **params: int) -> Schema:
    if axiom_id not in AXIOM_IDS[system]:
        raise SchemaError(f"{axiom_id} is not an axiom of {system.value}")
    params = _check_params(axiom_id, params)
    return Schema(axiom_id, system, _shape(axiom_id, params), tuple(params.items()))


def _fill(shape: Formula, binding: Dict[str, Formula]) -> Formula:
    def step(node, rebuilt):
        if isinstance(node, Meta):
            return binding[node.name]
        return map_children(node, rebuilt)

    return rewrite(shape, step)


def instantiate_axiom(system: AxiomSystemId, axiom_id: str, binding: Dict[str, Formula],
                      **params: int) -> Formula:
    """The axiom instance for a binding of every schema letter."""
    schema = axiom_schema(system, axiom_id, **params)
    letters = schema.metavariables
    missing = [name for name in letters if name not in binding]
    if missing:
        raise SchemaError(f"{axiom_id} needs a formula for {', '.join(missing)}")
    extra = sorted(set(binding) - set(letters))
    if extra:
        raise SchemaError(f"{axiom_id} has no schema letter(s) {', '.join(extra)}")
    return _fill(schema.shape, binding)


def _arity(node: Formula) -> Tuple[int, ...]:
    if isinstance(node, Dep):
        return (len(node.premises),)
    if isinstance(node, Indep):
        return (len(node.left), len(node.conditions), len(node.right))
    if isinstance(node, RelDep):
        return (len(node.premises),)
    return ()


def match_schema(schema: Schema, formula: Formula) -> Optional[Dict[str, Formula]]:
    """The binding that makes the schema's shape equal formula, or None."""
    binding: Dict[str, Formula] = {}
    stack = [(schema.shape, formula)]
    while stack:
        pattern, target = stack.pop()
        if isinstance(pattern, Meta):
            bound = binding.get(pattern.name)
            if bound is None:
                binding[pattern.name] = target
            elif bound != target:
                return None
            continue
        if type(pattern) is not type(target) or _arity(pattern) != _arity(target):
            return None
        if not children(pattern):
            if pattern != target:
                return None
            continue
        stack.extend(zip(children(pattern), children(target)))
    return binding


def infer_params(axiom_id: str, formula: Formula) -> Dict[str, int]:
    """Arity parameters read off the left side of an AxDk/AxIkmn instance."""
    if axiom_id not in _PARAMETERS:
        return {}
    parts = split_iff(formula)
    left = parts[0] if parts else None
    if axiom_id == "AxDk" and isinstance(left, Dep):
        return {"k": len(left.premises)}
    if axiom_id == "AxIkmn" and isinstance(left, Indep):
        return {"k": len(left.left), "m": len(left.conditions), "n": len(left.right)}
    raise SchemaError(f"cannot read the parameters of {axiom_id} from {formula}")


# ------------------------------------------------------------------------------
# Tautology oracle
# ------------------------------------------------------------------------------

_BOOLEAN = (Not, And, Or, Implies)


def skeleton_atoms(phi: Formula) -> List[Formula]:
    """Maximal non-Boolean subformulas, in first-occurrence order."""
    atoms: List[Formula] = []
    seen = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, _BOOLEAN):
            stack.extend(reversed(children(node)))
        elif node not in seen:
            seen.add(node)
            atoms.append(node)
    return atoms


def _skeleton_value(node: Formula, values: Dict[int, np.ndarray]) -> np.ndarray:
    if isinstance(node, Not):
        return ~values[id(node.arg)]
    left, right = values[id(node.left)], values[id(node.right)]
    if isinstance(node, And):
        return left & right
    if isinstance(node, Or):
        return left | right
    return ~left | right


def taut_oracle(phi: Formula) -> bool:
    """True iff phi is a tautology of its propositional skeleton."""
    atoms = skeleton_atoms(phi)
    if len(atoms) > config.MAX_SKELETON_ATOMS:
        raise GuardError(f"tautology check allows {config.MAX_SKELETON_ATOMS} skeleton atoms, got {len(atoms)}")
    rows = np.arange(1 << len(atoms), dtype=np.int64)
    columns = {atom: ((rows >> i) & 1).astype(bool) for i, atom in enumerate(atoms)}
    values: Dict[int, np.ndarray] = {}
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in values:
            continue
        if not isinstance(node, _BOOLEAN):
            values[id(node)] = columns[node]
        elif expanded:
            values[id(node)] = _skeleton_value(node, values)
        else:
            stack.append((node, True))
            stack.extend((child, False) for child in children(node))
    return bool(values[id(phi)].all())


# ------------------------------------------------------------------------------
# Derivations
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Justification:
    rule: RuleKind
    refs: Tuple[int, ...] = ()
    axiom: Optional[str] = None
    binding: Tuple[Tuple[str, Formula], ...] = ()
    params: Tuple[Tuple[str, int], ...] = ()

    def text(self) -> str:
        parts = [self.rule.value]
        if self.axiom:
            parts.append(self.axiom)
        parts += [str(r) for r in self.refs]
        parts += [f"{name}={value}" for name, value in self.params]
        parts += [f"{name}={value}" for name, value in self.binding]
        return " ".join(parts)


@dataclass(frozen=True)
class DerivationLine:
    index: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    system: AxiomSystemId
    lines: Tuple[DerivationLine, ...]
    goal: Optional[Formula] = None

    @property
    def theorem(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    line: Optional[int] = None
    reason: str = ""

    def format(self) -> str:
        if self.ok:
            return "ok"
        where = f" at line {self.line}" if self.line is not None else ""
        return f"rejected{where}: {self.reason}"


_EXPECTED_REFS = {RuleKind.MP: 2, RuleKind.EQC: 1, RuleKind.EQI: 1, RuleKind.NECU: 1, RuleKind.NECC: 1}


def expand_necc(premise_index: int, phi: Formula) -> List[DerivationLine]:
    """The seven lines deriving C phi from phi at premise_index, numbered after it."""
    s = premise_index + 1
    top_ = top()
    c_top = const(top_)
    c_phi = const(phi)
    same = iff(c_phi, c_top)
    taut = Justification(RuleKind.TAUT)
    return [
        DerivationLine(s, Implies(phi, iff(phi, top_)), taut),
        DerivationLine(s + 1, iff(phi, top_), Justification(RuleKind.MP, (premise_index, s))),
        DerivationLine(s + 2, same, Justification(RuleKind.EQC, (s + 1,))),
        DerivationLine(s + 3, c_top, Justification(RuleKind.AXIOM, axiom="Ax1C")),
        DerivationLine(s + 4, Implies(same, Implies(c_top, c_phi)), taut),
        DerivationLine(s + 5, Implies(c_top, c_phi), Justification(RuleKind.MP, (s + 2, s + 4))),
        DerivationLine(s + 6, c_phi, Justification(RuleKind.MP, (s + 3, s + 5))),
    ]


def _check_axiom(system: AxiomSystemId, line: DerivationLine) -> Optional[str]:
    j = line.justification
    params = dict(j.params) or infer_params(j.axiom, line.formula)
    schema = axiom_schema(system, j.axiom, **params)
    if j.binding:
        expected = instantiate_axiom(system, j.axiom, dict(j.binding), **params)
        if expected != line.formula:
            return f"formula is not {j.axiom} under the given binding (expected {expected})"
        return None
    if match_schema(schema, line.formula) is None:
        return f"formula is not an instance of {j.axiom}"
    return None


def _check_rule(system: AxiomSystemId, line: DerivationLine, proved: Dict[int, Formula]) -> Optional[str]:
    j = line.justification
    phi = line.formula
    if j.rule not in SYSTEM_RULES[system]:
        return f"rule {j.rule.value} is not part of {system.value}"
    expected_refs = _EXPECTED_REFS.get(j.rule, 0)
    if len(j.refs) != expected_refs:
        return f"{j.rule.value} takes {expected_refs} line reference(s), got {len(j.refs)}"
    for ref in j.refs:
        if ref >= line.index or ref not in proved:
            return f"line {ref} is not an earlier line"
    premises = [proved[r] for r in j.refs]

    if j.rule is RuleKind.AXIOM:
        return _check_axiom(system, line)
    if j.rule is RuleKind.TAUT:
        return None if taut_oracle(phi) else "not a propositional tautology"
    if j.rule is RuleKind.MP:
        if premises[1] != Implies(premises[0], phi):
            return f"line {j.refs[1]} is not (line {j.refs[0]} -> this line)"
        return None
    if j.rule in (RuleKind.EQC, RuleKind.EQI):
        parts = split_iff(premises[0])
        if parts is None:
            return f"line {j.refs[0]} is not a biconditional"
        a, b = parts
        wrap = const if j.rule is RuleKind.EQC else _i_self
        if phi != iff(wrap(a), wrap(b)):
            return f"not the {j.rule.value} conclusion of line {j.refs[0]}"
        return None
    if j.rule is RuleKind.NECU:
        return None if phi == UBox(premises[0]) else f"not [U] of line {j.refs[0]}"
    if j.rule is RuleKind.NECC:
        if phi != const(premises[0]):
            return f"not C of line {j.refs[0]}"
        expansion = expand_necc(j.refs[0], premises[0])
        inner = _check_lines(system, expansion, {j.refs[0]: premises[0]})
        if not inner.ok:
            return f"necc expansion fails at step {inner.line}: {inner.reason}"
        return None
    return f"unknown rule {j.rule}"


def _check_lines(system: AxiomSystemId, lines: Sequence[DerivationLine],
                 proved: Dict[int, Formula]) -> ProofCheck:
    language = SYSTEM_LANGUAGE[system]
    proved = dict(proved)
    previous = max(proved, default=0)
    for line in lines:
        if line.index <= previous:
            return ProofCheck(False, line.index, "line numbers must increase")
        violations = validate_fragment(line.formula, language)
        if violations:
            return ProofCheck(False, line.index, f"outside {language.value}: {violations[0]}")
        try:
            reason = _check_rule(system, line, proved)
        except LogicError as e:
            reason = str(e)
        if reason is not None:
            return ProofCheck(False, line.index, reason)
        proved[line.index] = line.formula
        previous = line.index
    return ProofCheck(True)


def check_derivation(d: Derivation, debug_mode: bool = False) -> ProofCheck:
    """Accepts d iff every line is justified and the last line is the goal, when one is given."""
    if not d.lines:
        return ProofCheck(False, None, "empty derivation")
    result = _check_lines(d.system, d.lines, {})
    if result.ok and d.goal is not None and d.theorem != d.goal:
        result = ProofCheck(False, d.lines[-1].index, f"last line is not the goal {d.goal}")
    if debug_mode or config.DEBUG_MODE:
        mark = "✅" if result.ok else "❌"
        print(f"{mark} [Proof] {d.system.value}, {len(d.lines)} lines: {result.format()}", file=sys.stderr)
    return result


def soundness_audit(d: Derivation) -> ProofCheck:
    """Every line of d is valid by brute force; a failure here means the checker accepted a bad line."""
    from .decide import validity

    for line in d.lines:
        signature = props_of(line.formula).without(config.RESERVED_SYMBOL)
        signature.check_size(config.MAX_SMALL_SIGNATURE, "soundness audit")
        verdict = validity(line.formula)
        if not verdict.result:
            return ProofCheck(False, line.index, f"not valid, fails in {verdict.witness.describe()}")
    return ProofCheck(True)


def derivation_mutants(d: Derivation) -> Iterator[Tuple[str, Derivation]]:
    """Single-line deletions, then swaps of two lines' differing justifications."""
    lines = list(d.lines)
    for i, line in enumerate(lines):
        yield f"delete line {line.index}", replace(d, lines=tuple(lines[:i] + lines[i + 1:]))
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a, b = lines[i], lines[j]
            if a.justification.text() == b.justification.text():
                continue
            swapped = list(lines)
            swapped[i] = replace(a, justification=b.justification)
            swapped[j] = replace(b, justification=a.justification)
            yield f"swap justifications of lines {a.index} and {b.index}", replace(d, lines=tuple(swapped))


# ------------------------------------------------------------------------------
# .prf files
# ------------------------------------------------------------------------------

_LINE = re.compile(r"(\d+)\s*:\s*(.*)\Z")
_RULE_WORD = re.compile(r"\s(ax|mp|eqc|eqi|necu|necc|taut)(?=\s|\Z)")
_BINDING_SPLIT = re.compile(r"\s+(?=[a-zA-Z][a-zA-Z0-9]*=)")
_PARAM_NAMES = {"k", "m", "n"}


def parse_justification(text: str) -> Justification:
    words = text.split(None, 1)
    if not words:
        raise ValueError("missing justification")
    try:
        rule = RuleKind(words[0])
    except ValueError:
        raise ValueError(f"unknown rule '{words[0]}'") from None
    rest = words[1].strip() if len(words) > 1 else ""

    if rule is RuleKind.AXIOM:
        head = rest.split(None, 1)
        if not head:
            raise ValueError("ax needs an axiom name")
        axiom = head[0]
        binding, params = [], []
        if len(head) > 1:
            for piece in _BINDING_SPLIT.split(head[1].strip()):
                name, sep, value = piece.partition("=")
                if not sep or not value.strip():
                    raise ValueError(f"malformed binding '{piece}'")
                if name in _PARAM_NAMES:
                    params.append((name, int(value)))
                else:
                    binding.append((name, parse(value.strip())))
        return Justification(rule, (), axiom, tuple(binding), tuple(params))

    refs = tuple(int(r) for r in rest.split()) if rest else ()
    return Justification(rule, refs)


def _split_line(body: str, number: int) -> Tuple[Formula, Justification]:
    """Formula text and justification are split at the first rule word where both sides parse."""
    errors = []
    for match in _RULE_WORD.finditer(body):
        formula_text, rule_text = body[:match.start()], body[match.start():].strip()
        try:
            return parse(formula_text), parse_justification(rule_text)
        except (FormulaSyntaxError, ValueError, LogicError) as e:
            errors.append(str(e))
    detail = f": {errors[-1]}" if errors else ""
    raise DerivationFormatError(f"cannot split formula and justification{detail}", number)


def parse_derivation(text: str, source: str = "<string>") -> Derivation:
    system = None
    goal = None
    lines: List[DerivationLine] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("system"):
            name = line[len("system"):].strip()
            try:
                system = AxiomSystemId(name)
            except ValueError:
                raise DerivationFormatError(f"{source}: unknown system '{name}'", number) from None
            continue
        if line.startswith("goal"):
            try:
                goal = parse(line[len("goal"):].strip())
            except LogicError as e:
                raise DerivationFormatError(f"{source}: bad goal: {e}", number) from None
            continue
        match = _LINE.match(line)
        if not match:
            raise DerivationFormatError(f"{source}: expected '<n>: <formula> <justification>'", number)
        formula, justification = _split_line(" " + match.group(2), number)
        lines.append(DerivationLine(int(match.group(1)), formula, justification))
    if system is None:
        raise DerivationFormatError(f"{source}: missing 'system' line", None)
    return Derivation(system, tuple(lines), goal)


def load_derivation(path: Union[str, Path]) -> Derivation:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DerivationFormatError(f"{path}: not UTF-8 text ({e.reason} at byte {e.start})") from None
    d = parse_derivation(text, source=str(path))
    if config.DEBUG_MODE:
        print(f"✅ [Proof] Loaded {path.name}: {d.system.value}, {len(d.lines)} lines", file=sys.stderr)
    return d


def format_derivation(d: Derivation) -> str:
    out = [f"system {d.system.value}"]
    if d.goal is not None:
        out.append(f"goal {d.goal}")
    for line in d.lines:
        out.append(f"{line.index}: {line.formula}    {line.justification.text()}")
    return "\n".join(out) + "\n"
