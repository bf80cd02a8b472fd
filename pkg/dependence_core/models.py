"""
SD-models: finite sets of Boolean assignments over a declared signature.

A world is an int bitmask whose bit i is the value of signature.symbols[i].
Models keep their worlds in file order so world indices are stable, but
compare as sets.
"""
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np

from . import config
from .errors import GuardError, ModelError

SYMBOL_PATTERN = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

World = int


def _valid_symbol(name: str) -> bool:
    return bool(SYMBOL_PATTERN.match(name)) or name == config.RESERVED_SYMBOL


@dataclass(frozen=True)
class Signature:
    symbols: Tuple[str, ...] = ()

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        for name in symbols:
            if not _valid_symbol(name):
                raise ModelError(f"invalid proposition symbol '{name}'")
        if list(symbols) != sorted(set(symbols)):
            raise ModelError("signature symbols must be sorted and distinct")

    @classmethod
    def of(cls, names: Iterable[str]) -> "Signature":
        return cls(tuple(sorted(set(names))))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, name):
        return name in self.symbols

    def __str__(self):
        return "{" + ",".join(self.symbols) + "}"

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise ModelError(f"unknown symbol '{name}' (signature {self})") from None

    def union(self, other: "Signature") -> "Signature":
        return Signature.of(self.symbols + other.symbols)

    def without(self, *names: str) -> "Signature":
        return Signature.of(s for s in self.symbols if s not in names)

    def issubset(self, other: "Signature") -> bool:
        return all(s in other for s in self.symbols)

    def check_size(self, limit: int, what: str):
        if len(self) > limit:
            raise GuardError(f"{what} needs at most {limit} symbols, got {len(self)} {self}")


@dataclass(frozen=True, eq=False)
class SDModel:
    signature: Signature
    worlds: Tuple[World, ...] = ()

    def __post_init__(self):
        worlds = tuple(int(w) for w in self.worlds)
        object.__setattr__(self, "worlds", worlds)
        width = 1 << len(self.signature)
        for w in worlds:
            if w < 0 or w >= width:
                raise ModelError(f"world bitmask {w} exceeds signature {self.signature}")
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world in model")

    @classmethod
    def from_sets(cls, signature: Union[Signature, Iterable[str]],
                  worlds: Iterable[Iterable[str]]) -> "SDModel":
        if not isinstance(signature, Signature):
            signature = Signature.of(signature)
        bits = []
        for true_symbols in worlds:
            w = 0
            for name in true_symbols:
                w |= 1 << signature.index(name)
            bits.append(w)
        return cls(signature, tuple(bits))

    def __eq__(self, other):
        if not isinstance(other, SDModel):
            return NotImplemented
        return self.signature == other.signature and set(self.worlds) == set(other.worlds)

    def __hash__(self):
        return hash((self.signature, frozenset(self.worlds)))

    def __len__(self):
        return len(self.worlds)

    def __str__(self):
        return self.describe()

    @property
    def is_empty(self) -> bool:
        return not self.worlds

    @property
    def world_array(self) -> np.ndarray:
        return np.array(self.worlds, dtype=np.int64)

    def names(self, index: int) -> FrozenSet[str]:
        w = self.worlds[index]
        return frozenset(s for i, s in enumerate(self.signature.symbols) if w >> i & 1)

    def symbol_vector(self, name: str) -> np.ndarray:
        """Truth of a symbol at each world; symbols outside the signature are false."""
        if name not in self.signature:
            return np.zeros(len(self.worlds), dtype=bool)
        bit = self.signature.index(name)
        return ((self.world_array >> bit) & 1).astype(bool)

    def submodel(self, mask: int) -> "SDModel":
        """Worlds whose index bit is set in mask, order kept."""
        return SDModel(self.signature, tuple(w for i, w in enumerate(self.worlds) if mask >> i & 1))

    def extend(self, signature: Signature) -> "SDModel":
        """Same worlds over a larger signature; the new symbols are false everywhere."""
        if not self.signature.issubset(signature):
            raise ModelError(f"{signature} does not contain {self.signature}")
        moves = [(i, signature.index(s)) for i, s in enumerate(self.signature.symbols)]
        return SDModel(signature, tuple(
            sum(1 << j for i, j in moves if w >> i & 1) for w in self.worlds))

    def describe(self) -> str:
        return "{" + ",".join(
            "{" + ",".join(sorted(self.names(i))) + "}" for i in range(len(self.worlds))) + "}"


@dataclass(frozen=True)
class PointedModel:
    model: SDModel
    point: int

    def __post_init__(self):
        if not 0 <= self.point < len(self.model):
            raise ModelError(f"world index {self.point} out of range for a model with {len(self.model)} worlds")


# ------------------------------------------------------------------------------
# Operations
# ------------------------------------------------------------------------------

def restrict(W: SDModel, phi: Signature) -> SDModel:
    """Project every world to phi, collapsing duplicates (first occurrence wins)."""
    positions = [W.signature.index(s) for s in phi.symbols]
    seen = []
    for w in W.worlds:
        projected = sum(1 << j for j, i in enumerate(positions) if w >> i & 1)
        if projected not in seen:
            seen.append(projected)
    return SDModel(phi, tuple(seen))


def phi_equivalent(W1: SDModel, W2: SDModel, phi: Signature) -> bool:
    return set(restrict(W1, phi).worlds) == set(restrict(W2, phi).worlds)


def enumerate_worlds(phi: Signature) -> List[World]:
    phi.check_size(config.MAX_SIGNATURE, "world enumeration")
    return list(range(1 << len(phi)))


def model_count(phi: Signature) -> int:
    phi.check_size(config.MAX_MODEL_SIGNATURE, "model enumeration")
    return 1 << (1 << len(phi))


def model_at(phi: Signature, mask: int) -> SDModel:
    """The model whose worlds are the set bits of mask, in numeric order."""
    return SDModel(phi, tuple(w for w in range(1 << len(phi)) if mask >> w & 1))


def enumerate_models(phi: Signature, start: int = 0, stop: Optional[int] = None) -> Iterator[SDModel]:
    """All models over phi in subset-bitmask order, the empty model first."""
    count = model_count(phi)
    stop = count if stop is None else min(stop, count)
    for mask in range(start, stop):
        yield model_at(phi, mask)


def full_model(phi: Signature) -> SDModel:
    return SDModel(phi, tuple(enumerate_worlds(phi)))


def empty_model(phi: Signature) -> SDModel:
    return SDModel(phi, ())


# ------------------------------------------------------------------------------
# .sdm files
# ------------------------------------------------------------------------------

def parse_model(text: str, source: str = "<string>") -> SDModel:
    signature = None
    worlds: List[FrozenSet[str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *rest = line.split()
        if keyword == "sig":
            if signature is not None:
                raise ModelError(f"{source}:{number}: second 'sig' line")
            try:
                signature = Signature.of(rest)
            except ModelError as e:
                raise ModelError(f"{source}:{number}: {e}") from None
            if len(rest) != len(set(rest)):
                raise ModelError(f"{source}:{number}: repeated symbol in 'sig' line")
        elif keyword == "w":
            if signature is None:
                raise ModelError(f"{source}:{number}: 'w' line before 'sig'")
            names = frozenset() if rest == ["-"] else frozenset(rest)
            unknown = sorted(n for n in names if n not in signature)
            if unknown:
                raise ModelError(f"{source}:{number}: unknown symbol(s) {', '.join(unknown)}")
            if names in worlds:
                raise ModelError(f"{source}:{number}: duplicate world")
            worlds.append(names)
        else:
            raise ModelError(f"{source}:{number}: expected 'sig' or 'w', got '{keyword}'")
    if signature is None:
        raise ModelError(f"{source}: missing 'sig' line")
    return SDModel.from_sets(signature, worlds)


def load_model(path: Union[str, Path]) -> SDModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ModelError(f"{path}: not UTF-8 text ({e.reason} at byte {e.start})") from None
    model = parse_model(text, source=str(path))
    if config.DEBUG_MODE:
        print(f"✅ [Models] Loaded {path.name}: {len(model)} worlds over {model.signature}", file=sys.stderr)
    return model


def format_model(W: SDModel) -> str:
    lines = ["sig " + " ".join(W.signature.symbols) if len(W.signature) else "sig"]
    for i in range(len(W)):
        names = [s for s in W.signature.symbols if s in W.names(i)]
        lines.append("w " + (" ".join(names) if names else "-"))
    return "\n".join(lines) + "\n"
