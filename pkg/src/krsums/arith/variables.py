"""Variable identifiers and the packed-integer monomial encoding.

A monomial is stored as a single Python int: the exponent of the variable with
registry index ``i`` occupies a signed 24-bit field starting at bit ``24*i``.
Multiplying monomials is then integer addition, and because every field stays
far from overflow the integer order is a lexicographic group order on
exponent vectors, which is what exact division needs.
"""
from __future__ import annotations

from dataclasses import dataclass

_KIND_RANK = {"U": 0, "Ui": 1, "A": 2, "T": 3, "X": 4}

BITS = 24
HALF = 1 << (BITS - 1)
MASK = (1 << BITS) - 1
MAX_EXPONENT = HALF - 1


@dataclass(frozen=True)
class VariableId:
    kind: str
    index: tuple

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown variable kind {self.kind!r}")

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.index)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @property
    def name(self) -> str:
        if self.kind == "U":
            return f"u{self.index[0]}"
        if self.kind == "Ui":
            return f"u{self.index[0]}_{self.index[1]}"
        if self.kind == "A":
            return f"a{self.index[0]}"
        if self.kind == "T":
            return f"t{self.index[0]}"
        return f"x{self.index[0]}"

    def __repr__(self):
        return self.name


def U(alpha: int) -> VariableId:
    return VariableId("U", (alpha,))


def Ui(alpha: int, i: int) -> VariableId:
    return VariableId("Ui", (alpha, i))


def A(i: int) -> VariableId:
    return VariableId("A", (i,))


def T(alpha: int) -> VariableId:
    return VariableId("T", (alpha,))


def X(alpha: int) -> VariableId:
    return VariableId("X", (alpha,))


# Process-wide registry.  Indices are handed out on first use; all public
# output goes through decoded (VariableId, exponent) pairs so the assignment
# order never leaks into results.
_index: dict = {}
_vars: list = []
_bias = 0


def var_index(v: VariableId) -> int:
    global _bias
    idx = _index.get(v)
    if idx is None:
        idx = len(_vars)
        _index[v] = idx
        _vars.append(v)
        _bias += HALF << (BITS * idx)
    return idx


def var_at(idx: int) -> VariableId:
    return _vars[idx]


def pack(exponents) -> int:
    """Pack a mapping or iterable of (VariableId, exponent) pairs."""
    items = exponents.items() if hasattr(exponents, "items") else exponents
    m = 0
    for v, e in items:
        if e:
            if abs(e) > MAX_EXPONENT:
                raise OverflowError(f"exponent {e} of {v} out of range")
            m += e << (BITS * var_index(v))
    return m


def unpack(m: int) -> dict:
    """Decode a packed monomial into {VariableId: exponent}."""
    out = {}
    idx = 0
    while m:
        f = m & MASK
        if f >= HALF:
            f -= 1 << BITS
        if f:
            out[_vars[idx]] = f
        m = (m - f) >> BITS
        idx += 1
    return out


def exponent_of(m: int, idx: int) -> int:
    return (((m + _bias) >> (BITS * idx)) & MASK) - HALF


def unit(idx: int, e: int = 1) -> int:
    return e << (BITS * idx)
