"""IR data types and pairwise unification.

Primitive types are singletons; ``TVect(base, width)`` composes one primitive
into a short vector.  ``TUInt64`` is not a source-level type: it types the
64-bit intermediates (full products) the Montgomery rewrite introduces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class UnificationError(TypeError):
    pass


@dataclass(frozen=True)
class Prim:
    name: str

    def __repr__(self) -> str:
        return self.name

    __str__ = __repr__


@dataclass(frozen=True)
class TVect:
    base: Prim
    width: int

    def __post_init__(self):
        if not isinstance(self.base, Prim):
            raise TypeError(f"TVect base must be a primitive type, got {self.base!r}")
        if not isinstance(self.width, int) or self.width < 2:
            raise ValueError(f"TVect width must be an integer >= 2, got {self.width!r}")

    def __repr__(self) -> str:
        return f"TVect({self.base}, {self.width})"

    __str__ = __repr__


IrType = Prim | TVect

TBool = Prim("TBool")
TUInt = Prim("TUInt")
TInt = Prim("TInt")
TUInt64 = Prim("TUInt64")
TReal = Prim("TReal")
TCplx = Prim("TCplx")
TModInt = Prim("TModInt")
TModInt64 = Prim("TModInt64")
TModReal = Prim("TModReal")

PRIMITIVES = (TBool, TUInt, TInt, TUInt64, TReal, TCplx, TModInt, TModInt64, TModReal)
MODULAR = frozenset({TModInt, TModInt64, TModReal})
_BY_NAME = {p.name: p for p in PRIMITIVES}

# Non-modular scalars promote along a single chain, C style.
_NUMERIC_RANK = {TBool: 0, TUInt: 1, TInt: 2, TUInt64: 3, TReal: 4, TCplx: 5}
_MOD_ABSORBS = {
    TModInt: frozenset({TBool, TUInt, TInt, TModInt}),
    TModInt64: frozenset({TBool, TUInt, TInt, TModInt64}),
}
_CPLX_ABSORBS = frozenset({TInt, TUInt, TReal, TCplx})


def unify(a: IrType, b: IrType) -> IrType:
    """Result type of a binary operation on operands of types ``a`` and ``b``."""
    if isinstance(a, TVect) and isinstance(b, TVect):
        return TVect(_unify_prim(a.base, b.base), max(a.width, b.width))
    if isinstance(a, TVect):
        return TVect(_unify_prim(b, a.base), a.width)
    if isinstance(b, TVect):
        return TVect(_unify_prim(a, b.base), b.width)
    return _unify_prim(a, b)


def _unify_prim(a: Prim, b: Prim) -> Prim:
    for mod, absorbs in _MOD_ABSORBS.items():
        if (a is mod and b in absorbs) or (b is mod and a in absorbs):
            return mod
    if (a == TCplx and b in _CPLX_ABSORBS) or (b == TCplx and a in _CPLX_ABSORBS):
        return TCplx
    if a == b:
        return a
    if a in MODULAR or b in MODULAR:
        raise UnificationError(f"no unification rule for {a} and {b}")
    return a if _NUMERIC_RANK[a] >= _NUMERIC_RANK[b] else b


def is_modular(t: IrType) -> bool:
    return (t.base if isinstance(t, TVect) else t) in MODULAR


def all_types(widths=(2, 4)) -> list[IrType]:
    """Every primitive, plus every ``TVect`` over them at the given widths."""
    return list(PRIMITIVES) + [TVect(p, w) for p in PRIMITIVES for w in widths]


_VECT_RE = re.compile(r"^TVect\(\s*(\w+)\s*,\s*(\d+)\s*\)$")


def parse_type(text: str) -> IrType:
    text = text.strip()
    if text in _BY_NAME:
        return _BY_NAME[text]
    m = _VECT_RE.match(text)
    if m and m.group(1) in _BY_NAME:
        return TVect(_BY_NAME[m.group(1)], int(m.group(2)))
    raise ValueError(f"unknown IR type {text!r}")
