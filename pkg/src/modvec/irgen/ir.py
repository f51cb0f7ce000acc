"""Expression tree, program container and type checking."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import ClassVar, Iterable, Optional, Union

from ..modarith import ModParams
from ..vkernels import GatherStrategy
from .types import IrType, TVect, UnificationError, unify


class IrTypeError(TypeError):
    pass


class UndeclaredVariable(IrTypeError):
    pass


@dataclass(frozen=True)
class Var:
    name: str
    type: IrType

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    value: int
    type: IrType

    def __repr__(self) -> str:
        return f"{self.value:#x}" if self.value > 9 else str(self.value)


@dataclass(frozen=True)
class BinOp:
    lhs: "Expr"
    rhs: "Expr"
    type: Optional[IrType] = None
    op: ClassVar[str] = "?"

    def __repr__(self) -> str:
        return f"{self.op}({self.lhs!r}, {self.rhs!r})"


class Mul(BinOp):
    op = "mul"


class Add(BinOp):
    op = "add"


class Sub(BinOp):
    op = "sub"


class BAnd(BinOp):
    op = "band"


class Shl(BinOp):
    op = "shl"


class Shr(BinOp):
    op = "shr"


SHIFTS = (Shl, Shr)


@dataclass(frozen=True)
class Intrinsic:
    """One target instruction; ``mnemonic`` names it without the ``_mm_`` prefix."""

    mnemonic: str
    operands: tuple
    type: IrType

    def __repr__(self) -> str:
        return f"{self.mnemonic}({', '.join(map(repr, self.operands))})"


@dataclass(frozen=True)
class Assign:
    dest: Var
    src: "Expr"

    def __repr__(self) -> str:
        return f"assign({self.dest!r}, {self.src!r})"


@dataclass(frozen=True)
class Decl:
    var: Var

    def __repr__(self) -> str:
        return f"decl({self.var.name}: {self.var.type})"


Expr = Union[Var, Const, BinOp, Intrinsic]
Stmt = Union[Assign, Decl]


def assign(dest: Var, src: Expr) -> Assign:
    return Assign(dest, src)


def mul(a: Expr, b: Expr) -> Mul:
    return Mul(a, b)


# Operand count (registers, immediates) per intrinsic.
INTRINSIC_ARITY = {
    "mul_epu32": (2, 0),
    "mullo_epi32": (2, 0),
    "shuffle_epi32": (1, 1),
    "shuffle_ps": (2, 1),
    "unpacklo_epi32": (2, 0),
    "unpackhi_epi32": (2, 0),
    "blend_epi32": (2, 1),
    "and_si128": (2, 0),
    "add_epi64": (2, 0),
    "add_epi32": (2, 0),
    "sub_epi32": (2, 0),
    "slli_epi64": (1, 1),
    "srli_epi64": (1, 1),
    "srli_si128": (1, 1),
    "cmpgt_epi32": (2, 0),
    # scalar helpers
    "widen": (1, 0),
    "narrow": (1, 0),
    "cmpge": (2, 0),
}
VECTOR_MNEMONICS = frozenset(k for k in INTRINSIC_ARITY if k not in {"widen", "narrow", "cmpge"})


@dataclass(frozen=True)
class KernelProgram:
    name: str
    params: ModParams
    inputs: tuple
    outputs: tuple
    body: tuple
    isa: object = None
    strategy: Optional[GatherStrategy] = None
    vector: bool = field(default=False)

    def temporaries(self) -> list[Var]:
        return [s.var for s in self.body if isinstance(s, Decl)]

    def count(self, mnemonic: str) -> int:
        return sum(1 for s in self.body if isinstance(s, Assign) and _mnemonic(s.src) == mnemonic)


def _mnemonic(e) -> Optional[str]:
    return e.mnemonic if isinstance(e, Intrinsic) else None


def typecheck(node, declared: Optional[dict] = None):
    """Return ``node`` with every expression annotated with its unified type.

    When ``declared`` (name -> Var) is given, every variable must appear in it
    with the same type.
    """
    if isinstance(node, Var):
        if declared is not None:
            if node.name not in declared:
                raise UndeclaredVariable(f"variable {node.name!r} used before declaration")
            if declared[node.name].type != node.type:
                raise IrTypeError(
                    f"variable {node.name!r} declared as {declared[node.name].type}, used as {node.type}"
                )
        return node
    if isinstance(node, Const):
        return node
    if isinstance(node, BinOp):
        lhs = typecheck(node.lhs, declared)
        rhs = typecheck(node.rhs, declared)
        if isinstance(node, SHIFTS):
            t = lhs.type
        else:
            try:
                t = unify(lhs.type, rhs.type)
            except UnificationError as exc:
                raise IrTypeError(f"{node.op}: {exc}") from None
        return replace(node, lhs=lhs, rhs=rhs, type=t)
    if isinstance(node, Intrinsic):
        if node.mnemonic not in INTRINSIC_ARITY:
            raise IrTypeError(f"unknown intrinsic {node.mnemonic!r}")
        nreg, nimm = INTRINSIC_ARITY[node.mnemonic]
        if len(node.operands) != nreg + nimm:
            raise IrTypeError(f"{node.mnemonic} takes {nreg + nimm} operands, got {len(node.operands)}")
        ops = tuple(typecheck(o, declared) for o in node.operands)
        if any(not isinstance(o, Const) for o in ops[nreg:]):
            raise IrTypeError(f"{node.mnemonic}: immediate operands must be constants")
        return replace(node, operands=ops)
    if isinstance(node, Assign):
        dest = typecheck(node.dest, declared)
        src = typecheck(node.src, declared)
        try:
            t = unify(dest.type, src.type)
        except UnificationError as exc:
            raise IrTypeError(f"cannot assign {src.type} to {dest.name}: {exc}") from None
        if t != dest.type:
            raise IrTypeError(f"cannot assign {src.type} to {dest.name}: {dest.type}; result would be {t}")
        return Assign(dest, src)
    if isinstance(node, Decl):
        return node
    raise IrTypeError(f"not an IR node: {node!r}")


def typecheck_program(body: Iterable, inputs: Iterable[Var] = (), outputs: Iterable[Var] = ()) -> tuple:
    """Check a statement chain: declare-before-use, no redeclaration, typed assigns."""
    declared = {v.name: v for v in (*inputs, *outputs)}
    out = []
    for stmt in body:
        if isinstance(stmt, Decl):
            if stmt.var.name in declared:
                raise IrTypeError(f"variable {stmt.var.name!r} declared twice")
            declared[stmt.var.name] = stmt.var
            out.append(stmt)
        else:
            out.append(typecheck(stmt, declared))
    return tuple(out)


def assigned_names(body: Iterable) -> list[str]:
    return [s.dest.name for s in body if isinstance(s, Assign)]


def is_vector(t: IrType) -> bool:
    return isinstance(t, TVect)
