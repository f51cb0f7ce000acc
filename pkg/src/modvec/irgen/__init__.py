"""A miniature generator: typed IR, modular rewrite rules, interpreter and C unparser."""

from .interp import InterpretError, interpret, run_kernel
from .ir import (
    Add,
    Assign,
    BAnd,
    Const,
    Decl,
    Intrinsic,
    IrTypeError,
    KernelProgram,
    Mul,
    Shl,
    Shr,
    Sub,
    UndeclaredVariable,
    Var,
    assign,
    mul,
    typecheck,
    typecheck_program,
)
from .isa import (
    BUILTIN_ISAS,
    CostEntry,
    IsaConfigError,
    IsaDescriptor,
    builtin_isa,
    gather_cost,
    get_isa,
    load_isa,
    select_strategy,
    serialize_isa,
    strategy_costs,
)
from .rewrite import RewriteError, rewrite_modmul_scalar, rewrite_modmul_vec
from .types import (
    TBool,
    TCplx,
    TInt,
    TModInt,
    TModInt64,
    TModReal,
    TReal,
    TUInt,
    TUInt64,
    TVect,
    UnificationError,
    all_types,
    parse_type,
    unify,
)
from .unparse import UnparseError, unparse


def modmul_expr(vector: bool = True, width: int = 4) -> Assign:
    """The pattern both rewrite rules match: ``assign(res, mul(a, b))``."""
    t = TVect(TModInt, width) if vector else TModInt
    return assign(Var("res", t), mul(Var("a", t), Var("b", t)))
