"""Bit-exact interpreter for kernel programs.

Values are numpy arrays so one run covers a whole batch: a scalar of type
``TUInt`` is a ``uint32`` array of shape ``(N,)``, a ``TVect(TUInt, 4)`` is a
``uint32`` array of shape ``(N, 4)``, a ``TVect(TUInt64, 2)`` a ``uint64``
array of shape ``(N, 2)``.  Arithmetic wraps at the type's width.
"""

from __future__ import annotations

import numpy as np

from ..vkernels import npsimd
from .ir import (
    INTRINSIC_ARITY,
    Add,
    Assign,
    BAnd,
    BinOp,
    Const,
    Decl,
    Intrinsic,
    KernelProgram,
    Mul,
    Shl,
    Shr,
    Sub,
    Var,
)
from .types import (
    TBool,
    TCplx,
    TInt,
    TModInt,
    TModInt64,
    TReal,
    TUInt,
    TUInt64,
    TVect,
    is_modular,
)


class InterpretError(RuntimeError):
    pass


_DTYPES = {
    TBool: np.uint32,
    TUInt: np.uint32,
    TModInt: np.uint32,
    TInt: np.int32,
    TUInt64: np.uint64,
    TModInt64: np.uint64,
    TReal: np.float64,
    TCplx: np.complex128,
}


def _dtype(t):
    base = t.base if isinstance(t, TVect) else t
    try:
        return np.dtype(_DTYPES[base])
    except KeyError:
        raise InterpretError(f"no machine representation for {base}") from None


def _coerce(value, t) -> np.ndarray:
    """Reinterpret or broadcast ``value`` into the storage layout of ``t``."""
    arr = np.asarray(value)
    dt = _dtype(t)
    if not isinstance(t, TVect):
        return arr.astype(dt, copy=False)
    if arr.shape[-1:] == (t.width,) and arr.dtype == dt:
        return arr
    if arr.ndim == 0 or arr.shape[-1:] not in ((t.width,), (4,), (2,)):
        return np.broadcast_to(arr.astype(dt), arr.shape + (t.width,))
    # 128-bit bit-cast between 4x32 and 2x64 views
    if arr.dtype.itemsize * arr.shape[-1] == dt.itemsize * t.width == 16:
        if dt.itemsize == 8:
            return npsimd.to_u64x2(arr.astype(np.uint32))
        if arr.dtype.itemsize == 8:
            return npsimd.from_u64x2(arr.astype(np.uint64)).astype(dt, copy=False)
    return arr.astype(dt, copy=False)


def _as_reg(value) -> np.ndarray:
    arr = np.asarray(value)
    if arr.dtype.itemsize == 8 and arr.shape[-1:] == (2,):
        return npsimd.from_u64x2(arr.astype(np.uint64))
    if arr.shape[-1:] != (4,):
        arr = np.broadcast_to(arr, arr.shape + (4,))
    return arr.astype(np.uint32, copy=False)


def _width_bits(t) -> int:
    return _dtype(t).itemsize * 8


def _binop(node: BinOp, lhs, rhs):
    t = node.type
    if is_modular(t) and not isinstance(node, (BAnd, Shl, Shr)):
        raise InterpretError(f"{node.op} at modular type {t} must be rewritten before interpretation")
    lhs = _coerce(lhs, t)
    if isinstance(node, (Shl, Shr)):
        n = int(np.asarray(rhs).reshape(-1)[0]) if np.ndim(rhs) else int(rhs)
        if n >= _width_bits(t):
            if isinstance(node, Shr) and lhs.dtype.kind == "i":
                return lhs >> (_width_bits(t) - 1)
            return np.zeros_like(lhs)
        amount = lhs.dtype.type(n)
        return lhs << amount if isinstance(node, Shl) else lhs >> amount
    rhs = _coerce(rhs, t)
    if isinstance(node, Mul):
        return lhs * rhs
    if isinstance(node, Add):
        return lhs + rhs
    if isinstance(node, Sub):
        return lhs - rhs
    if isinstance(node, BAnd):
        return lhs & rhs
    raise InterpretError(f"unknown operator {node.op}")


def _intrinsic(node: Intrinsic, args):
    m = node.mnemonic
    if m == "widen":
        return np.asarray(args[0]).astype(np.uint64)
    if m == "narrow":
        return (np.asarray(args[0]).astype(np.uint64) & np.uint64(0xFFFFFFFF)).astype(np.uint32)
    if m == "cmpge":
        x = np.asarray(args[0]).astype(np.uint32)
        y = np.asarray(args[1]).astype(np.uint32)
        return np.where(x >= y, np.uint32(0xFFFFFFFF), np.uint32(0))
    fn = getattr(npsimd, m, None)
    if m not in INTRINSIC_ARITY or fn is None:
        raise InterpretError(f"unknown mnemonic {m!r}")
    nreg, _ = INTRINSIC_ARITY[m]
    regs = [_as_reg(a) for a in args[:nreg]]
    imms = [int(a) for a in args[nreg:]]
    return fn(*regs, *imms)


def _eval(expr, env: dict):
    if isinstance(expr, Var):
        if expr.name not in env:
            raise InterpretError(f"unbound variable {expr.name!r}")
        return env[expr.name]
    if isinstance(expr, Const):
        if isinstance(expr.type, TVect):
            return _coerce(expr.value, expr.type)
        return _dtype(expr.type).type(expr.value)
    if isinstance(expr, Intrinsic):
        return _coerce(_intrinsic(expr, [_eval(o, env) for o in expr.operands]), expr.type)
    if isinstance(expr, BinOp):
        if expr.type is None:
            raise InterpretError("program must be type-checked before interpretation")
        return _binop(expr, _eval(expr.lhs, env), _eval(expr.rhs, env))
    raise InterpretError(f"cannot evaluate {expr!r}")


def interpret(prog: KernelProgram, env: dict) -> dict:
    """Run ``prog`` over ``env`` (name -> value) and return the final bindings."""
    out = dict(env)
    for v in prog.inputs:
        if v.name not in out:
            raise InterpretError(f"unbound input {v.name!r}")
        out[v.name] = _coerce(out[v.name], v.type)
    with np.errstate(over="ignore"):
        for stmt in prog.body:
            if isinstance(stmt, Decl):
                continue
            if not isinstance(stmt, Assign):
                raise InterpretError(f"not a statement: {stmt!r}")
            out[stmt.dest.name] = _coerce(_eval(stmt.src, out), stmt.dest.type)
    return out


def run_kernel(prog: KernelProgram, a, b) -> np.ndarray:
    """Convenience wrapper: bind the two inputs, return the single output."""
    x, y = prog.inputs
    (res,) = prog.outputs
    return interpret(prog, {x.name: a, y.name: b})[res.name]
