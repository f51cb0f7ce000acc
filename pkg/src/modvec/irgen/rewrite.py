"""Rewrite rules expanding ``assign(res, mul(a, b))`` at modular types.

The vector rule emits the 4-lane Montgomery chain one intrinsic per
statement; the scalar rule emits the word-level REDC sequence.  Both emit a
``decl`` before each temporary's single assignment.
"""

from __future__ import annotations

from ..modarith import ModParams
from ..vkernels import GatherStrategy, check_strategy
from ..vkernels.montgomery import (
    BIAS,
    BLEND_EVEN,
    BLEND_ODD,
    SHUF_EVEN_ODD,
    SHUF_ODD_ODD,
    SHUF_RESTORE,
    SHUF_SWAP_PAIRS,
)
from .ir import (
    Add,
    Assign,
    BAnd,
    Const,
    Decl,
    Intrinsic,
    KernelProgram,
    Mul,
    Shr,
    Sub,
    Var,
    typecheck,
    typecheck_program,
)
from .isa import IsaDescriptor
from .types import TModInt, TModInt64, TModReal, TUInt, TUInt64, TVect

V32 = TVect(TUInt, 4)
V64 = TVect(TUInt64, 2)


class RewriteError(ValueError):
    pass


class _Chain:
    def __init__(self):
        self.body: list = []
        self.counter = 0

    def emit(self, type_, src) -> Var:
        var = Var(f"t{self.counter}", type_)
        self.counter += 1
        self.body.append(Decl(var))
        self.body.append(Assign(var, src))
        return var

    def op(self, mnemonic: str, type_, *operands) -> Var:
        ops = tuple(Const(o, TUInt) if isinstance(o, int) else o for o in operands)
        return self.emit(type_, Intrinsic(mnemonic, ops, type_))


def _match_modmul(expr) -> tuple[Var, Var, Var]:
    if not (isinstance(expr, Assign) and isinstance(expr.src, Mul)):
        raise RewriteError(f"expected assign(res, mul(a, b)), got {expr!r}")
    a, b = expr.src.lhs, expr.src.rhs
    if not (isinstance(a, Var) and isinstance(b, Var)):
        raise RewriteError("mul operands must be variables")
    typecheck(expr)
    return expr.dest, a, b


def _refuse_unimplemented(t) -> None:
    base = t.base if isinstance(t, TVect) else t
    if base in (TModInt64, TModReal):
        raise NotImplementedError(f"no multiplication rewrite for {base}")


def _gather(ch: _Chain, T20: Var, T31: Var, strategy: GatherStrategy) -> tuple[Var, Var]:
    if strategy is GatherStrategy.FLOAT_SHUFFLE_CAST:
        lo = ch.op("shuffle_ps", V32, T20, T31, SHUF_EVEN_ODD)
        hi = ch.op("shuffle_ps", V32, T20, T31, SHUF_ODD_ODD)
        hi = ch.op("shuffle_epi32", V32, hi, SHUF_RESTORE)
        lo = ch.op("shuffle_epi32", V32, lo, SHUF_RESTORE)
        return hi, lo
    if strategy is GatherStrategy.SHUFFLE_UNPACK:
        s20 = ch.op("shuffle_epi32", V32, T20, SHUF_RESTORE)
        s31 = ch.op("shuffle_epi32", V32, T31, SHUF_RESTORE)
        hi = ch.op("unpackhi_epi32", V32, s20, s31)
        lo = ch.op("unpacklo_epi32", V32, s20, s31)
        return hi, lo
    if strategy is GatherStrategy.BLEND_AVX2:
        f20 = ch.op("shuffle_epi32", V32, T20, SHUF_SWAP_PAIRS)
        hi = ch.op("blend_epi32", V32, f20, T31, BLEND_ODD)
        lo = ch.op("blend_epi32", V32, f20, T31, BLEND_EVEN)
        lo = ch.op("shuffle_epi32", V32, lo, SHUF_SWAP_PAIRS)
        return hi, lo
    raise TypeError(f"not a GatherStrategy: {strategy!r}")


def rewrite_modmul_vec(
    expr, isa: IsaDescriptor, params: ModParams, strategy: GatherStrategy
) -> KernelProgram:
    res, a, b = _match_modmul(expr)
    _refuse_unimplemented(res.type)
    if res.type != TVect(TModInt, isa.v):
        raise RewriteError(f"result must have type TVect(TModInt, {isa.v}), got {res.type}")
    if isa.v != 4:
        raise RewriteError(f"the vector rule targets 4 lanes, ISA {isa.name} has {isa.v}")
    if params.l > 32:
        raise RewriteError("the 4x32 rule needs l <= 32")
    check_strategy(strategy, isa.has_blend)

    ch = _Chain()
    P = params.P
    cP = ch.emit(V32, Const(P, TUInt))
    cPp = ch.emit(V32, Const(params.Pprime, TUInt))
    cMask = ch.emit(V32, Const(params.R - 1, TUInt))
    cBias = ch.emit(V32, Const(BIAS, TUInt))
    cThr = ch.emit(V32, Const((P - 1 - BIAS) & 0xFFFFFFFF, TUInt))

    a1 = ch.op("srli_si128", V32, a, 4)
    b1 = ch.op("srli_si128", V32, b, 4)
    T20 = ch.op("mul_epu32", V64, a, b)
    T31 = ch.op("mul_epu32", V64, a1, b1)
    _, Tl = _gather(ch, T20, T31, strategy)

    mlo = ch.op("mullo_epi32", V32, Tl, cPp)
    m = ch.op("and_si128", V32, mlo, cMask)
    m1 = ch.op("srli_si128", V32, m, 4)
    U20 = ch.op("mul_epu32", V64, m, cP)
    U31 = ch.op("mul_epu32", V64, m1, cP)
    S20 = ch.op("add_epi64", V64, T20, U20)
    S31 = ch.op("add_epi64", V64, T31, U31)
    hi, lo = _gather(ch, S20, S31, strategy)

    hs = ch.op("slli_epi64", V64, hi, 32 - params.l)
    ls = ch.op("srli_epi64", V64, lo, params.l)
    t = ch.op("add_epi32", V32, hs, ls)
    tb = ch.op("sub_epi32", V32, t, cBias)
    over = ch.op("cmpgt_epi32", V32, tb, cThr)
    corr = ch.op("and_si128", V32, over, cP)
    ch.body.append(Assign(res, Intrinsic("sub_epi32", (t, corr), V32)))

    body = typecheck_program(ch.body, (a, b), (res,))
    return KernelProgram(
        name=f"montmul_{isa.name}_{strategy.value.replace('-', '_')}",
        params=params,
        inputs=(a, b),
        outputs=(res,),
        body=body,
        isa=isa,
        strategy=strategy,
        vector=True,
    )


def rewrite_modmul_scalar(expr, params: ModParams) -> KernelProgram:
    res, a, b = _match_modmul(expr)
    _refuse_unimplemented(res.type)
    if res.type != TModInt:
        raise RewriteError(f"result must have type TModInt, got {res.type}")

    ch = _Chain()
    mask32 = Const(params.R - 1, TUInt)
    aw = ch.emit(TUInt64, Intrinsic("widen", (a,), TUInt64))
    bw = ch.emit(TUInt64, Intrinsic("widen", (b,), TUInt64))
    T = ch.emit(TUInt64, Mul(aw, bw))
    Tl = ch.emit(TUInt, Intrinsic("narrow", (T,), TUInt))
    Tm = ch.emit(TUInt, BAnd(Tl, mask32))
    mlo = ch.emit(TUInt, Mul(Tm, Const(params.Pprime, TUInt)))
    m = ch.emit(TUInt, BAnd(mlo, mask32))
    mw = ch.emit(TUInt64, Intrinsic("widen", (m,), TUInt64))
    mP = ch.emit(TUInt64, Mul(mw, Const(params.P, TUInt64)))
    S = ch.emit(TUInt64, Add(T, mP))
    tw = ch.emit(TUInt64, Shr(S, Const(params.l, TUInt)))
    t = ch.emit(TUInt, Intrinsic("narrow", (tw,), TUInt))
    ge = ch.emit(TUInt, Intrinsic("cmpge", (t, Const(params.P, TUInt)), TUInt))
    corr = ch.emit(TUInt, BAnd(ge, Const(params.P, TUInt)))
    ch.body.append(Assign(res, Sub(t, corr)))

    body = typecheck_program(ch.body, (a, b), (res,))
    return KernelProgram(
        name="montmul_scalar",
        params=params,
        inputs=(a, b),
        outputs=(res,),
        body=body,
        vector=False,
    )
