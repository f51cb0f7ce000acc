"""Emit a kernel program as a C99 translation unit using SSE/AVX2 intrinsics."""

from __future__ import annotations

import re

from .ir import BAnd, Add, Assign, BinOp, Const, Decl, Intrinsic, KernelProgram, Mul, Shl, Shr, Sub, Var
from .types import TUInt64, TVect


class UnparseError(ValueError):
    pass


# mnemonic -> C intrinsic; immediates listed here are control bytes (hex)
_VECTOR_NAMES = {
    "mul_epu32": "_mm_mul_epu32",
    "mullo_epi32": "_mm_mullo_epi32",
    "shuffle_epi32": "_mm_shuffle_epi32",
    "unpacklo_epi32": "_mm_unpacklo_epi32",
    "unpackhi_epi32": "_mm_unpackhi_epi32",
    "blend_epi32": "_mm_blend_epi32",
    "and_si128": "_mm_and_si128",
    "add_epi64": "_mm_add_epi64",
    "add_epi32": "_mm_add_epi32",
    "sub_epi32": "_mm_sub_epi32",
    "slli_epi64": "_mm_slli_epi64",
    "srli_epi64": "_mm_srli_epi64",
    "srli_si128": "_mm_srli_si128",
    "cmpgt_epi32": "_mm_cmpgt_epi32",
}
_HEX_IMM = {"shuffle_epi32", "shuffle_ps", "blend_epi32"}
_C_OPS = {Mul: "*", Add: "+", Sub: "-", BAnd: "&", Shl: "<<", Shr: ">>"}


def _ctype(t) -> str:
    if isinstance(t, TVect):
        return "__m128i"
    return "uint64_t" if t == TUInt64 or t.name == "TModInt64" else "uint32_t"


_TEMP = re.compile(r"^t\d+$")


def _name(v: Var) -> str:
    # user-named variables get a prefix so they cannot clash with the C parameters
    return v.name if _TEMP.match(v.name) else f"v_{v.name}"


def _imm(c: Const, hexa: bool) -> str:
    return f"0x{c.value:02X}" if hexa else str(c.value)


def _literal(c: Const) -> str:
    suffix = "ull" if _ctype(c.type) == "uint64_t" else "u"
    return f"0x{c.value:X}{suffix}"


def _expr(e) -> str:
    if isinstance(e, Var):
        return _name(e)
    if isinstance(e, Const):
        return _literal(e)
    if isinstance(e, Intrinsic):
        return _intrinsic(e)
    if isinstance(e, BinOp):
        rhs = e.rhs
        # shift counts read better in decimal
        r = str(rhs.value) if isinstance(e, (Shl, Shr)) and isinstance(rhs, Const) else _expr(rhs)
        return f"({_ctype(e.type)})({_expr(e.lhs)} {_C_OPS[type(e)]} {r})"
    raise UnparseError(f"cannot emit {e!r}")


def _intrinsic(e: Intrinsic) -> str:
    m, ops = e.mnemonic, e.operands
    if m == "widen":
        return f"(uint64_t)({_expr(ops[0])})"
    if m == "narrow":
        return f"(uint32_t)({_expr(ops[0])})"
    if m == "cmpge":
        return f"(uint32_t)-(uint32_t)({_expr(ops[0])} >= {_expr(ops[1])})"
    if m == "shuffle_ps":
        x, y, imm = ops
        return (
            f"_mm_castps_si128(_mm_shuffle_ps(_mm_castsi128_ps({_expr(x)}), "
            f"_mm_castsi128_ps({_expr(y)}), {_imm(imm, True)}))"
        )
    if m not in _VECTOR_NAMES:
        raise UnparseError(f"mnemonic {m!r} has no emission mapping")
    args = [_imm(o, m in _HEX_IMM) if isinstance(o, Const) else _expr(o) for o in ops]
    return f"{_VECTOR_NAMES[m]}({', '.join(args)})"


def _header(prog: KernelProgram) -> list[str]:
    p = prog.params
    lines = [
        f"/* {prog.name}: Montgomery multiplication modulo P = {p.P} (0x{p.P:X}), R = 2^{p.l}",
        f" * P' = 0x{p.Pprime:X}"
        + (f", isa {prog.isa.name}, gather {prog.strategy.value}" if prog.vector else ", scalar"),
        " * inputs and outputs are in Montgomery form; generated by modvec, do not edit */",
    ]
    return lines


def unparse(prog: KernelProgram) -> str:
    isa = prog.isa
    ctype = isa.ctype if isa is not None else "int32_t"
    includes = list(isa.includes) if isa is not None else ["stdint.h", "stddef.h"]
    if prog.vector:
        includes.append(isa.intrinsic_header)

    lines = _header(prog)
    lines += [f"#include <{h}>" for h in includes]
    lines += [
        "",
        f"void {prog.name}(const {ctype}* a, const {ctype}* b, {ctype}* out, size_t n4)",
        "{",
    ]
    x, y = prog.inputs
    (res,) = prog.outputs
    for v in (x, y, res):
        lines.append(f"    {_ctype(v.type)} {_name(v)};")
    for s in prog.body:
        if isinstance(s, Decl):
            lines.append(f"    {_ctype(s.var.type)} {_name(s.var)};")
    lines.append("    size_t i;")

    hoisted = [s for s in prog.body if isinstance(s, Assign) and isinstance(s.src, Const)]
    loop = [s for s in prog.body if isinstance(s, Assign) and not isinstance(s.src, Const)]
    for s in hoisted:
        if isinstance(s.dest.type, TVect):
            lines.append(f"    {_name(s.dest)} = _mm_set1_epi32((int32_t){_literal(s.src)});")
        else:
            lines.append(f"    {_name(s.dest)} = {_literal(s.src)};")

    if prog.vector:
        lines.append("    for (i = 0; i < n4; i++) {")
        lines.append("        " + isa.svload_init.format(dst=_name(x), src="a + 4 * i"))
        lines.append("        " + isa.svload_init.format(dst=_name(y), src="b + 4 * i"))
        for s in loop:
            lines.append(f"        {_name(s.dest)} = {_expr(s.src)};")
        lines.append("        " + isa.svstore_init.format(dst="out + 4 * i", src=_name(res)))
    else:
        lines.append("    for (i = 0; i < 4 * n4; i++) {")
        lines.append(f"        {_name(x)} = (uint32_t)a[i];")
        lines.append(f"        {_name(y)} = (uint32_t)b[i];")
        for s in loop:
            lines.append(f"        {_name(s.dest)} = {_expr(s.src)};")
        lines.append(f"        out[i] = ({ctype}){_name(res)};")
    lines += ["    }", "}", ""]
    return "\n".join(lines)
