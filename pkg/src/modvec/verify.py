"""Oracle campaigns: every multiplication route checked against ``(a*b) % P``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import modarith as ma
from .irgen import builtin_isa, modmul_expr, rewrite_modmul_scalar, rewrite_modmul_vec, run_kernel
from .rng import SplitMix64
from .vkernels import GatherStrategy, mont_mul_batch

EXHAUSTIVE_LIMIT = 1 << 24


@dataclass
class AlgoResult:
    name: str
    checked: int = 0
    mismatches: int = 0
    first: tuple | None = None  # (a, b, expected, got)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


@dataclass
class Report:
    P: int
    l: int
    pairs: int
    results: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    barrett_max_loops: int = 0
    barrett_max_t0: int = 0
    redc_max_t: int = 0
    fourier_t_range: tuple | None = None

    @property
    def ok(self) -> bool:
        return not self.violations and all(r.ok for r in self.results)


def exhaustive_pairs(P: int) -> tuple[np.ndarray, np.ndarray]:
    if P * P > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive mode needs P*P <= 2**24 pairs; P = {P} gives {P * P}")
    a, b = np.meshgrid(np.arange(P, dtype=np.uint32), np.arange(P, dtype=np.uint32), indexing="ij")
    return a.reshape(-1), b.reshape(-1)


def random_pairs(P: int, samples: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = SplitMix64(seed)
    return rng.below(P, samples), rng.below(P, samples)


def _compare(name: str, a, b, expected, got) -> AlgoResult:
    got = np.asarray(got, dtype=np.uint64)
    bad = np.flatnonzero(got != expected)
    res = AlgoResult(name, checked=len(expected), mismatches=int(bad.size))
    if bad.size:
        i = int(bad[0])
        res.first = (int(a[i]), int(b[i]), int(expected[i]), int(got[i]))
    return res


def _pad4(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x, np.zeros(-len(x) % 4, dtype=x.dtype)]).reshape(-1, 4)


def run_campaign(
    params: ma.ModParams,
    a: np.ndarray,
    b: np.ndarray,
    strategies=tuple(GatherStrategy),
    emulated: bool = True,
) -> Report:
    """Check every route on the pairs ``(a[i], b[i])`` and collect bound statistics.

    ``emulated`` also runs the pure-Python lane reference (slow, one register
    at a time) next to the numpy batch kernel.
    """
    P, l = params.P, params.l
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    rep = Report(P, l, len(a))
    expected = (a * b) % np.uint64(P)
    # expected product in Montgomery form, computed without REDC
    expected_bar = (expected * np.uint64(params.R % P)) % np.uint64(P)
    al, bl = a.tolist(), b.tolist()

    out = np.empty(len(a), dtype=np.uint64)
    for i, (x, y) in enumerate(zip(al, bl)):
        tr = ma.barrett_mul_trace(x, y, params)
        out[i] = tr.result
        rep.barrett_max_loops = max(rep.barrett_max_loops, tr.loops)
        rep.barrett_max_t0 = max(rep.barrett_max_t0, tr.t_initial)
    if rep.barrett_max_loops > 3:
        rep.violations.append(f"barrett loop ran {rep.barrett_max_loops} times")
    if rep.barrett_max_t0 >= 4 * P:
        rep.violations.append(f"barrett pre-loop t = {rep.barrett_max_t0} >= 4P")
    rep.results.append(_compare("barrett", a, b, expected, out))

    abar = [ma.to_mont(x, params) for x in al]
    bbar = [ma.to_mont(y, params) for y in bl]
    low_bits_bad = 0
    for i, (x, y) in enumerate(zip(abar, bbar)):
        tr = ma.redc_trace(x * y, params)
        rep.redc_max_t = max(rep.redc_max_t, tr.t_presub)
        low_bits_bad += tr.low_bits != 0
        out[i] = ma.from_mont(tr.result, params)
    if rep.redc_max_t >= 2 * P:
        rep.violations.append(f"REDC pre-subtraction t = {rep.redc_max_t} >= 2P")
    if low_bits_bad:
        rep.violations.append(f"REDC division by R inexact on {low_bits_bad} inputs")
    rep.results.append(_compare("montgomery", a, b, expected, out))

    if params.fourier is not None:
        tmin, tmax, r3_bad = 0, 0, 0
        for i, (x, y) in enumerate(zip(abar, bbar)):
            tr = ma.fourier_redc_trace(x, y, params)
            tmin, tmax = min(tmin, tr.t_signed), max(tmax, tr.t_signed)
            r3_bad += tr.r3 != 0
            out[i] = ma.from_mont(tr.result, params)
        rep.fourier_t_range = (tmin, tmax)
        if tmin < -(P - 1) or tmax > 2 * (P - 1):
            rep.violations.append(f"Fourier t range {rep.fourier_t_range} leaves [-(P-1), 2(P-1)]")
        if r3_bad:
            rep.violations.append(f"Fourier r3 nonzero on {r3_bad} inputs")
        rep.results.append(_compare("fourier", a, b, expected, out))

    abar_np = np.array(abar, dtype=np.uint32)
    bbar_np = np.array(bbar, dtype=np.uint32)
    # zero-pad so every pair goes through the 4-lane kernel, none through the scalar tail
    A, B = _pad4(abar_np), _pad4(bbar_np)
    n = len(a)
    sse, avx2 = builtin_isa("sse4x32m"), builtin_isa("avx2x32m")
    for s in strategies:
        got = mont_mul_batch(A.reshape(-1), B.reshape(-1), params, s, backend="numpy")[:n]
        rep.results.append(_compare(f"vector4/{s.value}", a, b, expected_bar, got))
        if emulated:
            got = mont_mul_batch(A.reshape(-1), B.reshape(-1), params, s, backend="emulated")[:n]
            rep.results.append(_compare(f"vector4-emulated/{s.value}", a, b, expected_bar, got))

    sprog = rewrite_modmul_scalar(modmul_expr(vector=False), params)
    rep.results.append(_compare("generated-scalar", a, b, expected_bar, run_kernel(sprog, abar_np, bbar_np)))
    for s in strategies:
        isa = avx2 if s.needs_blend else sse
        prog = rewrite_modmul_vec(modmul_expr(), isa, params, s)
        got = run_kernel(prog, A, B).reshape(-1)[:n]
        rep.results.append(_compare(f"generated-vector/{s.value}", a, b, expected_bar, got))
    return rep


def format_report(rep: Report) -> list[str]:
    lines = [f"P = {rep.P}, l = {rep.l}, {rep.pairs} pairs"]
    for r in rep.results:
        status = "PASS" if r.ok else "FAIL"
        line = f"  {status} {r.name:<32} {r.checked} checked, {r.mismatches} mismatches"
        if r.first is not None:
            a, b, e, g = r.first
            line += f"; first: a={a} b={b} expected={e} got={g}"
        lines.append(line)
    lines.append(f"  barrett max loop iterations: {rep.barrett_max_loops} (pre-loop t max {rep.barrett_max_t0} vs 4P = {4 * rep.P})")
    lines.append(f"  montgomery max pre-subtraction t: {rep.redc_max_t} (2P = {2 * rep.P})")
    if rep.fourier_t_range is not None:
        lo, hi = rep.fourier_t_range
        lines.append(f"  fourier signed t observed in [{lo}, {hi}] (bound [{-(rep.P - 1)}, {2 * (rep.P - 1)}])")
    else:
        lines.append("  fourier: skipped (no usable c*2^n+1 form)")
    for v in rep.violations:
        lines.append(f"  BOUND VIOLATION: {v}")
    lines.append("verdict: " + ("PASS" if rep.ok else "FAIL"))
    return lines
