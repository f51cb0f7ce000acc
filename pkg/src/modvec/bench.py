"""Micro-benchmarks over identical pseudo-random batches.

Compiled kernels are timed when a C compiler is available (the Montgomery
and vector4 rows run the generator's own emitted C); otherwise numpy
implementations of the same algorithms stand in.  Every kernel's output is
checked against ``(a*b) % P`` before any timing is taken.
"""

from __future__ import annotations

import logging
import statistics
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import native
from .irgen import builtin_isa, modmul_expr, rewrite_modmul_scalar, rewrite_modmul_vec
from .modarith import ModParams
from .rng import SplitMix64
from .vkernels import GatherStrategy, mont_mul4_array

log = logging.getLogger(__name__)

ALGORITHMS = ("naive", "barrett", "montgomery", "fourier", "vector4")
CSV_HEADER = "prime,algorithm,strategy,ops,nanos,mops"


class CrossCheckError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    prime: int
    algorithm: str
    strategy: GatherStrategy | None
    ops_count: int
    wall_nanos: int
    throughput_mops: float

    def csv_row(self) -> str:
        s = self.strategy.value if self.strategy else ""
        return f"{self.prime},{self.algorithm},{s},{self.ops_count},{self.wall_nanos},{self.throughput_mops:.3f}"


@dataclass
class _Case:
    algorithm: str
    strategy: GatherStrategy | None
    run: Callable[[], np.ndarray]
    expected: np.ndarray


def _numpy_kernels(params: ModParams):
    P64 = np.uint64(params.P)
    l = np.uint64(params.l)
    mask = np.uint64(params.R - 1)

    def naive(a, b):
        return (a * b) % P64

    def barrett(a, b):
        k = np.uint64(params.k_barrett)
        ab = a * b
        t = ab - (((ab >> k) * np.uint64(params.Pprime_barrett)) >> k) * P64
        for _ in range(3):
            t = np.where(t >= P64, t - P64, t)
        return t

    def montgomery(a, b):
        T = a * b
        m = ((T & mask) * np.uint64(params.Pprime)) & mask
        t = (T + m * P64) >> l
        return np.where(t >= P64, t - P64, t)

    def fourier(a, b):
        c, n = params.fourier
        T = a * b
        u = ((T & mask) * np.uint64(c)) << np.uint64(n)
        v = ((u & mask) * np.uint64(c)) << np.uint64(n)
        t = (T >> l).astype(np.int64) - (u >> l).astype(np.int64) + (v >> l).astype(np.int64)
        P = np.int64(params.P)
        t += (t >> 63) & P
        t -= P
        t += (t >> 63) & P
        return t

    return {"naive": naive, "barrett": barrett, "montgomery": montgomery, "fourier": fourier}


def _strategies_for(requested, backend: str):
    sse, avx2 = builtin_isa("sse4x32m"), builtin_isa("avx2x32m")
    out = []
    for s in requested:
        isa = avx2 if s.needs_blend else sse
        if backend == "native" and not native.host_supports(isa):
            log.info("skipping %s: host cannot run %s kernels", s.value, isa.name)
            continue
        out.append((s, isa))
    return out


def _build_cases(params, algorithms, strategies, a, b, backend) -> list[_Case]:
    P = params.P
    a64, b64 = a.astype(np.uint64), b.astype(np.uint64)
    plain = (a64 * b64) % np.uint64(P)
    R = np.uint64(params.R % P)
    # Montgomery-form inputs and expected outputs, computed without REDC
    abar = ((a64 * R) % np.uint64(P)).astype(np.uint32)
    bbar = ((b64 * R) % np.uint64(P)).astype(np.uint32)
    want_bar = (plain * R) % np.uint64(P)

    cases = []
    if backend == "native":
        ref = native.ReferenceKernels(params)
        A, B = native.aligned_u32(a), native.aligned_u32(b)
        Abar, Bbar = native.aligned_u32(abar), native.aligned_u32(bbar)
        for alg in algorithms:
            if alg in ("naive", "barrett", "fourier"):
                out = native.aligned_u32(np.zeros(len(a), dtype=np.uint32))
                x, y, want = (Abar, Bbar, want_bar) if alg == "fourier" else (A, B, plain)
                cases.append(_Case(alg, None, lambda alg=alg, x=x, y=y, out=out: (ref.call(alg, x, y, out), out)[1], want))
            elif alg == "montgomery":
                k = native.compile_program(rewrite_modmul_scalar(modmul_expr(False), params))
                xa, xb, out = k.prepare(abar, bbar)
                cases.append(_Case(alg, None, lambda k=k, xa=xa, xb=xb, out=out: (k.run_prepared(xa, xb, out), out)[1], want_bar))
            elif alg == "vector4":
                for s, isa in strategies:
                    k = native.compile_program(rewrite_modmul_vec(modmul_expr(), isa, params, s))
                    xa, xb, out = k.prepare(abar, bbar)
                    cases.append(_Case(alg, s, lambda k=k, xa=xa, xb=xb, out=out: (k.run_prepared(xa, xb, out), out)[1], want_bar))
    else:
        kern = _numpy_kernels(params)
        A4, B4 = abar.reshape(-1, 4), bbar.reshape(-1, 4)
        ab64, bb64 = abar.astype(np.uint64), bbar.astype(np.uint64)
        for alg in algorithms:
            if alg in ("naive", "barrett"):
                cases.append(_Case(alg, None, lambda f=kern[alg]: f(a64, b64), plain))
            elif alg in ("montgomery", "fourier"):
                cases.append(_Case(alg, None, lambda f=kern[alg]: f(ab64, bb64), want_bar))
            elif alg == "vector4":
                for s, isa in strategies:
                    cases.append(_Case(alg, s, lambda s=s: mont_mul4_array(A4, B4, params, s), want_bar))
    return cases


def run_bench(
    params: ModParams,
    algorithms=ALGORITHMS,
    batch: int = 65536,
    reps: int = 100,
    seed: int = 0,
    strategies=tuple(GatherStrategy),
    backend: str = "auto",
) -> list[BenchRecord]:
    """Time each algorithm; raises :class:`CrossCheckError` on a wrong answer."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if batch < 4:
        raise ValueError("batch must be at least 4")
    unknown = set(algorithms) - set(ALGORITHMS)
    if unknown:
        raise ValueError(f"unknown algorithms: {', '.join(sorted(unknown))}")
    if backend == "auto":
        backend = "native" if native.compiler() else "numpy"
    algorithms = [x for x in algorithms if x != "fourier" or params.fourier is not None]
    n = batch - batch % 4
    rng = SplitMix64(seed)
    a, b = rng.below(params.P, n), rng.below(params.P, n)

    cases = _build_cases(params, algorithms, _strategies_for(strategies, backend), a, b, backend)
    for case in cases:
        got = np.asarray(case.run()).astype(np.uint64).reshape(-1)
        bad = np.flatnonzero(got != case.expected)
        if bad.size:
            i = int(bad[0])
            raise CrossCheckError(
                f"{case.algorithm}{'/' + case.strategy.value if case.strategy else ''} disagrees with the naive oracle "
                f"at index {i}: a={int(a[i])} b={int(b[i])} expected={int(case.expected[i])} got={int(got[i])}"
            )

    records = []
    for case in cases:
        case.run()  # warm-up
        times = []
        for _ in range(reps):
            t0 = time.perf_counter_ns()
            case.run()
            times.append(time.perf_counter_ns() - t0)
        nanos = max(1, int(statistics.median(times)))
        records.append(BenchRecord(params.P, case.algorithm, case.strategy, n, nanos, n / (nanos / 1000)))
    return records


def speedups(records) -> list[tuple[GatherStrategy, float]]:
    """vector4 throughput relative to scalar Montgomery, per strategy."""
    base = next((r for r in records if r.algorithm == "montgomery"), None)
    if base is None:
        return []
    return [(r.strategy, r.throughput_mops / base.throughput_mops) for r in records if r.algorithm == "vector4"]


def to_csv(records) -> str:
    lines = [CSV_HEADER] + [r.csv_row() for r in records]
    lines += [f"# ratio,vector4/montgomery,{s.value},{x:.3f}" for s, x in speedups(records)]
    return "\n".join(lines) + "\n"
