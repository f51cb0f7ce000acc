"""Compile C kernels with the host toolchain and call them through ctypes.

Everything here is optional: callers check :func:`compiler` (and
:func:`host_supports` for SIMD kernels) and fall back to numpy otherwise.
"""

from __future__ import annotations

import ctypes
import hashlib
import os
import platform
import shutil
import subprocess
import tempfile
from functools import lru_cache
from pathlib import Path

import numpy as np

from .modarith import ModParams

ALIGN = 64


class NativeBuildError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def compiler() -> str | None:
    for cand in (os.environ.get("CC"), "cc", "gcc", "clang"):
        if cand and shutil.which(cand):
            return shutil.which(cand)
    return None


@lru_cache(maxsize=None)
def _cpu_flags() -> frozenset:
    try:
        text = Path("/proc/cpuinfo").read_text()
    except OSError:
        return frozenset()
    for line in text.splitlines():
        if line.startswith("flags"):
            return frozenset(line.split(":", 1)[1].split())
    return frozenset()


def host_supports(isa) -> bool:
    """True if kernels for ``isa`` can be compiled and run on this machine."""
    if compiler() is None or platform.machine().lower() not in {"x86_64", "amd64"}:
        return False
    need = {"avx2"} if isa.has_blend else {"sse4_1"}
    return need <= _cpu_flags()


def _cache_dir() -> Path:
    d = Path(os.environ.get("MODVEC_CACHE", Path(tempfile.gettempdir()) / "modvec-native"))
    d.mkdir(parents=True, exist_ok=True)
    return d


def build_shared(source: str, flags=()) -> ctypes.CDLL:
    cc = compiler()
    if cc is None:
        raise NativeBuildError("no C compiler found (set CC)")
    args = ["-O2", "-std=c99", "-shared", "-fPIC", *flags]
    key = hashlib.sha256((source + "\0" + " ".join(args)).encode()).hexdigest()[:20]
    lib = _cache_dir() / f"k{key}.so"
    if not lib.exists():
        src = lib.with_suffix(".c")
        src.write_text(source)
        tmp = lib.with_suffix(f".{os.getpid()}.tmp")
        proc = subprocess.run([cc, *args, "-o", str(tmp), str(src)], capture_output=True, text=True)
        if proc.returncode != 0:
            raise NativeBuildError(f"compilation failed:\n{proc.stderr}")
        os.replace(tmp, lib)
    return ctypes.CDLL(str(lib))


def aligned_u32(values) -> np.ndarray:
    """Copy ``values`` into a fresh uint32 array aligned to ``ALIGN`` bytes."""
    values = np.asarray(values)
    n = values.size
    raw = np.empty(n + ALIGN // 4, dtype=np.uint32)
    off = (-raw.ctypes.data % ALIGN) // 4
    out = raw[off : off + n]
    out[:] = values.reshape(-1)
    return out


def _ptr(arr: np.ndarray):
    return arr.ctypes.data_as(ctypes.c_void_p)


class GroupKernel:
    """``void f(const int32_t* a, const int32_t* b, int32_t* out, size_t n4)``."""

    def __init__(self, source: str, symbol: str, flags=()):
        fn = getattr(build_shared(source, flags), symbol)
        fn.argtypes = [ctypes.c_void_p, ctypes.c_void_p, ctypes.c_void_p, ctypes.c_size_t]
        fn.restype = None
        self._fn = fn

    def prepare(self, a, b):
        a, b = aligned_u32(a), aligned_u32(b)
        if a.size != b.size or a.size % 4:
            raise ValueError("operands must have equal length, a multiple of 4")
        out = aligned_u32(np.zeros(a.size, dtype=np.uint32))
        return a, b, out

    def run_prepared(self, a, b, out) -> None:
        self._fn(_ptr(a), _ptr(b), _ptr(out), ctypes.c_size_t(a.size // 4))

    def __call__(self, a, b) -> np.ndarray:
        a, b, out = self.prepare(a, b)
        self.run_prepared(a, b, out)
        return out


def compile_program(prog) -> GroupKernel:
    from .irgen import unparse

    flags = prog.isa.compile_flags if prog.vector else ()
    return GroupKernel(unparse(prog), prog.name, flags)


# Reference scalar kernels for the benchmark; Montgomery comes from the generator.
_REFERENCE_C = r"""
#include <stdint.h>
#include <stddef.h>

void ref_naive(const uint32_t* a, const uint32_t* b, uint32_t* out, size_t n, uint32_t P)
{
    size_t i;
    for (i = 0; i < n; i++)
        out[i] = (uint32_t)(((uint64_t)a[i] * b[i]) % P);
}

void ref_barrett(const uint32_t* a, const uint32_t* b, uint32_t* out, size_t n,
                 uint32_t P, uint32_t k, uint64_t Pb)
{
    size_t i;
    for (i = 0; i < n; i++) {
        uint64_t ab = (uint64_t)a[i] * b[i];
        uint64_t q = ((ab >> k) * Pb) >> k;
        uint64_t t = ab - q * P;
        while (t >= P)
            t -= P;
        out[i] = (uint32_t)t;
    }
}

void ref_fourier(const uint32_t* a, const uint32_t* b, uint32_t* out, size_t n,
                 uint32_t P, uint32_t c, uint32_t e, uint32_t l)
{
    size_t i;
    uint64_t mask = (l == 32) ? 0xFFFFFFFFull : ((1ull << l) - 1);
    for (i = 0; i < n; i++) {
        uint64_t T = (uint64_t)a[i] * b[i];
        uint64_t u = ((uint64_t)c * (T & mask)) << e;
        uint64_t v = ((uint64_t)c * (u & mask)) << e;
        int64_t t = (int64_t)(T >> l) - (int64_t)(u >> l) + (int64_t)(v >> l);
        t += (t >> 63) & P;
        t -= P;
        t += (t >> 63) & P;
        out[i] = (uint32_t)t;
    }
}
"""


class ReferenceKernels:
    def __init__(self, params: ModParams):
        lib = build_shared(_REFERENCE_C)
        self.params = params
        v, sz, u32, u64 = ctypes.c_void_p, ctypes.c_size_t, ctypes.c_uint32, ctypes.c_uint64
        lib.ref_naive.argtypes = [v, v, v, sz, u32]
        lib.ref_barrett.argtypes = [v, v, v, sz, u32, u32, u64]
        lib.ref_fourier.argtypes = [v, v, v, sz, u32, u32, u32, u32]
        self.lib = lib

    def call(self, name: str, a, b, out) -> None:
        p = self.params
        args = (_ptr(a), _ptr(b), _ptr(out), ctypes.c_size_t(a.size))
        if name == "naive":
            self.lib.ref_naive(*args, p.P)
        elif name == "barrett":
            self.lib.ref_barrett(*args, p.P, p.k_barrett, p.Pprime_barrett)
        elif name == "fourier":
            c, e = p.fourier
            self.lib.ref_fourier(*args, p.P, c, e, p.l)
        else:
            raise ValueError(name)
