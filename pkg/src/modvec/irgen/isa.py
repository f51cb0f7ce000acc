"""Target descriptions: lane count, element type, emission hooks, instruction costs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..vkernels import GatherStrategy
from .ir import VECTOR_MNEMONICS
from .types import TModInt, TVect, IrType


class IsaConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CostEntry:
    mnemonic: str
    latency: float
    throughput: float
    arch: str = ""

    @property
    def issue_cost(self) -> float:
        """Cost charged per use: the reciprocal of ``throughput``."""
        return 1.0 / self.throughput


@dataclass(frozen=True)
class IsaDescriptor:
    name: str
    info: str
    v: int
    t: IrType
    ctype: str
    includes: tuple
    has_blend: bool
    cost_table: tuple
    svload_init: str
    svstore_init: str

    def __post_init__(self):
        if not isinstance(self.v, int) or isinstance(self.v, bool) or self.v < 2:
            raise IsaConfigError(f"{self.name}: v must be an integer >= 2, got {self.v!r}")
        if self.t != TVect(TModInt, self.v):
            raise IsaConfigError(f"{self.name}: t must be TVect(TModInt, {self.v}), got {self.t}")
        names = [c.mnemonic for c in self.cost_table]
        if len(set(names)) != len(names):
            raise IsaConfigError(f"{self.name}: duplicate cost_table mnemonics")
        for c in self.cost_table:
            if not c.throughput > 0:
                raise IsaConfigError(f"{self.name}: throughput of {c.mnemonic} must be positive")
        missing = sorted(self.required_mnemonics() - set(names))
        if missing:
            raise IsaConfigError(f"{self.name}: cost_table lacks entries for {', '.join(missing)}")

    def required_mnemonics(self) -> set:
        need = set(VECTOR_MNEMONICS)
        if not self.has_blend:
            need.discard("blend_epi32")
        return need

    def cost(self, mnemonic: str) -> CostEntry | None:
        for c in self.cost_table:
            if c.mnemonic == mnemonic:
                return c
        return None

    @property
    def intrinsic_header(self) -> str:
        return "immintrin.h" if self.has_blend else "smmintrin.h"

    @property
    def compile_flags(self) -> tuple:
        return ("-mavx2",) if self.has_blend else ("-msse4.1",)


_KEYS = {"name", "info", "v", "element_type", "ctype", "includes", "has_blend", "cost_table", "svload_init", "svstore_init"}
_COST_KEYS = {"mnemonic", "latency", "throughput", "arch"}
_ELEMENT_TYPES = {"TModInt": TModInt}


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise IsaConfigError(msg)


def load_isa(config_text: str) -> IsaDescriptor:
    """Parse a JSON ISA description."""
    try:
        raw = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise IsaConfigError(f"ISA config is not valid JSON: {exc}") from None
    _need(isinstance(raw, dict), "ISA config must be a JSON object")
    unknown = set(raw) - _KEYS
    _need(not unknown, f"unknown ISA config keys: {', '.join(sorted(unknown))}")
    missing = _KEYS - set(raw)
    _need(not missing, f"missing ISA config keys: {', '.join(sorted(missing))}")

    for key in ("name", "info", "ctype", "svload_init", "svstore_init"):
        _need(isinstance(raw[key], str), f"{key} must be a string")
    _need(isinstance(raw["v"], int) and not isinstance(raw["v"], bool), "v must be an integer")
    _need(raw["element_type"] in _ELEMENT_TYPES, f"element_type must be one of {sorted(_ELEMENT_TYPES)}")
    _need(isinstance(raw["has_blend"], bool), "has_blend must be a boolean")
    _need(
        isinstance(raw["includes"], list) and all(isinstance(x, str) for x in raw["includes"]),
        "includes must be an array of strings",
    )
    _need(isinstance(raw["cost_table"], list), "cost_table must be an array")
    costs = []
    for entry in raw["cost_table"]:
        _need(isinstance(entry, dict) and set(entry) == _COST_KEYS, f"cost_table entries need exactly the keys {sorted(_COST_KEYS)}")
        _need(isinstance(entry["mnemonic"], str) and isinstance(entry["arch"], str), "mnemonic and arch must be strings")
        for key in ("latency", "throughput"):
            _need(isinstance(entry[key], (int, float)) and not isinstance(entry[key], bool), f"{key} must be a number")
        costs.append(CostEntry(entry["mnemonic"], entry["latency"], entry["throughput"], entry["arch"]))

    return IsaDescriptor(
        name=raw["name"],
        info=raw["info"],
        v=raw["v"],
        t=TVect(_ELEMENT_TYPES[raw["element_type"]], raw["v"]) if raw["v"] >= 2 else None,
        ctype=raw["ctype"],
        includes=tuple(raw["includes"]),
        has_blend=raw["has_blend"],
        cost_table=tuple(costs),
        svload_init=raw["svload_init"],
        svstore_init=raw["svstore_init"],
    )


def serialize_isa(isa: IsaDescriptor) -> str:
    doc = {
        "name": isa.name,
        "info": isa.info,
        "v": isa.v,
        "element_type": isa.t.base.name,
        "ctype": isa.ctype,
        "includes": list(isa.includes),
        "has_blend": isa.has_blend,
        "cost_table": [
            {"mnemonic": c.mnemonic, "latency": c.latency, "throughput": c.throughput, "arch": c.arch}
            for c in isa.cost_table
        ],
        "svload_init": isa.svload_init,
        "svstore_init": isa.svstore_init,
    }
    return json.dumps(doc, indent=2) + "\n"


BUILTIN_ISAS = ("sse4x32m", "avx2x32m")


def builtin_isa(name: str) -> IsaDescriptor:
    if name not in BUILTIN_ISAS:
        raise IsaConfigError(f"no built-in ISA named {name!r}; available: {', '.join(BUILTIN_ISAS)}")
    text = resources.files("modvec.irgen").joinpath("isas", f"{name}.json").read_text(encoding="utf-8")
    return load_isa(text)


def get_isa(name_or_path: str) -> IsaDescriptor:
    """A built-in descriptor by name, otherwise a JSON file path."""
    if name_or_path in BUILTIN_ISAS:
        return builtin_isa(name_or_path)
    path = Path(name_or_path)
    if not path.is_file():
        raise IsaConfigError(f"{name_or_path!r} is neither a built-in ISA nor a readable file")
    return load_isa(path.read_text(encoding="utf-8"))


# Gather instruction sequences, in issue order.
GATHER_SEQUENCES = {
    GatherStrategy.FLOAT_SHUFFLE_CAST: ("shuffle_ps", "shuffle_ps", "shuffle_epi32", "shuffle_epi32"),
    GatherStrategy.SHUFFLE_UNPACK: ("shuffle_epi32", "shuffle_epi32", "unpacklo_epi32", "unpackhi_epi32"),
    GatherStrategy.BLEND_AVX2: ("shuffle_epi32", "blend_epi32", "blend_epi32", "shuffle_epi32"),
}


def gather_cost(cost_table, strategy: GatherStrategy) -> float:
    """Summed reciprocal throughput of one gather; unknown mnemonics cost 1."""
    table = {c.mnemonic: c for c in cost_table}
    return sum(table[m].issue_cost if m in table else 1.0 for m in GATHER_SEQUENCES[strategy])


def strategy_costs(cost_table, has_blend: bool) -> dict:
    return {
        s: gather_cost(cost_table, s)
        for s in GatherStrategy
        if has_blend or not s.needs_blend
    }


def select_strategy(isa: IsaDescriptor) -> GatherStrategy:
    costs = strategy_costs(isa.cost_table, isa.has_blend)
    # min() keeps the first of equal keys, i.e. enumeration order breaks ties
    return min(costs, key=costs.__getitem__)
