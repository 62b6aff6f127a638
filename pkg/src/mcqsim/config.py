"""Architecture and physical-parameter files.

Both files are ``key = value`` text with ``#`` comments. Durations are in
nanoseconds and rates in bits per second throughout the package.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property


class ConfigError(ValueError):
    pass


class TeleportationType(str, Enum):
    ALL_TO_ALL = "all_to_all"
    SPLIT = "split"


class DstSelectionMode(str, Enum):
    LOAD_AWARE = "load_aware"
    LOAD_INDEPENDENT = "load_independent"


def clog2(n: int) -> int:
    """Bits needed to address ``n`` items, i.e. ceil(lg2 n); 0 for n == 1."""
    if n < 1:
        raise ValueError(f"clog2 of {n}")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class ArchitectureConfig:
    mesh_x: int
    mesh_y: int
    link_width: int
    qubits_per_core: int
    ltm_ports: int
    wireless_enabled: bool
    radio_channels: int = 1
    teleportation_type: TeleportationType = TeleportationType.ALL_TO_ALL
    dst_selection_mode: DstSelectionMode = DstSelectionMode.LOAD_AWARE

    def __post_init__(self):
        object.__setattr__(self, "teleportation_type", TeleportationType(self.teleportation_type))
        object.__setattr__(self, "dst_selection_mode", DstSelectionMode(self.dst_selection_mode))
        for name in ("mesh_x", "mesh_y", "link_width", "qubits_per_core", "ltm_ports"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.wireless_enabled and self.radio_channels < 1:
            raise ConfigError("radio_channels must be >= 1 when wireless_enabled")

    @property
    def num_cores(self) -> int:
        return self.mesh_x * self.mesh_y

    @property
    def total_qubits(self) -> int:
        return self.num_cores * self.qubits_per_core

    @cached_property
    def geometry(self) -> SystemGeometry:
        return SystemGeometry(self.mesh_x, self.mesh_y)

    def replace(self, **changes) -> ArchitectureConfig:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class PhysicalParams:
    # Defaults follow the experimental setup values; gate delays have no
    # published values and are placeholders.
    gate_delays: dict = field(default_factory=lambda: {"default_1q": 50.0, "default_2q": 200.0})
    epr_delay: float = 1000.0
    dist_delay: float = 0.01
    pre_delay: float = 390.0
    post_delay: float = 30.0
    noc_clock_time: float = 1.0
    wbit_rate: float = 12e9
    token_pass_time: float = 5.0
    memory_bandwidth: float = 128e9
    bits_instruction: int = 4
    decode_d1: float = 0.0
    decode_d2: float = 10.0
    t1: float | None = None
    t2: float | None = None
    epr_parallel: bool = True
    max_bundle_instructions: int = 16

    def __post_init__(self):
        for name in ("epr_delay", "dist_delay", "pre_delay", "post_delay", "token_pass_time",
                     "decode_d1", "decode_d2"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        for name in ("noc_clock_time", "wbit_rate", "memory_bandwidth"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be > 0")
        if self.bits_instruction < 1:
            raise ConfigError("bits_instruction must be >= 1")
        if self.max_bundle_instructions < 2:
            raise ConfigError("max_bundle_instructions must be >= 2 (a teleport needs TPS and TPD)")
        for name in ("t1", "t2"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ConfigError(f"{name} must be > 0")
        for k, v in self.gate_delays.items():
            if v < 0:
                raise ConfigError(f"gate delay for {k} must be >= 0")

    @property
    def coherence_enabled(self) -> bool:
        return self.t1 is not None and self.t2 is not None

    def gate_delay(self, name, arity) -> float:
        if name is not None and name in self.gate_delays:
            return self.gate_delays[name]
        key = f"default_{arity}q"
        try:
            return self.gate_delays[key]
        except KeyError:
            raise ConfigError(f"no delay for gate {name!r} and no {key} fallback") from None

    def replace(self, **changes) -> PhysicalParams:
        return dataclasses.replace(self, **changes)


class SystemGeometry:
    """Row-major mesh coordinates; core i sits at (i % mesh_x, i // mesh_x).

    The dispatcher is node index ``num_cores`` and attaches to the router at
    (0, 0).
    """

    def __init__(self, mesh_x: int, mesh_y: int):
        self.mesh_x = mesh_x
        self.mesh_y = mesh_y
        self.num_cores = mesh_x * mesh_y
        self.dispatcher = self.num_cores
        self._coords = [(i % mesh_x, i // mesh_x) for i in range(self.num_cores)]
        self._coords.append((0, 0))

    def coords(self, node: int) -> tuple[int, int]:
        return self._coords[node]

    def index(self, x: int, y: int) -> int:
        if not (0 <= x < self.mesh_x and 0 <= y < self.mesh_y):
            raise ValueError(f"({x}, {y}) outside {self.mesh_x}x{self.mesh_y} mesh")
        return y * self.mesh_x + x

    def hops(self, src: int, dst: int) -> int:
        x1, y1 = self._coords[src]
        x2, y2 = self._coords[dst]
        return abs(x1 - x2) + abs(y1 - y2)

    def xy_path(self, src: int, dst: int) -> list[int]:
        """Cores visited from src to dst, X first then Y, both ends included."""
        x, y = self._coords[src]
        x2, y2 = self._coords[dst]
        path = [self.index(x, y)]
        while x != x2:
            x += 1 if x2 > x else -1
            path.append(self.index(x, y))
        while y != y2:
            y += 1 if y2 > y else -1
            path.append(self.index(x, y))
        return path


_ARCH_INT = ("mesh_x", "mesh_y", "link_width", "qubits_per_core", "ltm_ports", "radio_channels")
_ARCH_MANDATORY = ("mesh_x", "mesh_y", "link_width", "qubits_per_core", "ltm_ports", "wireless_enabled")
_PARAM_FLOAT = ("epr_delay", "dist_delay", "pre_delay", "post_delay", "noc_clock_time", "wbit_rate",
                "token_pass_time", "memory_bandwidth", "decode_d1", "decode_d2", "t1", "t2")
_PARAM_INT = ("bits_instruction", "max_bundle_instructions")
_PARAM_ALIASES = {"decode_time": "decode_d2"}

ARCH_KEYS = frozenset(f.name for f in dataclasses.fields(ArchitectureConfig))
PARAM_KEYS = frozenset(f.name for f in dataclasses.fields(PhysicalParams)) | frozenset(_PARAM_ALIASES)


def _pairs(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, value = line.split("=", 1)
        yield lineno, key.strip(), value.strip()


def _to_bool(value):
    v = str(value).strip().lower()
    if v in ("true", "1", "yes", "on"):
        return True
    if v in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def _to_int(value):
    try:
        f = float(value)
    except ValueError:
        raise ConfigError(f"not a number: {value!r}") from None
    if f != int(f):
        raise ConfigError(f"not an integer: {value!r}")
    return int(f)


def _to_float(value):
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"not a number: {value!r}") from None


def _parse_gate_delays(value):
    delays = {}
    for item in str(value).split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise ConfigError(f"gate delay entry must be name:value, got {item!r}")
        name, d = item.split(":", 1)
        delays[name.strip()] = _to_float(d.strip())
    return delays


def coerce_arch_value(key, value):
    if key in _ARCH_INT:
        return _to_int(value)
    if key == "wireless_enabled":
        return _to_bool(value)
    if key == "teleportation_type":
        try:
            return TeleportationType(str(value).strip())
        except ValueError:
            raise ConfigError(f"bad teleportation_type {value!r}") from None
    if key == "dst_selection_mode":
        try:
            return DstSelectionMode(str(value).strip())
        except ValueError:
            raise ConfigError(f"bad dst_selection_mode {value!r}") from None
    raise ConfigError(f"unknown architecture key {key!r}")


def coerce_param_value(key, value):
    key = _PARAM_ALIASES.get(key, key)
    if key in _PARAM_FLOAT:
        return key, _to_float(value)
    if key in _PARAM_INT:
        return key, _to_int(value)
    if key == "epr_parallel":
        return key, _to_bool(value)
    if key == "gate_delays":
        return key, value if isinstance(value, dict) else _parse_gate_delays(value)
    raise ConfigError(f"unknown parameter key {key!r}")


def parse_architecture(text: str) -> ArchitectureConfig:
    values = {}
    for lineno, key, value in _pairs(text):
        if key not in ARCH_KEYS:
            raise ConfigError(f"line {lineno}: unknown architecture key {key!r}")
        values[key] = coerce_arch_value(key, value)
    missing = [k for k in _ARCH_MANDATORY if k not in values]
    if missing:
        raise ConfigError(f"missing mandatory architecture keys: {', '.join(missing)}")
    return ArchitectureConfig(**values)


def parse_parameters(text: str) -> PhysicalParams:
    values = {}
    for lineno, key, value in _pairs(text):
        try:
            k, v = coerce_param_value(key, value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
        values[k] = v
    return PhysicalParams(**values)


def load_architecture(path) -> ArchitectureConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_architecture(fh.read())


def load_parameters(path) -> PhysicalParams:
    with open(path, encoding="utf-8") as fh:
        return parse_parameters(fh.read())


def render_architecture(arch: ArchitectureConfig) -> str:
    lines = []
    for f in dataclasses.fields(arch):
        v = getattr(arch, f.name)
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, Enum):
            v = v.value
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"


def render_parameters(params: PhysicalParams) -> str:
    lines = []
    for f in dataclasses.fields(params):
        v = getattr(params, f.name)
        if v is None:
            continue
        if f.name == "gate_delays":
            v = ", ".join(f"{k}:{d!r}" for k, d in v.items())
        elif isinstance(v, bool):
            v = str(v).lower()
        else:
            v = repr(v)
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"


def apply_overrides(arch: ArchitectureConfig, params: PhysicalParams, overrides):
    """Apply ``(key, value)`` pairs to whichever record owns each key."""
    arch_changes, param_changes = {}, {}
    for key, value in overrides:
        if key in ARCH_KEYS:
            arch_changes[key] = coerce_arch_value(key, value)
        elif key in PARAM_KEYS:
            k, v = coerce_param_value(key, value)
            param_changes[k] = v
        else:
            raise ConfigError(f"unknown configuration key {key!r}")
    if arch_changes:
        arch = arch.replace(**arch_changes)
    if param_changes:
        params = params.replace(**param_changes)
    return arch, params
