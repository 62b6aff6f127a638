"""Bundle construction and the bundle-by-bundle execution time model.

A slice becomes zero or more remote bundles (one per teleport round, each
holding only TPS/TPD pairs) followed by local bundles holding the slice's
gates. Bundles run strictly one after another: the control unit waits for
every completion message before fetching the next bundle.

Local bundle time::

    fetch + decode + dispatch + max(gate delays) + ack

Remote bundle time::

    fetch + decode + max(dispatch, epr_gen + epr_dist) + pre + classical + post + ack
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import NamedTuple

import numpy as np

from .circuit import Circuit, Slice
from .config import ArchitectureConfig, PhysicalParams, clog2
from .interconnect import CommEvent, Interconnect
from .placement import Placement, PlacementError, vanilla_map
from .teleport import TeleportRound, epr_dist_time, epr_gen_time, plan_teleports

GATE, TPS, TPD = "gate", "tps", "tpd"
LOCAL, REMOTE = "local", "remote"


class Instruction(NamedTuple):
    kind: str
    core: int
    operands: tuple[int, ...]  # local addresses
    name: str | None = None
    abs_dst: int | None = None  # TPS only: absolute address of the destination qubit

    def __str__(self):
        if self.kind == TPS:
            return f"TPS({self.operands[0]},{self.abs_dst}')@{self.core}"
        if self.kind == TPD:
            return f"TPD({self.operands[0]})@{self.core}"
        return f"{self.name or 'G'}({','.join(map(str, self.operands))})@{self.core}"


@dataclass
class Bundle:
    instructions: list[Instruction]
    kind: str = LOCAL
    round: TeleportRound | None = None
    gates: list = field(default_factory=list)  # circuit gates carried by a local bundle

    def __len__(self):
        return len(self.instructions)

    def __str__(self):
        return "<" + " | ".join(map(str, self.instructions)) + ">"


@dataclass(slots=True)
class TimeBreakdown:
    fetch: float = 0.0
    decode: float = 0.0
    dispatch: float = 0.0
    epr_gen: float = 0.0
    epr_dist: float = 0.0
    pre_proc: float = 0.0
    classical_transfer: float = 0.0
    post_proc: float = 0.0
    gate_exec: float = 0.0
    ack: float = 0.0
    overlap: float = 0.0  # hidden part of the shorter branch of max(dispatch, EPR)

    BUCKETS = ("fetch", "decode", "dispatch", "epr_gen", "epr_dist", "pre_proc",
               "classical_transfer", "post_proc", "gate_exec", "ack")

    @property
    def total(self) -> float:
        return (self.fetch + self.decode + self.dispatch + self.epr_gen + self.epr_dist + self.pre_proc
                + self.classical_transfer + self.post_proc + self.gate_exec + self.ack - self.overlap)

    @property
    def hidden_dispatch(self) -> float:
        """Dispatch time fully covered by EPR generation and distribution."""
        if self.overlap and self.dispatch <= self.epr_gen + self.epr_dist:
            return self.dispatch
        return 0.0

    def __add__(self, other):
        return TimeBreakdown(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class BundleRecord:
    index: int
    kind: str
    start: float
    end: float
    breakdown: TimeBreakdown
    num_instructions: int
    size_bits: int
    classical_bits: int
    teleports: int


@dataclass
class ExecutionTrace:
    num_cores: int
    num_qubits: int
    records: list[BundleRecord] = field(default_factory=list)
    clock: float = 0.0
    events: list[CommEvent] = field(default_factory=list)
    comm_map: np.ndarray = None
    qubit_ops: np.ndarray = None
    qubit_teleports: np.ndarray = None
    qubit_moves: int = 0
    executed_gates: int = 0
    util_min: int = 0
    util_max: int = 0
    util_sum: float = 0.0
    util_samples: int = 0

    def __post_init__(self):
        if self.comm_map is None:
            self.comm_map = np.zeros((self.num_cores, self.num_cores), dtype=np.int64)
        if self.qubit_ops is None:
            self.qubit_ops = np.zeros(self.num_qubits, dtype=np.int64)
        if self.qubit_teleports is None:
            self.qubit_teleports = np.zeros(self.num_qubits, dtype=np.int64)

    @property
    def totals(self) -> TimeBreakdown:
        acc = {name: math.fsum(getattr(r.breakdown, name) for r in self.records)
               for name in TimeBreakdown.BUCKETS + ("overlap",)}
        return TimeBreakdown(**acc)

    @property
    def num_bundles(self) -> int:
        return len(self.records)

    def sample_utilization(self, occupancy):
        lo, hi = min(occupancy), max(occupancy)
        if self.util_samples == 0:
            self.util_min, self.util_max = lo, hi
        else:
            self.util_min = min(self.util_min, lo)
            self.util_max = max(self.util_max, hi)
        self.util_sum += sum(occupancy) / len(occupancy)
        self.util_samples += 1


class _Widths:
    """Field widths used by bundle sizing and dispatch traffic."""

    def __init__(self, arch: ArchitectureConfig, params: PhysicalParams):
        m, q = arch.num_cores, arch.qubits_per_core
        self.core = clog2(m)
        self.opcode = params.bits_instruction
        self.local = clog2(q)
        self.absolute = clog2(m * q)
        self.header = clog2(params.max_bundle_instructions)
        self.ni = params.max_bundle_instructions
        self.ack = clog2(m) + 1
        self.teleport_payload = 2 + clog2(m * q)

    def operands(self, ins: Instruction) -> int:
        if ins.kind == TPS:
            return self.local + self.absolute
        return len(ins.operands) * self.local


def bundle_size_bits(b: Bundle, arch: ArchitectureConfig, params: PhysicalParams) -> int:
    """Encoded bundle length: count header plus core, opcode and operand fields."""
    w = _Widths(arch, params)
    if len(b.instructions) > w.ni:
        raise ValueError(f"bundle of {len(b.instructions)} instructions exceeds limit {w.ni}")
    return w.header + sum(w.core + w.opcode + w.operands(i) for i in b.instructions)


def traffic_volume(b: Bundle, core: int, arch: ArchitectureConfig, params: PhysicalParams) -> int:
    """Bits the dispatcher sends to ``core`` for bundle ``b`` (core field stripped)."""
    w = _Widths(arch, params)
    return sum(w.opcode + w.operands(i) for i in b.instructions if i.core == core)


def _apply_round(p: Placement, rnd: TeleportRound):
    p.apply_moves((op.qubit, op.dst_core) for op in rnd.ops if op.moves_from is not None)


def build_bundles(slc: Slice, rounds: list[TeleportRound], p: Placement,
                  max_instructions: int | None = None) -> list[Bundle]:
    """Remote bundles for ``rounds`` then local bundles for the slice's gates.

    Local instructions use addresses valid after all rounds have run. A slice
    with more gates than ``max_instructions`` spills into several local
    bundles.
    """
    work = p.copy()
    q = p.capacity
    relay_addr = {}
    bundles = []
    for rnd in rounds:
        ins = []
        for op in rnd.ops:
            src_local = relay_addr.get(op.qubit, work.slot_of[op.qubit])
            dst_local = work.lowest_free_slot(op.dst_core)
            if op.moves_from is None:
                relay_addr[op.qubit] = dst_local
            ins.append(Instruction(TPS, op.src_core, (src_local,), abs_dst=op.dst_core * q + dst_local))
            ins.append(Instruction(TPD, op.dst_core, (dst_local,)))
        _apply_round(work, rnd)
        for op in rnd.ops:
            if op.moves_from is not None:
                relay_addr.pop(op.qubit, None)
        bundles.append(Bundle(ins, REMOTE, rnd))
    gates = list(slc.gates)
    if not gates:
        return bundles
    step = max_instructions or len(gates)
    for i in range(0, len(gates), step):
        chunk = gates[i:i + step]
        ins = []
        for g in chunk:
            core = work.core_of[g.qubits[0]]
            ins.append(Instruction(GATE, core, tuple(work.slot_of[x] for x in g.qubits), g.name))
        bundles.append(Bundle(ins, LOCAL, gates=chunk))
    return bundles


class Executor:
    """Mutable per-run state: interconnect (token positions, event log) and widths."""

    def __init__(self, arch: ArchitectureConfig, params: PhysicalParams):
        self.arch = arch
        self.params = params
        self.net = Interconnect(arch, params)
        self.w = _Widths(arch, params)
        self.dispatcher = arch.num_cores

    def _common(self, b: Bundle, bd: TimeBreakdown):
        w = self.w
        n = len(b.instructions)
        if n > w.ni:
            raise ValueError(f"bundle of {n} instructions exceeds limit {w.ni}")
        size = w.header
        per_core = {}
        for ins in b.instructions:
            ops = w.operands(ins)
            size += w.core + w.opcode + ops
            per_core[ins.core] = per_core.get(ins.core, 0) + w.opcode + ops
        bd.fetch = size / self.params.memory_bandwidth * 1e9
        bd.decode = self.params.decode_d1 + self.params.decode_d2 * n
        cores = sorted(per_core)
        bd.dispatch = sum(self.net.cct(self.dispatcher, c, per_core[c]) for c in cores)
        return size, cores, sum(per_core.values())

    def _ack(self, cores, bd):
        bd.ack = sum(self.net.cct(c, self.dispatcher, self.w.ack) for c in cores)
        return len(cores) * self.w.ack

    def exec_local_bundle(self, b: Bundle):
        if b.kind != LOCAL:
            raise ValueError("exec_local_bundle needs a local bundle")
        bd = TimeBreakdown()
        size, cores, bits = self._common(b, bd)
        bd.gate_exec = max((self.params.gate_delay(g.name, g.arity) for g in b.gates), default=0.0)
        bits += self._ack(cores, bd)
        return bd, size, bits

    def exec_remote_bundle(self, b: Bundle):
        if b.kind != REMOTE:
            raise ValueError("exec_remote_bundle needs a remote bundle")
        p = self.params
        bd = TimeBreakdown()
        size, cores, bits = self._common(b, bd)
        rnd = b.round
        bd.epr_gen = epr_gen_time(len(rnd.ops), p)
        bd.epr_dist = epr_dist_time(rnd, p)
        bd.overlap = min(bd.dispatch, bd.epr_gen + bd.epr_dist)
        bd.pre_proc = p.pre_delay
        payload = self.w.teleport_payload
        bd.classical_transfer = sum(self.net.cct(op.src_core, op.dst_core, payload) for op in rnd.ops)
        bits += payload * len(rnd.ops)
        bd.post_proc = p.post_delay
        bits += self._ack(cores, bd)
        return bd, size, bits


def exec_local_bundle(b: Bundle, state: Executor):
    return state.exec_local_bundle(b)[0]


def exec_remote_bundle(b: Bundle, state: Executor):
    return state.exec_remote_bundle(b)[0]


def _check_gate_delays(circuit: Circuit, params: PhysicalParams):
    seen = set()
    for g in circuit.gates():
        key = (g.name, g.arity)
        if key not in seen:
            params.gate_delay(g.name, g.arity)
            seen.add(key)


def simulate(circuit: Circuit, arch: ArchitectureConfig, params: PhysicalParams,
             placement: Placement | None = None) -> ExecutionTrace:
    """Run ``circuit`` bundle by bundle and return the full execution trace.

    ``placement`` defaults to the vanilla mapping and is updated in place as
    teleports complete.
    """
    if placement is None:
        placement = vanilla_map(circuit.num_qubits, arch)
    if placement.num_cores != arch.num_cores or placement.capacity != arch.qubits_per_core:
        raise PlacementError("placement does not match the architecture")
    unmapped = sorted({q for g in circuit.gates() for q in g.qubits} - placement.core_of.keys())
    if unmapped:
        raise PlacementError(f"circuit qubits without a placement: {unmapped[:10]}")
    _check_gate_delays(circuit, params)

    num_qubits = max(circuit.num_qubits, max(placement.core_of, default=-1) + 1)
    trace = ExecutionTrace(arch.num_cores, num_qubits)
    ex = Executor(arch, params)
    trace.events = ex.net.events
    max_ops = params.max_bundle_instructions // 2
    ni = params.max_bundle_instructions
    clock = 0.0
    index = 0
    for slc in circuit.slices:
        rounds = plan_teleports(slc, placement, arch, max_ops)
        bundles = build_bundles(slc, rounds, placement, ni)
        for b in bundles:
            if b.kind == REMOTE:
                bd, size, bits = ex.exec_remote_bundle(b)
                for op in b.round.ops:
                    trace.comm_map[op.src_core, op.dst_core] += 1
                    if op.moves_from is not None:
                        trace.qubit_teleports[op.qubit] += 1
                        trace.qubit_moves += 1
                _apply_round(placement, b.round)
                teleports = len(b.round.ops)
            else:
                bd, size, bits = ex.exec_local_bundle(b)
                for g in b.gates:
                    trace.qubit_ops[list(g.qubits)] += 1
                trace.executed_gates += len(b.gates)
                teleports = 0
            start = clock
            clock += bd.total
            trace.records.append(BundleRecord(index, b.kind, start, clock, bd, len(b), size, bits, teleports))
            trace.sample_utilization(placement.occupancy)
            index += 1
    trace.clock = clock
    if trace.util_samples == 0:
        trace.sample_utilization(placement.occupancy)
    return trace


def dump_trace(trace: ExecutionTrace) -> str:
    """One line per bundle: index, kind, start/end and every time bucket (ns)."""
    lines = []
    for r in trace.records:
        b = r.breakdown
        vals = (r.start, r.end, b.fetch, b.decode, b.dispatch, b.epr_gen, b.epr_dist, b.pre_proc,
                b.classical_transfer, b.post_proc, b.gate_exec, b.ack)
        lines.append(f"{r.index} {r.kind} " + " ".join(f"{v:.3f}" for v in vals))
    return "\n".join(lines) + ("\n" if lines else "")


def slice_bundles(circuit: Circuit, arch: ArchitectureConfig, params: PhysicalParams,
                  placement: Placement | None = None) -> list[Bundle]:
    """The bundle program for ``circuit`` (no timing), for inspection."""
    if placement is None:
        placement = vanilla_map(circuit.num_qubits, arch)
    placement = placement.copy()
    out = []
    for slc in circuit.slices:
        rounds = plan_teleports(slc, placement, arch, params.max_bundle_instructions // 2)
        out.extend(build_bundles(slc, rounds, placement, params.max_bundle_instructions))
        for rnd in rounds:
            _apply_round(placement, rnd)
    return out


__all__ = [
    "Instruction", "Bundle", "TimeBreakdown", "BundleRecord", "ExecutionTrace", "Executor",
    "bundle_size_bits", "traffic_volume", "build_bundles", "exec_local_bundle",
    "exec_remote_bundle", "simulate", "dump_trace", "slice_bundles",
]
