"""Teleport planning under LTM-port limits, multi-hop expansion, EPR timing."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .circuit import Slice
from .config import ArchitectureConfig, PhysicalParams, SystemGeometry, TeleportationType
from .placement import Placement, select_destination


@dataclass(frozen=True, slots=True)
class TeleportOp:
    """One teleport between two cores.

    ``moves_from`` is the core the qubit leaves when this op completes. It is
    ``None`` for relay hops in the middle of a split teleport, which pass
    through a communication qubit and never occupy a data slot.
    """

    qubit: int
    src_core: int
    dst_core: int
    moves_from: int | None = -1

    def __post_init__(self):
        if self.src_core == self.dst_core:
            raise ValueError(f"teleport of q{self.qubit} from core {self.src_core} to itself")
        if self.moves_from == -1:
            object.__setattr__(self, "moves_from", self.src_core)


@dataclass
class TeleportRound:
    ops: list[TeleportOp] = field(default_factory=list)

    def port_uses(self) -> Counter:
        uses = Counter()
        for op in self.ops:
            uses[op.src_core] += 1
            uses[op.dst_core] += 1
        return uses

    def satisfies_ltm(self, ltm_ports: int) -> bool:
        return all(n <= ltm_ports for n in self.port_uses().values())

    @property
    def involved_cores(self) -> set[int]:
        return {c for op in self.ops for c in (op.src_core, op.dst_core)}

    def __len__(self):
        return len(self.ops)


@dataclass(frozen=True)
class EprPlan:
    num_pairs: int
    involved_cores: frozenset

    @classmethod
    def for_round(cls, rnd: TeleportRound) -> EprPlan:
        return cls(len(rnd.ops), frozenset(rnd.involved_cores))


def expand_multihop(op: TeleportOp, geometry: SystemGeometry) -> list[TeleportOp]:
    """Split a teleport into adjacent-core hops along the XY route."""
    path = geometry.xy_path(op.src_core, op.dst_core)
    last = len(path) - 2
    return [TeleportOp(op.qubit, a, b, op.moves_from if i == last else None)
            for i, (a, b) in enumerate(zip(path, path[1:]))]


class _Packer:
    """First-fit packing of teleport ops into rounds, in arrival order.

    An op lands in the earliest round where both endpoint cores have a spare
    LTM port, the round is below its op cap, the op comes after the previous
    hop of the same qubit, and no core overflows at that round or later.
    """

    def __init__(self, base_occupancy, capacity, ltm_ports, max_ops):
        self.base = list(base_occupancy)
        self.capacity = capacity
        self.ltm_ports = ltm_ports
        self.max_ops = max_ops
        self.rounds: list[TeleportRound] = []
        self._uses: list[Counter] = []
        self._delta: list[Counter] = []

    def _fits_capacity(self, r, core):
        occ = self.base[core] + sum(d[core] for d in self._delta[:r])
        for d in self._delta[r:]:
            occ += d[core]
            if occ + 1 > self.capacity:
                return False
        return True

    def add(self, op: TeleportOp, after: int = -1) -> int:
        L = self.ltm_ports
        for r in range(after + 1, len(self.rounds)):
            uses = self._uses[r]
            if uses[op.src_core] >= L or uses[op.dst_core] >= L:
                continue
            if self.max_ops is not None and len(self.rounds[r].ops) >= self.max_ops:
                continue
            if any(o.qubit == op.qubit for o in self.rounds[r].ops):
                continue
            if op.moves_from is not None and not self._fits_capacity(r, op.dst_core):
                continue
            break
        else:
            self.rounds.append(TeleportRound())
            self._uses.append(Counter())
            self._delta.append(Counter())
            r = len(self.rounds) - 1
        self.rounds[r].ops.append(op)
        self._uses[r][op.src_core] += 1
        self._uses[r][op.dst_core] += 1
        if op.moves_from is not None:
            self._delta[r][op.moves_from] -= 1
            self._delta[r][op.dst_core] += 1
        return r


def plan_teleports(slc: Slice, p: Placement, arch: ArchitectureConfig,
                   max_ops_per_round: int | None = None) -> list[TeleportRound]:
    """Teleports needed before ``slc`` can run locally, packed into rounds.

    ``p`` is left untouched. Gates are visited in slice order; each cross-core
    gate pulls its operands onto the core picked by the destination policy.
    """
    work = p.copy()
    packer = _Packer(p.occupancy, p.capacity, arch.ltm_ports, max_ops_per_round)
    split = arch.teleportation_type is TeleportationType.SPLIT
    geometry = arch.geometry
    for gate in slc.gates:
        if gate.arity < 2:
            continue
        cores = [work.core_of[q] for q in gate.qubits]
        if all(c == cores[0] for c in cores):
            continue
        dst = select_destination(gate.qubits, work, arch.dst_selection_mode)
        for q, c in zip(gate.qubits, cores):
            if c == dst:
                continue
            work.apply_teleport(q, dst)
            op = TeleportOp(q, c, dst)
            if split:
                r = -1
                for hop in expand_multihop(op, geometry):
                    r = packer.add(hop, after=r)
            else:
                packer.add(op)
    return packer.rounds


def epr_gen_time(num_pairs: int, params: PhysicalParams) -> float:
    if num_pairs <= 0:
        return 0.0
    if params.epr_parallel:
        return params.epr_delay
    return num_pairs * params.epr_delay


def epr_dist_time(rnd: TeleportRound, params: PhysicalParams) -> float:
    return params.dist_delay if rnd.ops else 0.0
