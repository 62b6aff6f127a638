"""Dynamic logical-qubit to core assignment and destination policies."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from .config import ArchitectureConfig, DstSelectionMode


class PlacementError(ValueError):
    pass


class Placement:
    """Which core (and which local slot) holds each logical qubit.

    Slots inside a core are interchangeable for timing purposes; they are
    tracked only so instructions can carry concrete local addresses. A qubit
    arriving at a core takes its lowest free slot.
    """

    def __init__(self, num_cores: int, capacity: int):
        self.num_cores = num_cores
        self.capacity = capacity
        self.core_of: dict[int, int] = {}
        self.slot_of: dict[int, int] = {}
        self.occupancy = [0] * num_cores
        self._free = [list(range(capacity)) for _ in range(num_cores)]

    def copy(self) -> Placement:
        p = Placement.__new__(Placement)
        p.num_cores = self.num_cores
        p.capacity = self.capacity
        p.core_of = dict(self.core_of)
        p.slot_of = dict(self.slot_of)
        p.occupancy = list(self.occupancy)
        p._free = [list(f) for f in self._free]
        return p

    def __eq__(self, other):
        if not isinstance(other, Placement):
            return NotImplemented
        return (self.num_cores, self.capacity, self.core_of) == (other.num_cores, other.capacity, other.core_of)

    def __repr__(self):
        return f"Placement(cores={self.num_cores}, capacity={self.capacity}, occupancy={self.occupancy})"

    def free(self, core: int) -> int:
        return self.capacity - self.occupancy[core]

    def _take_slot(self, core):
        return heapq.heappop(self._free[core])

    def place(self, qubit: int, core: int):
        if qubit in self.core_of:
            raise PlacementError(f"qubit {qubit} mapped twice")
        if not 0 <= core < self.num_cores:
            raise PlacementError(f"core {core} out of range (0..{self.num_cores - 1})")
        if self.occupancy[core] >= self.capacity:
            raise PlacementError(f"core {core} exceeds capacity {self.capacity}")
        self.core_of[qubit] = core
        self.slot_of[qubit] = self._take_slot(core)
        self.occupancy[core] += 1

    def apply_teleport(self, qubit: int, dst_core: int) -> Placement:
        """Move ``qubit`` to ``dst_core`` in place and return self."""
        try:
            src = self.core_of[qubit]
        except KeyError:
            raise PlacementError(f"qubit {qubit} is not mapped") from None
        if src == dst_core:
            return self
        if self.occupancy[dst_core] >= self.capacity:
            raise PlacementError(f"teleport of q{qubit} into full core {dst_core}")
        heapq.heappush(self._free[src], self.slot_of[qubit])
        self.occupancy[src] -= 1
        self.core_of[qubit] = dst_core
        self.slot_of[qubit] = self._take_slot(dst_core)
        self.occupancy[dst_core] += 1
        return self

    def apply_moves(self, moves) -> Placement:
        """Apply simultaneous ``(qubit, dst_core)`` moves: all sources free first."""
        moves = list(moves)
        for q, _ in moves:
            src = self.core_of.pop(q)
            heapq.heappush(self._free[src], self.slot_of.pop(q))
            self.occupancy[src] -= 1
        for q, dst in moves:
            self.place(q, dst)
        return self

    def lowest_free_slot(self, core: int) -> int:
        return self._free[core][0] if self._free[core] else 0

    def absolute_address(self, qubit: int) -> int:
        return self.core_of[qubit] * self.capacity + self.slot_of[qubit]

    @property
    def num_mapped(self) -> int:
        return len(self.core_of)


def vanilla_map(num_logical: int, arch: ArchitectureConfig) -> Placement:
    """Logical qubit i on core i mod M."""
    m = arch.num_cores
    if -(-num_logical // m) > arch.qubits_per_core:
        raise PlacementError(
            f"{num_logical} qubits need {-(-num_logical // m)} per core, capacity is {arch.qubits_per_core}")
    p = Placement(m, arch.qubits_per_core)
    for q in range(num_logical):
        p.place(q, q % m)
    return p


def random_map(num_logical: int, arch: ArchitectureConfig, seed: int) -> Placement:
    """Logical qubits scattered over a random choice of physical slots."""
    total = arch.total_qubits
    if num_logical > total:
        raise PlacementError(f"{num_logical} qubits exceed {total} physical qubits")
    rng = random.Random(seed)
    slots = rng.sample(range(total), num_logical)
    p = Placement(arch.num_cores, arch.qubits_per_core)
    for q, s in enumerate(slots):
        p.place(q, s // arch.qubits_per_core)
    return p


def load_mapping(text: str, arch: ArchitectureConfig) -> Placement:
    """Parse ``logical_qubit core_index`` lines (``#`` comments allowed)."""
    p = Placement(arch.num_cores, arch.qubits_per_core)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PlacementError(f"line {lineno}: expected 'qubit core', got {line!r}")
        try:
            q, c = int(fields[0]), int(fields[1])
        except ValueError:
            raise PlacementError(f"line {lineno}: non-integer field in {line!r}") from None
        if q in p.core_of:
            raise PlacementError(f"line {lineno}: duplicate qubit {q}")
        try:
            p.place(q, c)
        except PlacementError as exc:
            raise PlacementError(f"line {lineno}: {exc}") from None
    return p


def read_mapping(path, arch: ArchitectureConfig) -> Placement:
    with open(path, encoding="utf-8") as fh:
        return load_mapping(fh.read(), arch)


def select_destination(qubits, p: Placement, mode) -> int:
    """Core that every operand of a cross-core gate should end up on.

    Candidates are the cores currently holding operands. Load-independent
    mode prefers the core of the last operand; load-aware mode prefers the
    candidate with most free slots, ties going to the last operand's core.
    A preferred core that cannot absorb its incoming qubits yields to the
    roomiest candidate that can.
    """
    mode = DstSelectionMode(mode)
    cores = [p.core_of[q] for q in qubits]
    candidates = list(dict.fromkeys(reversed(cores)))  # last operand's core first
    incoming = {c: sum(1 for x in cores if x != c) for c in candidates}
    if mode is DstSelectionMode.LOAD_INDEPENDENT:
        preferred = candidates[0]
    else:
        preferred = max(candidates, key=p.free)  # max keeps the first of equals
    if p.free(preferred) >= incoming[preferred]:
        return preferred
    feasible = [c for c in candidates if p.free(c) >= incoming[c]]
    if not feasible:
        raise PlacementError(
            f"cannot co-locate qubits {tuple(qubits)}: cores {candidates} have no room")
    return max(feasible, key=p.free)


@dataclass(frozen=True)
class UtilizationStats:
    min: int
    max: int
    avg: float
