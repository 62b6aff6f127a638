"""Sliced quantum circuits: data model, text format, random generation."""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass


class CircuitError(ValueError):
    """Malformed circuit text or a circuit that breaks slice disjointness."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True, slots=True)
class Gate:
    qubits: tuple[int, ...]
    name: str | None = None

    def __post_init__(self):
        if not self.qubits:
            raise CircuitError("gate has no qubits")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubit in gate {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError(f"negative qubit index in gate {self.qubits}")

    @property
    def arity(self) -> int:
        return len(self.qubits)


@dataclass(frozen=True, slots=True)
class Slice:
    gates: tuple[Gate, ...]

    def __post_init__(self):
        seen = set()
        for g in self.gates:
            for q in g.qubits:
                if q in seen:
                    raise CircuitError(f"slice overlap on q{q}")
                seen.add(q)

    @property
    def qubits(self) -> set[int]:
        return {q for g in self.gates for q in g.qubits}


@dataclass(frozen=True, slots=True)
class Circuit:
    slices: tuple[Slice, ...]
    num_qubits: int = -1

    def __post_init__(self):
        top = max((q for s in self.slices for g in s.gates for q in g.qubits), default=-1)
        if self.num_qubits < 0:
            object.__setattr__(self, "num_qubits", top + 1)
        elif top >= self.num_qubits:
            raise CircuitError(f"qubit {top} out of range for {self.num_qubits} qubits")

    @property
    def depth(self) -> int:
        return len(self.slices)

    @property
    def num_gates(self) -> int:
        return sum(len(s.gates) for s in self.slices)

    def gates(self):
        for s in self.slices:
            yield from s.gates


_TUPLE = re.compile(r"([a-z][a-z0-9_]*)?\(\s*([0-9\s,]*?)\s*\)")
_INDEX = re.compile(r"\s*(\d+)\s*$")


def _parse_line(body, lineno):
    gates = []
    pos = 0
    n = len(body)
    while pos < n:
        if body[pos].isspace():
            pos += 1
            continue
        m = _TUPLE.match(body, pos)
        if m is None:
            raise CircuitError(f"expected gate tuple, found {body[pos:pos + 12]!r}", lineno, pos + 1)
        end = m.end()
        if end < n and not body[end].isspace():
            raise CircuitError("gate tuples must be separated by whitespace", lineno, end + 1)
        fields = m.group(2).split(",")
        qubits = []
        for f in fields:
            im = _INDEX.match(f)
            if im is None:
                raise CircuitError(f"bad qubit index {f.strip()!r}", lineno, m.start(2) + 1)
            qubits.append(int(im.group(1)))
        try:
            gates.append(Gate(tuple(qubits), m.group(1)))
        except CircuitError as exc:
            raise CircuitError(str(exc), lineno, pos + 1) from None
        pos = end
    try:
        return Slice(tuple(gates))
    except CircuitError as exc:
        raise CircuitError(str(exc), lineno) from None


def parse_circuit(text: str) -> Circuit:
    """Parse the one-slice-per-line circuit format.

    Each non-blank line holds whitespace-separated tuples such as ``(2)``,
    ``cnot(3, 7)``; ``#`` starts a comment.
    """
    slices = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        slices.append(_parse_line(body, lineno))
    return Circuit(tuple(slices))


def load_circuit(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def render_circuit(c: Circuit) -> str:
    lines = []
    for s in c.slices:
        lines.append(" ".join(f"{g.name or ''}({','.join(map(str, g.qubits))})" for g in s.gates))
    return "\n".join(lines) + ("\n" if lines else "")


def _normalize_dist(arity_dist):
    if isinstance(arity_dist, dict):
        items = sorted(arity_dist.items())
    else:
        items = [(i + 1, p) for i, p in enumerate(arity_dist)]
    items = [(int(a), float(p)) for a, p in items]
    if any(a < 1 for a, _ in items):
        raise ValueError("arities must be >= 1")
    if any(p < 0 for _, p in items):
        raise ValueError("probabilities must be non-negative")
    total = sum(p for _, p in items)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"arity distribution sums to {total}, expected 1")
    return [a for a, p in items if p > 0], [p for _, p in items if p > 0]


def random_circuit(num_qubits: int, num_gates: int, arity_dist, seed: int) -> Circuit:
    """Random sliced circuit built gate by gate.

    ``arity_dist`` is either a mapping ``{arity: probability}`` or a sequence
    whose i-th entry is the probability of an (i+1)-qubit gate. A gate that
    collides with a qubit already used in the open slice closes that slice
    and opens the next one.
    """
    if num_gates < 1:
        raise ValueError("num_gates must be >= 1")
    arities, weights = _normalize_dist(arity_dist)
    if max(arities) > num_qubits:
        raise ValueError(f"arity {max(arities)} infeasible with {num_qubits} qubits")
    rng = random.Random(seed)
    population = range(num_qubits)
    slices = []
    current = []
    used = set()
    for _ in range(num_gates):
        arity = rng.choices(arities, weights)[0]
        qubits = tuple(rng.sample(population, arity))
        if used.isdisjoint(qubits):
            current.append(Gate(qubits))
            used.update(qubits)
        else:
            slices.append(Slice(tuple(current)))
            current = [Gate(qubits)]
            used = set(qubits)
    slices.append(Slice(tuple(current)))
    return Circuit(tuple(slices))


def circuit_stats(c: Circuit) -> dict:
    by_arity = Counter(g.arity for g in c.gates())
    return {"gates_by_arity": dict(sorted(by_arity.items())), "depth": c.depth}
