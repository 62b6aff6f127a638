"""Execution-time simulator for modular multi-core quantum architectures.

Circuits run as VLIW-style instruction bundles; qubits that need to meet on a
core are teleported, and every classical message (dispatch, teleport
corrections, completion acks) is costed on a wired mesh NoC or a
token-passing wireless NoC.
"""

from .circuit import (Circuit, CircuitError, Gate, Slice, circuit_stats, load_circuit,
                      parse_circuit, random_circuit, render_circuit)
from .config import (ArchitectureConfig, ConfigError, DstSelectionMode, PhysicalParams,
                     SystemGeometry, TeleportationType, apply_overrides, load_architecture,
                     load_parameters, parse_architecture, parse_parameters)
from .engine import (Bundle, ExecutionTrace, Instruction, TimeBreakdown, build_bundles,
                     bundle_size_bits, dump_trace, simulate, slice_bundles)
from .interconnect import CommEvent, Interconnect, NocModel, WinocModel, cct_noc, cct_winoc
from .placement import (Placement, PlacementError, load_mapping, random_map, read_mapping,
                        select_destination, vanilla_map)
from .report import ExecutionReport, coherence, emit, report_from_json, summarize
from .teleport import (TeleportOp, TeleportRound, epr_dist_time, epr_gen_time, expand_multihop,
                       plan_teleports)


def run(circuit, arch, params, placement=None, detailed=False) -> ExecutionReport:
    """Simulate and summarize in one call."""
    trace = simulate(circuit, arch, params, placement)
    return summarize(trace, arch, params, detailed)


__version__ = "0.1.0"
