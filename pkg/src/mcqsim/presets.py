"""Ready-made configurations for the standard experiment setups."""

from __future__ import annotations

import math

from .config import ArchitectureConfig, PhysicalParams


def default_params(**changes) -> PhysicalParams:
    """Reference technology parameters (1 GHz NoC, 12 Gbps radio, 128 Gbps RAM)."""
    return PhysicalParams(**changes)


def mesh(n_x, n_y, qubits_per_core, ltm_ports=1, link_width=8, wireless=False, radio_channels=1,
         **extra) -> ArchitectureConfig:
    return ArchitectureConfig(n_x, n_y, link_width, qubits_per_core, ltm_ports, wireless,
                              radio_channels, **extra)


def ltm_study(ltm_ports: int, split: bool = False) -> ArchitectureConfig:
    """4x4 mesh, 10 qubits per core, 8-bit links."""
    return mesh(4, 4, 10, ltm_ports, teleportation_type="split" if split else "all_to_all")


def breakdown_study() -> ArchitectureConfig:
    """4x4 mesh, 10 qubits and 2 LTM ports per core, 8-bit links."""
    return mesh(4, 4, 10, 2)


def square_mesh_constant_qubits(n: int, total_qubits: int, ltm_ports: int = 2) -> ArchitectureConfig:
    return mesh(n, n, math.ceil(total_qubits / (n * n)), ltm_ports)


def interconnect_study(wireless: bool, radio_channels: int = 1) -> ArchitectureConfig:
    """10x10 mesh, 20 qubits and one LTM port per core."""
    return mesh(10, 10, 20, 1, wireless=wireless, radio_channels=radio_channels)


def noc_clock_for_capacity(capacity_bps: float, link_width: int = 8) -> float:
    """NoC clock period (ns) giving ``capacity_bps`` per link."""
    return link_width / capacity_bps * 1e9


def scaled_quantum(params: PhysicalParams, factor: float) -> PhysicalParams:
    """Divide EPR generation, pre- and post-processing delays by ``factor``."""
    return params.replace(epr_delay=params.epr_delay / factor,
                          pre_delay=params.pre_delay / factor,
                          post_delay=params.post_delay / factor)
