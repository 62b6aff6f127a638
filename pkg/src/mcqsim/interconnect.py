"""Classical communication cost: wired mesh NoC and token-passing WiNoC.

Node indices are core indices ``0..M-1`` plus the dispatcher at index ``M``.
"""

from __future__ import annotations

from typing import NamedTuple

from .config import ArchitectureConfig, PhysicalParams, SystemGeometry


class CommEvent(NamedTuple):
    src: int
    dst: int
    bits: int
    elapsed: float


class NocModel:
    """Wormhole mesh: one clock per hop plus one clock per flit, no contention."""

    def __init__(self, clock_time: float, link_width: int, geometry: SystemGeometry):
        if clock_time <= 0:
            raise ValueError("clock_time must be > 0")
        if link_width < 1:
            raise ValueError("link_width must be >= 1")
        self.clock_time = clock_time
        self.link_width = link_width
        self.geometry = geometry

    def hops(self, src: int, dst: int) -> int:
        return self.geometry.hops(src, dst)

    def transfer_time(self, src: int, dst: int, bits: int) -> float:
        flits = -(-bits // self.link_width)
        return self.clock_time * (self.geometry.hops(src, dst) + flits)


class WinocModel:
    """Shared radio medium with one circulating token per channel.

    Tokens travel the ring in ascending node order (dispatcher last). A sender
    picks the channel whose token is fewest ring steps away, waits for it,
    serializes its bits and keeps the token until someone else needs it.
    """

    def __init__(self, wbit_rate: float, token_pass_time: float, num_channels: int, num_nodes: int):
        if wbit_rate <= 0:
            raise ValueError("wbit_rate must be > 0")
        if num_channels < 1:
            raise ValueError("num_channels must be >= 1")
        self.wbit_rate = wbit_rate
        self.token_pass_time = token_pass_time
        self.num_channels = num_channels
        self.num_nodes = num_nodes
        self.reset()

    def reset(self):
        # tokens start evenly spread around the ring, channel 0 at node 0
        self.token_position = [ch * self.num_nodes // self.num_channels for ch in range(self.num_channels)]

    def ring_distance(self, holder: int, node: int) -> int:
        return (node - holder) % self.num_nodes

    def transfer_time(self, src: int, dst: int, bits: int) -> float:
        best, best_wait = 0, None
        for ch, holder in enumerate(self.token_position):
            d = (src - holder) % self.num_nodes
            if best_wait is None or d < best_wait:
                best, best_wait = ch, d
        self.token_position[best] = src
        return self.token_pass_time * best_wait + bits / self.wbit_rate * 1e9


def hops(geometry: SystemGeometry, src: int, dst: int) -> int:
    return geometry.hops(src, dst)


def cct_noc(m: NocModel, src: int, dst: int, bits: int) -> tuple[float, CommEvent]:
    t = m.transfer_time(src, dst, bits)
    return t, CommEvent(src, dst, bits, t)


def cct_winoc(m: WinocModel, src: int, dst: int, bits: int) -> tuple[float, CommEvent]:
    t = m.transfer_time(src, dst, bits)
    return t, CommEvent(src, dst, bits, t)


class Interconnect:
    """The system's classical network plus its event log."""

    def __init__(self, arch: ArchitectureConfig, params: PhysicalParams):
        self.geometry = arch.geometry
        self.dispatcher = self.geometry.dispatcher
        self.wireless = arch.wireless_enabled
        if self.wireless:
            self.model = WinocModel(params.wbit_rate, params.token_pass_time, arch.radio_channels,
                                    arch.num_cores + 1)
        else:
            self.model = NocModel(params.noc_clock_time, arch.link_width, self.geometry)
        self.events: list[CommEvent] = []

    def cct(self, src: int, dst: int, bits: int) -> float:
        t = self.model.transfer_time(src, dst, bits)
        self.events.append(CommEvent(src, dst, bits, t))
        return t


def cct(system: Interconnect, src: int, dst: int, bits: int) -> float:
    return system.cct(src, dst, bits)
