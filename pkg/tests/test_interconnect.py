from hypothesis import given, strategies as st

from mcqsim.config import ArchitectureConfig, PhysicalParams
from mcqsim.interconnect import Interconnect, NocModel, WinocModel

from oracles import noc_time


@given(st.integers(1, 10), st.integers(1, 10), st.integers(1, 64), st.integers(0, 500), st.data())
def test_noc_matches_oracle(mx, my, lw, bits, data):
    arch = ArchitectureConfig(mx, my, lw, 4, 1, False)
    m = NocModel(0.5, lw, arch.geometry)
    n = arch.num_cores
    s = data.draw(st.integers(0, n))
    d = data.draw(st.integers(0, n))
    assert m.transfer_time(s, d, bits) == noc_time(s, d, bits, mx, n, 0.5, lw)


def test_noc_frozen_example():
    arch = ArchitectureConfig(4, 4, 8, 10, 1, False)
    m = NocModel(1.0, 8, arch.geometry)
    # dispatcher (0,0) to core 15 (3,3): 6 hops, 17 bits = 3 flits
    assert m.transfer_time(16, 15, 17) == 9.0


def test_winoc_token_walk():
    w = WinocModel(wbit_rate=1e9, token_pass_time=2.0, num_channels=1, num_nodes=5)
    assert w.transfer_time(3, 0, 10) == 2.0 * 3 + 10.0
    assert w.transfer_time(3, 1, 10) == 10.0  # sender keeps the token
    assert w.transfer_time(1, 4, 0) == 2.0 * 3  # ring wraps 3 -> 4 -> 0 -> 1


def test_winoc_picks_nearest_channel():
    w = WinocModel(1e9, 1.0, num_channels=2, num_nodes=8)
    assert w.token_position == [0, 4]
    assert w.transfer_time(5, 0, 0) == 1.0
    assert w.token_position == [0, 5]
    assert w.transfer_time(3, 0, 0) == 3.0  # channel 0 at node 0 is closer than node 5
    assert w.token_position == [3, 5]


def test_interconnect_logs_events():
    arch = ArchitectureConfig(2, 2, 8, 2, 1, True, radio_channels=2)
    net = Interconnect(arch, PhysicalParams(wbit_rate=8e9, token_pass_time=1.0))
    t = net.cct(4, 3, 8)
    assert len(net.events) == 1 and net.events[0].elapsed == t and net.events[0].bits == 8
