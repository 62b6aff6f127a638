import pytest
from hypothesis import given, strategies as st

from mcqsim.config import (ArchitectureConfig, ConfigError, PhysicalParams, SystemGeometry,
                           TeleportationType, apply_overrides, clog2, parse_architecture,
                           parse_parameters, render_architecture, render_parameters)

from oracles import bits_for

ARCH_TEXT = """
mesh_x = 4
mesh_y = 4
link_width = 8
qubits_per_core = 10
ltm_ports = 2
wireless_enabled = no
teleportation_type = split
"""


@given(st.integers(1, 1 << 20))
def test_clog2_matches_log2(n):
    assert clog2(n) == bits_for(n)


def test_parse_architecture():
    a = parse_architecture(ARCH_TEXT)
    assert (a.num_cores, a.total_qubits, a.ltm_ports) == (16, 160, 2)
    assert a.teleportation_type is TeleportationType.SPLIT
    assert parse_architecture(render_architecture(a)) == a


@pytest.mark.parametrize("text,msg", [
    ("mesh_x = 2\n", "missing"),
    (ARCH_TEXT + "colour = red\n", "unknown"),
    (ARCH_TEXT.replace("ltm_ports = 2", "ltm_ports = 0"), ">= 1"),
    (ARCH_TEXT.replace("link_width = 8", "link_width = 8.5"), "integer"),
    (ARCH_TEXT.replace("= no", "= maybe"), "boolean"),
])
def test_architecture_errors(text, msg):
    with pytest.raises(ConfigError, match=msg):
        parse_architecture(text)


def test_parse_parameters_defaults_and_alias():
    p = parse_parameters("decode_time = 7\ngate_delays = h:20, default_2q:100\n")
    assert p.decode_d2 == 7
    assert p.gate_delay("h", 1) == 20
    assert p.gate_delay("cx", 2) == 100
    with pytest.raises(ConfigError):
        p.gate_delay("x", 1)
    assert parse_parameters(render_parameters(PhysicalParams())) == PhysicalParams()


@pytest.mark.parametrize("text", ["epr_delay = -1", "wbit_rate = 0", "nonsense = 3",
                                  "max_bundle_instructions = 1", "gate_delays = h20"])
def test_parameter_errors(text):
    with pytest.raises(ConfigError):
        parse_parameters(text)


def test_overrides_route_to_owner():
    a = parse_architecture(ARCH_TEXT)
    a2, p2 = apply_overrides(a, PhysicalParams(), [("ltm_ports", "3"), ("noc_clock_time", "10")])
    assert a2.ltm_ports == 3 and p2.noc_clock_time == 10.0
    with pytest.raises(ConfigError):
        apply_overrides(a, PhysicalParams(), [("bogus", "1")])


@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_xy_path_properties(mx, my, data):
    g = SystemGeometry(mx, my)
    a = data.draw(st.integers(0, mx * my - 1))
    b = data.draw(st.integers(0, mx * my - 1))
    path = g.xy_path(a, b)
    assert path[0] == a and path[-1] == b
    assert len(path) - 1 == g.hops(a, b)
    for u, v in zip(path, path[1:]):
        assert g.hops(u, v) == 1
    # X first: y stays at the source row until x matches
    xs = [g.coords(n) for n in path]
    turn = next((i for i, (x, _) in enumerate(xs) if x == xs[-1][0]), 0)
    assert all(y == xs[0][1] for _, y in xs[:turn + 1])


def test_dispatcher_at_corner():
    g = SystemGeometry(3, 2)
    assert g.dispatcher == 6
    assert g.hops(6, 0) == 0
    assert g.hops(6, 5) == 3


def test_arch_value_object():
    a = ArchitectureConfig(2, 2, 8, 4, 1, False)
    assert a.replace(ltm_ports=2).ltm_ports == 2
    assert a.geometry.num_cores == 4
