# %% [markdown]
# # A three-slice circuit on two cores
#
# Five logical qubits live on two cores of three slots each: q0..q2 on core 0,
# q3 and q4 on core 1. The third slice needs q2 and q3 together, so one of them
# has to be teleported first.

# %%
from mcqsim import (ArchitectureConfig, PhysicalParams, load_mapping, parse_circuit, simulate,
                    slice_bundles, summarize, emit, dump_trace)

circuit = parse_circuit("""
cnot(0,1) cnot(3,4)
swap(1,2)
cnot(2,3)
""")
arch = ArchitectureConfig(mesh_x=2, mesh_y=1, link_width=8, qubits_per_core=3, ltm_ports=1,
                          wireless_enabled=False)
params = PhysicalParams(gate_delays={"default_2q": 200.0, "swap": 600.0})
mapping = "0 0\n1 0\n2 0\n3 1\n4 1\n"

# %% [markdown]
# The bundle program. Gate operands are slot numbers inside the core; the
# TPS carries the absolute address of the slot it sends to.

# %%
for b in slice_bundles(circuit, arch, params, load_mapping(mapping, arch)):
    print(b.kind.ljust(6), b)

# %% [markdown]
# Timing per bundle (ns): start, end, then fetch, decode, dispatch, EPR
# generation and distribution, pre-processing, classical transfer,
# post-processing, gate execution and acknowledgement.

# %%
placement = load_mapping(mapping, arch)
trace = simulate(circuit, arch, params, placement)
print(dump_trace(trace))
print("q2 ends up on core", placement.core_of[2])

# %%
print(emit(summarize(trace, arch, params), "text"))
