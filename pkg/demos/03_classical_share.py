# %% [markdown]
# # Where does the time go?
#
# 4x4 mesh, 10 qubits and 2 LTM ports per core. The classical share counts
# dispatch not hidden behind EPR generation, teleport correction bits and
# completion messages.

# %%
from mcqsim import presets, random_circuit, run

params = presets.default_params()
arch = presets.breakdown_study()
circuit = random_circuit(100, 1000, [0.0, 1.0], seed=1)

# %%
print(" f (MHz)   comm (us)  comp (us)  ctrl (us)  classical %")
for f in (10, 25, 50, 100, 250, 500, 1000):
    r = run(circuit, arch, params.replace(noc_clock_time=1e3 / f))
    print(f"{f:8d} {r.t_comm_ns / 1e3:11.1f} {r.t_comp_ns / 1e3:10.1f} {r.t_control_ns / 1e3:10.1f}"
          f" {100 * r.classical_share:11.1f}")

# %% [markdown]
# Same 2,000 physical qubits spread over larger and larger meshes. More
# cores means more hops per message and more cores to address.

# %%
big = random_circuit(1000, 10000, [0.0, 1.0], seed=1)
for n in range(2, 11):
    a = presets.square_mesh_constant_qubits(n, 2000)
    r = run(big, a, params)
    print(f"{n:2d}x{n:<2d} Q={a.qubits_per_core:4d}  classical {100 * r.classical_share:5.1f} %"
          f"  total {r.t_total_ns / 1e6:7.2f} ms")
