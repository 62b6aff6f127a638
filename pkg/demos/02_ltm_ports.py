# %% [markdown]
# # How many LTM ports are worth having?
#
# 4x4 mesh, 10 qubits per core, 1 GHz NoC with 8-bit links. Three random
# circuits (100 qubits, 1,000 gates) differ only in their share of two-qubit
# gates. Each extra port lets a core take part in one more teleport per
# round, until the slices simply do not contain more work for a core.

# %%
import numpy as np

from mcqsim import presets, random_circuit, run

params = presets.default_params()
mixes = {"25% 2q": [0.75, 0.25], "50% 2q": [0.5, 0.5], "75% 2q": [0.25, 0.75]}
ports = range(1, 6)

# %%
comm = np.array([[run(random_circuit(100, 1000, mix, seed=1), presets.ltm_study(L), params).t_comm_ns
                  for L in ports] for mix in mixes.values()])
print("communication time (us)")
print("ports    " + "".join(f"{L:>9d}" for L in ports))
for name, row in zip(mixes, comm / 1e3):
    print(f"{name:8s} " + "".join(f"{v:9.1f}" for v in row))

# %% [markdown]
# Relative gain of each extra port. Past three ports the remaining gain comes
# from the few slices where one core is an endpoint of four or more teleports.

# %%
print(np.round(100 * (1 - comm[:, 1:] / comm[:, :-1]), 2))

# %% [markdown]
# Multi-hop (split) teleportation: every teleport becomes a chain of
# neighbour-to-neighbour hops, so rounds fill up faster.

# %%
c = random_circuit(100, 1000, [0.5, 0.5], seed=1)
for L in ports:
    single = run(c, presets.ltm_study(L), params).t_comm_ns
    multi = run(c, presets.ltm_study(L, split=True), params).t_comm_ns
    print(L, f"{single / 1e3:8.1f} {multi / 1e3:8.1f}")
