# %% [markdown]
# # Wired mesh or shared radio?
#
# 10x10 cores, 20 qubits each, one LTM port. The wired links and the radio
# channel get the same raw capacity. The radio reaches any node in one hop,
# but a single token serializes every message.

# %%
from mcqsim import presets, random_circuit, run

params = presets.default_params()
circuit = random_circuit(1000, 10000, [0.6, 0.4], seed=1)

# %%
print("Gbps   NoC (ms)  WiNoC (ms)  NoC cls%  WiNoC cls%")
for cap in (1, 2, 4, 8, 12, 16):
    noc = run(circuit, presets.interconnect_study(False),
              params.replace(noc_clock_time=presets.noc_clock_for_capacity(cap * 1e9)))
    win = run(circuit, presets.interconnect_study(True), params.replace(wbit_rate=cap * 1e9))
    print(f"{cap:4d} {noc.t_total_ns / 1e6:10.2f} {win.t_total_ns / 1e6:11.2f}"
          f" {100 * noc.classical_share:9.1f} {100 * win.classical_share:11.1f}")

# %% [markdown]
# More radio channels shorten the wait for a token.

# %%
for ch in (1, 2, 4, 8):
    r = run(circuit, presets.interconnect_study(True, radio_channels=ch), params)
    print(ch, f"{r.t_total_ns / 1e6:.2f} ms", f"{100 * r.classical_share:.1f} %")

# %% [markdown]
# If EPR generation and teleport processing get faster, classical
# communication is what is left.

# %%
for factor in (1, 2, 5, 10, 20):
    p = presets.scaled_quantum(params, factor)
    noc = run(circuit, presets.interconnect_study(False), p)
    win = run(circuit, presets.interconnect_study(True), p)
    print(f"x{factor:<3d} NoC {100 * noc.classical_share:5.1f} %   WiNoC {100 * win.classical_share:5.1f} %")
