"""Two entangled qubits riding together: fragile and robust Bell pairs.

When both particles follow the same trajectory, every spin they pass is
tipped twice.  The branches that differ in total excitation number (the

    (|00> + |11>)/sqrt(2)

family) imprint different double tips and decohere with the joint factor
f2; the single-excitation family (|01> + |10>)/sqrt(2) tips every spin
identically in both branches, so the environment never learns anything and
the pair survives untouched.  For the fragile pair the discord decays
faster than the concurrence at every instant.

Run:  python demos/02_bell_states_common_path.py [--plot out.png]
"""
import argparse

import numpy as np

from dephase import ModelParams, correlation_timeseries, make_bell_diagonal

params = ModelParams.from_flip_probability(
    0.005, n_spins=1001, x1=100.0, xA=0.0, xB=0.0
)
times = np.linspace(0.0, 1300.0, 1301)

fragile = correlation_timeseries(params, make_bell_diagonal(1, -1, 1), "limit", times)
robust = correlation_timeseries(params, make_bell_diagonal(1, 1, -1), "limit", times)

print("fragile pair (double-flip coherence):")
print(f"{'t':>6} {'C':>8} {'D':>8} {'|f2|':>10}")
for i in range(0, 1301, 130):
    s = fragile[i]
    print(f"{s.t:6.0f} {s.concurrence:8.4f} {s.discord:8.4f} {s.abs_f2:10.6f}")

gap = max(s.discord - s.concurrence for s in fragile)
print(f"\nmax D - C over the run: {gap:.2e}  (never positive)")

last = robust[-1]
print(f"robust pair at t = {last.t:.0f}: C = {last.concurrence:.12f}, D = {last.discord:.12f}")

parser = argparse.ArgumentParser()
parser.add_argument("--plot", metavar="PNG", help="write a comparison plot")
args = parser.parse_args()
if args.plot:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.figure(figsize=(6, 4))
    plt.plot(times, [s.concurrence for s in fragile], label="C, fragile pair")
    plt.plot(times, [s.discord for s in fragile], "--", label="D, fragile pair")
    plt.plot(times, [s.concurrence for s in robust], label="C = D, robust pair")
    plt.xlabel("t")
    plt.legend()
    plt.tight_layout()
    plt.savefig(args.plot, dpi=150)
    print(f"wrote {args.plot}")
