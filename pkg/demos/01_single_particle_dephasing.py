"""A single qubit flying through the array, and what the crossing costs it.

The particle tips every array spin it passes, so the environment slowly
"learns" which branch of the superposition it carries.  The overlap of the
environment branches is the decoherence factor: each passed spin multiplies
it by cos(a).  On a long array that product becomes exp(-nbar * g(t) / 2),
with g(t) the fraction of the array already crossed and nbar = q*N the mean
number of excited spins.

Run:  python demos/01_single_particle_dephasing.py [--plot out.png]
"""
import argparse

import numpy as np

from dephase import ModelParams, evolve_single_qubit, exact_f_single, limit_f_single

params = ModelParams.from_flip_probability(
    0.005, n_spins=1001, x1=100.0, xA=0.0, xB=0.0
)
times = np.linspace(0.0, 1300.0, 261)

exact = np.array([exact_f_single(params, float(t)) for t in times])
limit = np.array([limit_f_single(params, float(t)) for t in times])

amp = 1.0 / np.sqrt(2.0)
purity = np.array([evolve_single_qubit(amp, amp, float(f)).purity for f in exact])

print(f"array of {params.n_spins} spins, nbar = {params.mean_excitations:.3f}")
print(f"{'t':>6} {'f exact':>12} {'f limit':>12} {'purity':>8}")
for i in range(0, len(times), 26):
    print(f"{times[i]:6.0f} {exact[i]:12.6f} {limit[i]:12.6f} {purity[i]:8.4f}")

worst = np.max(np.abs(np.log(exact[exact < 1.0]) / np.log(limit[exact < 1.0]) - 1.0))
print(f"\nworst log-domain mismatch between engines: {worst:.2%}")
print(f"final factor exp(-nbar/2) = {np.exp(-params.mean_excitations / 2):.6f}")

parser = argparse.ArgumentParser()
parser.add_argument("--plot", metavar="PNG", help="write a comparison plot")
args = parser.parse_args()
if args.plot:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    top.plot(times, exact, label="finite array")
    top.plot(times, limit, "--", label="macroscopic limit")
    top.set_ylabel("decoherence factor")
    top.legend()
    bottom.plot(times, purity, color="tab:red")
    bottom.set_xlabel("t")
    bottom.set_ylabel("purity of (|0>+|1>)/sqrt(2)")
    fig.tight_layout()
    fig.savefig(args.plot, dpi=150)
    print(f"wrote {args.plot}")
