"""Phase control of the nonreciprocity.

Left/middle: T21 and T12 versus the coupling phase theta (phi = pi/2) and
versus the drive phase phi (theta = pi/2); at theta = pi/2 the backward
probability T12 is exactly flat in phi because the direct photon path through
the cavities cancels. Right: isolation map over the (theta, phi) plane.

Run:  python demos/02_phase_maps.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from optomech_amp import (SweepAxis, SweepSpec, figure_preset,
                          reduced_from_direct, run_sweep)

OUT_DIR = Path(__file__).parent / "output"
OUT_DIR.mkdir(exist_ok=True)

fig, axes = plt.subplots(1, 3, figsize=(13.5, 3.6))

for ax, name, xlabel in ((axes[0], "fig3a", r"$\theta$"),
                         (axes[1], "fig3b", r"$\varphi$")):
    result = run_sweep(figure_preset(name))
    x = result.axis_rows[:, 0]
    ax.plot(x, result.columns["T21"], label=r"$T_{21}$")
    ax.plot(x, result.columns["T12"], "--", label=r"$T_{12}$")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("transmission probability")
    ax.grid(alpha=0.25)
    ax.legend(frameon=False)

result_b = run_sweep(figure_preset("fig3b"))
t12 = result_b.columns["T12"]
print(f"fig3b: T12 spread over phi = {np.ptp(t12):.3e} (mean {t12.mean():.6g})")

# isolation landscape over both phases
base = reduced_from_direct(G=1.0, theta=0.0, J=1.0, gamma_1=1.1, gamma_2=1.5,
                           y=20.0, phi=0.0)
grid = SweepSpec(base=base,
                 axes=(SweepAxis("theta", 0.0, 2 * np.pi, 121),
                       SweepAxis("phi", 0.0, 2 * np.pi, 121)),
                 outputs=("isolation_db",))
surface = run_sweep(grid, workers=4)
iso = surface.columns["isolation_db"].reshape(121, 121)
im = axes[2].imshow(iso.T, origin="lower", aspect="auto",
                    extent=(0, 2 * np.pi, 0, 2 * np.pi), cmap="magma")
axes[2].set_xlabel(r"$\theta$")
axes[2].set_ylabel(r"$\varphi$")
axes[2].set_title("isolation (dB)", fontsize=10)
fig.colorbar(im, ax=axes[2])

best = np.unravel_index(np.argmax(iso), iso.shape)
print(f"strongest isolation {iso[best]:.1f} dB at theta = {best[0] * 2 * np.pi / 120:.3f}, "
      f"phi = {best[1] * 2 * np.pi / 120:.3f}")

fig.tight_layout()
target = OUT_DIR / "phase_maps.png"
fig.savefig(target, dpi=160)
print(f"saved {target}")
