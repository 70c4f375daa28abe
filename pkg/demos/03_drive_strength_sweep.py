"""Gain versus mechanical drive strength, and the critical drive y_c.

At the optimal phases the forward gain grows as T12 ~ y^2 while the reverse
transmission T21 passes exactly through zero at y_c = 2 gamma_m /
(gamma_1 - gamma_m) = 20 for gamma_1 = 1.1 gamma_m. The closed special-point
forms are overlaid on the general sweep to show they coincide.

Run:  python demos/03_drive_strength_sweep.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from optomech_amp import (critical_drive, figure_preset, run_sweep,
                          transmission_special_point)

OUT_DIR = Path(__file__).parent / "output"
OUT_DIR.mkdir(exist_ok=True)

result = run_sweep(figure_preset("fig4"))
y = result.axis_rows[:, 0]
T21 = result.columns["T21"]
T12 = result.columns["T12"]

yc = critical_drive(1.1, 1.0)
print(f"critical drive y_c = {yc:.12f}")
print(f"T21 at the grid point nearest y_c: {T21[np.argmin(np.abs(y - yc))]:.3e}")
print(f"T12 at y = 20: {T12[np.argmin(np.abs(y - 20.0))]:.6f}  (4 y^2 g1 g2/(g1+gm)^2 "
      f"= {transmission_special_point(1.1, 1.5, 1.0, 20.0)[1]:.6f})")

closed = np.array([transmission_special_point(1.1, 1.5, 1.0, yy) for yy in y])

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 3.6))
ax1.plot(y, T21, label=r"$T_{21}$ (sweep)")
ax1.plot(y, closed[:, 0], ":", label=r"$T_{21}$ (closed form)")
ax1.axvline(yc, color="k", lw=0.8, alpha=0.5)
ax1.annotate(r"$y_c$", (yc, ax1.get_ylim()[1] * 0.9))
ax1.set_xlabel("y")
ax1.set_ylabel("reverse transmission")
ax1.legend(frameon=False)
ax1.grid(alpha=0.25)

ax2.plot(y, T12, label=r"$T_{12}$ (sweep)")
ax2.plot(y, closed[:, 1], ":", label=r"$T_{12}$ (closed form)")
ax2.set_xlabel("y")
ax2.set_ylabel("forward gain")
ax2.legend(frameon=False)
ax2.grid(alpha=0.25)

fig.tight_layout()
target = OUT_DIR / "drive_strength_sweep.png"
fig.savefig(target, dpi=160)
print(f"saved {target}")
