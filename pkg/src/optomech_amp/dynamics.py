"""Drift matrix of the fluctuation equations, stability, and a time-domain oracle.

Within the rotating-wave approximation the annihilation-operator fluctuations
close on themselves, so a 3x3 complex drift suffices:

    d/dt (da_1, da_2, db) = M (da_1, da_2, db) + d,
    M = [[-Gamma_1, -iJ,      -iG_1 ],
         [-iJ,      -Gamma_2, -iG_2 ],
         [-iG_1*,   -iG_2*,   -Gamma_m]],

with the probe amplitude on the chosen cavity row of d and the mechanical
drive amplitude on the resonator row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnstableSystem
from .params import FluctuationState, Port, ReducedParams

# |Re(eigenvalue)| below this (in units of gamma_m) counts as marginal.
MARGINAL_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class DriftMatrix:
    """3x3 complex drift acting on (da_1, da_2, db)."""

    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class StabilityReport:
    """Eigenvalues of the drift with the margin min(-Re lambda)."""

    eigenvalues: np.ndarray
    stable: bool
    margin: float
    marginal: bool


def build_drift(rp: ReducedParams) -> DriftMatrix:
    """Assemble the drift matrix from the reduced parameters."""
    m = np.array([
        [-rp.Gamma_1, -1j * rp.J, -1j * rp.G_1],
        [-1j * rp.J, -rp.Gamma_2, -1j * rp.G_2],
        [-1j * rp.G_1.conjugate(), -1j * rp.G_2.conjugate(), -rp.Gamma_m],
    ], dtype=complex)
    return DriftMatrix(matrix=m)


def drive_vector(eps_p, eps_b, probe_port: Port = Port.PORT1) -> np.ndarray:
    """Coherent drive terms: probe on the selected cavity, eps_b on the resonator."""
    d = np.zeros(3, dtype=complex)
    d[0 if probe_port is Port.PORT1 else 1] = eps_p
    d[2] = eps_b
    return d


def is_stable(rp: ReducedParams) -> StabilityReport:
    """Linear stability of the fluctuation drift: stable iff all Re(lambda) < 0.

    For positive decay rates the Hermitian part of -M is diag(gamma_1,
    gamma_2, gamma_m) > 0, so the drift is provably stable; the report exists
    to quantify the margin and to catch degenerate parameter sets.
    """
    lam = np.linalg.eigvals(build_drift(rp).matrix)
    margin = float(np.min(-lam.real))
    marginal = bool(np.min(np.abs(lam.real)) < MARGINAL_RTOL * abs(rp.gamma_m))
    return StabilityReport(eigenvalues=lam, stable=margin > 0.0,
                           margin=margin, marginal=marginal)


def integrate_to_steady(rp: ReducedParams, eps_p, eps_b,
                        t_end=None, dt=None,
                        probe_port: Port = Port.PORT1) -> FluctuationState:
    """March dv/dt = M v + d from v(0) = 0 with fixed-step classical RK4.

    Serves as an independent time-domain oracle for the algebraic fluctuation
    steady state: the exact steady state is a fixed point of the RK4 update
    for this affine system, so the remaining error is the un-decayed transient
    ~ exp(-margin * t_end). Defaults: t_end = 25 / margin (transient below
    1e-10 relative) and dt = 0.1 / max|lambda|.

    Raises UnstableSystem when the drift has a non-negative eigenvalue.
    """
    report = is_stable(rp)
    if not report.stable:
        raise UnstableSystem(
            f"cannot integrate to steady state: stability margin {report.margin:.3e} <= 0")
    m = build_drift(rp).matrix
    d = drive_vector(eps_p, eps_b, probe_port)
    if t_end is None:
        t_end = 25.0 / report.margin
    if dt is None:
        dt = 0.1 / float(np.max(np.abs(report.eigenvalues)))
    n = max(1, math.ceil(t_end / dt))
    h = t_end / n
    # For an affine right-hand side the four RK4 stages collapse exactly to
    # the linear update v -> R(hM) v + h S(hM) d with the degree-4 and
    # degree-3 stability polynomials; precomputing them keeps one matvec/step.
    a = h * m
    eye = np.eye(3, dtype=complex)
    a2 = a @ a
    a3 = a2 @ a
    a4 = a3 @ a
    step = eye + a + a2 / 2.0 + a3 / 6.0 + a4 / 24.0
    kick = h * ((eye + a / 2.0 + a2 / 6.0 + a3 / 24.0) @ d)
    v = np.zeros(3, dtype=complex)
    for _ in range(n):
        v = step @ v + kick
    return FluctuationState(da1=complex(v[0]), da2=complex(v[1]), db=complex(v[2]))
