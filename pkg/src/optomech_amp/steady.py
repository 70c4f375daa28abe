"""Self-consistent pump steady state and reduction to the probe frame.

With the probe and mechanical drive switched off, the strong pumps set a
classical working point

    <a_1> = [(gamma_2 + i D'_2) e_1 e^{i th_1} - i J e_2 e^{i th_2}] / den
    <a_2> = [(gamma_1 + i D'_1) e_2 e^{i th_2} - i J e_1 e^{i th_1}] / den
    <b>   = -i (g_1 |<a_1>|^2 + g_2 |<a_2>|^2) / (gamma_m + i omega_m)

with den = (gamma_1 + i D'_1)(gamma_2 + i D'_2) + J^2 and the shifted
detunings D'_i = Delta_i + g_i (<b> + <b>*). The three relations close on the
single real unknown x = <b> + <b>* and are solved by damped fixed-point
iteration on x.
"""

from __future__ import annotations

import cmath
import warnings

from .errors import (NonConvergence, NonUniqueSteadyState, RWAValidityWarning,
                     SingularCavityMatrix)
from .params import (DriveConfig, ReducedParams, SolverOptions, SteadyState,
                     SystemParams)

# Branches whose shifts differ by more than this (relative) count as distinct
# fixed points when probing for multistability.
_BRANCH_RTOL = 1e-8


def _cavity_averages(sys: SystemParams, drive: DriveConfig, x: float):
    """Solve the 2x2 cavity block at radiation-pressure shift x = <b> + <b>*."""
    d1p = (sys.omega_1 - drive.omega_d) + sys.g_1 * x
    d2p = (sys.omega_2 - drive.omega_d) + sys.g_2 * x
    f1 = sys.gamma_1 + 1j * d1p
    f2 = sys.gamma_2 + 1j * d2p
    den = f1 * f2 + sys.J ** 2
    if abs(den) <= 1e-14 * (abs(f1) * abs(f2) + sys.J ** 2):
        raise SingularCavityMatrix(
            f"cavity determinant vanishes at shifted detunings ({d1p}, {d2p})")
    e1 = drive.eps_1 * cmath.exp(1j * drive.theta_1)
    e2 = drive.eps_2 * cmath.exp(1j * drive.theta_2)
    a1 = (f2 * e1 - 1j * sys.J * e2) / den
    a2 = (f1 * e2 - 1j * sys.J * e1) / den
    return a1, a2, d1p, d2p


def _mech_average(sys: SystemParams, a1: complex, a2: complex) -> complex:
    return -1j * (sys.g_1 * abs(a1) ** 2 + sys.g_2 * abs(a2) ** 2) / (sys.gamma_m + 1j * sys.omega_m)


def _residual(sys, drive, a1, a2, b) -> float:
    """Back-substitution error of the stored averages in the three relations."""
    t1, t2, _, _ = _cavity_averages(sys, drive, 2.0 * b.real)
    tb = _mech_average(sys, t1, t2)
    r1 = abs(a1 - t1) / max(1.0, abs(t1))
    r2 = abs(a2 - t2) / max(1.0, abs(t2))
    r3 = abs(b - tb) / max(1.0, abs(tb))
    return max(r1, r2, r3)


def _iterate(sys, drive, opts, x0: float) -> SteadyState:
    x = x0
    change = float("inf")
    for it in range(1, opts.max_iter + 1):
        a1, a2, _, _ = _cavity_averages(sys, drive, x)
        x_new = 2.0 * _mech_average(sys, a1, a2).real
        change = abs(x_new - x)
        if change <= opts.tol * max(1.0, abs(x_new)):
            a1, a2, d1p, d2p = _cavity_averages(sys, drive, x_new)
            b = _mech_average(sys, a1, a2)
            return SteadyState(a1_avg=a1, a2_avg=a2, b_avg=b,
                               delta_1_prime=d1p, delta_2_prime=d2p,
                               iterations=it,
                               residual=_residual(sys, drive, a1, a2, b))
        x = x + opts.damping * (x_new - x)
    raise NonConvergence(
        f"pump steady state did not converge in {opts.max_iter} iterations "
        f"(last fixed-point change {change:.3e}); the pump may be bistable",
        iterations=opts.max_iter, residual=change)


def solve_pump_steady_state(sys: SystemParams, drive: DriveConfig,
                            opts: SolverOptions | None = None) -> SteadyState:
    """Solve the coupled pump relations self-consistently.

    Starts from <b> = 0 and alternates (shifted-detuning update -> cavity
    solve -> mechanical update) with under-relaxation until successive values
    of x = <b> + <b>* agree to opts.tol (relative).

    When opts.check_uniqueness is set, the iteration is re-run from the
    converged shift perturbed by +/-10%; if a different fixed point is found
    the solver raises NonUniqueSteadyState carrying every branch rather than
    silently picking one.

    Raises
    ------
    NonConvergence
        Iteration cap reached (reports the last residual).
    SingularCavityMatrix
        The 2x2 cavity system is degenerate at the current detunings.
    NonUniqueSteadyState
        Multiple self-consistent branches detected (pump bistability).
    """
    opts = opts or SolverOptions()
    primary = _iterate(sys, drive, opts, 0.0)
    if opts.check_uniqueness and (sys.g_1 != 0.0 or sys.g_2 != 0.0):
        x_star = 2.0 * primary.b_avg.real
        branches = [primary]
        for x0 in (1.1 * x_star, 0.9 * x_star):
            try:
                alt = _iterate(sys, drive, opts, x0)
            except (NonConvergence, SingularCavityMatrix):
                continue  # a probe that fails cannot assert another branch
            if all(not _same_branch(known, alt) for known in branches):
                branches.append(alt)
        if len(branches) > 1:
            raise NonUniqueSteadyState(
                f"{len(branches)} distinct pump steady states found; "
                "operating point is bistable", branches=branches)
    return primary


def _same_branch(a: SteadyState, b: SteadyState) -> bool:
    xa, xb = 2.0 * a.b_avg.real, 2.0 * b.b_avg.real
    return abs(xa - xb) <= _BRANCH_RTOL * max(1.0, abs(xa), abs(xb))


def reduce(sys: SystemParams, drive: DriveConfig, ss: SteadyState) -> ReducedParams:
    """Rotate the converged pump point into the probe rotating frame.

    Gamma_i = gamma_i + i (Delta'_i - (omega_p - omega_d)),
    Gamma_m = gamma_m + i (omega_m - (omega_p - omega_d)),
    G_i = g_i <a_i>, gamma_i^e = eta_i gamma_i.
    """
    beat = drive.omega_p - drive.omega_d
    dpp1 = ss.delta_1_prime - beat
    dpp2 = ss.delta_2_prime - beat
    dm = sys.omega_m - beat
    _warn_if_rwa_strained(sys, dpp1, dpp2, dm)
    return ReducedParams(
        gamma_1=sys.gamma_1, gamma_2=sys.gamma_2, gamma_m=sys.gamma_m,
        Delta_pp_1=dpp1, Delta_pp_2=dpp2, Delta_m=dm,
        G_1=sys.g_1 * ss.a1_avg, G_2=sys.g_2 * ss.a2_avg,
        J=sys.J, gamma_1e=sys.gamma_1e, gamma_2e=sys.gamma_2e,
        y=drive.y, phi=drive.phi,
    )


def _warn_if_rwa_strained(sys, dpp1, dpp2, dm):
    # Dropping counter-rotating terms needs near-resonant, sideband-resolved
    # operation: small rotating-frame detunings and omega_m >> cavity widths.
    if (max(abs(dpp1), abs(dpp2), abs(dm)) > 0.1 * sys.omega_m
            or sys.omega_m < 10.0 * max(sys.gamma_1, sys.gamma_2)):
        warnings.warn(
            "operating point strains the rotating-wave approximation "
            f"(detunings ({dpp1:.3g}, {dpp2:.3g}, {dm:.3g}) vs omega_m = {sys.omega_m:.3g}, "
            f"cavity widths ({sys.gamma_1:.3g}, {sys.gamma_2:.3g}))",
            RWAValidityWarning, stacklevel=3)
