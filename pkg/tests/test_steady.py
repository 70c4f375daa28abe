import cmath
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from optomech_amp import (DriveConfig, NonConvergence, NonUniqueSteadyState,
                          RWAValidityWarning, SolverOptions, SteadyState,
                          SystemParams, reduce, solve_pump_steady_state)


def _pump_map(sysp, drive, x):
    """One application of the coupled pump relations at shift x = <b> + <b>*.

    Re-coded here straight from the printed steady-state formulas so the
    scalar root-find below is independent of the package's iteration.
    """
    d1p = sysp.omega_1 - drive.omega_d + sysp.g_1 * x
    d2p = sysp.omega_2 - drive.omega_d + sysp.g_2 * x
    f1 = sysp.gamma_1 + 1j * d1p
    f2 = sysp.gamma_2 + 1j * d2p
    den = f1 * f2 + sysp.J ** 2
    e1 = drive.eps_1 * cmath.exp(1j * drive.theta_1)
    e2 = drive.eps_2 * cmath.exp(1j * drive.theta_2)
    a1 = (f2 * e1 - 1j * sysp.J * e2) / den
    a2 = (f1 * e2 - 1j * sysp.J * e1) / den
    b = -1j * (sysp.g_1 * abs(a1) ** 2 + sysp.g_2 * abs(a2) ** 2) / (sysp.gamma_m + 1j * sysp.omega_m)
    return 2.0 * b.real, (a1, a2, b)


def _weakly_coupled(rng):
    sysp = SystemParams(
        omega_1=rng.uniform(50, 150), omega_2=rng.uniform(50, 150),
        omega_m=rng.uniform(80, 120),
        gamma_1=rng.uniform(0.5, 5), gamma_2=rng.uniform(0.5, 5), gamma_m=1.0,
        g_1=rng.uniform(0, 1e-3), g_2=rng.uniform(0, 1e-3),
        J=rng.uniform(0, 3))
    drive = DriveConfig(
        omega_d=0.0, omega_p=sysp.omega_m,
        eps_1=rng.uniform(0, 10), eps_2=rng.uniform(0, 10),
        theta_1=rng.uniform(0, 2 * np.pi), theta_2=rng.uniform(0, 2 * np.pi))
    return sysp, drive


def test_decoupled_limit_matches_analytic_cavity_solution():
    # g_1 = g_2 = 0, eps_2 = 0: single linear solve with unshifted detunings
    sysp = SystemParams(omega_1=3.0, omega_2=5.0, omega_m=100.0,
                        gamma_1=1.0, gamma_2=2.0, gamma_m=1.0,
                        g_1=0.0, g_2=0.0, J=1.5)
    drive = DriveConfig(omega_d=1.0, omega_p=101.0, eps_1=2.0, eps_2=0.0, theta_1=0.4)
    ss = solve_pump_steady_state(sysp, drive)
    d1, d2 = 2.0, 4.0
    den = (1.0 + 1j * d1) * (2.0 + 1j * d2) + 1.5 ** 2
    expected_a1 = (2.0 + 1j * d2) * 2.0 * cmath.exp(0.4j) / den
    expected_a2 = -1j * 1.5 * 2.0 * cmath.exp(0.4j) / den
    assert ss.a1_avg == pytest.approx(expected_a1, rel=1e-14)
    assert ss.a2_avg == pytest.approx(expected_a2, rel=1e-14)
    assert ss.b_avg == 0
    assert ss.delta_1_prime == d1 and ss.delta_2_prime == d2


def test_undriven_pumps_give_zero_fixed_point():
    sysp = SystemParams(omega_1=1, omega_2=1, omega_m=100,
                        gamma_1=1, gamma_2=1, gamma_m=1, g_1=0.1, g_2=0.1, J=1)
    drive = DriveConfig(omega_d=0, omega_p=100, eps_1=0.0, eps_2=0.0)
    ss = solve_pump_steady_state(sysp, drive)
    assert ss.a1_avg == 0 and ss.a2_avg == 0 and ss.b_avg == 0
    assert ss.delta_1_prime == 1.0 and ss.delta_2_prime == 1.0
    assert ss.residual == 0.0


def test_weakly_coupled_residuals_below_1e10():
    rng = np.random.default_rng(11)
    for _ in range(100):
        sysp, drive = _weakly_coupled(rng)
        ss = solve_pump_steady_state(sysp, drive)
        assert ss.residual < 1e-10


def test_against_scalar_brentq_oracle():
    # independent route: bracketed root of f(x) = F(x) - x on the real shift
    rng = np.random.default_rng(23)
    for _ in range(25):
        sysp, drive = _weakly_coupled(rng)
        ss = solve_pump_steady_state(sysp, drive)
        f = lambda x: _pump_map(sysp, drive, x)[0] - x
        lo = -1.0
        while f(lo) < 0.0:
            lo *= 2.0
        x_ref = brentq(f, lo, 1.0, xtol=1e-15)
        assert 2.0 * ss.b_avg.real == pytest.approx(x_ref, abs=5e-12)


def test_gauge_covariance_under_common_pump_phase():
    sysp = SystemParams(omega_1=90.0, omega_2=110.0, omega_m=100.0,
                        gamma_1=1.0, gamma_2=2.0, gamma_m=1.0,
                        g_1=5e-4, g_2=8e-4, J=1.0)
    base = dict(omega_d=0.0, omega_p=100.0, eps_1=4.0, eps_2=7.0,
                theta_1=0.3, theta_2=1.1)
    chi = 0.77
    ss0 = solve_pump_steady_state(sysp, DriveConfig(**base))
    shifted = dict(base, theta_1=base["theta_1"] + chi, theta_2=base["theta_2"] + chi)
    ss1 = solve_pump_steady_state(sysp, DriveConfig(**shifted))
    rot = cmath.exp(1j * chi)
    assert ss1.a1_avg == pytest.approx(ss0.a1_avg * rot, rel=1e-13)
    assert ss1.a2_avg == pytest.approx(ss0.a2_avg * rot, rel=1e-13)
    assert ss1.b_avg == pytest.approx(ss0.b_avg, rel=1e-13, abs=1e-18)
    assert ss1.delta_1_prime == pytest.approx(ss0.delta_1_prime, rel=1e-13)


def test_linear_scaling_without_optomechanics():
    sysp = SystemParams(omega_1=2.0, omega_2=4.0, omega_m=100.0,
                        gamma_1=1.0, gamma_2=1.0, gamma_m=1.0,
                        g_1=0.0, g_2=0.0, J=0.7)
    d1 = DriveConfig(omega_d=0, omega_p=100, eps_1=1.5, eps_2=2.5, theta_1=0.2, theta_2=2.2)
    d2 = DriveConfig(omega_d=0, omega_p=100, eps_1=3.0, eps_2=5.0, theta_1=0.2, theta_2=2.2)
    ss1 = solve_pump_steady_state(sysp, d1)
    ss2 = solve_pump_steady_state(sysp, d2)
    assert ss2.a1_avg == 2.0 * ss1.a1_avg
    assert ss2.a2_avg == 2.0 * ss1.a2_avg


def test_index_swap_symmetry():
    rng = np.random.default_rng(31)
    for _ in range(20):
        sysp, drive = _weakly_coupled(rng)
        swapped_sys = SystemParams(
            omega_1=sysp.omega_2, omega_2=sysp.omega_1, omega_m=sysp.omega_m,
            gamma_1=sysp.gamma_2, gamma_2=sysp.gamma_1, gamma_m=sysp.gamma_m,
            g_1=sysp.g_2, g_2=sysp.g_1, J=sysp.J,
            eta_1=sysp.eta_2, eta_2=sysp.eta_1)
        swapped_drive = DriveConfig(
            omega_d=drive.omega_d, omega_p=drive.omega_p,
            eps_1=drive.eps_2, eps_2=drive.eps_1,
            theta_1=drive.theta_2, theta_2=drive.theta_1)
        ss = solve_pump_steady_state(sysp, drive)
        ss_swap = solve_pump_steady_state(swapped_sys, swapped_drive)
        assert ss_swap.a1_avg == ss.a2_avg
        assert ss_swap.a2_avg == ss.a1_avg
        assert ss_swap.b_avg == ss.b_avg


def test_singular_cavity_matrix_raises():
    from optomech_amp import SingularCavityMatrix

    # vanishing widths with Delta'_1 Delta'_2 = J^2 put the cavity block on
    # its degeneracy; positive widths of any honest size prevent this
    sysp = SystemParams(omega_1=2.0, omega_2=2.0, omega_m=100.0,
                        gamma_1=1e-300, gamma_2=1e-300, gamma_m=1.0,
                        g_1=0.0, g_2=0.0, J=1.0)
    drive = DriveConfig(omega_d=1.0, omega_p=101.0, eps_1=1.0, eps_2=0.0)
    with pytest.raises(SingularCavityMatrix):
        solve_pump_steady_state(sysp, drive)


def test_nonconvergence_reports_last_residual():
    sysp = SystemParams(omega_1=1.0, omega_2=1.0, omega_m=1.0,
                        gamma_1=0.2, gamma_2=0.2, gamma_m=1.0,
                        g_1=1.0, g_2=0.0, J=0.0)
    drive = DriveConfig(omega_d=0.0, omega_p=1.0, eps_1=0.4, eps_2=0.0)
    with pytest.raises(NonConvergence) as excinfo:
        solve_pump_steady_state(sysp, drive, SolverOptions(max_iter=2))
    assert excinfo.value.iterations == 2
    assert excinfo.value.residual > 0


def test_bistable_pump_raises_non_unique_steady_state():
    # Single driven cavity near the saddle-node of its bistable cubic:
    # the +/-10% probes straddle the middle (unstable) branch and land on
    # the two attractors, which must be surfaced rather than hidden.
    sysp = SystemParams(omega_1=1.0, omega_2=1.0, omega_m=1.0,
                        gamma_1=0.2, gamma_2=0.2, gamma_m=1.0,
                        g_1=1.0, g_2=0.0, J=0.0)
    drive = DriveConfig(omega_d=0.0, omega_p=1.0, eps_1=math.sqrt(0.1618), eps_2=0.0)
    opts = SolverOptions(damping=0.2, max_iter=50000)
    with pytest.raises(NonUniqueSteadyState) as excinfo:
        solve_pump_steady_state(sysp, drive, opts)
    branches = excinfo.value.branches
    assert len(branches) >= 2
    shifts = sorted(2.0 * b.b_avg.real for b in branches)
    assert shifts[0] < -1.0 < -0.5 < shifts[-1] < 0.0  # distinct wells
    for branch in branches:
        assert branch.residual < 1e-9  # each reported branch is self-consistent


def test_reduce_resonance_condition_zeroes_detunings():
    # omega_p - omega_d = omega_m and Delta'_i = omega_m
    sysp = SystemParams(omega_1=100.0, omega_2=100.0, omega_m=100.0,
                        gamma_1=1.1, gamma_2=1.5, gamma_m=1.0,
                        g_1=0.0, g_2=0.0, J=1.0)
    drive = DriveConfig(omega_d=0.0, omega_p=100.0, eps_1=1.0, eps_2=1.0, y=20.0,
                        phi=0.5)
    ss = solve_pump_steady_state(sysp, drive)
    rp = reduce(sysp, drive, ss)
    assert rp.Gamma_1 == 1.1 + 0j
    assert rp.Gamma_2 == 1.5 + 0j
    assert rp.Gamma_m == 1.0 + 0j
    assert rp.y == 20.0 and rp.phi == 0.5


def test_reduce_zero_coupling_gives_zero_G():
    sysp = SystemParams(omega_1=100, omega_2=100, omega_m=100,
                        gamma_1=1, gamma_2=1, gamma_m=1, g_1=0.0, g_2=0.0, J=1)
    drive = DriveConfig(omega_d=0, omega_p=100, eps_1=3.0, eps_2=1.0)
    rp = reduce(sysp, drive, solve_pump_steady_state(sysp, drive))
    assert rp.G_1 == 0 and rp.G_2 == 0


def test_reduce_inherits_pump_phase():
    sysp = SystemParams(omega_1=100, omega_2=100, omega_m=100,
                        gamma_1=1, gamma_2=1, gamma_m=1, g_1=0.3, g_2=0.0, J=0)
    drive = DriveConfig(omega_d=0, omega_p=100, eps_1=1, eps_2=0)
    ss = SteadyState(a1_avg=2.0 * cmath.exp(0.9j), a2_avg=0j, b_avg=0j,
                     delta_1_prime=100.0, delta_2_prime=100.0,
                     iterations=1, residual=0.0)
    rp = reduce(sysp, drive, ss)
    assert rp.G_1 == pytest.approx(0.6 * cmath.exp(0.9j), rel=1e-15)
    assert rp.gamma_1e == 1.0


def test_reduce_warns_when_rwa_is_strained():
    sysp = SystemParams(omega_1=5.0, omega_2=5.0, omega_m=5.0,
                        gamma_1=1.0, gamma_2=1.0, gamma_m=1.0,
                        g_1=0.0, g_2=0.0, J=1.0)  # omega_m < 10 gamma
    drive = DriveConfig(omega_d=0.0, omega_p=5.0, eps_1=1.0, eps_2=1.0)
    ss = solve_pump_steady_state(sysp, drive)
    with pytest.warns(RWAValidityWarning):
        reduce(sysp, drive, ss)


def test_reduce_silent_when_sideband_resolved():
    import warnings

    sysp = SystemParams(omega_1=100.0, omega_2=100.0, omega_m=100.0,
                        gamma_1=1.0, gamma_2=1.0, gamma_m=1.0,
                        g_1=1e-4, g_2=1e-4, J=1.0)
    drive = DriveConfig(omega_d=0.0, omega_p=100.0, eps_1=1.0, eps_2=1.0)
    ss = solve_pump_steady_state(sysp, drive)
    with warnings.catch_warnings():
        warnings.simplefilter("error", RWAValidityWarning)
        reduce(sysp, drive, ss)
