import math

import numpy as np
import pytest

from conftest import random_reduced
from optomech_amp import (Port, ReducedParams, UnstableSystem, build_drift,
                          drive_vector, integrate_to_steady, is_stable,
                          reduced_from_direct, solve_fluctuations)

HALF_PI = math.pi / 2.0


def _unstable_params():
    # Direct container construction bypasses rate validation on purpose:
    # a negative gamma_1 makes the (1,1) drift entry +0.5, so the decoupled
    # mode grows. Valid positive-rate parameters are provably stable.
    return ReducedParams(gamma_1=-0.5, gamma_2=1.0, gamma_m=1.0,
                         Delta_pp_1=0.0, Delta_pp_2=0.0, Delta_m=0.0,
                         G_1=0j, G_2=0j, J=0.0, gamma_1e=0.0, gamma_2e=1.0)


def test_drift_diagonal_when_uncoupled():
    rp = reduced_from_direct(G=0.0, theta=0.0, J=0.0, gamma_1=1.1, gamma_2=1.5,
                             Delta_m=0.3, Delta_pp_1=-0.2, Delta_pp_2=0.6)
    m = build_drift(rp).matrix
    assert np.allclose(m, np.diag([-(1.1 - 0.2j), -(1.5 + 0.6j), -(1.0 + 0.3j)]))


def test_drift_entries_at_quarter_phase():
    # theta = pi/2: G_2 = i gamma_m, so row 1 gets -i*(i) = +1 and row 3 the conjugates
    rp = reduced_from_direct(G=1.0, theta=HALF_PI, J=1.0, gamma_1=1.1, gamma_2=1.5)
    m = build_drift(rp).matrix
    assert m[0, 2] == pytest.approx(-1j, abs=1e-15)
    assert m[1, 2] == pytest.approx(1.0, abs=1e-15)
    assert m[0, 1] == -1j and m[1, 0] == -1j
    assert m[2, 0] == pytest.approx(-1j, abs=1e-15)   # -i G_1*
    assert m[2, 1] == pytest.approx(-1.0, abs=1e-15)  # -i G_2* = -i(-i) = -1
    assert m[0, 0] == -1.1 and m[1, 1] == -1.5 and m[2, 2] == -1.0


def test_drive_vector_ports():
    d1 = drive_vector(2.0, 3j, Port.PORT1)
    d2 = drive_vector(2.0, 3j, Port.PORT2)
    assert list(d1) == [2.0, 0.0, 3j]
    assert list(d2) == [0.0, 2.0, 3j]


def test_eigenvalue_trace_identity():
    rng = np.random.default_rng(5)
    for _ in range(50):
        rp = random_reduced(rng)
        report = is_stable(rp)
        total = -(rp.Gamma_1 + rp.Gamma_2 + rp.Gamma_m)
        assert np.sum(report.eigenvalues) == pytest.approx(total, rel=1e-12)


def test_uncoupled_eigenvalues_are_the_bare_widths():
    rp = reduced_from_direct(G=0.0, theta=0.0, J=0.0, gamma_1=1.1, gamma_2=1.5)
    report = is_stable(rp)
    assert report.stable
    got = sorted(report.eigenvalues.real)
    assert got == pytest.approx([-1.5, -1.1, -1.0])


def test_valid_parameters_are_always_stable():
    # Hermitian part of -M is diag(gamma) > 0, so no positive-rate point
    # can cross the stability boundary; check a broad random sample anyway.
    rng = np.random.default_rng(17)
    for _ in range(200):
        report = is_stable(random_reduced(rng))
        assert report.stable
        assert report.margin > 0


def test_stability_margin_shrinks_with_mechanical_loss():
    margins = []
    for gm in (1.0, 1e-2, 1e-4):
        rp = reduced_from_direct(G=1.0, theta=0.7, J=1.0, gamma_1=1.1, gamma_2=1.5,
                                 gamma_m=gm)
        margins.append(is_stable(rp).margin)
    assert margins[0] > margins[1] > margins[2] > 0


def test_stability_invariant_under_global_coupling_phase():
    rng = np.random.default_rng(29)
    for _ in range(25):
        rp = random_reduced(rng)
        chi = rng.uniform(0, 2 * np.pi)
        rot = np.exp(1j * chi)
        rotated = ReducedParams(
            gamma_1=rp.gamma_1, gamma_2=rp.gamma_2, gamma_m=rp.gamma_m,
            Delta_pp_1=rp.Delta_pp_1, Delta_pp_2=rp.Delta_pp_2, Delta_m=rp.Delta_m,
            G_1=rp.G_1 * rot, G_2=rp.G_2 * rot, J=rp.J,
            gamma_1e=rp.gamma_1e, gamma_2e=rp.gamma_2e, y=rp.y, phi=rp.phi)
        assert is_stable(rotated).margin == pytest.approx(is_stable(rp).margin,
                                                          rel=1e-9, abs=1e-12)


def test_integrator_zero_drive_returns_zero():
    rp = reduced_from_direct(G=1.0, theta=0.3, J=1.0, gamma_1=1.1, gamma_2=1.5)
    fs = integrate_to_steady(rp, 0.0, 0.0)
    assert fs.da1 == 0 and fs.da2 == 0 and fs.db == 0


def test_integrator_matches_algebraic_solution(fig4_point):
    eps_b = fig4_point.y * np.exp(1j * fig4_point.phi)
    alg = solve_fluctuations(fig4_point, 1.0, eps_b)
    ode = integrate_to_steady(fig4_point, 1.0, eps_b)
    va = np.array([alg.da1, alg.da2, alg.db])
    vo = np.array([ode.da1, ode.da2, ode.db])
    assert np.max(np.abs(vo - va)) / np.max(np.abs(va)) < 1e-8


def test_integrator_matches_on_port2_probe():
    rng = np.random.default_rng(41)
    rp = random_reduced(rng)
    alg = solve_fluctuations(rp, 1.0, 2j, probe_port=Port.PORT2)
    ode = integrate_to_steady(rp, 1.0, 2j, probe_port=Port.PORT2)
    va = np.array([alg.da1, alg.da2, alg.db])
    vo = np.array([ode.da1, ode.da2, ode.db])
    assert np.max(np.abs(vo - va)) / np.max(np.abs(va)) < 1e-8


def test_integrator_handles_stiff_width_ratio():
    # gamma_2 = 100 gamma_m with the documented step bound dt <= 0.01/gamma_2
    rp = reduced_from_direct(G=1.0, theta=0.7, J=1.2, gamma_1=1.1, gamma_2=100.0,
                             gamma_m=1.0, Delta_m=0.3, Delta_pp_1=-0.4,
                             Delta_pp_2=2.0, y=5.0, phi=0.9)
    eps_b = rp.y * np.exp(1j * rp.phi)
    alg = solve_fluctuations(rp, 1.0, eps_b)
    ode = integrate_to_steady(rp, 1.0, eps_b, dt=0.01 / 100.0)
    va = np.array([alg.da1, alg.da2, alg.db])
    vo = np.array([ode.da1, ode.da2, ode.db])
    assert np.max(np.abs(vo - va)) / np.max(np.abs(va)) < 1e-8


def test_integrator_step_refinement_is_fourth_order():
    # halving dt should cut the finite-time error by ~2^4 against the exact
    # matrix-exponential propagation of the same affine system
    from scipy.linalg import expm

    rp = reduced_from_direct(G=1.0, theta=1.0, J=1.0, gamma_1=1.1, gamma_2=1.5,
                             y=3.0, phi=0.4)
    eps_b = rp.y * np.exp(1j * rp.phi)
    m = build_drift(rp).matrix
    d = drive_vector(1.0, eps_b)
    t_end = 5.0
    v_ss = np.linalg.solve(-m, d)
    exact = v_ss + expm(m * t_end) @ (-v_ss)
    errors = []
    for dt in (0.4, 0.2, 0.1):
        ode = integrate_to_steady(rp, 1.0, eps_b, t_end=t_end, dt=dt)
        vo = np.array([ode.da1, ode.da2, ode.db])
        errors.append(np.max(np.abs(vo - exact)))
    ratios = [errors[k] / errors[k + 1] for k in range(2)]
    for ratio in ratios:
        assert 8.0 < ratio < 32.0, f"expected ~16x per halving, got {ratio}"


def test_integrator_rejects_unstable_drift():
    rp = _unstable_params()
    assert not is_stable(rp).stable
    with pytest.raises(UnstableSystem):
        integrate_to_steady(rp, 1.0, 0.0)
