import numpy as np
import pytest

from optomech_amp import ReducedParams, reduced_from_direct

HALF_PI = np.pi / 2.0


def random_reduced(rng, y_max=50.0, eta_min=0.1):
    """Random operating point in the ranges the property suites quote:

    rates and coupling magnitudes in [0.5, 5] gamma_m, phases uniform,
    detunings in [-5, 5] gamma_m, y in [0, y_max].
    """
    return reduced_from_direct(
        G=rng.uniform(0.5, 5.0),
        theta=rng.uniform(0.0, 2.0 * np.pi),
        J=rng.uniform(0.5, 5.0),
        gamma_1=rng.uniform(0.5, 5.0),
        gamma_2=rng.uniform(0.5, 5.0),
        gamma_m=1.0,
        eta_1=rng.uniform(eta_min, 1.0),
        eta_2=rng.uniform(eta_min, 1.0),
        Delta_m=rng.uniform(-5.0, 5.0),
        Delta_pp_1=rng.uniform(-5.0, 5.0),
        Delta_pp_2=rng.uniform(-5.0, 5.0),
        y=rng.uniform(0.0, y_max),
        phi=rng.uniform(0.0, 2.0 * np.pi),
    )


def swap_labels(rp):
    """Exchange every 1 <-> 2 label of a ReducedParams."""
    return ReducedParams(
        gamma_1=rp.gamma_2, gamma_2=rp.gamma_1, gamma_m=rp.gamma_m,
        Delta_pp_1=rp.Delta_pp_2, Delta_pp_2=rp.Delta_pp_1, Delta_m=rp.Delta_m,
        G_1=rp.G_2, G_2=rp.G_1, J=rp.J,
        gamma_1e=rp.gamma_2e, gamma_2e=rp.gamma_1e,
        y=rp.y, phi=rp.phi,
    )


@pytest.fixture
def fig4_point():
    """Operating point of the gain-vs-drive figure at y = 20."""
    return reduced_from_direct(G=1.0, theta=HALF_PI, J=1.0,
                               gamma_1=1.1, gamma_2=1.5, gamma_m=1.0,
                               y=20.0, phi=HALF_PI)
