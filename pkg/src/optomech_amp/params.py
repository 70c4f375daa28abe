"""Parameter containers for the driven three-mode optomechanical system.

All frequencies and rates are expressed in one consistent angular-frequency
unit. By convention results are reported in units of the mechanical decay
rate (gamma_m = 1); a single global scale factor recovers physical angular
frequencies, since every formula in this package is homogeneous in frequency.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

from .errors import InvalidRate


class Port(enum.Enum):
    """Cavity port the probe field enters."""

    PORT1 = 1
    PORT2 = 2


@dataclass(frozen=True)
class SystemParams:
    """Static physical constants of the two cavities and the resonator.

    Attributes
    ----------
    omega_1, omega_2 : float
        Optical cavity resonance angular frequencies.
    omega_m : float
        Mechanical resonance angular frequency.
    gamma_1, gamma_2 : float
        Total cavity amplitude decay rates (> 0).
    gamma_m : float
        Mechanical amplitude decay rate (> 0).
    g_1, g_2 : float
        Single-photon optomechanical coupling strengths (real).
    J : float
        Cavity-cavity coupling strength (real).
    eta_1, eta_2 : float
        External-coupling fractions in [0, 1]; gamma_i^e = eta_i * gamma_i.
    """

    omega_1: float
    omega_2: float
    omega_m: float
    gamma_1: float
    gamma_2: float
    gamma_m: float
    g_1: float
    g_2: float
    J: float
    eta_1: float = 1.0
    eta_2: float = 1.0

    def __post_init__(self):
        for name in ("gamma_1", "gamma_2", "gamma_m"):
            if not getattr(self, name) > 0.0:
                raise InvalidRate(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("eta_1", "eta_2"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {eta}")

    @property
    def gamma_1e(self) -> float:
        return self.eta_1 * self.gamma_1

    @property
    def gamma_2e(self) -> float:
        return self.eta_2 * self.gamma_2


@dataclass(frozen=True)
class DriveConfig:
    """Pump, probe, and mechanical-drive settings.

    The mechanical drive frequency is not stored: it is pinned to the
    probe-pump beat, omega_b = omega_p - omega_d. Its amplitude is specified
    relative to the probe through eps_b = y * exp(i phi) * eps_p, with y >= 0
    (a sign of y is folded into phi).
    """

    omega_d: float
    omega_p: float
    eps_1: float
    eps_2: float
    theta_1: float = 0.0
    theta_2: float = 0.0
    eps_p: float = 1.0
    probe_port: Port = Port.PORT1
    y: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not self.eps_p > 0.0:
            raise ValueError(f"eps_p must be positive, got {self.eps_p}")
        if self.y < 0.0:
            raise ValueError(f"y must be >= 0 (fold the sign into phi), got {self.y}")
        if self.eps_1 < 0.0 or self.eps_2 < 0.0:
            raise ValueError("pump amplitudes eps_1, eps_2 must be >= 0")

    @property
    def omega_b(self) -> float:
        """Mechanical drive frequency, fixed at the probe-pump beat."""
        return self.omega_p - self.omega_d

    @property
    def eps_b(self) -> complex:
        """Mechanical drive amplitude eps_b = y e^{i phi} eps_p."""
        return self.y * cmath.exp(1j * self.phi) * self.eps_p


@dataclass(frozen=True)
class SolverOptions:
    """Controls for the self-consistent pump solver.

    tol is relative, applied to the scalar radiation-pressure shift
    x = <b> + <b>*; damping is the under-relaxation factor of the fixed-point
    update. check_uniqueness re-runs the iteration from perturbed starts and
    raises NonUniqueSteadyState if a different fixed point is found.
    """

    tol: float = 1e-12
    max_iter: int = 10000
    damping: float = 0.5
    check_uniqueness: bool = True


@dataclass(frozen=True)
class SteadyState:
    """Converged pump steady state and radiation-pressure-shifted detunings."""

    a1_avg: complex
    a2_avg: complex
    b_avg: complex
    delta_1_prime: float
    delta_2_prime: float
    iterations: int
    residual: float


@dataclass(frozen=True)
class ReducedParams:
    """Linearized-response parameters consumed by every transmission formula.

    Stores the bare decay rates and rotating-frame detunings; the complex
    half-widths Gamma_i = gamma_i + i Delta''_i and Gamma_m = gamma_m + i Delta_m
    are derived properties, so Re(Gamma) always equals the stored rate.

    G_1 and G_2 are the pump-enhanced couplings g_i <a_i> and carry the
    pump-set phases; y and phi fix the mechanical drive relative to the probe.
    Validation happens in the constructors (`reduce`, `reduced_from_direct`);
    the container itself accepts any values so degenerate operating points
    remain expressible for stability studies.
    """

    gamma_1: float
    gamma_2: float
    gamma_m: float
    Delta_pp_1: float
    Delta_pp_2: float
    Delta_m: float
    G_1: complex
    G_2: complex
    J: float
    gamma_1e: float
    gamma_2e: float
    y: float = 0.0
    phi: float = 0.0

    @property
    def Gamma_1(self) -> complex:
        return self.gamma_1 + 1j * self.Delta_pp_1

    @property
    def Gamma_2(self) -> complex:
        return self.gamma_2 + 1j * self.Delta_pp_2

    @property
    def Gamma_m(self) -> complex:
        return self.gamma_m + 1j * self.Delta_m


@dataclass(frozen=True)
class FluctuationState:
    """Steady-state fluctuation amplitudes (<da_1>, <da_2>, <db>)."""

    da1: complex
    da2: complex
    db: complex


def reduced_from_direct(G, theta, J, gamma_1, gamma_2, gamma_m=1.0,
                        eta_1=1.0, eta_2=1.0, Delta_m=0.0,
                        Delta_pp_1=0.0, Delta_pp_2=0.0,
                        y=0.0, phi=0.0) -> ReducedParams:
    """Build ReducedParams at the figure-level parameterization G_1 = G, G_2 = G e^{i theta}.

    This bypasses the pump solver and is the constructor used for all figure
    reproduction, where the couplings and rotating-frame detunings are quoted
    directly in units of gamma_m.
    """
    for name, value in (("gamma_1", gamma_1), ("gamma_2", gamma_2), ("gamma_m", gamma_m)):
        if not value > 0.0:
            raise InvalidRate(f"{name} must be positive, got {value}")
    if G < 0.0:
        raise ValueError(f"G must be >= 0 (fold the sign into theta), got {G}")
    if y < 0.0:
        raise ValueError(f"y must be >= 0 (fold the sign into phi), got {y}")
    for name, eta in (("eta_1", eta_1), ("eta_2", eta_2)):
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {eta}")
    return ReducedParams(
        gamma_1=gamma_1, gamma_2=gamma_2, gamma_m=gamma_m,
        Delta_pp_1=Delta_pp_1, Delta_pp_2=Delta_pp_2, Delta_m=Delta_m,
        G_1=complex(G), G_2=G * cmath.exp(1j * theta), J=J,
        gamma_1e=eta_1 * gamma_1, gamma_2e=eta_2 * gamma_2,
        y=y, phi=phi,
    )
