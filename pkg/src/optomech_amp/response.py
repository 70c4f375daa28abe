"""Directional probe transmission of the linearized three-mode system.

Three independent routes produce the transmission coefficients t_21 (probe in
port 1, out port 2) and t_12 (probe in port 2, out port 1):

* ``transmission_general``    -- closed forms in the full complex parameters,
* ``transmission_simplified`` -- the equal-coupling form with G_1 = G,
  G_2 = G e^{i theta},
* ``transmission_direct``     -- exact 3x3 linear solve of the fluctuation
  steady state composed with the input-output relation.

All three agree to floating-point accuracy; keeping them separate gives the
test suite mutually independent oracles. ``transmission_special_point`` adds
the closed forms valid at the optimal operating point
G = |G_{1,2}| = J = gamma_m, vanishing detunings, theta = phi = pi/2.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import build_drift, drive_vector
from .errors import (DegenerateRates, InvalidRate, PreconditionViolation,
                     SingularSystem)
from .params import FluctuationState, Port, ReducedParams

# Gain diverges at a response singularity; below this relative size the
# denominator is treated as zero instead of returning huge finite values.
_SINGULAR_RTOL = 1e-14

ISOLATION_CLAMP_DB = 300.0


class Method(enum.Enum):
    """Route that produced a TransmissionResult."""

    DIRECT_SOLVE = "direct-solve"
    CLOSED_FORM = "closed-form"
    SPECIAL_POINT = "special-point"


@dataclass(frozen=True)
class TransmissionResult:
    """Complex transmission coefficients and probabilities at one operating point."""

    t21: complex
    t12: complex
    T21: float
    T12: float
    isolation_db: float
    method: Method

    @classmethod
    def from_coefficients(cls, t21: complex, t12: complex, method: Method) -> "TransmissionResult":
        T21 = abs(t21) ** 2
        T12 = abs(t12) ** 2
        return cls(t21=t21, t12=t12, T21=T21, T12=T12,
                   isolation_db=isolation_db(T21, T12), method=method)


def isolation_db(T21: float, T12: float) -> float:
    """10 log10(T_fwd / T_rev) with forward the larger direction, clamped to 300 dB."""
    fwd, rev = max(T21, T12), min(T21, T12)
    if fwd == 0.0:
        return 0.0
    if rev == 0.0:
        return ISOLATION_CLAMP_DB
    return min(ISOLATION_CLAMP_DB, 10.0 * math.log10(fwd / rev))


# ---------------------------------------------------------------------------
# Direct route: fluctuation solve + input-output relation
# ---------------------------------------------------------------------------

def solve_fluctuations(rp: ReducedParams, eps_p, eps_b,
                       probe_port: Port = Port.PORT1) -> FluctuationState:
    """Exact steady state of the linearized fluctuation equations.

    Solves the 3x3 complex system (-M) v = d, where M is the drift matrix and
    d carries the probe amplitude on the selected cavity plus the mechanical
    drive amplitude. Raises SingularSystem when det(-M) is numerically zero,
    which signals operation at a divergence point of the response.
    """
    a = -build_drift(rp).matrix
    d = drive_vector(eps_p, eps_b, probe_port)
    det = complex(np.linalg.det(a))
    hadamard = float(np.prod(np.sqrt(np.sum(np.abs(a) ** 2, axis=1))))
    if abs(det) <= _SINGULAR_RTOL * hadamard:
        raise SingularSystem(
            f"fluctuation system is singular (|det| = {abs(det):.3e})")
    v = np.linalg.solve(a, d)
    return FluctuationState(da1=complex(v[0]), da2=complex(v[1]), db=complex(v[2]))


def output_fields(rp: ReducedParams, fs: FluctuationState,
                  inputs=(0j, 0j)) -> tuple[complex, complex]:
    """Input-output relation at both ports: da_out = sqrt(2 gamma_e) da - da_in."""
    da1_in, da2_in = inputs
    da1_out = math.sqrt(2.0 * rp.gamma_1e) * fs.da1 - da1_in
    da2_out = math.sqrt(2.0 * rp.gamma_2e) * fs.da2 - da2_in
    return da1_out, da2_out


def transmission_direct(rp: ReducedParams, eps_p: float = 1.0) -> TransmissionResult:
    """Both coefficients via the solve -> input-output pipeline, one probe per direction.

    The coefficients depend on the drive only through (y, phi): eps_p cancels
    because eps_b = y e^{i phi} eps_p scales with it.
    """
    if not eps_p > 0.0:
        raise ValueError(f"eps_p must be positive, got {eps_p}")
    eps_b = rp.y * cmath.exp(1j * rp.phi) * eps_p
    t21 = _pipeline_coefficient(rp, eps_p, eps_b, Port.PORT1)
    t12 = _pipeline_coefficient(rp, eps_p, eps_b, Port.PORT2)
    return TransmissionResult.from_coefficients(t21, t12, Method.DIRECT_SOLVE)


def _pipeline_coefficient(rp, eps_p, eps_b, probe_port):
    if rp.gamma_1e == 0.0 or rp.gamma_2e == 0.0:
        return 0j  # one side has no external channel
    fs = solve_fluctuations(rp, eps_p, eps_b, probe_port)
    if probe_port is Port.PORT1:
        da_in = eps_p / math.sqrt(2.0 * rp.gamma_1e)
        _, da_out = output_fields(rp, fs, (da_in, 0j))
    else:
        da_in = eps_p / math.sqrt(2.0 * rp.gamma_2e)
        da_out, _ = output_fields(rp, fs, (0j, da_in))
    return da_out / da_in


# ---------------------------------------------------------------------------
# Closed-form routes
# ---------------------------------------------------------------------------

def transmission_general(rp: ReducedParams) -> TransmissionResult:
    """Closed-form t_21 and t_12 in the full complex parameters.

    t_12 evaluates the same expression as t_21 with every 1 <-> 2 label
    swapped, so the index-swap symmetry holds bit-for-bit.
    """
    t21 = _closed_coefficient(rp.Gamma_1, rp.Gamma_2, rp.G_1, rp.G_2,
                              rp.gamma_1e, rp.gamma_2e, rp.J, rp.Gamma_m,
                              rp.y, rp.phi)
    t12 = _closed_coefficient(rp.Gamma_2, rp.Gamma_1, rp.G_2, rp.G_1,
                              rp.gamma_2e, rp.gamma_1e, rp.J, rp.Gamma_m,
                              rp.y, rp.phi)
    return TransmissionResult.from_coefficients(t21, t12, Method.CLOSED_FORM)


def _closed_coefficient(Gamma_a, Gamma_b, G_a, G_b, gamma_ae, gamma_be,
                        J, Gamma_m, y, phi):
    """Coefficient for a probe entering side a and leaving side b:

    -2 sqrt(gamma_a^e gamma_b^e) [ (iJ Gamma_m + G_a* G_b)(Gamma_m - i G_a y e^{i phi})
                                   + i G_b y e^{i phi} (Gamma_a Gamma_m + |G_a|^2) ] / D.
    """
    drive = y * cmath.exp(1j * phi)
    num = ((1j * J * Gamma_m + G_a.conjugate() * G_b) * (Gamma_m - 1j * G_a * drive)
           + 1j * G_b * drive * (Gamma_a * Gamma_m + abs(G_a) ** 2))
    den = _denominator(Gamma_a, Gamma_b, G_a, G_b, J, Gamma_m)
    return -2.0 * math.sqrt(gamma_ae * gamma_be) * num / den


def _denominator(Gamma_a, Gamma_b, G_a, G_b, J, Gamma_m):
    p_diag = (Gamma_a * Gamma_m + abs(G_a) ** 2) * (Gamma_b * Gamma_m + abs(G_b) ** 2)
    p_cross = (1j * J * Gamma_m + G_a * G_b.conjugate()) * (1j * J * Gamma_m + G_a.conjugate() * G_b)
    den = p_diag - p_cross
    if abs(den) <= _SINGULAR_RTOL * (abs(p_diag) + abs(p_cross)):
        raise SingularSystem(
            f"response denominator vanishes (|D| = {abs(den):.3e}); "
            "the operating point sits at a gain divergence")
    return den


def transmission_simplified(rp: ReducedParams) -> TransmissionResult:
    """Equal-coupling closed forms with G_1 = G and G_2 = G e^{i theta}.

    Requires |G_1| = |G_2| (to 1e-12 relative). The expressions are written
    for real positive G_1; a complex G_1 is first rotated into that gauge,
    which shifts phi by arg(G_1) and leaves both coefficients unchanged.
    """
    mag1, mag2 = abs(rp.G_1), abs(rp.G_2)
    scale = max(mag1, mag2)
    if scale > 0.0 and abs(mag1 - mag2) > 1e-12 * scale:
        raise PreconditionViolation(
            f"|G_1| = {mag1} and |G_2| = {mag2} must agree to 1e-12 relative")
    G = mag1
    theta = cmath.phase(rp.G_2) - cmath.phase(rp.G_1)
    phi = rp.phi + cmath.phase(rp.G_1)
    G1m, G2m, Gm = rp.Gamma_1, rp.Gamma_2, rp.Gamma_m
    g2 = G * G
    cross_m = 1j * rp.J * Gm + g2 * cmath.exp(-1j * theta)
    cross_p = 1j * rp.J * Gm + g2 * cmath.exp(1j * theta)
    p_diag = (G1m * Gm + g2) * (G2m * Gm + g2)
    p_cross = cross_m * cross_p
    den = p_diag - p_cross
    if abs(den) <= _SINGULAR_RTOL * (abs(p_diag) + abs(p_cross)):
        raise SingularSystem(
            f"response denominator vanishes (|D| = {abs(den):.3e})")
    pref = -2.0 * math.sqrt(rp.gamma_1e * rp.gamma_2e)
    t21 = pref * (cross_p * (Gm - 1j * G * rp.y * cmath.exp(1j * phi))
                  + 1j * G * (G1m * Gm + g2) * rp.y * cmath.exp(1j * (theta + phi))) / den
    t12 = pref * (cross_m * (Gm - 1j * G * rp.y * cmath.exp(1j * (theta + phi)))
                  + 1j * G * (G2m * Gm + g2) * rp.y * cmath.exp(1j * phi)) / den
    return TransmissionResult.from_coefficients(t21, t12, Method.CLOSED_FORM)


# ---------------------------------------------------------------------------
# Special operating point
# ---------------------------------------------------------------------------

def transmission_special_point(gamma_1, gamma_2, gamma_m, y) -> tuple[float, float]:
    """(T21, T12) at G = |G_{1,2}| = J = gamma_m, zero detunings, theta = phi = pi/2:

    T21 = 4 g1 g2 [ (2 gm (y+1) - y (g1+gm)) / ((g1+gm)(g2+gm)) ]^2
    T12 = 4 y^2 g1 g2 / (g1+gm)^2
    """
    for name, value in (("gamma_1", gamma_1), ("gamma_2", gamma_2), ("gamma_m", gamma_m)):
        if not value > 0.0:
            raise InvalidRate(f"{name} must be positive, got {value}")
    if y < 0.0:
        raise ValueError(f"y must be >= 0, got {y}")
    T21 = 4.0 * gamma_1 * gamma_2 * (
        (2.0 * gamma_m * (y + 1.0) - y * (gamma_1 + gamma_m))
        / ((gamma_1 + gamma_m) * (gamma_2 + gamma_m))) ** 2
    T12 = 4.0 * y ** 2 * gamma_1 * gamma_2 / (gamma_1 + gamma_m) ** 2
    return T21, T12


def special_point_result(gamma_1, gamma_2, gamma_m, y) -> TransmissionResult:
    """TransmissionResult built from the exact special-point coefficients

    t21 = -2i sqrt(g1 g2) (2 gm (y+1) - y (g1+gm)) / ((g1+gm)(g2+gm)),
    t12 = +2 sqrt(g1 g2) y / (g1+gm).

    The probabilities equal the transmission_special_point closed forms to
    rounding; here they are derived from the coefficients so the
    T = |t|^2 invariant holds exactly.
    """
    transmission_special_point(gamma_1, gamma_2, gamma_m, y)  # input validation
    root = math.sqrt(gamma_1 * gamma_2)
    bracket = 2.0 * gamma_m * (y + 1.0) - y * (gamma_1 + gamma_m)
    t21 = -2j * root * bracket / ((gamma_1 + gamma_m) * (gamma_2 + gamma_m))
    t12 = complex(2.0 * root * y / (gamma_1 + gamma_m))
    return TransmissionResult.from_coefficients(t21, t12, Method.SPECIAL_POINT)


def critical_drive(gamma_1, gamma_m) -> float:
    """Drive ratio y_c = 2 gamma_m / (gamma_1 - gamma_m) at which T21 vanishes.

    Valid at the special operating point for any gamma_2 > 0. Strong
    amplification needs |y_c| >> 1, i.e. gamma_1 close to gamma_m; at
    gamma_1 = gamma_m the ratio diverges (unbounded amplification limit) and
    DegenerateRates is raised.
    """
    for name, value in (("gamma_1", gamma_1), ("gamma_m", gamma_m)):
        if not value > 0.0:
            raise InvalidRate(f"{name} must be positive, got {value}")
    if gamma_1 == gamma_m:
        raise DegenerateRates(
            "gamma_1 = gamma_m: critical drive diverges (unbounded amplification limit)")
    return 2.0 * gamma_m / (gamma_1 - gamma_m)
