"""Directional optical amplification in a three-mode optomechanical system.

Two linearly coupled cavities share a mechanically driven resonator; strong
red-detuned pumps set the working point and a weak probe is injected into one
cavity while a frequency-matched mechanical drive closes the interference
loop. This package computes the pump steady state, the linearized
fluctuation response, and the directional transmission coefficients t_21 /
t_12 by three mutually independent routes, plus parameter sweeps that
reproduce the published transmission spectra, phase maps, and gain curves.
"""

__version__ = "0.1.0"

from .errors import (DegenerateRates, InvalidRate, InvalidSpec, NonConvergence,
                     NonUniqueSteadyState, OptomechError, PreconditionViolation,
                     RWAValidityWarning, SingularCavityMatrix, SingularSystem,
                     UnknownPreset, UnstableSystem)
from .params import (DriveConfig, FluctuationState, Port, ReducedParams,
                     SolverOptions, SteadyState, SystemParams,
                     reduced_from_direct)
from .steady import reduce, solve_pump_steady_state
from .dynamics import (DriftMatrix, StabilityReport, build_drift, drive_vector,
                       integrate_to_steady, is_stable)
from .response import (Method, TransmissionResult, critical_drive,
                       isolation_db, output_fields, solve_fluctuations,
                       special_point_result, transmission_direct,
                       transmission_general, transmission_simplified,
                       transmission_special_point)
from .sweep import (SweepAxis, SweepResult, SweepSpec, figure_preset,
                    run_sweep)

__all__ = [
    "__version__",
    # errors
    "OptomechError", "NonConvergence", "NonUniqueSteadyState",
    "SingularCavityMatrix", "SingularSystem", "PreconditionViolation",
    "InvalidRate", "DegenerateRates", "UnstableSystem", "UnknownPreset",
    "InvalidSpec", "RWAValidityWarning",
    # parameter types
    "Port", "SystemParams", "DriveConfig", "SolverOptions", "SteadyState",
    "ReducedParams", "FluctuationState", "reduced_from_direct",
    # pump steady state
    "solve_pump_steady_state", "reduce",
    # dynamics
    "DriftMatrix", "StabilityReport", "build_drift", "drive_vector",
    "is_stable", "integrate_to_steady",
    # response
    "Method", "TransmissionResult", "solve_fluctuations", "output_fields",
    "transmission_general", "transmission_simplified", "transmission_direct",
    "transmission_special_point", "special_point_result", "critical_drive",
    "isolation_db",
    # sweeps
    "SweepAxis", "SweepSpec", "SweepResult", "run_sweep", "figure_preset",
]
