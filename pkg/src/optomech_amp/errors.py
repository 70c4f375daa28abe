"""Exception and warning types shared across the package."""


class OptomechError(Exception):
    """Base class for every error raised by optomech_amp."""


class NonConvergence(OptomechError):
    """Pump fixed-point iteration hit the iteration cap.

    Carries the last fixed-point residual; a residual that refuses to shrink
    usually signals operation in a bistable pump regime.
    """

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class NonUniqueSteadyState(OptomechError):
    """Distinct pump steady states reached from perturbed initial guesses."""

    def __init__(self, message, branches=()):
        super().__init__(message)
        self.branches = tuple(branches)


class SingularCavityMatrix(OptomechError):
    """(gamma_1 + i Delta'_1)(gamma_2 + i Delta'_2) + J^2 is numerically zero."""


class SingularSystem(OptomechError):
    """Fluctuation-response denominator is numerically zero (divergence point)."""


class PreconditionViolation(OptomechError):
    """Operation called outside its stated domain of validity."""


class InvalidRate(OptomechError):
    """A decay rate that must be positive is zero or negative."""


class DegenerateRates(OptomechError):
    """gamma_1 = gamma_m: the critical drive diverges (unbounded amplification limit)."""


class UnstableSystem(OptomechError):
    """Time integration requested for a drift matrix with a non-negative eigenvalue."""


class UnknownPreset(OptomechError):
    """Figure preset name not recognized."""


class InvalidSpec(OptomechError):
    """Malformed SweepSpec."""


class RWAValidityWarning(UserWarning):
    """Operating point strains the rotating-wave approximation."""
