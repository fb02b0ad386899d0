"""Exception hierarchy."""


class GRNError(Exception):
    """Base class for all package errors."""


class SpecificationError(GRNError, ValueError):
    """A network specification violates a structural or parameter invariant."""


class NumericError(GRNError, ArithmeticError):
    """Non-finite values or a failed numerical procedure."""


class StepFailure(NumericError):
    """The integrator could not take an acceptable step."""


class NonConvergence(NumericError):
    """Steady state was not reached before ``t_end``."""

    def __init__(self, t_end, deriv_norm, state=None):
        self.t_end = t_end
        self.deriv_norm = deriv_norm
        self.state = state
        super().__init__(
            f"no steady state by t_end={t_end:g} s (|dx/dt|_inf = {deriv_norm:.3g} nM/s)"
        )
