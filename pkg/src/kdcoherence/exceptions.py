"""Exception hierarchy for kdcoherence."""


class KDError(Exception):
    """Base class for all package errors."""


class InvalidDensity(KDError, ValueError):
    """Raised when a matrix fails a density-operator invariant."""

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class NotHermitian(InvalidDensity):
    pass


class TraceNotOne(InvalidDensity):
    pass


class NotPositive(InvalidDensity):
    pass


class NotOrthonormal(KDError, ValueError):
    pass


class DimensionMismatch(KDError, ValueError):
    pass


class NotPrime(KDError, ValueError):
    pass


class NotOddPrime(NotPrime):
    pass


class NotMub(KDError, ValueError):
    pass


class NotInF(NotMub):
    """Basis is not mutually unbiased with the reference basis."""


class SolverFailure(KDError, RuntimeError):
    pass


class OptimizerDiverged(KDError, RuntimeError):
    pass


class InvalidPartition(KDError, ValueError):
    pass


class ZeroPostselection(KDError, ValueError):
    """Postselection probability vanishes; the weak value is undefined."""


class MuOutOfRange(KDError, ValueError):
    pass


class CounterexampleFound(KDError, AssertionError):
    """A theorem check failed on a concrete state.

    Attributes carry the violating state, the KD matrices involved and the
    name of the failed check so the case can be replayed.
    """

    def __init__(self, check, state, q_matrices=None, detail=""):
        super().__init__(f"counterexample in check {check!r}: {detail}")
        self.check = check
        self.state = state
        self.q_matrices = q_matrices or {}
        self.detail = detail
