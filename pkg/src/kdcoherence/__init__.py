"""Kirkwood-Dirac quasiprobabilities as probes of coherence in prime dimension."""

from ._search import OptimizerConfig
from .coherence import (
    CoherenceEstimate,
    c_kd_all_bases,
    c_kd_hat,
    c_l1,
    check_convexity,
    check_faithfulness,
    check_pio_monotonicity,
    uncertainty_bound,
)
from .core import (
    Basis,
    computational_basis,
    dephase,
    offdiag_l1,
    pure_density,
    random_density,
    random_incoherent,
    random_pure_state,
    validate_density,
)
from .exceptions import (  # noqa: F401
    KDError, InvalidDensity, NotHermitian, TraceNotOne, NotPositive, NotOrthonormal, DimensionMismatch, NotPrime, NotOddPrime, NotMub, NotInF, SolverFailure, OptimizerDiverged, InvalidPartition, ZeroPostselection, MuOutOfRange, CounterexampleFound,
)
from .geometry import VerificationReport, in_projector_hull, is_incoherent, verify_theorem1
from .kd import KDDistribution, imag_l1, is_kd_classical, kd_distribution, kd_matrix
from .mub import (
    MubFamily,
    PhaseDressing,
    dft_basis,
    dressed_basis,
    is_mutually_unbiased,
    standard_mubs,
)
from .pio import (
    PioChannel,
    UpPioSpec,
    apply_channel,
    apply_up_pio,
    random_pio_channel,
    random_up_pio,
    up_pio_kraus,
)
from .verify import run_target, verify_appendix_b, verify_theorem2, verify_theorem3
from .weak_values import coherence_from_weak_values, weak_value, witness_coherence

__version__ = "0.1.0"
