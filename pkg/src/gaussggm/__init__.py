"""Genuine multimode entanglement of Haar-random pure Gaussian states."""

from ._accel import backend
from .errors import (
    ConstraintViolationError,
    GaussGGMError,
    InvalidArgumentError,
    UnphysicalStateError,
    UnsupportedStateError,
)
from .ggm import (
    GgmResult,
    asymptotic_ggm,
    bipartition_max_schmidt,
    compute_ggm,
    compute_ggm_single_mode,
    ggm_values,
)
from .haar import (
    RandomStateSpec,
    SqueezingSpectrum,
    embed_unitary,
    make_rng,
    sample_haar_unitary,
    sample_state,
    sample_states,
    uniform_squeezing,
    validate_squeezing,
)
from .montecarlo import (
    EnsembleSpec,
    EnsembleStats,
    Histogram,
    TailEstimate,
    gamma_equivalence_test,
    left_invariance_test,
    run_ensemble,
    symplectic_concentration_probe,
    tail_probability,
)
from .symplectic import (
    average_energy_per_mode,
    is_orthosymplectic,
    is_pure,
    reduce,
    symplectic_form,
    symplectic_spectrum,
    tmsv_covariance,
)

__version__ = "0.1.0"
