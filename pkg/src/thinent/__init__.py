"""Thinning, ultra-log-concavity and entropy inequalities on the non-negative integers."""

from .entropy import (
    EntropyDecomposition,
    decompose,
    entropy,
    entropy_power,
    inverse_poisson_entropy,
    l_functional,
    poisson_entropy,
    poisson_log_pmf,
    poisson_pmf,
    relative_entropy,
)
from .errors import (
    DegenerateAlpha,
    DomainError,
    InvalidFraction,
    LengthMismatch,
    NegativeWeight,
    PreconditionFailed,
    SupportViolation,
    ThinentError,
    ZeroMass,
)
from .pmf import (
    Pmf,
    convolve,
    make_pmf,
    mean,
    n_fold_convolve,
    point_mass,
    total_variation,
    variance,
)
from .thinning import binomial_matrix, thin, thin_derivative
from .ulc import BernoulliSumSpec, bernoulli_sum, is_ulc, random_ulc, ulc_ratios

__version__ = "0.1.0"

__all__ = [
    "bernoulli_sum",
    "BernoulliSumSpec",
    "binomial_matrix",
    "convolve",
    "decompose",
    "DegenerateAlpha",
    "DomainError",
    "entropy",
    "entropy_power",
    "EntropyDecomposition",
    "InvalidFraction",
    "inverse_poisson_entropy",
    "is_ulc",
    "l_functional",
    "LengthMismatch",
    "make_pmf",
    "mean",
    "n_fold_convolve",
    "NegativeWeight",
    "Pmf",
    "point_mass",
    "poisson_entropy",
    "poisson_log_pmf",
    "poisson_pmf",
    "PreconditionFailed",
    "random_ulc",
    "relative_entropy",
    "SupportViolation",
    "thin",
    "thin_derivative",
    "ThinentError",
    "total_variation",
    "ulc_ratios",
    "variance",
    "ZeroMass",
]
