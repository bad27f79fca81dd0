"""Ultra-log-concavity and Bernoulli sums."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ThinentError
from .pmf import Pmf, make_pmf
from .thinning import thin

ULC_SLACK = 1e-12


@dataclass(frozen=True)
class BernoulliSumSpec:
    """Success probabilities (a_1, ..., a_n) of independent Bernoulli summands."""

    params: tuple[float, ...]

    def __init__(self, params: Sequence[float]):
        p = tuple(float(x) for x in np.asarray(params, dtype=np.float64).reshape(-1))
        if not p:
            raise ThinentError("a Bernoulli sum needs at least one summand")
        if any(not 0.0 <= x <= 1.0 for x in p):
            raise ThinentError(f"Bernoulli parameters must lie in [0, 1]: {p}")
        object.__setattr__(self, "params", p)

    def __len__(self) -> int:
        return len(self.params)


def is_ulc(f: Pmf, slack: float = ULC_SLACK) -> bool:
    """True when ``i! f_i`` is log-concave.

    Requires a contiguous support and, at each interior index,
    ``i f_i^2 >= (i+1) f_{i-1} f_{i+1}`` (equivalently the ratio
    ``(i+1) f_{i+1} / f_i`` is non-increasing).  Pmfs with interior zeros are
    classified as not ULC.
    """
    w = f.weights
    nz = np.flatnonzero(w)
    lo, hi = nz[0], nz[-1]
    if hi - lo + 1 != nz.size:
        return False
    if hi - lo < 2:
        return True
    i = np.arange(lo + 1, hi, dtype=np.float64)
    mid = w[lo + 1 : hi]
    left = i * mid * mid
    right = (i + 1) * w[lo:hi - 1] * w[lo + 2 : hi + 1]
    return bool(np.all(left >= right * (1.0 - slack)))


def ulc_ratios(f: Pmf) -> np.ndarray:
    """The ratios ``(i+1) f_{i+1} / f_i`` over the support (minus its last atom)."""
    w = f.weights
    nz = np.flatnonzero(w)
    lo, hi = nz[0], nz[-1]
    i = np.arange(lo, hi)
    return (i + 1) * w[lo + 1 : hi + 1] / w[lo:hi]


def bernoulli_sum(spec: BernoulliSumSpec | Sequence[float]) -> Pmf:
    """Pmf of a sum of independent Bernoulli(a_i) variables."""
    if not isinstance(spec, BernoulliSumSpec):
        spec = BernoulliSumSpec(spec)
    w = np.ones(1)
    for a in spec.params:
        w = np.convolve(w, (1.0 - a, a))
    return make_pmf(w)


def random_ulc(max_n: int, seed: int, thin_prob: float = 0.5) -> Pmf:
    """Deterministic pseudo-random ULC pmf.

    A Bernoulli sum of ``1..max_n`` summands with uniform parameters; with
    probability ``thin_prob`` the result is further thinned by a uniform
    alpha.  Both operations preserve ultra-log-concavity.
    """
    if max_n < 1:
        raise ThinentError("max_n must be at least 1")
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_n + 1))
    f = bernoulli_sum(rng.uniform(size=n))
    if rng.uniform() < thin_prob:
        f = thin(f, float(rng.uniform()))
    return f
