"""Entropy functionals on pmfs, in nats.

Besides Shannon entropy and relative entropy this module provides the
Poisson-referenced decomposition ``H = -D - L``, the Poisson entropy curve
``E(t) = H(Po(t))`` and its inverse, the discrete entropy power
``V(X) = E^{-1}(H(X))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, pdtrc

from .errors import SupportViolation, ThinentError
from .pmf import Pmf, make_pmf, mean, point_mass

POISSON_TAIL = 1e-15
BISECTION_WIDTH = 1e-12


def entropy(f: Pmf) -> float:
    w = f.weights
    w = w[w > 0]
    return float(-np.dot(w, np.log(w)))


def relative_entropy(f: Pmf, g: Pmf) -> float:
    """D(f || g) = sum f_i log(f_i / g_i); raises if supp(f) is not inside supp(g)."""
    n = max(len(f), len(g))
    fw, gw = f.pad(n), g.pad(n)
    on = fw > 0
    if np.any(gw[on] == 0):
        bad = int(np.flatnonzero(on & (gw == 0))[0])
        raise SupportViolation(f"f has mass at {bad} where g has none")
    return float(np.dot(fw[on], np.log(fw[on]) - np.log(gw[on])))


def poisson_log_pmf(k, rate: float) -> np.ndarray:
    """log po(k; rate) = k log(rate) - rate - log k!, evaluated in log space."""
    k = np.asarray(k, dtype=np.float64)
    if rate == 0:
        return np.where(k == 0, 0.0, -np.inf)
    return k * math.log(rate) - rate - gammaln(k + 1)


def poisson_cutoff(rate: float, tail_eps: float = POISSON_TAIL) -> int:
    """Smallest N with P(Po(rate) > N) < tail_eps."""
    if rate == 0:
        return 0
    hi = int(math.ceil(rate + 20.0 * math.sqrt(rate) + 50.0))
    while True:
        k = np.arange(hi + 1)
        below = np.flatnonzero(pdtrc(k, rate) < tail_eps)
        if below.size:
            return int(below[0])
        hi *= 2


def poisson_pmf(rate: float, tail_eps: float = POISSON_TAIL, min_support: int = 0) -> Pmf:
    """Po(rate) truncated where the discarded tail mass drops below ``tail_eps``.

    The truncated weights are renormalized.  ``min_support`` forces at least
    that many atoms (less any trailing ones that underflow to zero), which is
    handy when the result is used as a reference measure for a pmf with a
    longer support.
    """
    if rate < 0:
        raise ThinentError("Poisson rate must be non-negative")
    if not 0 < tail_eps <= 1e-6:
        raise ThinentError("tail_eps must lie in (0, 1e-6]")
    if rate == 0:
        return point_mass(0)
    n = max(poisson_cutoff(rate, tail_eps) + 1, min_support)
    return make_pmf(np.exp(poisson_log_pmf(np.arange(n), rate)))


@dataclass(frozen=True)
class EntropyDecomposition:
    """H, D = D(f || Po(rate)) and L = E log po(X; rate) with rate = mean(f)."""

    h: float
    d: float
    l: float
    rate: float

    @property
    def residual(self) -> float:
        """h + d + l, zero up to rounding."""
        return self.h + self.d + self.l


def l_functional(f: Pmf, rate: float | None = None) -> float:
    """E log po(X; rate); ``rate`` defaults to the mean of ``f``."""
    lam = mean(f) if rate is None else rate
    w = f.weights
    on = w > 0
    return float(np.dot(w[on], poisson_log_pmf(np.flatnonzero(on), lam)))


def decompose(f: Pmf, tail_eps: float = POISSON_TAIL) -> EntropyDecomposition:
    lam = mean(f)
    if lam == 0:
        return EntropyDecomposition(0.0, 0.0, 0.0, 0.0)
    ref = poisson_pmf(lam, tail_eps, min_support=len(f))
    try:
        d = relative_entropy(f, ref)
    except SupportViolation:
        # reference atoms underflowed; same truncated reference in log space
        n = max(len(ref), len(f))
        log_ref = poisson_log_pmf(np.arange(n), lam)
        log_ref -= np.log(np.exp(log_ref).sum())
        w = f.pad(n)
        on = w > 0
        d = float(np.dot(w[on], np.log(w[on]) - log_ref[on]))
    return EntropyDecomposition(h=entropy(f), d=d, l=l_functional(f, lam), rate=lam)


def _bernstein_cutoff(t: float) -> int:
    # P(Po(t) >= t + x) <= exp(-x^2 / (2 (t + x/3))); x = 12 sqrt(t) + 40 puts
    # the bound below e^-55 for every t, far under POISSON_TAIL.
    return int(math.ceil(t + 12.0 * math.sqrt(t) + 40.0))


def poisson_entropy(t: float) -> float:
    """E(t) = H(Po(t)) = t(1 - log t) + sum_i po(i; t) log i!."""
    if t < 0:
        raise ThinentError("Poisson rate must be non-negative")
    if t == 0:
        return 0.0
    k = np.arange(_bernstein_cutoff(t) + 1, dtype=np.float64)
    logfact = gammaln(k + 1)
    p = np.exp(k * math.log(t) - t - logfact)
    return float(t * (1.0 - math.log(t)) + np.dot(p, logfact))


def inverse_poisson_entropy(h: float, width: float = BISECTION_WIDTH) -> float:
    """The unique t >= 0 with E(t) = h, by bisection on the increasing map E."""
    if h < 0:
        raise ThinentError("entropy must be non-negative")
    if h == 0:
        return 0.0
    lo, hi = 0.0, 1.0
    while poisson_entropy(hi) < h:
        lo, hi = hi, 2.0 * hi
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if poisson_entropy(mid) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def entropy_power(f: Pmf) -> float:
    """Discrete entropy power: the Poisson rate whose entropy equals H(f)."""
    return inverse_poisson_entropy(entropy(f))
