"""Finite-support probability mass functions on the non-negative integers.

A :class:`Pmf` stores a dense weight vector starting at index 0.  Values are
immutable; every operation returns a new, renormalized and trimmed ``Pmf``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NegativeWeight, ThinentError, ZeroMass

NORMALIZATION_TOL = 1e-12


def _trim(w: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(w)
    if nz.size == 0:
        return w[:1]
    return w[: nz[-1] + 1]


class Pmf:
    """Probability mass function with weights ``weights[i] = P(X = i)``.

    Construct through :func:`make_pmf` unless the weights are already
    normalized and trimmed; the constructor only validates.
    """

    __slots__ = ("_w",)

    def __init__(self, weights: Sequence[float] | np.ndarray):
        w = np.array(weights, dtype=np.float64, copy=True).reshape(-1)
        if w.size == 0:
            raise ZeroMass("empty weight vector")
        if not np.all(np.isfinite(w)):
            raise ThinentError("weights must be finite")
        if np.any(w < 0):
            raise NegativeWeight(f"negative weight at index {int(np.argmax(w < 0))}")
        if abs(w.sum() - 1.0) > NORMALIZATION_TOL:
            raise ThinentError(f"weights sum to {w.sum()!r}, not 1")
        if w.size > 1 and w[-1] == 0:
            raise ThinentError("trailing zero weights must be trimmed")
        w.setflags(write=False)
        self._w = w

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def max_value(self) -> int:
        """Largest integer in the support."""
        return self._w.size - 1

    def __len__(self) -> int:
        return self._w.size

    def __getitem__(self, i):
        return self._w[i]

    def __iter__(self):
        return iter(self._w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        return np.array_equal(self._w, other._w)

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{x:.6g}" for x in self._w[:8])
        if self._w.size > 8:
            body += f", ... ({self._w.size} atoms)"
        return f"Pmf([{body}])"

    def pad(self, length: int) -> np.ndarray:
        """Weights zero-padded (never truncated) to ``length``."""
        out = np.zeros(max(length, self._w.size))
        out[: self._w.size] = self._w
        return out


def make_pmf(raw_weights: Sequence[float] | np.ndarray) -> Pmf:
    """Normalize and trim non-negative weights into a :class:`Pmf`.

    >>> make_pmf([1, 4, 1]).weights.tolist()
    [0.16666666666666666, 0.6666666666666666, 0.16666666666666666]
    """
    w = np.asarray(raw_weights, dtype=np.float64).reshape(-1)
    if w.size == 0:
        raise ZeroMass("empty weight vector")
    if not np.all(np.isfinite(w)):
        raise ThinentError("weights must be finite")
    if np.any(w < 0):
        raise NegativeWeight(f"negative weight at index {int(np.argmax(w < 0))}")
    total = w.sum()
    if total <= 0:
        raise ZeroMass("weights sum to zero")
    return Pmf(_trim(w / total))


def point_mass(k: int) -> Pmf:
    """The point mass at ``k`` (``delta_k``)."""
    if k < 0:
        raise ThinentError("point mass must sit on a non-negative integer")
    w = np.zeros(k + 1)
    w[k] = 1.0
    return Pmf(w)


def convolve(f: Pmf, g: Pmf) -> Pmf:
    """Pmf of X + Y for independent X ~ f, Y ~ g."""
    return make_pmf(np.convolve(f.weights, g.weights))


def n_fold_convolve(f: Pmf, n: int) -> Pmf:
    """``f`` convolved with itself ``n`` times; ``n = 0`` gives the point mass at 0.

    Uses binary exponentiation, so the cost is O(log n) convolutions.
    """
    if n < 0:
        raise ThinentError("n must be non-negative")
    result = point_mass(0)
    base = f
    while n:
        if n & 1:
            result = convolve(result, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    return result


def mean(f: Pmf) -> float:
    w = f.weights
    return float(np.dot(np.arange(w.size), w))


def variance(f: Pmf) -> float:
    w = f.weights
    k = np.arange(w.size)
    m = np.dot(k, w)
    return float(np.dot((k - m) ** 2, w))


def total_variation(f: Pmf, g: Pmf) -> float:
    """Total variation distance, half the l1 distance over the union of supports."""
    n = max(len(f), len(g))
    return 0.5 * float(np.abs(f.pad(n) - g.pad(n)).sum())
