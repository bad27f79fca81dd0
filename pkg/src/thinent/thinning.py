"""The thinning map T_alpha on pmfs.

Thinning replaces a count X by a Binomial(X, alpha) draw.  On pmfs,

    (T_alpha f)_i = sum_{j >= i} C(j, i) alpha^i (1 - alpha)^(j - i) f_j.

Everything is computed analytically; nothing is simulated.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateAlpha, InvalidFraction
from .pmf import Pmf, make_pmf, point_mass

#: Retention probability in [0, 1].
ThinningFraction = float


def check_fraction(alpha: float, name: str = "alpha") -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise InvalidFraction(f"{name} must lie in [0, 1], got {alpha!r}")
    return alpha


def _binomial_rows_forward(n: int, alpha: float) -> np.ndarray:
    # rows[j, i] = bi(i; j, alpha) via bi(i) = bi(i-1) * (j-i+1)/i * alpha/(1-alpha),
    # seeded at bi(0; j) = (1-alpha)^j. Requires alpha < 1.
    j = np.arange(n + 1, dtype=np.float64)
    ratio = alpha / (1.0 - alpha)
    rows = np.zeros((n + 1, n + 1))
    col = (1.0 - alpha) ** j
    rows[:, 0] = col
    for i in range(1, n + 1):
        col = col * np.clip(j - i + 1, 0.0, None) / i * ratio
        rows[:, i] = col
    return rows


def binomial_matrix(n: int, alpha: float) -> np.ndarray:
    """Matrix ``B[j, i] = C(j, i) alpha^i (1-alpha)^(j-i)`` for ``0 <= i, j <= n``.

    The recurrence is seeded from whichever end of each row has the larger
    starting weight, which keeps the seed away from underflow for moderate
    supports (a few hundred atoms).
    """
    alpha = check_fraction(alpha)
    if alpha == 0.0:
        out = np.zeros((n + 1, n + 1))
        out[:, 0] = 1.0
        return out
    if alpha == 1.0:
        return np.eye(n + 1)
    if alpha <= 0.5:
        return _binomial_rows_forward(n, alpha)
    mirrored = _binomial_rows_forward(n, 1.0 - alpha)
    out = np.zeros_like(mirrored)
    for j in range(n + 1):
        out[j, : j + 1] = mirrored[j, j::-1]
    return out


def thin(f: Pmf, alpha: ThinningFraction) -> Pmf:
    """Apply the thinning map T_alpha to ``f``."""
    alpha = check_fraction(alpha)
    if alpha == 0.0:
        return point_mass(0)
    if alpha == 1.0:
        return f
    return make_pmf(f.weights @ binomial_matrix(f.max_value, alpha))


def thin_derivative(f: Pmf, alpha: ThinningFraction) -> np.ndarray:
    """d/dalpha of (T_alpha f)_i for every i in the support of ``f``.

    Uses the closed form ``(i p_i - (i+1) p_{i+1}) / alpha`` with
    ``p = T_alpha f``.  The entries sum to zero.
    """
    alpha = check_fraction(alpha)
    if alpha == 0.0:
        raise DegenerateAlpha("thin_derivative is undefined at alpha = 0")
    p = thin(f, alpha).pad(len(f) + 1)
    k = np.arange(p.size)
    kp = k * p
    return (kp[:-1] - kp[1:]) / alpha
