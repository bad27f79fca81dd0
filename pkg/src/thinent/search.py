"""Budgeted search for near-violations of the conjectured inequalities.

The objective is the slack of an inequality as a function of a point in the
unit box.  The minimizer is random restarts followed by coordinate descent
with a shrinking step.  A negative slack beyond tolerance is never treated as
a disproof; it is flagged together with the full instance so it can be
re-examined at higher precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .entropy import entropy, entropy_power
from .pmf import convolve
from .thinning import thin
from .ulc import bernoulli_sum
from .verifiers import POWER_TOL, THEOREM_TOL

TARGETS = ("shepp_olkin", "thinned_epi", "rtepi")

# alpha is mapped into [ALPHA_MARGIN, 1 - ALPHA_MARGIN]
ALPHA_MARGIN = 0.01


@dataclass
class Objective:
    """Slack as a function of a point in [0, 1]^dim."""

    name: str
    dim: int
    slack: Callable[[np.ndarray], float]
    decode: Callable[[np.ndarray], dict[str, Any]]
    tolerance: float


@dataclass
class RestartResult:
    start: np.ndarray
    best_x: np.ndarray
    best_slack: float
    evaluations: int


@dataclass
class SearchResult:
    target: str
    min_slack: float
    argmin: dict[str, Any]
    evaluations: int
    tolerance: float
    restarts: list[RestartResult] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        """True when the minimum slack is below ``-tolerance``; inspect ``argmin``."""
        return self.min_slack < -self.tolerance


def _alpha(x: float) -> float:
    return ALPHA_MARGIN + (1.0 - 2.0 * ALPHA_MARGIN) * float(x)


def shepp_olkin_objective(n: int, t_grid: int = 9) -> Objective:
    """Concavity slack of (a_1..a_n) -> H(sum Bernoulli(a_i)), minimized over a t grid."""
    ts = np.arange(1, t_grid + 1) / (t_grid + 1)

    def slack(x: np.ndarray) -> float:
        a, b = x[:n], x[n:]
        ha, hb = entropy(bernoulli_sum(a)), entropy(bernoulli_sum(b))
        return min(
            entropy(bernoulli_sum((1 - t) * a + t * b)) - (1 - t) * ha - t * hb for t in ts
        )

    def decode(x: np.ndarray) -> dict[str, Any]:
        return {"a": x[:n].tolist(), "b": x[n:].tolist()}

    return Objective("shepp_olkin", 2 * n, slack, decode, THEOREM_TOL)


def thinned_epi_objective(n: int) -> Objective:
    """V(T_a X + T_{1-a} Y) - a V(X) - (1-a) V(Y) over Bernoulli-sum X, Y."""

    def parts(x):
        return bernoulli_sum(x[:n]), bernoulli_sum(x[n : 2 * n]), _alpha(x[-1])

    def slack(x: np.ndarray) -> float:
        f, g, alpha = parts(x)
        lhs = entropy_power(convolve(thin(f, alpha), thin(g, 1 - alpha)))
        return lhs - alpha * entropy_power(f) - (1 - alpha) * entropy_power(g)

    def decode(x: np.ndarray) -> dict[str, Any]:
        return {"a": x[:n].tolist(), "b": x[n : 2 * n].tolist(), "alpha": _alpha(x[-1])}

    return Objective("thinned_epi", 2 * n + 1, slack, decode, POWER_TOL)


def rtepi_objective(n: int) -> Objective:
    """V(T_a X) - a V(X) over Bernoulli-sum X."""

    def slack(x: np.ndarray) -> float:
        f, alpha = bernoulli_sum(x[:n]), _alpha(x[-1])
        return entropy_power(thin(f, alpha)) - alpha * entropy_power(f)

    def decode(x: np.ndarray) -> dict[str, Any]:
        return {"a": x[:n].tolist(), "alpha": _alpha(x[-1])}

    return Objective("rtepi", n + 1, slack, decode, POWER_TOL)


def make_objective(target: str, n: int) -> Objective:
    if target == "shepp_olkin":
        return shepp_olkin_objective(n)
    if target == "thinned_epi":
        return thinned_epi_objective(n)
    if target == "rtepi":
        return rtepi_objective(n)
    raise ValueError(f"unknown search target {target!r}; expected one of {TARGETS}")


def coordinate_descent(
    fn: Callable[[np.ndarray], float],
    x0: np.ndarray,
    budget: int,
    step: float = 0.25,
    shrink: float = 0.5,
    min_step: float = 1e-6,
) -> tuple[np.ndarray, float, int]:
    """Minimize ``fn`` over the unit box from ``x0``; returns (x, f(x), evaluations)."""
    x = np.clip(np.asarray(x0, dtype=np.float64), 0.0, 1.0)
    fx = fn(x)
    evals = 1
    while step >= min_step and evals < budget:
        improved = False
        for k in range(x.size):
            for direction in (1.0, -1.0):
                if evals >= budget:
                    break
                y = x.copy()
                y[k] = min(1.0, max(0.0, y[k] + direction * step))
                if y[k] == x[k]:
                    continue
                fy = fn(y)
                evals += 1
                if fy < fx:
                    x, fx, improved = y, fy, True
                    break
        if not improved:
            step *= shrink
    return x, fx, evals


def search(
    target: str,
    n: int,
    budget: int,
    seed: int,
    restarts: int = 20,
) -> SearchResult:
    """Random restarts plus coordinate descent, spending at most ``budget`` evaluations."""
    objective = make_objective(target, n)
    rng = np.random.default_rng(seed)
    per_restart = max(1, budget // max(1, restarts))
    results: list[RestartResult] = []
    spent = 0
    while spent < budget:
        start = rng.uniform(size=objective.dim)
        x, fx, used = coordinate_descent(objective.slack, start, min(per_restart, budget - spent))
        spent += used
        results.append(RestartResult(start, x, float(fx), used))
    best = min(results, key=lambda r: r.best_slack)
    return SearchResult(
        target=target,
        min_slack=best.best_slack,
        argmin=objective.decode(best.best_x),
        evaluations=spent,
        tolerance=objective.tolerance,
        restarts=results,
    )
