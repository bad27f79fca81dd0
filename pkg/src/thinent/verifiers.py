"""Checkable forms of the thinning/entropy inequalities and identities.

Every inequality check returns a :class:`SlackReport` whose ``slack`` is
``lhs - rhs`` with ``lhs`` the side claimed to be larger, so a non-negative
slack means the inequality holds.  Proved results carry ``conjecture=False``
and are expected to pass; conjectured ones carry ``conjecture=True`` and are
only recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .entropy import (
    decompose,
    entropy,
    entropy_power,
    poisson_log_pmf,
    poisson_pmf,
)
from .errors import DegenerateAlpha, DomainError, LengthMismatch, PreconditionFailed
from .pmf import Pmf, convolve, make_pmf, mean, n_fold_convolve, total_variation
from .thinning import check_fraction, thin
from .ulc import BernoulliSumSpec, bernoulli_sum, is_ulc

FD_STEP_FIRST = 1e-5
FD_STEP_SECOND = 1e-3

THEOREM_TOL = 1e-9
POWER_TOL = 1e-6


@dataclass(frozen=True)
class SlackReport:
    lhs: float
    rhs: float
    tolerance: float
    conjecture: bool = False
    context: dict[str, Any] = field(default_factory=dict)
    preconditions_met: bool = True

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.preconditions_met and self.slack >= -self.tolerance


@dataclass(frozen=True)
class ConvexityReport:
    """Sampled l(alpha) with central second differences and closed-form l''."""

    alphas: np.ndarray
    l_values: np.ndarray
    fd_second: np.ndarray
    closed_second: np.ndarray

    @property
    def min_second(self) -> float:
        return float(np.min(self.fd_second))


@dataclass(frozen=True)
class SegmentReport:
    """Entropy of Bernoulli sums along the segment (1-t) a + t b."""

    ts: np.ndarray
    entropies: np.ndarray
    second_diffs: np.ndarray
    proved_regime: bool

    @property
    def max_second(self) -> float:
        return float(np.max(self.second_diffs))

    def concave(self, tol: float = THEOREM_TOL) -> bool:
        return self.max_second <= tol


@dataclass(frozen=True)
class ABKernelSample:
    i: int
    j: int
    alpha: float
    lam: float
    mu: float


def _require_ulc(*pmfs: Pmf) -> None:
    for k, f in enumerate(pmfs):
        if not is_ulc(f):
            raise PreconditionFailed(f"argument {k} is not ultra-log-concave: {f!r}")


def _interior(alpha: float) -> float:
    alpha = check_fraction(alpha)
    if alpha <= 0.0 or alpha >= 1.0:
        raise DegenerateAlpha(f"alpha must lie strictly inside (0, 1), got {alpha}")
    return alpha


def thinned_mixture(f: Pmf, g: Pmf, alpha: float, beta: float) -> Pmf:
    """Pmf of T_alpha X + T_beta Y for independent X ~ f, Y ~ g."""
    return convolve(thin(f, alpha), thin(g, beta))


# -- proved inequalities ----------------------------------------------------


def check_concavity_thm2(f: Pmf, g: Pmf, alpha: float, beta: float) -> SlackReport:
    """H(T_a X + T_b Y) >= a H(X) + b H(Y) for ULC X, Y and a + b <= 1."""
    alpha, beta = check_fraction(alpha), check_fraction(beta, "beta")
    if alpha + beta > 1.0 + 1e-12:
        raise PreconditionFailed(f"alpha + beta = {alpha + beta} exceeds 1")
    _require_ulc(f, g)
    lhs = entropy(thinned_mixture(f, g, alpha, beta))
    rhs = alpha * entropy(f) + beta * entropy(g)
    return SlackReport(lhs, rhs, THEOREM_TOL, context={"alpha": alpha, "beta": beta})


def check_prop1(f: Pmf, alpha: float) -> SlackReport:
    """H(T_a f) >= a H(f); holds for every pmf."""
    alpha = check_fraction(alpha)
    lhs = entropy(thin(f, alpha))
    return SlackReport(lhs, alpha * entropy(f), THEOREM_TOL, context={"alpha": alpha})


def check_dthin(f: Pmf, alpha: float) -> SlackReport:
    """a D(f) >= D(T_a f), with D relative entropy to the mean-matched Poisson."""
    alpha = check_fraction(alpha)
    lhs = alpha * decompose(f).d
    rhs = decompose(thin(f, alpha)).d
    return SlackReport(lhs, rhs, THEOREM_TOL, context={"alpha": alpha})


def check_d_subadditive(f: Pmf, g: Pmf) -> SlackReport:
    """D(f) + D(g) >= D(f * g)."""
    lhs = decompose(f).d + decompose(g).d
    rhs = decompose(convolve(f, g)).d
    return SlackReport(lhs, rhs, THEOREM_TOL)


# -- l(alpha) machinery ------------------------------------------------------


def _l_of(p: Pmf, rate: float) -> float:
    w = p.weights
    on = w > 0
    return float(np.dot(w[on], poisson_log_pmf(np.flatnonzero(on), rate)))


def l_alpha_single(f: Pmf, alpha: float) -> float:
    """l(alpha) = L(T_alpha f) = sum_i (T_alpha f)_i log po(i; alpha lambda)."""
    alpha = check_fraction(alpha)
    if alpha == 0.0:
        raise DegenerateAlpha("l_alpha_single needs alpha > 0")
    return _l_of(thin(f, alpha), alpha * mean(f))


def l_prime_single(f: Pmf, alpha: float) -> float:
    """Closed-form l'(alpha) = lambda log(alpha lambda) - (1/alpha) sum (i+1) p_{i+1} log(i+1)."""
    alpha = check_fraction(alpha)
    if alpha == 0.0:
        raise DegenerateAlpha("l_prime_single needs alpha > 0")
    lam = mean(f)
    p = thin(f, alpha).weights
    k = np.arange(1, p.size)
    return lam * np.log(alpha * lam) - float(np.dot(k * p[1:], np.log(k))) / alpha


def l2_single_closed_form(f: Pmf, alpha: float) -> float:
    """Closed-form l''(alpha) = lambda/alpha - alpha^-2 sum (i+2)(i+1) p_{i+2} log((i+2)/(i+1))."""
    alpha = check_fraction(alpha)
    if alpha == 0.0:
        raise DegenerateAlpha("l2_single_closed_form needs alpha > 0")
    p = thin(f, alpha).weights
    k = np.arange(2, p.size)
    s = float(np.dot(k * (k - 1) * p[2:], np.log(k / (k - 1))))
    return mean(f) / alpha - s / alpha**2


def l_alpha_two(f: Pmf, g: Pmf, alpha: float) -> float:
    """l(alpha) = sum_i (T_a f * T_b g)_i log po(i; a lambda + b mu), b = 1 - a."""
    alpha = _interior(alpha)
    beta = 1.0 - alpha
    rate = alpha * mean(f) + beta * mean(g)
    return _l_of(thinned_mixture(f, g, alpha, beta), rate)


def _shared_log(s: np.ndarray) -> np.ndarray:
    # log((s-1)/s); -inf at s = 1
    with np.errstate(divide="ignore"):
        return np.log((s - 1) / s)


def _times_log(coef: np.ndarray, s: np.ndarray) -> np.ndarray:
    # coef * log((s-1)/s) with 0 * log 0 = 0
    lg = _shared_log(s)
    out = np.zeros(np.broadcast(coef, s).shape)
    coef = np.broadcast_to(coef, out.shape)
    lg = np.broadcast_to(lg, out.shape)
    nonzero = coef != 0
    out[nonzero] = coef[nonzero] * lg[nonzero]
    return out


def _kernels(i, j, alpha: float, lam: float, mu: float):
    i = np.asarray(i, dtype=np.float64)
    j = np.asarray(j, dtype=np.float64)
    beta = 1.0 - alpha
    m = alpha * lam + beta * mu
    s = i + j
    den = m * alpha**2 * beta**2
    a = _times_log((s - 1) / alpha**2 - beta * mu * j / den, s)
    b = _times_log((s - 1) / beta**2 - alpha * lam * i / den, s)
    return a, b


def ab_kernel(sample: ABKernelSample) -> tuple[float, float]:
    """The pair (a(i, j), b(i, j)) of kernels appearing in l''(alpha)."""
    if sample.i < 0 or sample.j < 0 or sample.i + sample.j < 1:
        raise DomainError("kernels need i, j >= 0 and i + j >= 1")
    alpha = _interior(sample.alpha)
    if sample.lam <= 0 or sample.mu <= 0:
        raise DomainError("means must be positive")
    a, b = _kernels(sample.i, sample.j, alpha, sample.lam, sample.mu)
    return float(a), float(b)


def ab_identity_residual(i: int, j: int, alpha: float, lam: float, mu: float) -> float:
    """alpha lam a(i+1, j) + beta mu b(i, j+1) minus its closed-form simplification."""
    beta = 1.0 - alpha
    a, _ = ab_kernel(ABKernelSample(i + 1, j, alpha, lam, mu))
    _, b = ab_kernel(ABKernelSample(i, j + 1, alpha, lam, mu))
    s = i + j
    right = 0.0 if s == 0 else (lam - mu) ** 2 / (alpha * lam + beta * mu) * s * np.log(s / (s + 1))
    return alpha * lam * a + beta * mu * b - right


def l2_closed_form(f: Pmf, g: Pmf, alpha: float) -> float:
    """l''(alpha) = (lambda - mu)^2 / (alpha lambda + beta mu) + A + B."""
    alpha = _interior(alpha)
    beta = 1.0 - alpha
    lam, mu = mean(f), mean(g)
    p = thin(f, alpha).weights
    q = thin(g, beta).weights
    i = np.arange(p.size)[:, None]
    j = np.arange(q.size)[None, :]
    pq = p[:, None] * q[None, :]
    valid = (i + j) >= 1
    ii = np.where(valid, i, 1)
    jj = np.where(valid, j, 0)
    a, b = _kernels(ii, jj, alpha, lam, mu)
    # a(0, j) and b(i, 0) may be infinite but carry a zero weight i (resp. j)
    a = np.where(i >= 1, a, 0.0)
    b = np.where(j >= 1, b, 0.0)
    big_a = float(np.sum(pq * i * a))
    big_b = float(np.sum(pq * j * b))
    return (lam - mu) ** 2 / (alpha * lam + beta * mu) + big_a + big_b


def second_difference(fn: Callable[[float], float], x: float, h: float = FD_STEP_SECOND) -> float:
    return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / h**2


def first_difference(fn: Callable[[float], float], x: float, h: float = FD_STEP_FIRST) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def fd_step(alpha: float, h: float = FD_STEP_SECOND) -> float:
    """Second-difference step shrunk near the endpoints so the stencil stays in (0, 1)."""
    return min(h, alpha / 4.0, (1.0 - alpha) / 4.0)


def alpha_grid(n: int, h: float = FD_STEP_SECOND) -> np.ndarray:
    """``n`` equally spaced alphas on [h, 1 - h]."""
    if n < 3:
        raise ValueError("alpha grid needs at least 3 points")
    return np.linspace(h, 1.0 - h, n)


def convexity_two(f: Pmf, g: Pmf, n_grid: int = 33) -> ConvexityReport:
    """Sample l(alpha) for the pair (f, g) and compare fd and closed-form l''."""
    alphas = alpha_grid(n_grid)
    fn = lambda a: l_alpha_two(f, g, a)  # noqa: E731
    return ConvexityReport(
        alphas=alphas,
        l_values=np.array([fn(a) for a in alphas]),
        fd_second=np.array([second_difference(fn, a, fd_step(a)) for a in alphas]),
        closed_second=np.array([l2_closed_form(f, g, a) for a in alphas]),
    )


def convexity_single(f: Pmf, n_grid: int = 33) -> ConvexityReport:
    """Sample l(alpha) = L(T_alpha f) on a grid; ``alpha = 1`` is included."""
    alphas = np.linspace(1.0 / n_grid, 1.0, n_grid)
    fn = lambda a: l_alpha_single(f, a)  # noqa: E731
    l_values = np.array([fn(a) for a in alphas])
    step = alphas[1] - alphas[0]
    fd = np.diff(l_values, 2) / step**2
    closed = np.array([l2_single_closed_form(f, a) for a in alphas[1:-1]])
    return ConvexityReport(alphas, l_values, fd, closed)


# -- Bernoulli sums ------------------------------------------------------------


def check_shepp_olkin_segment(
    a: BernoulliSumSpec | Sequence[float],
    b: BernoulliSumSpec | Sequence[float],
    grid_size: int = 33,
) -> SegmentReport:
    """Second differences of t -> H(bernoulli_sum((1-t) a + t b)).

    Concavity along the segment is proved when a_i b_i = 0 for every i and
    conjectured otherwise; ``proved_regime`` records which case applies.
    """
    a = a if isinstance(a, BernoulliSumSpec) else BernoulliSumSpec(a)
    b = b if isinstance(b, BernoulliSumSpec) else BernoulliSumSpec(b)
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} != {len(b)}")
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    av, bv = np.array(a.params), np.array(b.params)
    ts = np.linspace(0.0, 1.0, grid_size)
    hs = np.array([entropy(bernoulli_sum(np.clip((1 - t) * av + t * bv, 0, 1))) for t in ts])
    step = ts[1] - ts[0]
    return SegmentReport(ts, hs, np.diff(hs, 2) / step**2, bool(np.all(av * bv == 0)))


def shepp_olkin_slack(a: Sequence[float], b: Sequence[float], t: float) -> SlackReport:
    """H((1-t) a + t b) - (1-t) H(a) - t H(b) for Bernoulli-sum entropies."""
    av, bv = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    lhs = entropy(bernoulli_sum(np.clip((1 - t) * av + t * bv, 0, 1)))
    rhs = (1 - t) * entropy(bernoulli_sum(av)) + t * entropy(bernoulli_sum(bv))
    return SlackReport(
        lhs, rhs, THEOREM_TOL, conjecture=not bool(np.all(av * bv == 0)), context={"t": t}
    )


# -- entropy power -------------------------------------------------------------


def check_thinned_epi(f: Pmf, g: Pmf, alpha: float) -> SlackReport:
    """V(T_a X + T_{1-a} Y) >= a V(X) + (1-a) V(Y); conjectured, so only recorded."""
    alpha = _interior(alpha)
    _require_ulc(f, g)
    lhs = entropy_power(thinned_mixture(f, g, alpha, 1.0 - alpha))
    rhs = alpha * entropy_power(f) + (1.0 - alpha) * entropy_power(g)
    return SlackReport(lhs, rhs, POWER_TOL, conjecture=True, context={"alpha": alpha})


def check_rtepi(f: Pmf, alpha: float) -> SlackReport:
    """V(T_a X) >= a V(X) for ULC X.

    Stated as a conjecture alongside an announced (unpublished) proof; the
    report is flagged ``conjecture=True`` but is expected to pass.
    """
    alpha = check_fraction(alpha)
    _require_ulc(f)
    lhs = entropy_power(thin(f, alpha))
    rhs = alpha * entropy_power(f)
    return SlackReport(
        lhs, rhs, POWER_TOL, conjecture=True, context={"alpha": alpha, "proof_announced": True}
    )


def check_prop2(f: Pmf, g: Pmf, beta: float, gamma: float) -> SlackReport:
    """V(T_b X + T_c Y) >= b V(X) + c V(Y) under the entropy-power ratio condition.

    The condition ``b/(1-c) <= V(Y)/V(X) <= (1-b)/c`` is reported in
    ``context["condition_met"]`` rather than raised; when it fails the report
    does not pass.  ``context["alpha"]`` is the interpolation weight
    ``b V(X) / (b V(X) + c V(Y))`` and ``context["alpha_ok"]`` confirms
    ``b <= alpha`` and ``c <= 1 - alpha``.
    """
    beta, gamma = _interior(beta), _interior(gamma)
    _require_ulc(f, g)
    vx, vy = entropy_power(f), entropy_power(g)
    eps = 1e-12
    if vx > 0:
        ratio = vy / vx
        met = beta / (1 - gamma) - eps <= ratio <= (1 - beta) / gamma + eps
    else:
        ratio, met = float("inf"), False
    denom = beta * vx + gamma * vy
    alpha = beta * vx / denom if denom > 0 else float("nan")
    alpha_ok = bool(denom > 0 and beta <= alpha + eps and gamma <= 1 - alpha + eps)
    lhs = entropy_power(thinned_mixture(f, g, beta, gamma))
    rhs = beta * vx + gamma * vy
    context = {
        "beta": beta,
        "gamma": gamma,
        "ratio": ratio,
        "condition_met": met,
        "alpha": alpha,
        "alpha_ok": alpha_ok,
    }
    return SlackReport(
        lhs, rhs, POWER_TOL, conjecture=True, context=context, preconditions_met=met
    )


def naive_epi_counterexample() -> SlackReport:
    """Additive entropy power fails for X, Y i.i.d. with pmf (1/6, 2/3, 1/6).

    Sides are swapped relative to the additive inequality: ``lhs = 2 V(X)``
    and ``rhs = V(X + Y)``.  The report passes when the pmf is ULC and the
    violation is strict, i.e. ``lhs - rhs >= 1e-6``.
    """
    f = make_pmf([1, 4, 1])
    ulc = is_ulc(f)
    v = entropy_power(f)
    v_sum = entropy_power(convolve(f, f))
    return SlackReport(
        lhs=2.0 * v,
        rhs=v_sum,
        tolerance=-POWER_TOL,
        context={"is_ulc": ulc, "v": v, "v_sum": v_sum, "additive_slack": v_sum - 2.0 * v},
        preconditions_met=ulc,
    )


# -- law of thin numbers -------------------------------------------------------


@dataclass(frozen=True)
class ThinNumbersRow:
    n: int
    tv_to_poisson: float
    entropy: float
    rel_entropy: float


def law_of_thin_numbers_trace(f: Pmf, n_max: int) -> list[ThinNumbersRow]:
    """Track T_{1/n}(f^{*n}) against Po(mean f) for n = 1..n_max."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    lam = mean(f)
    if lam <= 0:
        raise PreconditionFailed("law of thin numbers needs a positive mean")
    rows = []
    for n in range(1, n_max + 1):
        g = thin(n_fold_convolve(f, n), 1.0 / n)
        ref = poisson_pmf(lam, min_support=len(g))
        rows.append(ThinNumbersRow(n, total_variation(g, ref), entropy(g), decompose(g).d))
    return rows


def chebyshev_ratios(f: Pmf, alpha: float) -> np.ndarray:
    """The ratios i p_i / p_{i-1} of p = T_alpha f over its support."""
    p = thin(f, alpha).weights
    nz = np.flatnonzero(p)
    lo, hi = nz[0], nz[-1]
    i = np.arange(lo + 1, hi + 1)
    return i * p[lo + 1 : hi + 1] / p[lo:hi]
