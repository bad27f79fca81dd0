import itertools
import math
import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from thinent import bernoulli_sum, make_pmf


def binomial_oracle(n, p):
    return np.array([math.comb(n, k) * p**k * (1 - p) ** (n - k) for k in range(n + 1)])


def poisson_oracle(rate, length):
    return np.array([rate**i * math.exp(-rate) / math.factorial(i) for i in range(length)])


def geometric_truncated(p, n):
    """Pmf proportional to (1-p)^i p on 0..n."""
    return make_pmf([(1 - p) ** i * p for i in range(n + 1)])


def thin_brute_force(weights, alpha):
    """T_alpha by enumerating every Bernoulli outcome pattern."""
    out = np.zeros(len(weights))
    for j, fj in enumerate(weights):
        if fj == 0:
            continue
        for bits in itertools.product((0, 1), repeat=j):
            k = sum(bits)
            out[k] += fj * alpha**k * (1 - alpha) ** (j - k)
    return out


def pad(a, n):
    a = np.asarray(a, dtype=float)
    return np.concatenate([a, np.zeros(max(0, n - a.size))])


@pytest.fixture
def binom():
    return lambda n, p: bernoulli_sum([p] * n)


# hypothesis strategies

bernoulli_params = st.lists(
    st.floats(0.0, 1.0, allow_nan=False, allow_subnormal=False), min_size=1, max_size=8
)
ulc_pmfs = bernoulli_params.map(bernoulli_sum)

raw_weights = st.lists(st.floats(0.0, 10.0, allow_nan=False), min_size=1, max_size=12).filter(
    lambda w: sum(w) > 1e-3
)
pmfs = raw_weights.map(make_pmf)
fractions = st.floats(0.0, 1.0, allow_nan=False)
interior_fractions = st.floats(0.02, 0.98, allow_nan=False)


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
