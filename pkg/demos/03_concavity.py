"""Entropy along thinned mixtures, and the convexity of l(alpha) behind it."""

import numpy as np

from thinent import random_ulc
from thinent.verifiers import check_concavity_thm2, convexity_two

f, g = random_ulc(6, seed=1), random_ulc(6, seed=2)
print("f", np.round(f.weights, 4))
print("g", np.round(g.weights, 4))

# H(T_a f + T_b g) >= a H(f) + b H(g) whenever a + b <= 1
for a in (0.1, 0.3, 0.5, 0.7, 0.9):
    rep = check_concavity_thm2(f, g, a, 1 - a)
    print(f"alpha={a:.1f}  lhs={rep.lhs:.6f}  rhs={rep.rhs:.6f}  slack={rep.slack:.3e}")

# the proof goes through convexity of l(alpha) = L(T_a f + T_{1-a} g)
conv = convexity_two(f, g)
worst = np.max(np.abs(conv.fd_second - conv.closed_second) / np.abs(conv.closed_second))
print(f"min l'' on grid {conv.min_second:.4f}; finite differences vs closed form, max rel error {worst:.1e}")
