"""Entropy splits as H = -D - L against the Poisson with the same mean."""

from thinent import bernoulli_sum, decompose, entropy, make_pmf, poisson_pmf

for name, f in [
    ("binomial(4, 1/2)", bernoulli_sum([0.5] * 4)),
    ("Bernoulli sum  ", bernoulli_sum([0.1, 0.5, 0.8])),
    ("Poisson(2)     ", poisson_pmf(2.0)),
    ("two-point      ", make_pmf([0.5, 0, 0, 0.5])),
]:
    d = decompose(f)
    print(f"{name}  H={d.h:.6f}  D={d.d:.6f}  L={d.l:.6f}  H+D+L={d.residual:.1e}")

# H(f) is the plain Shannon entropy
print("entropy check", entropy(bernoulli_sum([0.5] * 4)))
