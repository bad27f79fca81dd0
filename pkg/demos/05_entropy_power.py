"""Discrete entropy power: the Poisson rate with the same entropy."""

from thinent import convolve, entropy_power, make_pmf, poisson_entropy, poisson_pmf, thin
from thinent.verifiers import check_rtepi, naive_epi_counterexample

for t in (0.5, 1.0, 2.0, 5.0):
    print(f"E({t}) = {poisson_entropy(t):.12f}   V(Po({t})) = {entropy_power(poisson_pmf(t)):.12f}")

# additivity fails even for ULC inputs
f = make_pmf([1, 4, 1])
v, v2 = entropy_power(f), entropy_power(convolve(f, f))
print(f"V(f)={v:.12f}  V(f*f)={v2:.12f}  V(f*f)-2V(f)={v2 - 2 * v:.12f}")
print("counterexample report passes:", naive_epi_counterexample().passed)

# thinning scales entropy power at least linearly (equality for Poisson)
for a in (0.2, 0.5, 0.8):
    r = check_rtepi(f, a)
    print(f"alpha={a}  V(T_a f)={entropy_power(thin(f, a)):.6f}  a V(f)={r.rhs:.6f}  slack={r.slack:.2e}")
