"""T_{1/n}(f^{*n}) approaches the Poisson of the same mean, monotonically."""

from thinent import make_pmf, poisson_pmf
from thinent.verifiers import law_of_thin_numbers_trace

f = make_pmf([0.7, 0.3])
print(" n   TV to Po(0.3)   entropy     D")
for row in law_of_thin_numbers_trace(f, 30):
    if row.n in (1, 2, 3, 5, 10, 20, 30):
        print(f"{row.n:2d}   {row.tv_to_poisson:.3e}     {row.entropy:.6f}   {row.rel_entropy:.3e}")

# a Poisson input is already at the limit
worst = max(r.rel_entropy for r in law_of_thin_numbers_trace(poisson_pmf(0.3), 30))
print("Poisson input, largest D:", worst)
