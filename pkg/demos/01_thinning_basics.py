"""Thinning a pmf: keep each unit of a count independently with probability alpha."""

import numpy as np

from thinent import bernoulli_sum, convolve, is_ulc, make_pmf, mean, thin, total_variation

f = make_pmf([0.1, 0.2, 0.4, 0.3])
print("f            ", np.round(f.weights, 4), "mean", mean(f))

# thinning scales the mean
g = thin(f, 0.5)
print("T_0.5 f      ", np.round(g.weights, 4), "mean", mean(g))

# thinning twice is thinning once by the product
print("semigroup TV ", total_variation(thin(thin(f, 0.5), 0.4), thin(f, 0.2)))

# and it commutes with convolution
h = make_pmf([0.5, 0.5])
print("commute TV   ", total_variation(thin(convolve(f, h), 0.3), convolve(thin(f, 0.3), thin(h, 0.3))))

# Bernoulli sums are ultra-log-concave, and stay so after thinning
b = bernoulli_sum([0.2, 0.7, 0.9])
print("ULC?", is_ulc(b), is_ulc(thin(b, 0.35)), "  uniform on 0..3 ULC?", is_ulc(make_pmf([1, 1, 1, 1])))
