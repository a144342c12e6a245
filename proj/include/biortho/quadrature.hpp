#pragma once

#include <vector>

namespace biortho {

// One-dimensional quadrature rule: nodes x[i] with weights w[i].
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  int size() const { return static_cast<int>(x.size()); }
};

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree <= 2n-1.
Rule1D gauss_legendre(int n);

// Gauss-Chebyshev rule of the second kind on [-1, 1] with weight
// sqrt(1 - x^2): nodes cos(i pi / (n+1)), i = 1..n, weights
// pi/(n+1) * sin^2(i pi/(n+1)).  Exact for polynomials of degree <= 2n-1
// against that weight.
Rule1D gauss_chebyshev_u(int n);

// Uniform periodic rule on [0, period): nodes k * period / n with equal
// weights period / n.  Exact for trigonometric polynomials of degree < n.
Rule1D uniform_periodic(int n, double period);

// Affine map of a rule from [-1, 1] onto [lo, hi].
Rule1D map_to_interval(const Rule1D& rule, double lo, double hi);

}  // namespace biortho
