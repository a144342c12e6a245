#include "biortho/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "biortho/common.hpp"

namespace biortho {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
void legendre(int n, double x, double* p, double* dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    *p = p0;
    *dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  *p = p1;
  *dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);

  // Newton iteration from the Chebyshev-like initial guess; roots are
  // computed for the upper half and mirrored so the rule is exactly
  // symmetric.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, &p, &dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, &p, &dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[n - 1 - i] = x;
    rule.w[n - 1 - i] = w;
    rule.x[i] = -x;
    rule.w[i] = w;
  }
  if (n % 2 == 1) {
    rule.x[n / 2] = 0.0;
    double p = 0.0;
    double dp = 1.0;
    legendre(n, 0.0, &p, &dp);
    rule.w[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

Rule1D gauss_chebyshev_u(int n) {
  if (n < 1) throw std::invalid_argument("gauss_chebyshev_u: n must be >= 1");
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double t = kPi * i / (n + 1.0);
    const double s = std::sin(t);
    // ascending nodes: i = n gives the smallest cos
    rule.x[n - i] = std::cos(t);
    rule.w[n - i] = kPi / (n + 1.0) * s * s;
  }
  return rule;
}

Rule1D uniform_periodic(int n, double period) {
  if (n < 1) throw std::invalid_argument("uniform_periodic: n must be >= 1");
  if (!(period > 0.0)) throw std::invalid_argument("uniform_periodic: period must be > 0");
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double h = period / n;
  for (int i = 0; i < n; ++i) {
    rule.x[i] = i * h;
    rule.w[i] = h;
  }
  return rule;
}

Rule1D map_to_interval(const Rule1D& rule, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("map_to_interval: empty interval");
  Rule1D out;
  const int n = rule.size();
  out.x.resize(n);
  out.w.resize(n);
  const double mid = 0.5 * (lo + hi);
  const double halfspan = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    out.x[i] = mid + halfspan * rule.x[i];
    out.w[i] = halfspan * rule.w[i];
  }
  return out;
}

}  // namespace biortho
