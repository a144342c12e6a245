#include "biortho/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace biortho {

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Area-preserving map from the unit square to the unit sphere.
Vec3 sphere_point(double t1, double t2) {
  const double z = 2.0 * t1 - 1.0;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * kPi * t2;
  return Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
}

struct PairExtremum {
  double q = 0.0;  // a' m1 a + b' m2 b at the optimum
  Vec3 a = Vec3::UnitZ();
  Vec3 b = Vec3::UnitZ();
  double grad_norm = 0.0;
};

// Minimize q(a, b) = a' m1 a + b' m2 b over the product of unit spheres by
// projected gradient descent with a backtracking (halving) line search.
PairExtremum descend_pair(const Mat3& m1, const Mat3& m2, Vec3 a, Vec3 b) {
  constexpr int kMaxIters = 200;
  constexpr double kGradTol = 1e-9;
  constexpr double kArmijoC = 1e-4;

  const double scale =
      std::max({m1.cwiseAbs().maxCoeff(), m2.cwiseAbs().maxCoeff(), 1e-12});
  a.normalize();
  b.normalize();

  auto value = [&](const Vec3& x, const Vec3& y) {
    return x.dot(m1 * x) + y.dot(m2 * y);
  };

  double q = value(a, b);
  double grad_norm = 0.0;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    const Vec3 ga_full = 2.0 * (m1 * a);
    const Vec3 gb_full = 2.0 * (m2 * b);
    const Vec3 ga = ga_full - ga_full.dot(a) * a;  // tangential parts
    const Vec3 gb = gb_full - gb_full.dot(b) * b;
    const double g2 = ga.squaredNorm() + gb.squaredNorm();
    grad_norm = std::sqrt(g2);
    if (grad_norm < kGradTol) break;

    double t = 1.0 / scale;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      const Vec3 an = (a - t * ga).normalized();
      const Vec3 bn = (b - t * gb).normalized();
      const double qn = value(an, bn);
      if (qn <= q - kArmijoC * t * g2) {
        a = an;
        b = bn;
        q = qn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // flat to round-off
  }

  PairExtremum out;
  out.q = q;
  out.a = a;
  out.b = b;
  out.grad_norm = grad_norm;
  return out;
}

// Refine one sphere factor by steepest descent with an exact line search
// along great circles: for x' m x with tangent direction d (x.d = 0,
// |x| = |d| = 1) the restricted objective is a Moebius function of the step
// whose stationary points solve a quadratic, so each iteration lands on the
// one-dimensional optimum.  Runs until the tangent residual (twice the
// Rayleigh residual) drops below tol or the iteration cap is reached.
Vec3 polish_sphere(const Mat3& m, Vec3 x) {
  constexpr int kPolishCap = 400000;
  constexpr double kResidualTol = 1e-9;
  x.normalize();
  for (int iter = 0; iter < kPolishCap; ++iter) {
    const Vec3 mx = m * x;
    const double rho = x.dot(mx);
    const Vec3 r = 2.0 * (mx - rho * x);  // tangential gradient
    const double rn = r.norm();
    if (rn < kResidualTol) break;
    const Vec3 d = -r / rn;
    const double fx = rho;
    const double fd = d.dot(m * d);
    const double c = d.dot(mx);  // equals -rn/2, nonzero away from stationarity
    const double disc = std::sqrt((fd - fx) * (fd - fx) + 4.0 * c * c);
    const double t1 = ((fd - fx) + disc) / (2.0 * c);
    const double t2 = ((fd - fx) - disc) / (2.0 * c);
    auto restricted = [&](double t) {
      return (fx + 2.0 * t * c + t * t * fd) / (1.0 + t * t);
    };
    const double t = (restricted(t1) <= restricted(t2)) ? t1 : t2;
    const Vec3 xn = (x + t * d).normalized();
    if (!(restricted(t) < fx)) break;  // flat to round-off
    x = xn;
  }
  return x;
}

// Multistart minimization of a' m1 a + b' m2 b; the winner is the lowest
// value with ties broken by start index (strict improvement required).
// The winner is polished factor-wise with the exact line search so the
// returned pair sits on the optimizer to round-off, not merely within the
// coarse-phase tolerance.
PairExtremum multistart_min(const Mat3& m1, const Mat3& m2, int starts) {
  PairExtremum best;
  bool have = false;
  for (int i = 0; i < starts; ++i) {
    const auto idx = static_cast<std::uint64_t>(i) + 1;
    const Vec3 a0 = sphere_point(radical_inverse(idx, 2), radical_inverse(idx, 3));
    const Vec3 b0 = sphere_point(radical_inverse(idx, 5), radical_inverse(idx, 7));
    const PairExtremum cand = descend_pair(m1, m2, a0, b0);
    if (!have || cand.q < best.q) {
      best = cand;
      have = true;
    }
  }
  best.a = polish_sphere(m1, best.a);
  best.b = polish_sphere(m2, best.b);
  best.q = best.a.dot(m1 * best.a) + best.b.dot(m2 * best.b);
  const Vec3 ga = 2.0 * (m1 * best.a - best.a.dot(m1 * best.a) * best.a);
  const Vec3 gb = 2.0 * (m2 * best.b - best.b.dot(m2 * best.b) * best.b);
  best.grad_norm = std::sqrt(ga.squaredNorm() + gb.squaredNorm());
  return best;
}

}  // namespace

TwoPlane TwoPlane::from_bivector(const Bivector& b, double tol) {
  if (std::abs(b.norm() - 1.0) > tol) {
    throw std::invalid_argument("TwoPlane: bivector is not unit");
  }
  if (std::abs(b.plucker()) > tol) {
    throw std::invalid_argument("TwoPlane: bivector is not simple");
  }
  TwoPlane plane;
  plane.phi = b;
  plane.parts = split(b);
  return plane;
}

TwoPlane TwoPlane::from_span(const Vec4& x, const Vec4& y) {
  const double xn = x.norm();
  if (xn < 1e-12) throw std::invalid_argument("TwoPlane: first spanning vector is zero");
  const Vec4 e1 = x / xn;
  Vec4 yp = y - y.dot(e1) * e1;
  const double yn = yp.norm();
  if (yn < 1e-12 * std::max(1.0, y.norm())) {
    throw std::invalid_argument("TwoPlane: spanning vectors are (near-)dependent");
  }
  const Vec4 e2 = yp / yn;
  TwoPlane plane;
  plane.phi = Bivector::wedge(e1, e2);
  plane.parts = split(plane.phi);
  return plane;
}

TwoPlane TwoPlane::complement() const {
  TwoPlane out;
  out.parts.plus = parts.plus;
  out.parts.minus = -parts.minus;
  out.phi = reassemble(out.parts);
  return out;
}

double sectional(const CurvatureBlocks& blocks, const TwoPlane& plane) {
  const Vec3& p = plane.parts.plus;
  const Vec3& m = plane.parts.minus;
  return blocks.s / 12.0 + p.dot(blocks.wplus * p) + m.dot(blocks.wminus * m) +
         2.0 * p.dot(blocks.b * m);
}

double biortho(const CurvatureBlocks& blocks, const TwoPlane& plane) {
  const Vec3& p = plane.parts.plus;
  const Vec3& m = plane.parts.minus;
  return blocks.s / 12.0 + p.dot(blocks.wplus * p) + m.dot(blocks.wminus * m);
}

SpectralSummary kperp_spectral(const CurvatureBlocks& blocks) {
  if (std::abs(blocks.wplus.trace()) > 1e-9 || std::abs(blocks.wminus.trace()) > 1e-9) {
    throw std::invalid_argument("kperp_spectral: W blocks must be traceless");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> ep;
  ep.compute(blocks.wplus, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat3> em;
  em.compute(blocks.wminus, Eigen::EigenvaluesOnly);

  SpectralSummary out;
  out.wplus_eigs = ep.eigenvalues();
  out.wminus_eigs = em.eigenvalues();
  const double s12 = blocks.s / 12.0;
  out.k1perp = s12 + (out.wplus_eigs[0] + out.wminus_eigs[0]) / 2.0;
  out.k2perp = s12 + (out.wplus_eigs[1] + out.wminus_eigs[1]) / 2.0;
  out.k3perp = s12 + (out.wplus_eigs[2] + out.wminus_eigs[2]) / 2.0;
  return out;
}

TwoPlane BruteForceExtremum::plane() const {
  const double r = 1.0 / std::sqrt(2.0);
  TwoPlane out;
  out.parts.plus = r * a;
  out.parts.minus = r * b;
  out.phi = reassemble(out.parts);
  return out;
}

BruteForceResult kperp_bruteforce(const CurvatureBlocks& blocks, int starts) {
  if (starts < 1) throw std::invalid_argument("kperp_bruteforce: starts must be >= 1");

  // biortho over planes with parts (a, b)/sqrt(2) is
  //   s/12 + (a' wplus a + b' wminus b) / 2,
  // so the extrema are multistart minima of the half-matrices (negated for
  // the maximum).
  const Mat3 hp = 0.5 * blocks.wplus;
  const Mat3 hm = 0.5 * blocks.wminus;
  const double s12 = blocks.s / 12.0;

  const PairExtremum lo = multistart_min(hp, hm, starts);
  const PairExtremum hi = multistart_min(-hp, -hm, starts);

  BruteForceResult out;
  out.lo.value = s12 + lo.q;
  out.lo.a = lo.a;
  out.lo.b = lo.b;
  out.lo.grad_norm = lo.grad_norm;
  out.hi.value = s12 - hi.q;
  out.hi.a = hi.a;
  out.hi.b = hi.b;
  out.hi.grad_norm = hi.grad_norm;
  return out;
}

CurvaturePredicates predicates(const CurvatureBlocks& blocks) {
  const SpectralSummary sp = kperp_spectral(blocks);
  CurvaturePredicates out;
  out.einstein = std::sqrt(blocks.bnorm2()) <= 1e-10;
  out.conformally_flat = std::sqrt(blocks.wnorm2()) <= 1e-10;
  const double iso_p = blocks.s / 6.0 - sp.wplus_eigs[2];
  const double iso_m = blocks.s / 6.0 - sp.wminus_eigs[2];
  out.positive_isotropic = iso_p > 1e-12 && iso_m > 1e-12;
  out.nonneg_isotropic = iso_p >= -1e-12 && iso_m >= -1e-12;
  out.pinched_quarter_one = sp.k1perp >= 0.25 - 1e-12 && sp.k3perp <= 1.0 + 1e-12;
  out.k1perp_nonneg = sp.k1perp >= -1e-12;
  out.k1perp_positive = sp.k1perp > 1e-12;
  return out;
}

}  // namespace biortho
