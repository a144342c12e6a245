#pragma once

#include "biortho/bivector.hpp"
#include "biortho/common.hpp"

namespace biortho {

// An oriented tangent 2-plane, stored as its unit simple bivector together
// with the self-dual/anti-self-dual components (each of squared norm 1/2).
struct TwoPlane {
  Bivector phi;
  SelfDualSplit parts;

  // Validates |phi| = 1 and simplicity within tol; throws std::invalid_argument.
  static TwoPlane from_bivector(const Bivector& b, double tol = 1e-10);
  // Orthonormalizes (x, y) and wedges them; throws on (near-)dependent input.
  static TwoPlane from_span(const Vec4& x, const Vec4& y);

  // The orthogonal complement plane: plus part kept, minus part negated.
  TwoPlane complement() const;
};

// Sectional curvature of the plane:
//   s/12 + <p, wplus p> + <m, wminus m> + 2 <p, b m>,  (p, m) = parts.
double sectional(const CurvatureBlocks& blocks, const TwoPlane& plane);

// Average of the sectional curvatures of the plane and its complement;
// the mixed-block term cancels.
double biortho(const CurvatureBlocks& blocks, const TwoPlane& plane);

// Eigenvalue route to the extremes of biortho over all planes.
struct SpectralSummary {
  Vec3 wplus_eigs = Vec3::Zero();   // ascending
  Vec3 wminus_eigs = Vec3::Zero();  // ascending
  double k1perp = 0.0;              // min:    s/12 + (w1+ + w1-)/2
  double k2perp = 0.0;              // middle: s/12 + (w2+ + w2-)/2
  double k3perp = 0.0;              // max:    s/12 + (w3+ + w3-)/2
};

// Throws std::invalid_argument if a W block trace exceeds 1e-9.
SpectralSummary kperp_spectral(const CurvatureBlocks& blocks);

// Derivative-free-of-eigensolvers oracle: quasi-random multistart plus
// projected gradient descent/ascent over the product of unit 2-spheres
// parametrizing (plus, minus) parts of a plane.
struct BruteForceExtremum {
  double value = 0.0;
  Vec3 a = Vec3::Zero();  // unit: plus part = a / sqrt(2)
  Vec3 b = Vec3::Zero();  // unit: minus part = b / sqrt(2)
  double grad_norm = 0.0;
  TwoPlane plane() const;
};

struct BruteForceResult {
  BruteForceExtremum lo;
  BruteForceExtremum hi;
};

// starts: number of quasi-random multistart points (default 512).
BruteForceResult kperp_bruteforce(const CurvatureBlocks& blocks, int starts = 512);

// Pointwise curvature predicates.  Thresholds are part of the contract:
//   einstein:           sqrt(|B|^2) <= 1e-10
//   conformally_flat:   sqrt(|W|^2) <= 1e-10
//   positive_isotropic: s/6 - w3 >  1e-12 on both sides
//   nonneg_isotropic:   s/6 - w3 >= -1e-12 on both sides
//   pinched_quarter_one: k1perp >= 1/4 - 1e-12 and k3perp <= 1 + 1e-12
//   k1perp_nonneg / k1perp_positive: k1perp >= -1e-12 / > 1e-12
struct CurvaturePredicates {
  bool einstein = false;
  bool conformally_flat = false;
  bool positive_isotropic = false;
  bool nonneg_isotropic = false;
  bool pinched_quarter_one = false;
  bool k1perp_nonneg = false;
  bool k1perp_positive = false;
};

CurvaturePredicates predicates(const CurvatureBlocks& blocks);

}  // namespace biortho
