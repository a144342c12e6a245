#pragma once

#include <string>
#include <utility>
#include <vector>

#include "biortho/bivector.hpp"
#include "biortho/mesh.hpp"
#include "biortho/models.hpp"

namespace biortho {

// Curvature integrals over a model (or a conformal deformation of one) plus
// the signed residuals of the identities and bounds checked against them.
// Residuals are always reported as numbers, never folded into a silent
// pass/fail.
struct IntegralReport {
  std::string model;
  int chi = 0;
  bool hypotheses_met = true;  // for bound checks: s > 0 and k1perp >= -1e-12
                               // at every evaluation point
  std::vector<std::pair<std::string, double>> integrals;
  std::vector<std::pair<std::string, double>> residuals;

  void add_integral(const std::string& name, double v) { integrals.emplace_back(name, v); }
  void add_residual(const std::string& name, double v) { residuals.emplace_back(name, v); }
  bool has(const std::string& name) const;
  double get(const std::string& name) const;  // throws std::out_of_range
};

// Generalized Gauss-Bonnet in dimension 4 under this artifact's conventions:
//   8 pi^2 chi = integral of (|W|^2 + s^2/24 - |B|^2/2).
// |W|^2 sums the squared entries of both traceless 3x3 blocks; |B|^2 is
// 4x the squared entries of the mixed block (the convention under which the
// right side matches |Ric - (s/4) g|^2 and the identity closes on a product
// of two spheres with different radii — the only catalog member with B != 0).
// Reports both sides, the absolute and relative residual, and the separate
// integrals (volume, s^2, |W|^2, |B|^2, k1perp).
IntegralReport gauss_bonnet_check(const ModelManifold& model);

// Euler-characteristic bound for metrics with s > 0 and k1perp >= 0:
//   8 pi^2 chi < max(branch_a, branch_b)
// in two printed variants that are both reported, never silently chosen:
//   loose:  branch_a = integral(s^2) + 16 pi^2
//   sharp:  branch_a = integral(s^2)/6 + 16 pi^2
//   both:   branch_b = (5/24) integral(s^2)
// Also reports the pointwise certificate behind the bound: the max over
// evaluation points of |W|^2 - 6 (w1plus + w1minus)^2, which is <= 0 for
// every traceless pair.  If the hypotheses fail at some point the report is
// marked hypotheses_met = false and the numbers are still printed.
IntegralReport euler_bound_check(const ModelManifold& model);

// Same bound over the conformal metric u^2 g on a meshed model with the
// given Euler characteristic; curvature quantities of the deformed metric
// come from the conformal laws and the integrals are taken against its
// volume form u^4 dV.
IntegralReport euler_bound_check(const Mesh4& mesh, const Field& u, int chi);

// Slack of the inequality chain |W|^2 <= 6 w1plus^2 + 6 w1minus^2
// <= 6 (w1plus + w1minus)^2 for traceless blocks (the smallest eigenvalues
// are nonpositive, so their product is nonnegative and the second step
// holds).  Both slacks are >= 0 up to round-off for every traceless pair.
struct WnormSlack {
  double chain = 0.0;         // 6 (w1plus + w1minus)^2 - |W|^2
  double intermediate = 0.0;  // 6 w1plus^2 + 6 w1minus^2 - |W|^2
};
WnormSlack wnorm_inequality_certificate(const CurvatureBlocks& blocks);

// Total squared scalar curvature threshold below which a metric on the
// product of two two-spheres cannot have k1perp >= 0 everywhere:
// 768 pi^2 / 5.
double scalar_energy_exclusion_threshold();

// Threshold check for the canonical product metric itself (closed form).
struct ThresholdReport {
  double threshold = 0.0;      // 768 pi^2 / 5
  double integral_s2 = 0.0;    // total of s~^2 against the metric's volume form
  double min_k1perp = 0.0;     // min over evaluation points of k1perp~
  bool below_threshold = false;
  bool negativity_observed = false;  // min_k1perp < 0
  bool exclusion_respected = false;  // below_threshold implies negativity_observed
};
ThresholdReport scalar_energy_threshold_report(const ModelManifold& s2xs2_model);

// Threshold check for a conformal deformation u^2 g of a meshed product of
// two-spheres; integral_s2 is scale invariant in dimension 4, so constant u
// reproduces the canonical value for any scale.
ThresholdReport scalar_energy_threshold_report(const Mesh4& mesh, const Field& u);

}  // namespace biortho
