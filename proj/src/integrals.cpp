#include "biortho/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "biortho/analysis.hpp"
#include "biortho/yamabe.hpp"

namespace biortho {

namespace {

constexpr double kHypothesisSlack = 1e-12;

// Neumaier-compensated accumulator: quadratures reach millions of nodes and
// the refinement-consistency contracts sit below naive summation drift.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double relative_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

void add_bound_branches(IntegralReport& report, double total_s2, double lhs) {
  const double pi2 = kPi * kPi;
  const double branch_a_loose = total_s2 + 16.0 * pi2;
  const double branch_a_sharp = total_s2 / 6.0 + 16.0 * pi2;
  const double branch_b = (5.0 / 24.0) * total_s2;
  const double bound_loose = std::max(branch_a_loose, branch_b);
  const double bound_sharp = std::max(branch_a_sharp, branch_b);
  report.add_integral("euler_lhs", lhs);
  report.add_integral("branch_a_loose", branch_a_loose);
  report.add_integral("branch_a_sharp", branch_a_sharp);
  report.add_integral("branch_b", branch_b);
  report.add_integral("bound_loose", bound_loose);
  report.add_integral("bound_sharp", bound_sharp);
  report.add_residual("margin_loose", bound_loose - lhs);
  report.add_residual("margin_sharp", bound_sharp - lhs);
}

}  // namespace

bool IntegralReport::has(const std::string& name) const {
  for (const auto& kv : integrals) {
    if (kv.first == name) return true;
  }
  for (const auto& kv : residuals) {
    if (kv.first == name) return true;
  }
  return false;
}

double IntegralReport::get(const std::string& name) const {
  for (const auto& kv : integrals) {
    if (kv.first == name) return kv.second;
  }
  for (const auto& kv : residuals) {
    if (kv.first == name) return kv.second;
  }
  throw std::out_of_range("IntegralReport: no entry named '" + name + "'");
}

IntegralReport gauss_bonnet_check(const ModelManifold& model) {
  IntegralReport report;
  report.model = model.name;
  report.chi = model.euler_characteristic;

  CompensatedSum volume;
  CompensatedSum total_s2;
  CompensatedSum total_wnorm2;
  CompensatedSum total_bnorm2;
  CompensatedSum total_density;
  for (const QuadratureNode& node : model.quadrature) {
    const CurvatureBlocks blocks = model.blocks_at(node.x);
    const double wn2 = blocks.wnorm2();
    const double bn2 = blocks.bnorm2();
    volume.add(node.w);
    total_s2.add(node.w * blocks.s * blocks.s);
    total_wnorm2.add(node.w * wn2);
    total_bnorm2.add(node.w * bn2);
    total_density.add(node.w * (wn2 + blocks.s * blocks.s / 24.0 - bn2 / 2.0));
  }

  const double lhs = 8.0 * kPi * kPi * report.chi;
  report.add_integral("volume", volume.value());
  report.add_integral("total_s2", total_s2.value());
  report.add_integral("total_wnorm2", total_wnorm2.value());
  report.add_integral("total_bnorm2", total_bnorm2.value());
  report.add_integral("k1perp", kperp_spectral(model.blocks).k1perp);
  report.add_integral("gauss_bonnet_integral", total_density.value());
  report.add_integral("gauss_bonnet_lhs", lhs);
  report.add_residual("gauss_bonnet_abs", std::abs(lhs - total_density.value()));
  report.add_residual("gauss_bonnet_rel", relative_residual(lhs, total_density.value()));
  return report;
}

IntegralReport euler_bound_check(const ModelManifold& model) {
  IntegralReport report;
  report.model = model.name;
  report.chi = model.euler_characteristic;

  CompensatedSum volume;
  CompensatedSum total_s2;
  double chain_defect = -std::numeric_limits<double>::infinity();
  bool hypotheses = true;
  for (const QuadratureNode& node : model.quadrature) {
    const CurvatureBlocks blocks = model.blocks_at(node.x);
    const SpectralSummary spectral = kperp_spectral(blocks);
    volume.add(node.w);
    total_s2.add(node.w * blocks.s * blocks.s);
    const double pair_sum = spectral.wplus_eigs[0] + spectral.wminus_eigs[0];
    chain_defect = std::max(chain_defect, blocks.wnorm2() - 6.0 * pair_sum * pair_sum);
    if (!(blocks.s > 0.0) || spectral.k1perp < -kHypothesisSlack) hypotheses = false;
  }
  report.hypotheses_met = hypotheses;

  report.add_integral("volume", volume.value());
  report.add_integral("total_s2", total_s2.value());
  report.add_integral("k1perp", kperp_spectral(model.blocks).k1perp);
  add_bound_branches(report, total_s2.value(), 8.0 * kPi * kPi * report.chi);
  report.add_residual("pointwise_chain_defect", chain_defect);
  return report;
}

IntegralReport euler_bound_check(const Mesh4& mesh, const Field& u, int chi) {
  if (u.size() != mesh.size()) {
    throw std::invalid_argument("euler_bound_check: field size does not match the mesh");
  }
  IntegralReport report;
  report.model = mesh.model_name;
  report.chi = chi;

  const ConformalFields fields = conformal_pointwise(mesh, u);
  const SpectralSummary base = kperp_spectral(mesh.blocks);
  const double base_pair = base.wplus_eigs[0] + base.wminus_eigs[0];
  const double base_defect = mesh.blocks.wnorm2() - 6.0 * base_pair * base_pair;

  CompensatedSum volume_deformed;
  CompensatedSum total_s2;
  double chain_defect = -std::numeric_limits<double>::infinity();
  bool hypotheses = true;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double u2 = u[i] * u[i];
    const double u4 = u2 * u2;
    const double wv = mesh.weights[i] * u4;
    volume_deformed.add(wv);
    total_s2.add(wv * fields.scalar[i] * fields.scalar[i]);
    // traceless blocks of the deformed metric scale by 1/u^2, their squared
    // norm by 1/u^4
    chain_defect = std::max(chain_defect, base_defect / u4);
    if (!(fields.scalar[i] > 0.0) || fields.k1perp[i] < -kHypothesisSlack) hypotheses = false;
  }
  report.hypotheses_met = hypotheses;

  report.add_integral("volume", volume_deformed.value());
  report.add_integral("total_s2", total_s2.value());
  report.add_integral("min_k1perp", fields.k1perp.minCoeff());
  add_bound_branches(report, total_s2.value(), 8.0 * kPi * kPi * chi);
  report.add_residual("pointwise_chain_defect", chain_defect);
  return report;
}

WnormSlack wnorm_inequality_certificate(const CurvatureBlocks& blocks) {
  const SpectralSummary spectral = kperp_spectral(blocks);
  const double w1p = spectral.wplus_eigs[0];
  const double w1m = spectral.wminus_eigs[0];
  const double wnorm2 = blocks.wnorm2();
  WnormSlack slack;
  slack.chain = 6.0 * (w1p + w1m) * (w1p + w1m) - wnorm2;
  slack.intermediate = 6.0 * (w1p * w1p + w1m * w1m) - wnorm2;
  return slack;
}

double scalar_energy_exclusion_threshold() { return 768.0 * kPi * kPi / 5.0; }

ThresholdReport scalar_energy_threshold_report(const ModelManifold& s2xs2_model) {
  if (s2xs2_model.name != "s2xs2") {
    throw std::invalid_argument(
        "scalar_energy_threshold_report: defined on the product of two two-spheres");
  }
  ThresholdReport report;
  report.threshold = scalar_energy_exclusion_threshold();
  CompensatedSum total_s2;
  for (const QuadratureNode& node : s2xs2_model.quadrature) {
    const CurvatureBlocks blocks = s2xs2_model.blocks_at(node.x);
    total_s2.add(node.w * blocks.s * blocks.s);
  }
  report.integral_s2 = total_s2.value();
  report.min_k1perp = kperp_spectral(s2xs2_model.blocks).k1perp;
  report.below_threshold = report.integral_s2 < report.threshold;
  report.negativity_observed = report.min_k1perp < 0.0;
  report.exclusion_respected = !report.below_threshold || report.negativity_observed;
  return report;
}

ThresholdReport scalar_energy_threshold_report(const Mesh4& mesh, const Field& u) {
  if (mesh.model_name != "s2xs2") {
    throw std::invalid_argument(
        "scalar_energy_threshold_report: defined on the product of two two-spheres");
  }
  if (u.size() != mesh.size()) {
    throw std::invalid_argument("scalar_energy_threshold_report: field size mismatch");
  }
  const ConformalFields fields = conformal_pointwise(mesh, u);
  ThresholdReport report;
  report.threshold = scalar_energy_exclusion_threshold();
  CompensatedSum total_s2;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double u2 = u[i] * u[i];
    total_s2.add(mesh.weights[i] * u2 * u2 * fields.scalar[i] * fields.scalar[i]);
  }
  report.integral_s2 = total_s2.value();
  report.min_k1perp = fields.k1perp.minCoeff();
  report.below_threshold = report.integral_s2 < report.threshold;
  report.negativity_observed = report.min_k1perp < 0.0;
  report.exclusion_respected = !report.below_threshold || report.negativity_observed;
  return report;
}

}  // namespace biortho
