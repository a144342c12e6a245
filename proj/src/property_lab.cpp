#include "biortho/property_lab.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "biortho/analysis.hpp"
#include "biortho/integrals.hpp"

namespace biortho {

namespace {

// Deterministic generator: raw mt19937_64 bits mapped to doubles directly, so
// the stream does not depend on library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {  // open interval (0, 1)
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform_sym(double scale) { return scale * (2.0 * uniform01() - 1.0); }
  double gaussian(double scale) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return scale * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

Mat3 random_traceless_symmetric(Rng& rng, double scale) {
  Mat3 a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = rng.gaussian(scale);
  }
  Mat3 sym = 0.5 * (a + a.transpose());
  sym -= (sym.trace() / 3.0) * Mat3::Identity();
  return sym;
}

CurvatureBlocks draw_blocks(Rng& rng, const RandomBlockSpec& spec) {
  CurvatureBlocks blocks;
  blocks.s = rng.uniform_sym(spec.s_scale);
  blocks.wplus = random_traceless_symmetric(rng, spec.w_scale);
  blocks.wminus = random_traceless_symmetric(rng, spec.w_scale);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) blocks.b(r, c) = rng.gaussian(spec.b_scale);
  }
  switch (spec.constraint) {
    case BlockConstraint::Einstein:
      blocks.b = Mat3::Zero();
      break;
    case BlockConstraint::ConformallyFlat:
      blocks.wplus = Mat3::Zero();
      blocks.wminus = Mat3::Zero();
      break;
    default:
      break;
  }
  return blocks;
}

void validate_spec(const RandomBlockSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("sample count must be at least 1");
  for (double scale : {spec.s_scale, spec.w_scale, spec.b_scale}) {
    if (!(scale >= 0.0) || !std::isfinite(scale)) {
      throw std::invalid_argument("scales must be finite and nonnegative");
    }
  }
  if (spec.rejection_budget < 1) {
    throw std::invalid_argument("rejection budget must be at least 1");
  }
}

// --- quasi-random planes -------------------------------------------------

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i != 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

Vec3 halton_sphere(std::uint64_t idx, int base1, int base2) {
  const double z = 2.0 * radical_inverse(idx, base1) - 1.0;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * kPi * radical_inverse(idx, base2);
  return Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
}

TwoPlane halton_plane(std::uint64_t idx) {
  SelfDualSplit parts;
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  parts.plus = inv_root2 * halton_sphere(idx, 2, 3);
  parts.minus = inv_root2 * halton_sphere(idx, 5, 7);
  return TwoPlane::from_bivector(reassemble(parts));
}

// --- suite plumbing -------------------------------------------------------

SuiteReport start_report(const char* suite, double tolerance) {
  SuiteReport report;
  report.suite = suite;
  report.tolerance = tolerance;
  return report;
}

void record(SuiteReport& report, double residual, const std::string& witness) {
  ++report.count;
  if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
  report.max_residual = std::max(report.max_residual, residual);
  if (!(residual <= report.tolerance)) {
    if (report.failures == 0) report.counterexample = witness;
    ++report.failures;
  }
}

SuiteReport finish(SuiteReport report) {
  report.passed = (report.failures == 0);
  return report;
}

// --- individual suites ----------------------------------------------------

SuiteReport suite_trace_sum(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("trace-sum", 1e-10);
  for (const CurvatureBlocks& blocks : generate(spec)) {
    const SpectralSummary sp = kperp_spectral(blocks);
    const double res =
        std::max({std::abs(sp.k1perp + sp.k2perp + sp.k3perp - blocks.s / 4.0),
                  std::abs(sp.wplus_eigs.sum()), std::abs(sp.wminus_eigs.sum())});
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

SuiteReport suite_spectral_vs_bruteforce(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("spectral-vs-bruteforce", 1e-6);
  for (const CurvatureBlocks& blocks : generate(spec)) {
    const SpectralSummary sp = kperp_spectral(blocks);
    const BruteForceResult bf = kperp_bruteforce(blocks);
    const double res = std::max(std::abs(sp.k1perp - bf.lo.value),
                                std::abs(sp.k3perp - bf.hi.value));
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

// Shared by the two classification suites: run a generic batch and a
// constrained batch, classify every sample by the plane / eigenvalue
// criterion, and fail on any mismatch with the constructed ground truth.
SuiteReport classification_suite(const char* name, const RandomBlockSpec& spec,
                                 BlockConstraint constrained, std::uint64_t seed_salt,
                                 bool (*truth)(const CurvatureBlocks&),
                                 double (*criterion)(const CurvatureBlocks&)) {
  SuiteReport report = start_report(name, 1e-8);
  RandomBlockSpec special = spec;
  special.seed ^= seed_salt;
  special.constraint = constrained;
  const std::array<const RandomBlockSpec*, 2> batches = {&spec, &special};
  for (const RandomBlockSpec* batch : batches) {
    for (const CurvatureBlocks& blocks : generate(*batch)) {
      const bool truly = truth(blocks);
      const double measure = criterion(blocks);
      const bool classified = (measure <= report.tolerance);
      ++report.count;
      if (truly) report.max_residual = std::max(report.max_residual, measure);
      if (classified != truly) {
        if (report.failures == 0) report.counterexample = format_blocks(blocks);
        ++report.failures;
      }
    }
  }
  return finish(report);
}

double max_plane_asymmetry(const CurvatureBlocks& blocks) {
  double worst = 0.0;
  for (int j = 0; j < 128; ++j) {
    const TwoPlane plane = halton_plane(static_cast<std::uint64_t>(j) + 1);
    const double diff =
        std::abs(sectional(blocks, plane) - sectional(blocks, plane.complement()));
    worst = std::max(worst, diff);
  }
  return worst;
}

double max_kperp_spread(const CurvatureBlocks& blocks) {
  const SpectralSummary sp = kperp_spectral(blocks);
  const double mid = blocks.s / 12.0;
  return std::max({std::abs(sp.k1perp - mid), std::abs(sp.k2perp - mid),
                   std::abs(sp.k3perp - mid)});
}

SuiteReport suite_einstein_iff(const RandomBlockSpec& spec) {
  return classification_suite(
      "einstein-iff-Kperp-eq-K", spec, BlockConstraint::Einstein, 0x9E3779B97F4A7C15ull,
      [](const CurvatureBlocks& blocks) { return blocks.bnorm2() == 0.0; },
      &max_plane_asymmetry);
}

SuiteReport suite_confflat_iff(const RandomBlockSpec& spec) {
  return classification_suite(
      "confflat-iff-kperp-s12", spec, BlockConstraint::ConformallyFlat,
      0xD1B54A32D192ED03ull,
      [](const CurvatureBlocks& blocks) { return blocks.wnorm2() == 0.0; },
      &max_kperp_spread);
}

SuiteReport suite_wnorm_chain(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("wnorm-chain", 1e-12);
  for (const CurvatureBlocks& blocks : generate(spec)) {
    const WnormSlack slack = wnorm_inequality_certificate(blocks);
    const double res = std::max(-slack.chain, -slack.intermediate);
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

SuiteReport suite_biortho_complement(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("biortho-complement", 1e-14);
  std::uint64_t plane_idx = 1;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    double res = 0.0;
    for (int j = 0; j < 8; ++j) {
      const TwoPlane plane = halton_plane(plane_idx++);
      res = std::max(res,
                     std::abs(biortho(blocks, plane) - biortho(blocks, plane.complement())));
    }
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

SuiteReport suite_b_cancellation(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("b-cancellation", 1e-12);
  std::uint64_t plane_idx = 1;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    double res = 0.0;
    for (int j = 0; j < 8; ++j) {
      const TwoPlane plane = halton_plane(plane_idx++);
      const double actual =
          sectional(blocks, plane) - sectional(blocks, plane.complement());
      const double predicted = 4.0 * plane.parts.plus.dot(blocks.b * plane.parts.minus);
      res = std::max(res, std::abs(actual - predicted));
    }
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

SuiteReport suite_compose_roundtrip(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("compose-roundtrip", 1e-13);
  for (const CurvatureBlocks& blocks : generate(spec)) {
    const CurvatureBlocks back = decompose(compose(blocks));
    const double res = std::max({std::abs(back.s - blocks.s),
                                 (back.wplus - blocks.wplus).cwiseAbs().maxCoeff(),
                                 (back.wminus - blocks.wminus).cwiseAbs().maxCoeff(),
                                 (back.b - blocks.b).cwiseAbs().maxCoeff()});
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

SuiteReport suite_simple_split_norms(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("simple-split-norms", 1e-12);
  Rng rng(spec.seed);
  for (int i = 0; i < spec.count; ++i) {
    Bivector phi;
    int attempts = 0;
    for (;;) {
      Vec4 x, y;
      for (int k = 0; k < 4; ++k) {
        x[k] = rng.gaussian(1.0);
        y[k] = rng.gaussian(1.0);
      }
      phi = Bivector::wedge(x, y);
      const double n = phi.norm();
      if (n > 1e-6) {
        phi.c /= n;
        break;
      }
      if (++attempts > spec.rejection_budget) {
        throw std::runtime_error("simple-split-norms: rejection budget exhausted");
      }
    }
    const SelfDualSplit parts = split(phi);
    const Bivector starred = hodge_star(phi);
    const Bivector twice = hodge_star(starred);
    const double res = std::max({std::abs(parts.plus.squaredNorm() - 0.5),
                                 std::abs(parts.minus.squaredNorm() - 0.5),
                                 std::abs(starred.norm() - phi.norm()),
                                 (twice.c - phi.c).cwiseAbs().maxCoeff(),
                                 std::abs(phi.plucker())});
    std::ostringstream witness;
    witness << "phi =";
    for (int k = 0; k < 6; ++k) witness << ' ' << fmt_g17(phi.c[k]);
    record(report, res, witness.str());
  }
  return finish(report);
}

SuiteReport suite_extremal_eigenplanes(const RandomBlockSpec& spec) {
  SuiteReport report = start_report("extremal-eigenplanes", 1e-5);
  // brute-force-heavy: cap the sample count
  RandomBlockSpec capped = spec;
  capped.count = std::min(spec.count, 64);
  for (const CurvatureBlocks& blocks : generate(capped)) {
    const BruteForceResult bf = kperp_bruteforce(blocks);
    const Mat3 hp = 0.5 * blocks.wplus;
    const Mat3 hm = 0.5 * blocks.wminus;
    double res = 0.0;
    for (const BruteForceExtremum* ext : {&bf.lo, &bf.hi}) {
      const Vec3 ra = hp * ext->a - (ext->a.dot(hp * ext->a)) * ext->a;
      const Vec3 rb = hm * ext->b - (ext->b.dot(hm * ext->b)) * ext->b;
      res = std::max({res, ra.norm(), rb.norm()});
    }
    record(report, res, format_blocks(blocks));
  }
  return finish(report);
}

}  // namespace

BlockConstraint parse_constraint(const std::string& name) {
  std::string k = name;
  for (char& c : k) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (k == "none") return BlockConstraint::None;
  if (k == "einstein") return BlockConstraint::Einstein;
  if (k == "confflat") return BlockConstraint::ConformallyFlat;
  if (k == "nonneg-k1") return BlockConstraint::NonnegK1;
  throw std::invalid_argument("unknown block constraint: " + name);
}

std::vector<CurvatureBlocks> generate(const RandomBlockSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  std::vector<CurvatureBlocks> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    if (spec.constraint == BlockConstraint::NonnegK1) {
      bool accepted = false;
      for (int attempt = 0; attempt < spec.rejection_budget; ++attempt) {
        CurvatureBlocks blocks = draw_blocks(rng, spec);
        if (kperp_spectral(blocks).k1perp >= 0.0) {
          out.push_back(blocks);
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        throw std::runtime_error("generate: rejection budget exhausted for nonneg-k1");
      }
    } else {
      out.push_back(draw_blocks(rng, spec));
    }
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"trace-sum",      "spectral-vs-bruteforce", "einstein-iff-Kperp-eq-K",
          "confflat-iff-kperp-s12", "wnorm-chain",    "biortho-complement",
          "b-cancellation", "compose-roundtrip",      "simple-split-norms",
          "extremal-eigenplanes"};
}

SuiteReport run_suite(const std::string& name, const RandomBlockSpec& spec) {
  validate_spec(spec);
  if (name == "trace-sum") return suite_trace_sum(spec);
  if (name == "spectral-vs-bruteforce") return suite_spectral_vs_bruteforce(spec);
  if (name == "einstein-iff-Kperp-eq-K") return suite_einstein_iff(spec);
  if (name == "confflat-iff-kperp-s12") return suite_confflat_iff(spec);
  if (name == "wnorm-chain") return suite_wnorm_chain(spec);
  if (name == "biortho-complement") return suite_biortho_complement(spec);
  if (name == "b-cancellation") return suite_b_cancellation(spec);
  if (name == "compose-roundtrip") return suite_compose_roundtrip(spec);
  if (name == "simple-split-norms") return suite_simple_split_norms(spec);
  if (name == "extremal-eigenplanes") return suite_extremal_eigenplanes(spec);
  throw std::invalid_argument("unknown suite: " + name);
}

std::string format_blocks(const CurvatureBlocks& blocks) {
  std::ostringstream out;
  out << fmt_g17(blocks.s);
  auto emit = [&out](const Mat3& m) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) out << ' ' << fmt_g17(m(r, c));
    }
  };
  emit(blocks.wplus);
  emit(blocks.wminus);
  emit(blocks.b);
  return out.str();
}

CurvatureBlocks parse_blocks(const std::string& line) {
  std::istringstream in(line);
  double values[28];
  for (double& v : values) {
    if (!(in >> v)) {
      throw std::invalid_argument("parse_blocks: expected 28 numbers (s, wplus, wminus, b)");
    }
  }
  double extra;
  if (in >> extra) {
    throw std::invalid_argument("parse_blocks: trailing data after 28 numbers");
  }
  CurvatureBlocks blocks;
  blocks.s = values[0];
  int idx = 1;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) blocks.wplus(r, c) = values[idx++];
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) blocks.wminus(r, c) = values[idx++];
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) blocks.b(r, c) = values[idx++];
  }
  return blocks;
}

}  // namespace biortho
