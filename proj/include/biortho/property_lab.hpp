#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biortho/bivector.hpp"

namespace biortho {

// Constraints applied to random curvature-block generation.  Einstein and
// ConformallyFlat are constructive (the relevant block is zeroed);
// NonnegK1 rejection-samples until k1perp >= 0.
enum class BlockConstraint { None, Einstein, ConformallyFlat, NonnegK1 };

BlockConstraint parse_constraint(const std::string& name);  // "none", "einstein",
                                                            // "confflat", "nonneg-k1"

struct RandomBlockSpec {
  std::uint64_t seed = 1;
  int count = 1000;
  double s_scale = 10.0;  // s uniform in [-s_scale, s_scale]
  double w_scale = 1.0;   // W blocks: symmetric Gaussian entries, trace-projected
  double b_scale = 1.0;   // B block: Gaussian entries
  BlockConstraint constraint = BlockConstraint::None;
  int rejection_budget = 100000;  // per sample; exhausted -> std::runtime_error
};

// Deterministic: the same spec yields a bit-identical stream.
std::vector<CurvatureBlocks> generate(const RandomBlockSpec& spec);

// One bulk property run: the named invariant evaluated over every generated
// sample.  max_residual is the worst deviation in the suite's own metric;
// a failing sample is echoed verbatim (printable at full precision, so
// re-feeding it reproduces the failure).
struct SuiteReport {
  std::string suite;
  int count = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  int failures = 0;
  bool passed = false;
  std::string counterexample;  // empty when passed
};

// Registered suites:
//   trace-sum                k1+k2+k3 = s/4 and w2 = -w1-w3 for both blocks
//   spectral-vs-bruteforce   eigenvalue formulas vs Grassmannian search
//   einstein-iff-Kperp-eq-K  B = 0 iff plane curvature equals its complement
//                            average over sampled planes (run on an Einstein
//                            batch and a generic batch; zero misclassifications)
//   confflat-iff-kperp-s12   W = 0 iff all three k_i equal s/12
//   wnorm-chain              |W|^2 <= 6 w1p^2 + 6 w1m^2 <= 6 (w1p+w1m)^2
//   biortho-complement       biortho(plane) = biortho(complement plane)
//   b-cancellation           sectional(phi) - sectional(complement) = 4 <phi+, B phi->
//   compose-roundtrip        decompose(compose(blocks)) = blocks
//   simple-split-norms       unit simple bivectors split into equal halves;
//                            star is an involutive isometry
//   extremal-eigenplanes     brute-force extremizers are eigenvector planes
//                            (Rayleigh residual check)
std::vector<std::string> suite_names();

// Runs a registered suite; unknown names throw std::invalid_argument.
SuiteReport run_suite(const std::string& name, const RandomBlockSpec& spec);

// Full-precision one-line rendering of blocks (s then row-major wplus,
// wminus, b), parseable by parse_blocks for counterexample reproduction.
std::string format_blocks(const CurvatureBlocks& blocks);
CurvatureBlocks parse_blocks(const std::string& line);

}  // namespace biortho
