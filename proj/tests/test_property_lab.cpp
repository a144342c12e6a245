// Randomized property suites: deterministic generation, constraint handling,
// full-precision round-tripping of samples, and the registered invariants.

#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "biortho/analysis.hpp"
#include "biortho/bivector.hpp"
#include "biortho/common.hpp"
#include "biortho/property_lab.hpp"

using namespace biortho;

TEST_CASE("generation is deterministic in the sampling parameters") {
  RandomBlockSpec spec;
  spec.seed = 42;
  spec.count = 50;
  const auto a = generate(spec);
  const auto b = generate(spec);
  REQUIRE(a.size() == 50);
  REQUIRE(b.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(format_blocks(a[i]) == format_blocks(b[i]));
  }

  RandomBlockSpec other = spec;
  other.seed = 43;
  const auto c = generate(other);
  CHECK(format_blocks(a[0]) != format_blocks(c[0]));
}

TEST_CASE("generated blocks are well-formed") {
  RandomBlockSpec spec;
  spec.seed = 7;
  spec.count = 200;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    CHECK(std::abs(blocks.wplus.trace()) <= 1e-12);
    CHECK(std::abs(blocks.wminus.trace()) <= 1e-12);
    CHECK((blocks.wplus - blocks.wplus.transpose()).norm() <= 1e-14);
    CHECK((blocks.wminus - blocks.wminus.transpose()).norm() <= 1e-14);
    CHECK(std::abs(blocks.s) <= spec.s_scale);
  }
}

TEST_CASE("constraints shape the samples") {
  RandomBlockSpec spec;
  spec.seed = 11;
  spec.count = 100;

  spec.constraint = BlockConstraint::Einstein;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    CHECK(blocks.b.norm() == 0.0);
  }

  spec.constraint = BlockConstraint::ConformallyFlat;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    CHECK(blocks.wplus.norm() == 0.0);
    CHECK(blocks.wminus.norm() == 0.0);
  }

  spec.constraint = BlockConstraint::NonnegK1;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    CHECK(kperp_spectral(blocks).k1perp >= -1e-12);
  }

  CHECK(parse_constraint("none") == BlockConstraint::None);
  CHECK(parse_constraint("einstein") == BlockConstraint::Einstein);
  CHECK(parse_constraint("confflat") == BlockConstraint::ConformallyFlat);
  CHECK(parse_constraint("nonneg-k1") == BlockConstraint::NonnegK1);
  CHECK_THROWS_AS(parse_constraint("bogus"), std::invalid_argument);
}

TEST_CASE("an impossible rejection target exhausts its budget loudly") {
  RandomBlockSpec spec;
  spec.seed = 3;
  spec.count = 1;
  spec.constraint = BlockConstraint::NonnegK1;
  spec.s_scale = 1e-3;   // s/12 is tiny ...
  spec.w_scale = 100.0;  // ... while the traceless blocks dominate
  spec.rejection_budget = 50;
  CHECK_THROWS_AS(generate(spec), std::runtime_error);
}

TEST_CASE("block rendering round-trips at full precision") {
  RandomBlockSpec spec;
  spec.seed = 100;
  spec.count = 25;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    const CurvatureBlocks back = parse_blocks(format_blocks(blocks));
    CHECK(back.s == blocks.s);
    CHECK((back.wplus - blocks.wplus).norm() == 0.0);
    CHECK((back.wminus - blocks.wminus).norm() == 0.0);
    CHECK((back.b - blocks.b).norm() == 0.0);
  }
  CHECK_THROWS_AS(parse_blocks("1 2 3"), std::invalid_argument);
}

TEST_CASE("the suite registry is complete") {
  const std::set<std::string> expected = {
      "trace-sum",
      "spectral-vs-bruteforce",
      "einstein-iff-Kperp-eq-K",
      "confflat-iff-kperp-s12",
      "wnorm-chain",
      "biortho-complement",
      "b-cancellation",
      "compose-roundtrip",
      "simple-split-norms",
      "extremal-eigenplanes",
  };
  const auto names = suite_names();
  CHECK(names.size() == expected.size());
  CHECK(std::set<std::string>(names.begin(), names.end()) == expected);
}

TEST_CASE("every registered suite passes on a fresh batch") {
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    RandomBlockSpec spec;
    spec.seed = 2718;
    // The search-based suites are the slow ones; keep their batches smaller.
    spec.count = (name == "spectral-vs-bruteforce" || name == "extremal-eigenplanes")
                     ? 50
                     : 200;
    const SuiteReport report = run_suite(name, spec);
    CHECK(report.passed);
    CHECK(report.failures == 0);
    // The classification suites evaluate a generic batch plus a constrained
    // batch, so they report twice the requested sample count.
    const bool doubled =
        (name == "einstein-iff-Kperp-eq-K" || name == "confflat-iff-kperp-s12");
    CHECK(report.count == (doubled ? 2 * spec.count : spec.count));
    CHECK(report.suite == name);
    CHECK(report.max_residual <= report.tolerance);
    CHECK(report.counterexample.empty());
  }
}

TEST_CASE("suites respect the constraint of the incoming spec") {
  RandomBlockSpec spec;
  spec.seed = 5;
  spec.count = 100;
  spec.constraint = BlockConstraint::Einstein;
  const SuiteReport einstein = run_suite("einstein-iff-Kperp-eq-K", spec);
  CHECK(einstein.passed);

  spec.constraint = BlockConstraint::ConformallyFlat;
  const SuiteReport flat = run_suite("confflat-iff-kperp-s12", spec);
  CHECK(flat.passed);
}

TEST_CASE("unknown suites are rejected") {
  RandomBlockSpec spec;
  CHECK_THROWS_AS(run_suite("no-such-suite", spec), std::invalid_argument);
}
