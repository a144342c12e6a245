// Bivector algebra: star operator, self-dual split, curvature block
// composition/decomposition, and the fixed basis conventions.

#include <doctest.h>

#include <cmath>
#include <random>

#include "biortho/bivector.hpp"
#include "biortho/common.hpp"
#include "biortho/property_lab.hpp"

using namespace biortho;

namespace {

Vec4 unit(int i) {
  Vec4 v = Vec4::Zero();
  v[i] = 1.0;
  return v;
}

Bivector coordinate_bivector(int slot) {
  Bivector b;
  b.c[slot] = 1.0;
  return b;
}

// Curvature operator of a product of two 2-spheres with curvatures k1, k2 in
// the coordinate bivector basis: factor planes are eigenplanes, mixed planes
// are flat.  Independent of compose(), so it can serve as its oracle.
CurvatureOperator product_sphere_operator(double k1, double k2) {
  CurvatureOperator op;
  op.m(0, 0) = k1;  // e12: tangent plane of the first factor
  op.m(5, 5) = k2;  // e34: tangent plane of the second factor
  return op;
}

}  // namespace

TEST_CASE("star maps coordinate basis as the orientation dictates") {
  const Bivector e12 = Bivector::wedge(unit(0), unit(1));
  const Bivector star_e12 = hodge_star(e12);
  CHECK(star_e12.c[5] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(star_e12.c.head(5).norm() == doctest::Approx(0.0).epsilon(1e-15));

  // (e12 + e34)/sqrt(2) is self-dual: fixed by star.
  Bivector sd;
  sd.c[0] = sd.c[5] = 1.0 / std::sqrt(2.0);
  const Bivector star_sd = hodge_star(sd);
  CHECK((star_sd.c - sd.c).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("star is an involutive isometry") {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    Bivector b;
    for (int i = 0; i < 6; ++i) b.c[i] = gauss(rng);
    const Bivector twice = hodge_star(hodge_star(b));
    CHECK((twice.c - b.c).norm() <= 1e-15 * b.norm());
    CHECK(hodge_star(b).norm() == doctest::Approx(b.norm()).epsilon(1e-14));
  }
}

TEST_CASE("split projects onto the fixed self-dual bases") {
  const SelfDualSplit s = split(coordinate_bivector(0));  // e12
  CHECK(s.plus[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.plus[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.plus[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.minus[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.minus[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.minus[2] == doctest::Approx(0.0).epsilon(1e-15));

  // A pure plus-basis element has no minus part.
  Bivector sd;
  sd.c[1] = 1.0 / std::sqrt(2.0);   // e13
  sd.c[4] = -1.0 / std::sqrt(2.0);  // -e24
  const SelfDualSplit s2 = split(sd);
  CHECK(s2.minus.norm() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s2.plus.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reassembly inverts split exactly") {
  std::mt19937_64 rng(777);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    Bivector b;
    for (int i = 0; i < 6; ++i) b.c[i] = gauss(rng);
    const Bivector back = reassemble(split(b));
    CHECK((back.c - b.c).norm() <= 1e-14 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("unit simple bivectors split into halves; non-simple ones do not") {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 200; ++trial) {
    Vec4 x, y;
    for (int i = 0; i < 4; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    Bivector w = Bivector::wedge(x, y);
    if (w.norm() < 1e-6) continue;
    w.c /= w.norm();
    CHECK(std::abs(w.plucker()) <= 1e-12);
    CHECK(w.is_simple());
    const SelfDualSplit s = split(w);
    CHECK(s.plus.squaredNorm() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.minus.squaredNorm() == doctest::Approx(0.5).epsilon(1e-12));
  }

  // e12 + e34 normalized is as far from simple as possible: the halves are
  // (1, 0) instead of (1/2, 1/2).
  Bivector ns;
  ns.c[0] = ns.c[5] = 1.0 / std::sqrt(2.0);
  CHECK_FALSE(ns.is_simple());
  const SelfDualSplit s = split(ns);
  CHECK(s.plus.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.minus.squaredNorm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("wedge produces simple bivectors with the right norm") {
  // |x ^ y|^2 = |x|^2 |y|^2 - <x,y>^2 for the coordinate basis norm.
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    Vec4 x, y;
    for (int i = 0; i < 4; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    const Bivector w = Bivector::wedge(x, y);
    const double gram = x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
    CHECK(w.squared_norm() == doctest::Approx(gram).epsilon(1e-12));
  }
}

TEST_CASE("identity operator decomposes to constant curvature blocks") {
  CurvatureOperator op;
  op.m = Mat6::Identity();
  const CurvatureBlocks blocks = decompose(op);
  CHECK(blocks.s == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(blocks.wplus.norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(blocks.wminus.norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(blocks.b.norm() == doctest::Approx(0.0).epsilon(1e-14));

  // And composing those blocks returns the identity.
  CurvatureBlocks cc;
  cc.s = 12.0;
  const CurvatureOperator round = compose(cc);
  CHECK((round.m - Mat6::Identity()).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("product of unit spheres: blocks from the assembled operator") {
  const CurvatureBlocks blocks = decompose(product_sphere_operator(1.0, 1.0));
  CHECK(blocks.s == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(blocks.b.norm() == doctest::Approx(0.0).epsilon(1e-14));

  Eigen::SelfAdjointEigenSolver<Mat3> es_p(blocks.wplus);
  Eigen::SelfAdjointEigenSolver<Mat3> es_m(blocks.wminus);
  const Vec3 expected(-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0);  // ascending
  CHECK((es_p.eigenvalues() - expected).norm() <= 1e-13);
  CHECK((es_m.eigenvalues() - expected).norm() <= 1e-13);

  // Operator eigenvalues on 2-forms: {1, 1, 0, 0, 0, 0}.
  Eigen::SelfAdjointEigenSolver<Mat6> es_op(compose(blocks).m);
  Vec6 expected_op;
  expected_op << 0, 0, 0, 0, 1, 1;
  CHECK((es_op.eigenvalues() - expected_op).norm() <= 1e-13);
}

TEST_CASE("unequal sphere product: scalar curvature and mixed block entry") {
  // Curvatures 1 and 1/4: s = 2(k1 + k2) = 5/2 and the only mixed-block
  // entry couples the first plus/minus basis vectors with weight
  // (k1 - k2)/2 = 3/8.
  const CurvatureBlocks blocks = decompose(product_sphere_operator(1.0, 0.25));
  CHECK(blocks.s == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(blocks.b(0, 0) == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  Mat3 rest = blocks.b;
  rest(0, 0) = 0.0;
  CHECK(rest.norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("compose and decompose are mutually inverse on random blocks") {
  RandomBlockSpec spec;
  spec.seed = 2024;
  spec.count = 1000;
  for (const CurvatureBlocks& blocks : generate(spec)) {
    const CurvatureBlocks back = decompose(compose(blocks));
    CHECK(std::abs(back.s - blocks.s) <= 1e-13 * std::max(1.0, std::abs(blocks.s)));
    CHECK((back.wplus - blocks.wplus).norm() <= 1e-13);
    CHECK((back.wminus - blocks.wminus).norm() <= 1e-13);
    CHECK((back.b - blocks.b).norm() <= 1e-13);
    CHECK(compose(blocks).m.trace() ==
          doctest::Approx(blocks.s / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("validation rejects malformed inputs") {
  CurvatureBlocks bad;
  bad.wplus = Mat3::Identity();  // trace 3, not traceless
  CHECK_THROWS_AS(compose(bad), std::invalid_argument);

  CurvatureOperator asym;
  asym.m(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(decompose(asym), std::invalid_argument);
}
