// Finite-difference curvature of metric charts: flatness detection, agreement
// with the closed-form blocks of every catalog model through frame-invariant
// data, conformal rescaling, and error contracts.

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "biortho/chart.hpp"
#include "biortho/common.hpp"
#include "biortho/models.hpp"

using namespace biortho;

namespace {

Vec4 domain_midpoint(const MetricChart& chart) {
  Vec4 p;
  for (int i = 0; i < 4; ++i) {
    const ChartInterval& iv = chart.domain[i];
    // Unbounded axes (affine charts) have no midpoint; any interior point
    // works on a homogeneous space, so pick a fixed off-origin one.
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      p[i] = 0.3 - 0.1 * i;
    } else {
      p[i] = 0.5 * (iv.lo + iv.hi);
    }
  }
  return p;
}

Vec3 ascending_eigs(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  return es.eigenvalues();
}

Vec3 singular_values(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m);
  return svd.singularValues();  // descending
}

Vec4 ricci_eigs(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.transpose()));
  return es.eigenvalues();
}

struct ModelExpectation {
  std::string name;
  ModelManifold model;
  Vec4 ricci;  // ascending Ricci operator eigenvalues
};

std::vector<ModelExpectation> expectations() {
  std::vector<ModelExpectation> out;
  out.push_back({"s4", make_sphere4(1.0, 6), Vec4(3, 3, 3, 3)});
  out.push_back({"s4 radius 2", make_sphere4(2.0, 6), Vec4(0.75, 0.75, 0.75, 0.75)});
  out.push_back({"s2xs2 equal", make_s2xs2(1.0, 1.0, 6), Vec4(1, 1, 1, 1)});
  out.push_back({"s2xs2 unequal", make_s2xs2(1.0, 2.0, 6), Vec4(0.25, 0.25, 1, 1)});
  out.push_back({"s2xt2", make_s2xt2(1.0, 2.0 * kPi, 2.0 * kPi, 6), Vec4(0, 0, 1, 1)});
  out.push_back({"t4", make_t4(2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 6),
                 Vec4(0, 0, 0, 0)});
  out.push_back({"s3xs1", make_s3xs1(1.0, 2.0 * kPi, 6), Vec4(0, 2, 2, 2)});
  out.push_back({"cp2", make_cp2(6), Vec4(6, 6, 6, 6)});
  return out;
}

}  // namespace

TEST_CASE("flat box has identically vanishing curvature") {
  const ModelManifold t4 = make_t4(2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 6);
  const std::vector<Vec4> points = {
      domain_midpoint(t4.chart), Vec4(0.3, 1.2, 5.9, 2.2), Vec4(0.0, 0.0, 0.0, 0.0)};
  for (const Vec4& p : points) {
    const PointCurvature pc = curvature_at(t4.chart, p);
    CHECK(pc.op.m.norm() <= 1e-9);
    CHECK(std::abs(pc.scalar) <= 1e-9);
    CHECK(pc.ricci.norm() <= 1e-9);
  }
}

TEST_CASE("chart curvature matches the constant blocks of each model") {
  for (const ModelExpectation& e : expectations()) {
    CAPTURE(e.name);
    const PointCurvature pc = curvature_at(e.model.chart, domain_midpoint(e.model.chart));
    const CurvatureBlocks& exact = e.model.blocks;

    CHECK(pc.operator_asymmetry <= 1e-7);
    CHECK(std::abs(pc.scalar - exact.s) <= 2e-5 * std::max(1.0, std::abs(exact.s)));
    CHECK(std::abs(pc.ricci.trace() - pc.scalar) <= 1e-8 * std::max(1.0, std::abs(pc.scalar)));

    CHECK((ascending_eigs(pc.blocks.wplus) - ascending_eigs(exact.wplus)).norm() <= 2e-5);
    CHECK((ascending_eigs(pc.blocks.wminus) - ascending_eigs(exact.wminus)).norm() <= 2e-5);
    CHECK((singular_values(pc.blocks.b) - singular_values(exact.b)).norm() <= 2e-5);
    CHECK((ricci_eigs(pc.ricci) - e.ricci).norm() <= 2e-5);
  }
}

TEST_CASE("a second interior point gives the same invariants (homogeneity)") {
  const ModelManifold m = make_s2xs2(1.0, 2.0, 6);
  Vec4 p = domain_midpoint(m.chart);
  p[0] += 0.4;
  p[1] += 1.1;
  p[2] -= 0.3;
  const PointCurvature pc = curvature_at(m.chart, p);
  CHECK(std::abs(pc.scalar - 2.5) <= 2e-5);
  CHECK((singular_values(pc.blocks.b) - Vec3(3.0 / 8.0, 0.0, 0.0)).norm() <= 2e-5);
}

TEST_CASE("conformal rescaling by a constant reproduces the scaled sphere") {
  const ModelManifold s4 = make_sphere4(1.0, 6);
  const double c = 2.0;
  const MetricChart scaled = conformal_chart(s4.chart, [c](const Vec4&) { return c; });
  const PointCurvature pc = curvature_at(scaled, domain_midpoint(s4.chart));
  CHECK(pc.scalar == doctest::Approx(12.0 / (c * c)).epsilon(1e-6));

  const MetricChart same = conformal_chart(s4.chart, [](const Vec4&) { return 1.0; });
  const PointCurvature pc1 = curvature_at(same, domain_midpoint(s4.chart));
  CHECK(pc1.scalar == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("flat box conformal law: scalar curvature of u^2 times the metric") {
  // With a flat base and factor u = 1 + 0.1 sin(x1), the rescaled scalar
  // curvature is u^{-3} * 0.6 * sin(x1).
  const ModelManifold t4 = make_t4(2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 6);
  const MetricChart rescaled = conformal_chart(
      t4.chart, [](const Vec4& x) { return 1.0 + 0.1 * std::sin(x[0]); });
  const std::vector<Vec4> points = {Vec4(0.7, 1.0, 2.0, 3.0), Vec4(2.9, 0.2, 4.4, 1.1),
                                    Vec4(4.8, 3.3, 0.6, 5.0)};
  for (const Vec4& p : points) {
    const double u = 1.0 + 0.1 * std::sin(p[0]);
    const double expected = 0.6 * std::sin(p[0]) / (u * u * u);
    const PointCurvature pc = curvature_at(rescaled, p);
    CHECK(std::abs(pc.scalar - expected) <= 1e-6);
  }
}

TEST_CASE("sphere product conformal law for a latitude-dependent factor") {
  // Base: unit s2xs2 (scalar 4).  u = 1 + 0.2 cos(theta1) depends on the
  // first sphere only; there Delta u = -0.4 cos(theta1), so the rescaled
  // scalar curvature is u^{-3} (4 u + 2.4 cos(theta1)).
  const ModelManifold m = make_s2xs2(1.0, 1.0, 6);
  const MetricChart rescaled = conformal_chart(
      m.chart, [](const Vec4& x) { return 1.0 + 0.2 * std::cos(x[0]); });
  const std::vector<Vec4> points = {Vec4(1.1, 2.0, 1.7, 3.9), Vec4(2.2, 0.4, 0.9, 1.3)};
  for (const Vec4& p : points) {
    const double u = 1.0 + 0.2 * std::cos(p[0]);
    const double expected = (4.0 * u + 2.4 * std::cos(p[0])) / (u * u * u);
    const PointCurvature pc = curvature_at(rescaled, p);
    CHECK(std::abs(pc.scalar - expected) <= 1e-6);
  }
}

TEST_CASE("stencil leaving a non-periodic domain is a domain error") {
  const ModelManifold s4 = make_sphere4(1.0, 6);
  Vec4 p = domain_midpoint(s4.chart);
  p[0] = s4.chart.domain[0].lo + 5e-4;  // inside, but within 2h of the edge
  CHECK_THROWS_AS(curvature_at(s4.chart, p, 1e-3), std::domain_error);

  // A periodic coordinate may sit anywhere.
  const ModelManifold t4 = make_t4(2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 6);
  Vec4 q = Vec4::Zero();
  CHECK_NOTHROW(curvature_at(t4.chart, q, 1e-3));
}

TEST_CASE("non-positive-definite metrics raise a numeric failure") {
  MetricChart bad;
  for (int i = 0; i < 4; ++i) bad.domain[i] = {-1.0, 1.0};
  bad.periodic = {true, true, true, true};
  bad.metric = [](const Vec4&) {
    Mat4 g = Mat4::Identity();
    g(0, 0) = -1.0;
    return g;
  };
  CHECK_THROWS_AS(curvature_at(bad, Vec4::Zero()), NumericFailure);
}

TEST_CASE("non-positive conformal factors are rejected at evaluation") {
  const ModelManifold t4 = make_t4(2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 6);
  const MetricChart rescaled =
      conformal_chart(t4.chart, [](const Vec4&) { return -1.0; });
  CHECK_THROWS_AS(curvature_at(rescaled, domain_midpoint(t4.chart)),
                  std::invalid_argument);
}
