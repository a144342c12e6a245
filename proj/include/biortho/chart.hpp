#pragma once

#include <array>
#include <functional>

#include "biortho/bivector.hpp"
#include "biortho/common.hpp"

namespace biortho {

struct ChartInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// A single coordinate chart with a smooth metric map.  Periodic coordinates
// are marked so stencils may cross the nominal box (the metric map must be
// well-defined there); non-periodic coordinates enforce a 2h margin.
struct MetricChart {
  std::array<ChartInterval, 4> domain{};
  std::array<bool, 4> periodic{false, false, false, false};
  std::function<Mat4(const Vec4&)> metric;
  bool analytic = true;
};

// Pointwise rescaling g -> u^2 g.  u must be positive wherever evaluated;
// violations throw std::invalid_argument at evaluation time.
MetricChart conformal_chart(const MetricChart& base,
                            std::function<double(const Vec4&)> u,
                            bool analytic = true);

struct PointCurvature {
  Vec4 point = Vec4::Zero();
  CurvatureOperator op;      // in an orthonormal frame (Cholesky of g)
  CurvatureBlocks blocks;    // decomposition of op (W blocks trace-projected)
  Mat4 ricci = Mat4::Zero(); // Ricci operator in the same orthonormal frame
  double scalar = 0.0;       // trace of ricci
  double operator_asymmetry = 0.0;  // max |op - op^T| before symmetrizing
};

// Curvature of the chart metric at p via 4th-order central finite
// differences with step h (in chart units).
//
// Errors: std::domain_error if a stencil leaves a non-periodic domain;
// NumericFailure if the metric is not positive definite at p or any
// result is non-finite.
PointCurvature curvature_at(const MetricChart& chart, const Vec4& p, double h = 1e-3);

}  // namespace biortho
