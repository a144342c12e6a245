#include "biortho/chart.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace biortho {

MetricChart conformal_chart(const MetricChart& base, std::function<double(const Vec4&)> u,
                            bool analytic) {
  if (!base.metric) throw std::invalid_argument("conformal_chart: base chart has no metric");
  if (!u) throw std::invalid_argument("conformal_chart: missing conformal factor");

  MetricChart out;
  out.domain = base.domain;
  out.periodic = base.periodic;
  out.analytic = analytic && base.analytic;
  auto base_metric = base.metric;
  out.metric = [base_metric, u = std::move(u)](const Vec4& p) -> Mat4 {
    const double uv = u(p);
    if (!(uv > 0.0)) {
      throw std::invalid_argument("conformal_chart: non-positive factor sample");
    }
    return (uv * uv) * base_metric(p);
  };
  return out;
}

namespace {

// 4th-order central first-derivative weights over offsets +2, +1, -1, -2
// (to be divided by 12 h).
constexpr std::array<int, 4> kOffsets = {2, 1, -1, -2};
constexpr std::array<double, 4> kCoeffs = {-1.0, 8.0, -8.0, 1.0};

int pair_index(int a, int b) {
  // bivector ordering (01, 02, 03, 12, 13, 23)
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[a][b];
}

}  // namespace

PointCurvature curvature_at(const MetricChart& chart, const Vec4& p, double h) {
  if (!chart.metric) throw std::invalid_argument("curvature_at: chart has no metric");
  if (!(h > 0.0)) throw std::invalid_argument("curvature_at: step must be positive");
  for (int i = 0; i < 4; ++i) {
    if (chart.periodic[i]) continue;
    if (p[i] - 2.0 * h < chart.domain[i].lo || p[i] + 2.0 * h > chart.domain[i].hi) {
      throw std::domain_error("curvature_at: stencil leaves the chart domain");
    }
  }

  auto eval = [&](const Vec4& q) -> Mat4 {
    const Mat4 g = chart.metric(q);
    return 0.5 * (g + g.transpose());
  };
  auto shifted = [&](int axis, int off) {
    Vec4 q = p;
    q[axis] += off * h;
    return q;
  };

  const Mat4 g0 = eval(p);
  if (!g0.allFinite()) throw NumericFailure("curvature_at: non-finite metric");
  {
    Eigen::SelfAdjointEigenSolver<Mat4> es;
    es.compute(g0, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 1e-10)) {
      throw NumericFailure("curvature_at: metric not positive definite");
    }
  }

  // dg[i] = first derivative along axis i, ddg[i][j] = second derivatives.
  std::array<Mat4, 4> dg;
  std::array<std::array<Mat4, 4>, 4> ddg;
  for (int i = 0; i < 4; ++i) {
    const Mat4 gp1 = eval(shifted(i, 1));
    const Mat4 gm1 = eval(shifted(i, -1));
    const Mat4 gp2 = eval(shifted(i, 2));
    const Mat4 gm2 = eval(shifted(i, -2));
    dg[i] = (-gp2 + 8.0 * gp1 - 8.0 * gm1 + gm2) / (12.0 * h);
    ddg[i][i] = (-gp2 + 16.0 * gp1 - 30.0 * g0 + 16.0 * gm1 - gm2) / (12.0 * h * h);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Mat4 acc = Mat4::Zero();
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          Vec4 q = p;
          q[i] += kOffsets[a] * h;
          q[j] += kOffsets[b] * h;
          acc += kCoeffs[a] * kCoeffs[b] * eval(q);
        }
      }
      ddg[i][j] = acc / (144.0 * h * h);
      ddg[j][i] = ddg[i][j];
    }
  }

  const Mat4 ginv = g0.inverse();

  // Christoffel symbols of the second kind.
  double gamma[4][4][4];
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 4; ++l) {
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        gamma[k][i][j] = 0.5 * acc;
        gamma[k][j][i] = gamma[k][i][j];
      }
    }
  }

  // Covariant curvature tensor in chart coordinates; sign convention such
  // that the sectional curvature of a coordinate pair is rm[i][j][j][i]
  // after orthonormalization.
  double rm[4][4][4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          double quad = 0.0;
          for (int q = 0; q < 4; ++q) {
            for (int r = 0; r < 4; ++r) {
              quad += g0(q, r) *
                      (gamma[q][i][k] * gamma[r][j][l] - gamma[q][i][l] * gamma[r][j][k]);
            }
          }
          rm[i][j][k][l] = 0.5 * (ddg[i][k](j, l) + ddg[j][l](i, k) - ddg[i][l](j, k) -
                                  ddg[j][k](i, l)) +
                           quad;
        }
      }
    }
  }

  // Orthonormal frame E_a = sum_i A(i, a) d_i with A = L^{-T}, g0 = L L^T.
  Eigen::LLT<Mat4> llt(g0);
  if (llt.info() != Eigen::Success) {
    throw NumericFailure("curvature_at: Cholesky factorization failed");
  }
  const Mat4 a_frame = llt.matrixL().transpose().solve(Mat4::Identity());

  double rmo[4][4][4][4];
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          double acc = 0.0;
          for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
              for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                  acc += a_frame(i, a) * a_frame(j, b) * a_frame(k, c) * a_frame(l, d) *
                         rm[i][j][k][l];
                }
              }
            }
          }
          rmo[a][b][c][d] = acc;
        }
      }
    }
  }

  PointCurvature out;
  out.point = p;

  Mat6 m;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = c + 1; d < 4; ++d) {
          m(pair_index(c, d), pair_index(a, b)) = rmo[a][b][d][c];
        }
      }
    }
  }
  if (!m.allFinite()) throw NumericFailure("curvature_at: non-finite curvature operator");
  out.operator_asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
  out.op.m = 0.5 * (m + m.transpose());

  out.blocks = decompose(out.op);
  // The diagonal blocks of an exact curvature operator are traceless after
  // the s/12 shift; differencing noise is projected away.
  out.blocks.wplus -= (out.blocks.wplus.trace() / 3.0) * Mat3::Identity();
  out.blocks.wminus -= (out.blocks.wminus.trace() / 3.0) * Mat3::Identity();

  Mat4 ric;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += rmo[a][c][c][b];
      ric(a, b) = acc;
    }
  }
  out.ricci = 0.5 * (ric + ric.transpose());
  out.scalar = out.ricci.trace();
  require_finite(out.scalar, "curvature_at scalar");
  return out;
}

}  // namespace biortho
