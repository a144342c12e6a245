#include "biortho/bivector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biortho {

bool Bivector::is_simple(double tol) const {
  return std::abs(plucker()) <= tol * std::max(1.0, c.squaredNorm());
}

Bivector Bivector::wedge(const Vec4& x, const Vec4& y) {
  Bivector out;
  out.c[0] = x[0] * y[1] - x[1] * y[0];  // e12
  out.c[1] = x[0] * y[2] - x[2] * y[0];  // e13
  out.c[2] = x[0] * y[3] - x[3] * y[0];  // e14
  out.c[3] = x[1] * y[2] - x[2] * y[1];  // e23
  out.c[4] = x[1] * y[3] - x[3] * y[1];  // e24
  out.c[5] = x[2] * y[3] - x[3] * y[2];  // e34
  return out;
}

Bivector hodge_star(const Bivector& b) {
  Bivector out;
  out.c[0] = b.c[5];
  out.c[1] = -b.c[4];
  out.c[2] = b.c[3];
  out.c[3] = b.c[2];
  out.c[4] = -b.c[1];
  out.c[5] = b.c[0];
  return out;
}

const Mat6& lambda_basis() {
  static const Mat6 basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Mat6 m = Mat6::Zero();
    // plus columns: (e12+e34)/s2, (e13-e24)/s2, (e14+e23)/s2
    m(0, 0) = r;
    m(5, 0) = r;
    m(1, 1) = r;
    m(4, 1) = -r;
    m(2, 2) = r;
    m(3, 2) = r;
    // minus columns: (e12-e34)/s2, (e13+e24)/s2, (e14-e23)/s2
    m(0, 3) = r;
    m(5, 3) = -r;
    m(1, 4) = r;
    m(4, 4) = r;
    m(2, 5) = r;
    m(3, 5) = -r;
    return m;
  }();
  return basis;
}

SelfDualSplit split(const Bivector& b) {
  const Vec6 t = lambda_basis().transpose() * b.c;
  SelfDualSplit s;
  s.plus = t.head<3>();
  s.minus = t.tail<3>();
  return s;
}

Bivector reassemble(const SelfDualSplit& s) {
  Vec6 t;
  t.head<3>() = s.plus;
  t.tail<3>() = s.minus;
  Bivector b;
  b.c = lambda_basis() * t;
  return b;
}

CurvatureOperator compose(const CurvatureBlocks& blocks) {
  const double wp_asym = (blocks.wplus - blocks.wplus.transpose()).cwiseAbs().maxCoeff();
  const double wm_asym = (blocks.wminus - blocks.wminus.transpose()).cwiseAbs().maxCoeff();
  if (wp_asym > 1e-9 || wm_asym > 1e-9) {
    throw std::invalid_argument("compose: W blocks must be symmetric");
  }
  if (std::abs(blocks.wplus.trace()) > 1e-9 || std::abs(blocks.wminus.trace()) > 1e-9) {
    throw std::invalid_argument("compose: W blocks must be traceless");
  }

  Mat6 k = Mat6::Zero();
  const Mat3 eye = Mat3::Identity();
  k.topLeftCorner<3, 3>() = blocks.wplus + (blocks.s / 12.0) * eye;
  k.bottomRightCorner<3, 3>() = blocks.wminus + (blocks.s / 12.0) * eye;
  k.topRightCorner<3, 3>() = blocks.b;
  k.bottomLeftCorner<3, 3>() = blocks.b.transpose();

  CurvatureOperator op;
  const Mat6& p = lambda_basis();
  op.m = p * k * p.transpose();
  return op;
}

CurvatureBlocks decompose(const CurvatureOperator& op) {
  const double asym = (op.m - op.m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9) {
    throw std::invalid_argument("decompose: operator asymmetry beyond tolerance");
  }
  const Mat6 sym = 0.5 * (op.m + op.m.transpose());
  const Mat6& p = lambda_basis();
  const Mat6 k = p.transpose() * sym * p;

  CurvatureBlocks blocks;
  blocks.s = 2.0 * sym.trace();
  const Mat3 eye = Mat3::Identity();
  blocks.wplus = k.topLeftCorner<3, 3>() - (blocks.s / 12.0) * eye;
  blocks.wminus = k.bottomRightCorner<3, 3>() - (blocks.s / 12.0) * eye;
  blocks.b = k.topRightCorner<3, 3>();
  return blocks;
}

}  // namespace biortho
