#pragma once

#include "biortho/common.hpp"

namespace biortho {

// 2-forms on oriented Euclidean 4-space in the fixed coordinate basis
//   e12, e13, e14, e23, e24, e34   (components c[0]..c[5]).
//
// The orientation is e1^e2^e3^e4.  The star operator acts on the basis as
//   e12 -> e34, e13 -> -e24, e14 -> e23, e23 -> e14, e24 -> -e13, e34 -> e12,
// an involution whose +1/-1 eigenspaces are the self-dual / anti-self-dual
// 3-planes.  Their fixed orthonormal bases are
//   plus:  (e12+e34)/s2, (e13-e24)/s2, (e14+e23)/s2
//   minus: (e12-e34)/s2, (e13+e24)/s2, (e14-e23)/s2      (s2 = sqrt 2).
struct Bivector {
  Vec6 c = Vec6::Zero();

  double norm() const { return c.norm(); }
  double squared_norm() const { return c.squaredNorm(); }

  // Vanishes exactly on decomposable (simple) bivectors: c0*c5 - c1*c4 + c2*c3.
  double plucker() const { return c[0] * c[5] - c[1] * c[4] + c[2] * c[3]; }
  bool is_simple(double tol = 1e-10) const;

  // x ^ y in the basis above.
  static Bivector wedge(const Vec4& x, const Vec4& y);
};

Bivector hodge_star(const Bivector& b);

// Components of a bivector in the self-dual (plus) and anti-self-dual
// (minus) orthonormal bases.
struct SelfDualSplit {
  Vec3 plus = Vec3::Zero();
  Vec3 minus = Vec3::Zero();
};

SelfDualSplit split(const Bivector& b);
Bivector reassemble(const SelfDualSplit& s);

// Orthogonal 6x6 basis matrix: columns are the three plus basis bivectors
// followed by the three minus ones, expressed in coordinate components.
const Mat6& lambda_basis();

// Algebraic curvature data in block form:
//   full operator on 2-forms = [ wplus + (s/12) I        b        ]
//                              [       b^T        wminus + (s/12) I ]
// in the plus/minus bases.  s is the scalar curvature, wplus/wminus are
// traceless symmetric, and b maps minus components to plus components.
struct CurvatureBlocks {
  double s = 0.0;
  Mat3 wplus = Mat3::Zero();
  Mat3 wminus = Mat3::Zero();
  Mat3 b = Mat3::Zero();

  // |W|^2: sum of squared entries of both traceless blocks.
  double wnorm2() const { return wplus.squaredNorm() + wminus.squaredNorm(); }
  // |B|^2 = 4 * ||b||_F^2; equals |Ric - (s/4) g|^2 for metric curvature.
  double bnorm2() const { return 4.0 * b.squaredNorm(); }
};

// Symmetric operator on 2-forms in the coordinate basis.
struct CurvatureOperator {
  Mat6 m = Mat6::Zero();
};

// Blocks -> operator.  Rejects non-symmetric or non-traceless W blocks
// (residual beyond 1e-9) with std::invalid_argument.
CurvatureOperator compose(const CurvatureBlocks& blocks);

// Operator -> blocks; exact inverse of compose up to round-off.
// Rejects asymmetry beyond 1e-9 with std::invalid_argument; symmetrizes
// what it accepts. s is recovered as 2 * trace.
CurvatureBlocks decompose(const CurvatureOperator& op);

}  // namespace biortho
