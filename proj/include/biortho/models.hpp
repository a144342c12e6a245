#pragma once

#include <map>
#include <string>
#include <vector>

#include "biortho/bivector.hpp"
#include "biortho/chart.hpp"
#include "biortho/common.hpp"

namespace biortho {

// One evaluation point of a model-adapted quadrature: chart coordinates plus
// a weight against the Riemannian volume form.  Weights of a model sum to its
// closed-form volume to machine precision (the per-axis rules are chosen so
// the volume element is integrated exactly, not just approximately).
struct QuadratureNode {
  Vec4 x = Vec4::Zero();
  double w = 0.0;
};

// A catalog entry: a closed 4-manifold with known curvature, volume and
// Euler characteristic, one dense coordinate chart (covering the manifold up
// to measure zero), and a volume-form quadrature.
//
// All catalog members are homogeneous, so the curvature blocks are constant
// in a suitable orthonormal frame; `blocks` holds them in the model's
// distinguished frame and blocks_at(p) returns the same value at every p.
// Frame-dependent entries (the raw 3x3 matrices) are only comparable between
// two computations through frame-invariant data: s, eigenvalues of the
// traceless blocks, norms, Ricci eigenvalues.
struct ModelManifold {
  std::string name;
  std::map<std::string, double> parameters;  // echoed into report headers
  int euler_characteristic = 0;
  double volume = 0.0;            // closed form
  CurvatureBlocks blocks;         // constant blocks in the distinguished frame
  MetricChart chart;              // dense chart; domain safe for stencils
  std::vector<QuadratureNode> quadrature;

  CurvatureBlocks blocks_at(const Vec4& /*p*/) const { return blocks; }
  double quadrature_weight_sum() const;
};

// Factories.  Radii/side lengths are in length units; `n` is the per-axis
// node count of the quadrature.
//
// Charts (axis order fixed; also the axis order of meshes built on top):
//   sphere4(r):  nested hyperspherical (psi1, psi2, psi3, theta),
//                g = r^2 diag(1, sin^2 psi1, sin^2 psi1 sin^2 psi2,
//                             sin^2 psi1 sin^2 psi2 sin^2 psi3)
//   s2xs2(a,b):  (theta1, phi1, theta2, phi2),
//                g = diag(a^2, a^2 sin^2 theta1, b^2, b^2 sin^2 theta2)
//   s2xt2(a,l1,l2): (theta, phi, x3, x4), flat torus sides l1, l2
//   t4(l1..l4):  flat box, all coordinates periodic
//   s3xs1(r,l):  (psi1, psi2, theta3, x4), circle length l
//   cp2():       real coordinates (x1, y1, x2, y2) of the affine complex
//                chart z = (x1 + i y1, x2 + i y2); metric normalized so the
//                sectional curvature range is [1, 4] (s = 24, volume pi^2/2)
ModelManifold make_sphere4(double r = 1.0, int n = 24);
ModelManifold make_s2xs2(double a = 1.0, double b = 1.0, int n = 24);
ModelManifold make_s2xt2(double a = 1.0, double l1 = 2.0 * kPi, double l2 = 2.0 * kPi,
                         int n = 24);
ModelManifold make_t4(double l1 = 2.0 * kPi, double l2 = 2.0 * kPi,
                      double l3 = 2.0 * kPi, double l4 = 2.0 * kPi, int n = 24);
ModelManifold make_s3xs1(double r = 1.0, double l = 2.0 * kPi, int n = 24);
ModelManifold make_cp2(int n = 24);

// Known model names: {"s4", "s2xs2", "s2xt2", "t4", "s3xs1", "cp2"}.
std::vector<std::string> model_names();

// All six models with default parameters.
std::vector<ModelManifold> catalog();

// Build a model by name with parameter overrides (keys as in the factories:
// r, a, b, l, l1..l4, n).  Unknown name or parameter throws
// std::invalid_argument.
ModelManifold make_model(const std::string& name,
                         const std::map<std::string, double>& params = {});

}  // namespace biortho
