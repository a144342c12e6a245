#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "biortho/common.hpp"
#include "biortho/models.hpp"

namespace biortho {

// A scalar field sampled on the mesh nodes, flattened with axis 0 outermost
// and axis 3 innermost (for the two-sphere products this is colatitude-major
// per factor with factor 1 outer).
using Field = Eigen::VectorXd;

// One mesh axis: collocation nodes in an internal variable (x = cos of the
// colatitude for sphere axes, the raw coordinate for periodic axes), the
// matching chart coordinate per node, and quadrature weights against the
// axis factor of the volume form.
struct MeshAxis {
  std::string label;         // chart coordinate name
  bool periodic = false;
  Eigen::VectorXd internal;  // collocation variable per node
  Eigen::VectorXd coord;     // chart coordinate per node
  Eigen::VectorXd weight;    // axis quadrature weight per node
};

// A rank-one-structured operator term on the tensor grid: apply `op` along
// `axis`, then multiply elementwise by the product of the per-axis diagonal
// factors (an empty factor means ones).  Laplacian and squared-gradient are
// sums of such terms, so everything reduces to small dense matrix products
// along one axis at a time.
struct TensorTerm {
  int axis = 0;
  Eigen::MatrixXd op;
  std::array<Eigen::VectorXd, 4> factors;
};

// Tensor-product discretization of a catalog model carrying quadrature
// weights, a Laplace-Beltrami collocation operator, a pointwise
// squared-gradient operator, and per-axis band-limiting projectors.
//
// Built on spectral collocation (barycentric differentiation on the
// quadrature nodes; Fourier differentiation on periodic axes).  With the
// measure-adapted node/weight choices the discrete divergence theorem
// (sum w * laplacian(u) = 0) and integration by parts
// (sum w * (-u * laplacian(u)) = sum w * gradsq(u)) hold to round-off for
// fields within the quadrature-exact band (in particular everything
// band_project produces); for smooth analytic fields the residuals decay
// spectrally with the grid size.
struct Mesh4 {
  std::string model_name;
  std::array<int, 4> dims{};
  std::array<MeshAxis, 4> axes;
  Eigen::VectorXd weights;   // global product weights, size(), sums to volume
  double volume = 0.0;
  CurvatureBlocks blocks;    // base-metric curvature blocks (constant)
  MetricChart chart;         // chart shared with the generating model

  std::vector<TensorTerm> lap_terms;
  std::vector<TensorTerm> grad_terms;
  std::array<Eigen::MatrixXd, 4> band_projectors;

  int size() const { return static_cast<int>(weights.size()); }
  int index(int i0, int i1, int i2, int i3) const;
  Vec4 node(int flat_index) const;

  // Sample a chart-coordinate function at every node.
  Field evaluate(const std::function<double(const Vec4&)>& f) const;

  // Apply a per-axis operator: out[..., j, ...] = sum_m op(j, m) f[..., m, ...].
  Field apply_axis(const Eigen::MatrixXd& op, int axis, const Field& f) const;

  Field laplacian(const Field& u) const;
  Field gradsq(const Field& u) const;

  // L2(weights)-orthogonal projection onto the lowest 2/3 of the per-axis
  // collocation bands (used to keep descent directions inside the
  // quadrature-exact band).
  Field band_project(const Field& u) const;

  double integrate(const Field& u) const;  // sum w_i u_i, fixed order

  // Gradient of the quadratic form u -> sum w * gradsq(u), i.e. the vector
  // with components 2 * sum_terms (A^T diag(w * factors) A u).
  Field dirichlet_gradient(const Field& u) const;
};

// Supported models: s4, s2xs2, s2xt2, t4, s3xs1.  dims are per-axis node
// counts in the chart axis order of the model.  cp2 is not meshed (its
// affine chart has a non-orthogonal metric whose discrete Laplacian would
// not satisfy the exact summation identities above); requesting it throws
// std::invalid_argument.
Mesh4 make_mesh(const ModelManifold& model, std::array<int, 4> dims);

// A smooth scalar field given in closed form together with its
// Laplace-Beltrami image under the model's base metric (linear combinations
// of low-order Laplacian eigenfunctions with seeded random coefficients).
// amplitude bounds the total deviation from the mean, so 1 + field is a
// valid positive conformal factor for amplitude < 1.
struct SmoothField {
  std::function<double(const Vec4&)> value;
  std::function<double(const Vec4&)> laplacian;
};

SmoothField random_smooth_field(const ModelManifold& model, std::uint64_t seed,
                                double amplitude = 0.3);

}  // namespace biortho
