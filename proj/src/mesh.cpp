#include "biortho/mesh.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <utility>

#include "biortho/quadrature.hpp"

namespace biortho {

namespace {

// ---------------------------------------------------------------------------
// differentiation matrices
// ---------------------------------------------------------------------------

// Barycentric-form differentiation matrix on arbitrary distinct nodes.
// Row sums vanish exactly (the diagonal is the negated off-diagonal sum), so
// constants differentiate to exact zero.
Eigen::MatrixXd barycentric_diff(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd logw(n);
  Eigen::VectorXd sgn(n);
  for (int i = 0; i < n; ++i) {
    double ls = 0.0;
    double sg = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = x[i] - x[j];
      ls += std::log(std::abs(d));
      if (d < 0.0) sg = -sg;
    }
    logw[i] = -ls;  // log |w_i|, w_i = 1 / prod_j (x_i - x_j)
    sgn[i] = sg;
  }
  Eigen::MatrixXd d_mat(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double val = sgn[i] * sgn[j] * std::exp(logw[j] - logw[i]) / (x[i] - x[j]);
      d_mat(i, j) = val;
      rowsum += val;
    }
    d_mat(i, i) = -rowsum;
  }
  return d_mat;
}

// Spectral differentiation matrix on n uniform periodic nodes spanning a
// period L; n must be even.  Built from an antisymmetric offset table
// (c[n-m] = -c[m] exactly), so row sums vanish and the matrix is exactly
// antisymmetric; both the discrete divergence theorem and integration by
// parts then hold to round-off with the uniform weights.
Eigen::MatrixXd fourier_diff(int n, double period) {
  if (n % 2 != 0) throw std::invalid_argument("periodic axis needs an even node count");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int m = 1; m <= n / 2; ++m) {
    const double v =
        (m == n / 2) ? 0.0 : 0.5 * ((m % 2 != 0) ? -1.0 : 1.0) / std::tan(m * kPi / n);
    c[m] = v;
    c[n - m] = -v;
  }
  const double scale = 2.0 * kPi / period;
  Eigen::MatrixXd d_mat(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      d_mat(j, k) = scale * c[((j - k) % n + n) % n];
    }
  }
  // Force exact row sums: the offset table cancels pairwise in exact
  // arithmetic but not in floating point; folding the residual into the
  // diagonal makes constants differentiate to exact zero.
  d_mat.diagonal() -= d_mat.rowwise().sum();
  return d_mat;
}

// Colatitude Sturm-Liouville operator in x = cos(psi) for the measure
// sin^m(psi): (1-x^2) f'' - (m+1) x f'.  Exact on node-interpolating
// polynomials, and its weighted node sum vanishes for every grid function
// (the image has polynomial degree <= n-1, inside the quadrature-exact band).
Eigen::MatrixXd colatitude_op(const Eigen::VectorXd& x, int m) {
  const Eigen::MatrixXd d_mat = barycentric_diff(x);
  const Eigen::MatrixXd d2 = d_mat * d_mat;
  const Eigen::VectorXd cap = (1.0 - x.array().square()).matrix();
  return cap.asDiagonal() * d2 - static_cast<double>(m + 1) * (x.asDiagonal() * d_mat);
}

// ---------------------------------------------------------------------------
// axes
// ---------------------------------------------------------------------------

// Collocation axis for a colatitude angle with measure sin^m(psi) d(psi):
// m = 1 Gauss-Legendre in cos(psi), m = 2 Gauss-Chebyshev (second kind),
// m = 3 Gauss-Legendre with the polynomial part of the measure folded into
// the weights.  Coordinates ascend; the internal variable is x = cos(psi).
MeshAxis colatitude_axis(const std::string& label, int n, int m) {
  const Rule1D base = (m == 2) ? gauss_chebyshev_u(n) : gauss_legendre(n);
  MeshAxis ax;
  ax.label = label;
  ax.periodic = false;
  ax.internal.resize(n);
  ax.coord.resize(n);
  ax.weight.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = base.x[n - 1 - i];
    double w = base.w[n - 1 - i];
    if (m == 3) w *= (1.0 - x * x);
    ax.internal[i] = x;
    ax.coord[i] = std::acos(x);
    ax.weight[i] = w;
  }
  return ax;
}

MeshAxis periodic_axis(const std::string& label, int n, double period) {
  const Rule1D base = uniform_periodic(n, period);
  MeshAxis ax;
  ax.label = label;
  ax.periodic = true;
  ax.internal = Eigen::Map<const Eigen::VectorXd>(base.x.data(), n);
  ax.coord = ax.internal;
  ax.weight = Eigen::Map<const Eigen::VectorXd>(base.w.data(), n);
  return ax;
}

// ---------------------------------------------------------------------------
// band projectors
// ---------------------------------------------------------------------------

// Orthonormalize the basis columns against the discrete inner product
// sum_i w_i f_i g_i (modified Gram-Schmidt, two passes) and return the
// orthogonal projector  P = Phi Phi^T diag(w).
Eigen::MatrixXd weighted_projector(Eigen::MatrixXd basis, const Eigen::VectorXd& w) {
  const int cols = static_cast<int>(basis.cols());
  for (int j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const double coef = basis.col(i).dot(w.cwiseProduct(basis.col(j)));
        basis.col(j) -= coef * basis.col(i);
      }
    }
    const double nrm2 = basis.col(j).dot(w.cwiseProduct(basis.col(j)));
    if (!(nrm2 > 0.0)) throw NumericFailure("band projector basis degenerated");
    basis.col(j) /= std::sqrt(nrm2);
  }
  return basis * (basis.transpose() * w.asDiagonal());
}

// Lowest 2/3 of the polynomial band on a colatitude axis (Legendre values,
// re-orthonormalized against the axis weights).
Eigen::MatrixXd colatitude_projector(const MeshAxis& ax) {
  const int n = static_cast<int>(ax.internal.size());
  const int keep = std::max(1, (2 * n) / 3);
  Eigen::MatrixXd basis(n, keep);
  for (int i = 0; i < n; ++i) {
    const double x = ax.internal[i];
    double pkm1 = 1.0;
    double pk = x;
    basis(i, 0) = 1.0;
    if (keep > 1) basis(i, 1) = x;
    for (int k = 2; k < keep; ++k) {
      const double pkp1 = ((2.0 * k - 1.0) * x * pk - (k - 1.0) * pkm1) / k;
      basis(i, k) = pkp1;
      pkm1 = pk;
      pk = pkp1;
    }
  }
  return weighted_projector(std::move(basis), ax.weight);
}

// Lowest 2/3 of the Fourier band on a periodic axis.
Eigen::MatrixXd periodic_projector(const MeshAxis& ax, double period) {
  const int n = static_cast<int>(ax.internal.size());
  const int fmax = n / 3;
  Eigen::MatrixXd basis(n, 1 + 2 * fmax);
  basis.col(0).setOnes();
  for (int k = 1; k <= fmax; ++k) {
    const double omega = 2.0 * kPi * k / period;
    for (int i = 0; i < n; ++i) {
      basis(i, 2 * k - 1) = std::cos(omega * ax.coord[i]);
      basis(i, 2 * k) = std::sin(omega * ax.coord[i]);
    }
  }
  return weighted_projector(std::move(basis), ax.weight);
}

// ---------------------------------------------------------------------------
// term helpers
// ---------------------------------------------------------------------------

Eigen::VectorXd inv_cap(const Eigen::VectorXd& x) {
  return (1.0 / (1.0 - x.array().square())).matrix();
}

Eigen::VectorXd cap(const Eigen::VectorXd& x) {
  return (1.0 - x.array().square()).matrix();
}

void multiply_factors(const std::array<int, 4>& dims, const TensorTerm& term, Field& v) {
  const double* f[4];
  bool any = false;
  for (int k = 0; k < 4; ++k) {
    f[k] = term.factors[k].size() > 0 ? term.factors[k].data() : nullptr;
    any = any || (f[k] != nullptr);
  }
  if (!any) return;
  Eigen::Index idx = 0;
  for (int i0 = 0; i0 < dims[0]; ++i0) {
    const double c0 = f[0] ? f[0][i0] : 1.0;
    for (int i1 = 0; i1 < dims[1]; ++i1) {
      const double c1 = c0 * (f[1] ? f[1][i1] : 1.0);
      for (int i2 = 0; i2 < dims[2]; ++i2) {
        const double c2 = c1 * (f[2] ? f[2][i2] : 1.0);
        if (f[3]) {
          for (int i3 = 0; i3 < dims[3]; ++i3) v[idx++] *= c2 * f[3][i3];
        } else {
          for (int i3 = 0; i3 < dims[3]; ++i3) v[idx++] *= c2;
        }
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Mesh4 members
// ---------------------------------------------------------------------------

int Mesh4::index(int i0, int i1, int i2, int i3) const {
  return ((i0 * dims[1] + i1) * dims[2] + i2) * dims[3] + i3;
}

Vec4 Mesh4::node(int flat_index) const {
  const int i3 = flat_index % dims[3];
  flat_index /= dims[3];
  const int i2 = flat_index % dims[2];
  flat_index /= dims[2];
  const int i1 = flat_index % dims[1];
  const int i0 = flat_index / dims[1];
  return Vec4(axes[0].coord[i0], axes[1].coord[i1], axes[2].coord[i2], axes[3].coord[i3]);
}

Field Mesh4::evaluate(const std::function<double(const Vec4&)>& f) const {
  Field out(size());
  Eigen::Index idx = 0;
  Vec4 p;
  for (int i0 = 0; i0 < dims[0]; ++i0) {
    p[0] = axes[0].coord[i0];
    for (int i1 = 0; i1 < dims[1]; ++i1) {
      p[1] = axes[1].coord[i1];
      for (int i2 = 0; i2 < dims[2]; ++i2) {
        p[2] = axes[2].coord[i2];
        for (int i3 = 0; i3 < dims[3]; ++i3) {
          p[3] = axes[3].coord[i3];
          out[idx++] = f(p);
        }
      }
    }
  }
  return out;
}

Field Mesh4::apply_axis(const Eigen::MatrixXd& op, int axis, const Field& f) const {
  const int mid = dims[axis];
  Eigen::Index inner = 1;
  for (int k = axis + 1; k < 4; ++k) inner *= dims[k];
  const Eigen::Index block = mid * inner;
  const Eigen::Index outer = f.size() / block;
  const Eigen::MatrixXd op_t = op.transpose();
  Field out(f.size());
  for (Eigen::Index o = 0; o < outer; ++o) {
    Eigen::Map<const Eigen::MatrixXd> src(f.data() + o * block, inner, mid);
    Eigen::Map<Eigen::MatrixXd> dst(out.data() + o * block, inner, mid);
    dst.noalias() = src * op_t;
  }
  return out;
}

Field Mesh4::laplacian(const Field& u) const {
  Field out = Field::Zero(size());
  for (const TensorTerm& term : lap_terms) {
    Field v = apply_axis(term.op, term.axis, u);
    multiply_factors(dims, term, v);
    out += v;
  }
  return out;
}

Field Mesh4::gradsq(const Field& u) const {
  Field out = Field::Zero(size());
  for (const TensorTerm& term : grad_terms) {
    Field v = apply_axis(term.op, term.axis, u);
    v = v.cwiseProduct(v);
    multiply_factors(dims, term, v);
    out += v;
  }
  return out;
}

Field Mesh4::band_project(const Field& u) const {
  Field out = u;
  for (int axis = 0; axis < 4; ++axis) {
    out = apply_axis(band_projectors[axis], axis, out);
  }
  return out;
}

double Mesh4::integrate(const Field& u) const {
  double acc = 0.0;
  const Eigen::Index n = weights.size();
  for (Eigen::Index i = 0; i < n; ++i) acc += weights[i] * u[i];
  return acc;
}

Field Mesh4::dirichlet_gradient(const Field& u) const {
  Field out = Field::Zero(size());
  for (const TensorTerm& term : grad_terms) {
    Field v = apply_axis(term.op, term.axis, u);
    multiply_factors(dims, term, v);
    v = v.cwiseProduct(weights);
    out += 2.0 * apply_axis(term.op.transpose(), term.axis, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// mesh construction
// ---------------------------------------------------------------------------

Mesh4 make_mesh(const ModelManifold& model, std::array<int, 4> dims) {
  const std::string& name = model.name;
  if (name != "s4" && name != "s2xs2" && name != "s2xt2" && name != "t4" && name != "s3xs1") {
    throw std::invalid_argument(
        "make_mesh: no tensor mesh for model '" + name +
        "' (supported: s4, s2xs2, s2xt2, t4, s3xs1; the affine chart of cp2 has a "
        "non-diagonal metric incompatible with the exact summation identities)");
  }
  for (int k = 0; k < 4; ++k) {
    if (dims[k] < 4 || dims[k] > 1024) {
      throw std::invalid_argument("make_mesh: per-axis node counts must be in [4, 1024]");
    }
    if (model.chart.periodic[k] && dims[k] % 2 != 0) {
      throw std::invalid_argument("make_mesh: periodic axes need an even node count");
    }
  }

  Mesh4 mesh;
  mesh.model_name = name;
  mesh.dims = dims;
  mesh.blocks = model.blocks;
  mesh.chart = model.chart;
  mesh.volume = model.volume;

  auto param = [&model](const char* key) { return model.parameters.at(key); };
  double weight_constant = 1.0;
  std::array<double, 4> periods{};  // valid on periodic axes only

  auto add_lap = [&mesh](int axis, Eigen::MatrixXd op) {
    // Second-order operators are assembled from matrix products whose row
    // sums cancel only in exact arithmetic; folding the floating-point
    // residual into the diagonal makes every term kill constants exactly,
    // so the whole Laplacian annihilates constant fields bit-for-bit.
    op.diagonal() -= op.rowwise().sum();
    TensorTerm t;
    t.axis = axis;
    t.op = std::move(op);
    mesh.lap_terms.push_back(std::move(t));
  };
  auto add_grad = [&mesh](int axis, Eigen::MatrixXd op) {
    TensorTerm t;
    t.axis = axis;
    t.op = std::move(op);
    mesh.grad_terms.push_back(std::move(t));
  };

  if (name == "s4") {
    const double r = param("r");
    const double r2 = r * r;
    mesh.axes[0] = colatitude_axis("psi1", dims[0], 3);
    mesh.axes[1] = colatitude_axis("psi2", dims[1], 2);
    mesh.axes[2] = colatitude_axis("psi3", dims[2], 1);
    mesh.axes[3] = periodic_axis("theta", dims[3], 2.0 * kPi);
    periods[3] = 2.0 * kPi;
    weight_constant = r2 * r2;

    const Eigen::VectorXd inv0 = inv_cap(mesh.axes[0].internal) / r2;
    const Eigen::VectorXd inv1 = inv_cap(mesh.axes[1].internal);
    const Eigen::VectorXd inv2 = inv_cap(mesh.axes[2].internal);
    const Eigen::MatrixXd d0 = barycentric_diff(mesh.axes[0].internal);
    const Eigen::MatrixXd d1 = barycentric_diff(mesh.axes[1].internal);
    const Eigen::MatrixXd d2 = barycentric_diff(mesh.axes[2].internal);
    const Eigen::MatrixXd df = fourier_diff(dims[3], 2.0 * kPi);

    add_lap(0, colatitude_op(mesh.axes[0].internal, 3) / r2);
    add_lap(1, colatitude_op(mesh.axes[1].internal, 2));
    mesh.lap_terms[1].factors[0] = inv0;
    add_lap(2, colatitude_op(mesh.axes[2].internal, 1));
    mesh.lap_terms[2].factors[0] = inv0;
    mesh.lap_terms[2].factors[1] = inv1;
    add_lap(3, df * df);
    mesh.lap_terms[3].factors[0] = inv0;
    mesh.lap_terms[3].factors[1] = inv1;
    mesh.lap_terms[3].factors[2] = inv2;

    add_grad(0, d0);
    mesh.grad_terms[0].factors[0] = cap(mesh.axes[0].internal) / r2;
    add_grad(1, d1);
    mesh.grad_terms[1].factors[0] = inv0;
    mesh.grad_terms[1].factors[1] = cap(mesh.axes[1].internal);
    add_grad(2, d2);
    mesh.grad_terms[2].factors[0] = inv0;
    mesh.grad_terms[2].factors[1] = inv1;
    mesh.grad_terms[2].factors[2] = cap(mesh.axes[2].internal);
    add_grad(3, df);
    mesh.grad_terms[3].factors[0] = inv0;
    mesh.grad_terms[3].factors[1] = inv1;
    mesh.grad_terms[3].factors[2] = inv2;
  } else if (name == "s2xs2") {
    const double a = param("a");
    const double b = param("b");
    mesh.axes[0] = colatitude_axis("theta1", dims[0], 1);
    mesh.axes[1] = periodic_axis("phi1", dims[1], 2.0 * kPi);
    mesh.axes[2] = colatitude_axis("theta2", dims[2], 1);
    mesh.axes[3] = periodic_axis("phi2", dims[3], 2.0 * kPi);
    periods[1] = periods[3] = 2.0 * kPi;
    weight_constant = a * a * b * b;

    const Eigen::VectorXd inv0 = inv_cap(mesh.axes[0].internal) / (a * a);
    const Eigen::VectorXd inv2 = inv_cap(mesh.axes[2].internal) / (b * b);
    const Eigen::MatrixXd d0 = barycentric_diff(mesh.axes[0].internal);
    const Eigen::MatrixXd d2 = barycentric_diff(mesh.axes[2].internal);
    const Eigen::MatrixXd df1 = fourier_diff(dims[1], 2.0 * kPi);
    const Eigen::MatrixXd df3 = fourier_diff(dims[3], 2.0 * kPi);

    add_lap(0, colatitude_op(mesh.axes[0].internal, 1) / (a * a));
    add_lap(1, df1 * df1);
    mesh.lap_terms[1].factors[0] = inv0;
    add_lap(2, colatitude_op(mesh.axes[2].internal, 1) / (b * b));
    add_lap(3, df3 * df3);
    mesh.lap_terms[3].factors[2] = inv2;

    add_grad(0, d0);
    mesh.grad_terms[0].factors[0] = cap(mesh.axes[0].internal) / (a * a);
    add_grad(1, df1);
    mesh.grad_terms[1].factors[0] = inv0;
    add_grad(2, d2);
    mesh.grad_terms[2].factors[2] = cap(mesh.axes[2].internal) / (b * b);
    add_grad(3, df3);
    mesh.grad_terms[3].factors[2] = inv2;
  } else if (name == "s2xt2") {
    const double a = param("a");
    const double l1 = param("l1");
    const double l2 = param("l2");
    mesh.axes[0] = colatitude_axis("theta", dims[0], 1);
    mesh.axes[1] = periodic_axis("phi", dims[1], 2.0 * kPi);
    mesh.axes[2] = periodic_axis("x3", dims[2], l1);
    mesh.axes[3] = periodic_axis("x4", dims[3], l2);
    periods[1] = 2.0 * kPi;
    periods[2] = l1;
    periods[3] = l2;
    weight_constant = a * a;

    const Eigen::VectorXd inv0 = inv_cap(mesh.axes[0].internal) / (a * a);
    const Eigen::MatrixXd d0 = barycentric_diff(mesh.axes[0].internal);
    const Eigen::MatrixXd df1 = fourier_diff(dims[1], 2.0 * kPi);
    const Eigen::MatrixXd df2 = fourier_diff(dims[2], l1);
    const Eigen::MatrixXd df3 = fourier_diff(dims[3], l2);

    add_lap(0, colatitude_op(mesh.axes[0].internal, 1) / (a * a));
    add_lap(1, df1 * df1);
    mesh.lap_terms[1].factors[0] = inv0;
    add_lap(2, df2 * df2);
    add_lap(3, df3 * df3);

    add_grad(0, d0);
    mesh.grad_terms[0].factors[0] = cap(mesh.axes[0].internal) / (a * a);
    add_grad(1, df1);
    mesh.grad_terms[1].factors[0] = inv0;
    add_grad(2, df2);
    add_grad(3, df3);
  } else if (name == "t4") {
    const double side[4] = {param("l1"), param("l2"), param("l3"), param("l4")};
    const char* labels[4] = {"x1", "x2", "x3", "x4"};
    for (int k = 0; k < 4; ++k) {
      mesh.axes[k] = periodic_axis(labels[k], dims[k], side[k]);
      periods[k] = side[k];
      const Eigen::MatrixXd df = fourier_diff(dims[k], side[k]);
      add_lap(k, df * df);
      add_grad(k, df);
    }
  } else {  // s3xs1
    const double r = param("r");
    const double l = param("l");
    const double r2 = r * r;
    mesh.axes[0] = colatitude_axis("psi1", dims[0], 2);
    mesh.axes[1] = colatitude_axis("psi2", dims[1], 1);
    mesh.axes[2] = periodic_axis("theta3", dims[2], 2.0 * kPi);
    mesh.axes[3] = periodic_axis("x4", dims[3], l);
    periods[2] = 2.0 * kPi;
    periods[3] = l;
    weight_constant = r2 * r;

    const Eigen::VectorXd inv0 = inv_cap(mesh.axes[0].internal) / r2;
    const Eigen::VectorXd inv1 = inv_cap(mesh.axes[1].internal);
    const Eigen::MatrixXd d0 = barycentric_diff(mesh.axes[0].internal);
    const Eigen::MatrixXd d1 = barycentric_diff(mesh.axes[1].internal);
    const Eigen::MatrixXd df2 = fourier_diff(dims[2], 2.0 * kPi);
    const Eigen::MatrixXd df3 = fourier_diff(dims[3], l);

    add_lap(0, colatitude_op(mesh.axes[0].internal, 2) / r2);
    add_lap(1, colatitude_op(mesh.axes[1].internal, 1));
    mesh.lap_terms[1].factors[0] = inv0;
    add_lap(2, df2 * df2);
    mesh.lap_terms[2].factors[0] = inv0;
    mesh.lap_terms[2].factors[1] = inv1;
    add_lap(3, df3 * df3);

    add_grad(0, d0);
    mesh.grad_terms[0].factors[0] = cap(mesh.axes[0].internal) / r2;
    add_grad(1, d1);
    mesh.grad_terms[1].factors[0] = inv0;
    mesh.grad_terms[1].factors[1] = cap(mesh.axes[1].internal);
    add_grad(2, df2);
    mesh.grad_terms[2].factors[0] = inv0;
    mesh.grad_terms[2].factors[1] = inv1;
    add_grad(3, df3);
  }

  // global product weights
  mesh.weights.resize(static_cast<Eigen::Index>(dims[0]) * dims[1] * dims[2] * dims[3]);
  {
    Eigen::Index idx = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0) {
      const double w0 = weight_constant * mesh.axes[0].weight[i0];
      for (int i1 = 0; i1 < dims[1]; ++i1) {
        const double w1 = w0 * mesh.axes[1].weight[i1];
        for (int i2 = 0; i2 < dims[2]; ++i2) {
          const double w2 = w1 * mesh.axes[2].weight[i2];
          for (int i3 = 0; i3 < dims[3]; ++i3) {
            mesh.weights[idx++] = w2 * mesh.axes[3].weight[i3];
          }
        }
      }
    }
  }

  for (int k = 0; k < 4; ++k) {
    mesh.band_projectors[k] = mesh.axes[k].periodic
                                  ? periodic_projector(mesh.axes[k], periods[k])
                                  : colatitude_projector(mesh.axes[k]);
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// random smooth fields
// ---------------------------------------------------------------------------

namespace {

using ScalarFn = std::function<double(const Vec4&)>;

struct Harmonic {
  ScalarFn f;
  double lambda = 0.0;
};

// Laplacian eigenfunctions on a round two-sphere factor of radius a whose
// colatitude/azimuth sit on the given chart axes (degrees 1 and 2).  Only
// even azimuthal orders are used: those are polynomials in cos(colatitude)
// times low-frequency Fourier modes, so the collocation Laplacian reproduces
// the eigenvalue relation to round-off instead of merely approximating it.
std::vector<Harmonic> sphere2_harmonics(int t_axis, int p_axis, double a) {
  const double l1 = -2.0 / (a * a);
  const double l2 = -6.0 / (a * a);
  std::vector<Harmonic> out;
  out.push_back({[t_axis](const Vec4& p) { return std::cos(p[t_axis]); }, l1});
  out.push_back({[t_axis](const Vec4& p) {
                   const double c = std::cos(p[t_axis]);
                   return 0.5 * (3.0 * c * c - 1.0);
                 },
                 l2});
  out.push_back({[t_axis, p_axis](const Vec4& p) {
                   const double s = std::sin(p[t_axis]);
                   return s * s * std::cos(2.0 * p[p_axis]);
                 },
                 l2});
  out.push_back({[t_axis, p_axis](const Vec4& p) {
                   const double s = std::sin(p[t_axis]);
                   return s * s * std::sin(2.0 * p[p_axis]);
                 },
                 l2});
  return out;
}

// Fourier modes on a circle factor along one chart axis.
std::vector<Harmonic> circle_harmonics(int axis, double length, int kmax = 2) {
  std::vector<Harmonic> out;
  for (int k = 1; k <= kmax; ++k) {
    const double omega = 2.0 * kPi * k / length;
    const double lambda = -omega * omega;
    out.push_back({[axis, omega](const Vec4& p) { return std::cos(omega * p[axis]); }, lambda});
    out.push_back({[axis, omega](const Vec4& p) { return std::sin(omega * p[axis]); }, lambda});
  }
  return out;
}

// Degree 1 and 2 eigenfunctions on a round n-sphere of radius r in the
// nested hyperspherical chart.  Restricted to differences/products of
// ambient-coordinate squares that expand into polynomials in the per-axis
// collocation variables cos(psi_k) times frequency-2 Fourier modes, so the
// discrete Laplacian reproduces the eigenvalues to round-off.  Every entry
// is bounded by one in absolute value.
std::vector<Harmonic> round_sphere_harmonics(int dim, double r) {
  std::vector<Harmonic> out;
  const double l1 = -static_cast<double>(dim) / (r * r);
  const double l2 = -2.0 * static_cast<double>(dim + 1) / (r * r);
  out.push_back({[](const Vec4& p) { return std::cos(p[0]); }, l1});
  if (dim == 4) {
    // ambient coordinates: y0 = cos(p0), y1 = sin(p0)cos(p1),
    // y2 = sin(p0)sin(p1)cos(p2), y3/y4 = sin(p0)sin(p1)sin(p2){cos,sin}(p3)
    out.push_back({[](const Vec4& p) {
                     const double c0 = std::cos(p[0]);
                     const double s0 = std::sin(p[0]);
                     const double c1 = std::cos(p[1]);
                     return c0 * c0 - s0 * s0 * c1 * c1;  // y0^2 - y1^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double c1 = std::cos(p[1]);
                     const double s1 = std::sin(p[1]);
                     const double c2 = std::cos(p[2]);
                     return s0 * s0 * (c1 * c1 - s1 * s1 * c2 * c2);  // y1^2 - y2^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double s1 = std::sin(p[1]);
                     const double c2 = std::cos(p[2]);
                     const double s2 = std::sin(p[2]);
                     const double c3 = std::cos(p[3]);
                     return s0 * s0 * s1 * s1 *
                            (c2 * c2 - s2 * s2 * c3 * c3);  // y2^2 - y3^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double s1 = std::sin(p[1]);
                     const double s2 = std::sin(p[2]);
                     return s0 * s0 * s1 * s1 * s2 * s2 *
                            std::cos(2.0 * p[3]);  // y3^2 - y4^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double s1 = std::sin(p[1]);
                     const double s2 = std::sin(p[2]);
                     return s0 * s0 * s1 * s1 * s2 * s2 *
                            std::sin(2.0 * p[3]);  // 2 y3 y4
                   },
                   l2});
  } else {
    // dim == 3; ambient: y0 = cos(p0), y1 = sin(p0)cos(p1),
    // y2/y3 = sin(p0)sin(p1){cos,sin}(p2)
    out.push_back({[](const Vec4& p) {
                     const double c0 = std::cos(p[0]);
                     const double s0 = std::sin(p[0]);
                     const double c1 = std::cos(p[1]);
                     return c0 * c0 - s0 * s0 * c1 * c1;  // y0^2 - y1^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double c1 = std::cos(p[1]);
                     const double s1 = std::sin(p[1]);
                     const double c2 = std::cos(p[2]);
                     return s0 * s0 * (c1 * c1 - s1 * s1 * c2 * c2);  // y1^2 - y2^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double s1 = std::sin(p[1]);
                     return s0 * s0 * s1 * s1 * std::cos(2.0 * p[2]);  // y2^2 - y3^2
                   },
                   l2});
    out.push_back({[](const Vec4& p) {
                     const double s0 = std::sin(p[0]);
                     const double s1 = std::sin(p[1]);
                     return s0 * s0 * s1 * s1 * std::sin(2.0 * p[2]);  // 2 y2 y3
                   },
                   l2});
  }
  return out;
}

}  // namespace

SmoothField random_smooth_field(const ModelManifold& model, std::uint64_t seed,
                                double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("random_smooth_field: amplitude must be positive and finite");
  }
  const std::string& name = model.name;
  auto param = [&model](const char* key) { return model.parameters.at(key); };

  // factor groups: each term multiplies one (possibly constant) choice per
  // group, and the eigenvalues add
  std::vector<std::vector<Harmonic>> groups;
  if (name == "s4") {
    groups.push_back(round_sphere_harmonics(4, param("r")));
  } else if (name == "s2xs2") {
    groups.push_back(sphere2_harmonics(0, 1, param("a")));
    groups.push_back(sphere2_harmonics(2, 3, param("b")));
  } else if (name == "s2xt2") {
    groups.push_back(sphere2_harmonics(0, 1, param("a")));
    groups.push_back(circle_harmonics(2, param("l1")));
    groups.push_back(circle_harmonics(3, param("l2")));
  } else if (name == "t4") {
    groups.push_back(circle_harmonics(0, param("l1")));
    groups.push_back(circle_harmonics(1, param("l2")));
    groups.push_back(circle_harmonics(2, param("l3")));
    groups.push_back(circle_harmonics(3, param("l4")));
  } else if (name == "s3xs1") {
    groups.push_back(round_sphere_harmonics(3, param("r")));
    groups.push_back(circle_harmonics(3, param("l")));
  } else {
    throw std::invalid_argument("random_smooth_field: no eigenfunction catalog for model '" +
                                name + "'");
  }

  std::mt19937_64 gen(seed);
  auto symmetric_uniform = [&gen]() {
    return 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  };
  auto pick = [&gen](int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); };

  constexpr int kTerms = 6;
  std::vector<Harmonic> terms;
  std::vector<double> raw;
  terms.reserve(kTerms);
  raw.reserve(kTerms);
  for (int t = 0; t < kTerms; ++t) {
    std::vector<Harmonic> parts;
    do {
      parts.clear();
      for (const auto& group : groups) {
        // index 0 picks the constant function for this group
        const int idx = pick(static_cast<int>(group.size()) + 1);
        if (idx > 0) parts.push_back(group[idx - 1]);
      }
    } while (parts.empty());
    Harmonic h;
    h.lambda = 0.0;
    for (const Harmonic& q : parts) h.lambda += q.lambda;
    h.f = [parts](const Vec4& p) {
      double v = 1.0;
      for (const Harmonic& q : parts) v *= q.f(p);
      return v;
    };
    terms.push_back(std::move(h));
    raw.push_back(symmetric_uniform());
  }

  // every catalog eigenfunction is bounded by one in absolute value, so
  // sum |c_k| <= amplitude bounds the field by the requested amplitude
  double sum_abs = 0.0;
  for (double c : raw) sum_abs += std::abs(c);
  std::vector<double> coeff(raw.size());
  if (sum_abs > 1e-12) {
    for (std::size_t i = 0; i < raw.size(); ++i) coeff[i] = amplitude * raw[i] / sum_abs;
  } else {
    for (std::size_t i = 0; i < raw.size(); ++i) coeff[i] = amplitude / static_cast<double>(kTerms);
  }

  SmoothField field;
  field.value = [terms, coeff](const Vec4& p) {
    double v = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) v += coeff[i] * terms[i].f(p);
    return v;
  };
  field.laplacian = [terms, coeff](const Vec4& p) {
    double v = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      v += coeff[i] * terms[i].lambda * terms[i].f(p);
    }
    return v;
  };
  return field;
}

}  // namespace biortho
