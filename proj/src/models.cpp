#include "biortho/models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>
#include <stdexcept>

#include "biortho/quadrature.hpp"

namespace biortho {

namespace {

// One-axis rules that integrate f against the measures found in the model
// volume forms.  Each returns nodes in the original angle variable together
// with weights that absorb the measure, so plain weighted sums reproduce
// integrals (and in particular volumes) to machine precision.

// integral of f(psi) sin(psi) dpsi over (0, pi): Gauss-Legendre in x = cos(psi).
Rule1D sin1_rule(int n) {
  Rule1D gl = gauss_legendre(n);
  Rule1D out;
  out.x.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // reverse so the angle is ascending
    out.x[i] = std::acos(gl.x[n - 1 - i]);
    out.w[i] = gl.w[n - 1 - i];
  }
  return out;
}

// integral of f(psi) sin^2(psi) dpsi over (0, pi): Gauss-Chebyshev (second kind).
Rule1D sin2_rule(int n) {
  Rule1D cu = gauss_chebyshev_u(n);
  Rule1D out;
  out.x.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) {
    out.x[i] = std::acos(cu.x[n - 1 - i]);
    out.w[i] = cu.w[n - 1 - i];
  }
  return out;
}

// integral of f(psi) sin^3(psi) dpsi over (0, pi): Gauss-Legendre in
// x = cos(psi) with the polynomial factor (1 - x^2) folded into the weights.
Rule1D sin3_rule(int n) {
  Rule1D gl = gauss_legendre(n);
  Rule1D out;
  out.x.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = gl.x[n - 1 - i];
    out.x[i] = std::acos(x);
    out.w[i] = gl.w[n - 1 - i] * (1.0 - x * x);
  }
  return out;
}

// Radial rule for the affine plane chart: integral of f(r) r^3 / (1+r^2)^3 dr
// over (0, inf).  The substitution r^2 = t/(1-t) turns it into
// integral of f(r(t)) (t/2) dt over (0, 1), which Gauss-Legendre handles with
// the linear factor folded into the weights (exact whenever f(r(t)) is a
// polynomial in t; constants in particular integrate exactly).
Rule1D plane_radial_rule(int n) {
  Rule1D gl = map_to_interval(gauss_legendre(n), 0.0, 1.0);
  Rule1D out;
  out.x.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = gl.x[i];
    out.x[i] = std::sqrt(t / (1.0 - t));
    out.w[i] = gl.w[i] * 0.5 * t;
  }
  return out;
}

void product_quadrature(ModelManifold& model, const std::array<Rule1D, 4>& rules,
                        double constant) {
  model.quadrature.clear();
  model.quadrature.reserve(rules[0].size() * rules[1].size() * rules[2].size() *
                           rules[3].size());
  for (int i0 = 0; i0 < rules[0].size(); ++i0) {
    for (int i1 = 0; i1 < rules[1].size(); ++i1) {
      for (int i2 = 0; i2 < rules[2].size(); ++i2) {
        for (int i3 = 0; i3 < rules[3].size(); ++i3) {
          QuadratureNode node;
          node.x = Vec4(rules[0].x[i0], rules[1].x[i1], rules[2].x[i2], rules[3].x[i3]);
          node.w = constant * rules[0].w[i0] * rules[1].w[i1] * rules[2].w[i2] * rules[3].w[i3];
          model.quadrature.push_back(node);
        }
      }
    }
  }
}

CurvatureBlocks product_of_spheres_blocks(double k1, double k2) {
  // curvature operator of S^2(k1) x S^2(k2): k1 on the first factor plane,
  // k2 on the second, zero on mixed planes.
  CurvatureBlocks blocks;
  blocks.s = 2.0 * (k1 + k2);
  Mat3 w = Mat3::Zero();
  w(0, 0) = (k1 + k2) / 3.0;
  w(1, 1) = -(k1 + k2) / 6.0;
  w(2, 2) = -(k1 + k2) / 6.0;
  blocks.wplus = w;
  blocks.wminus = w;
  blocks.b = Mat3::Zero();
  blocks.b(0, 0) = 0.5 * (k1 - k2);
  return blocks;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string("model parameter must be positive: ") + what);
  }
}

void check_nodes(int n) {
  if (n < 2 || n > 4096) {
    throw std::invalid_argument("quadrature node count must be in [2, 4096]");
  }
}

}  // namespace

double ModelManifold::quadrature_weight_sum() const {
  double acc = 0.0;
  for (const auto& node : quadrature) acc += node.w;
  return acc;
}

ModelManifold make_sphere4(double r, int n) {
  check_positive(r, "r");
  check_nodes(n);
  ModelManifold m;
  m.name = "s4";
  m.parameters = {{"r", r}, {"n", static_cast<double>(n)}};
  m.euler_characteristic = 2;
  m.volume = 8.0 * kPi * kPi * r * r * r * r / 3.0;

  m.blocks.s = 12.0 / (r * r);
  m.blocks.wplus = Mat3::Zero();
  m.blocks.wminus = Mat3::Zero();
  m.blocks.b = Mat3::Zero();

  m.chart.domain = {ChartInterval{0.0, kPi}, ChartInterval{0.0, kPi}, ChartInterval{0.0, kPi},
                    ChartInterval{0.0, 2.0 * kPi}};
  m.chart.periodic = {false, false, false, true};
  m.chart.analytic = true;
  m.chart.metric = [r](const Vec4& p) {
    const double s1 = std::sin(p[0]);
    const double s2 = std::sin(p[1]);
    const double s3 = std::sin(p[2]);
    const double r2 = r * r;
    Mat4 g = Mat4::Zero();
    g(0, 0) = r2;
    g(1, 1) = r2 * s1 * s1;
    g(2, 2) = r2 * s1 * s1 * s2 * s2;
    g(3, 3) = r2 * s1 * s1 * s2 * s2 * s3 * s3;
    return g;
  };

  product_quadrature(m, {sin3_rule(n), sin2_rule(n), sin1_rule(n), uniform_periodic(n, 2.0 * kPi)},
                     r * r * r * r);
  return m;
}

ModelManifold make_s2xs2(double a, double b, int n) {
  check_positive(a, "a");
  check_positive(b, "b");
  check_nodes(n);
  ModelManifold m;
  m.name = "s2xs2";
  m.parameters = {{"a", a}, {"b", b}, {"n", static_cast<double>(n)}};
  m.euler_characteristic = 4;
  m.volume = 16.0 * kPi * kPi * a * a * b * b;
  m.blocks = product_of_spheres_blocks(1.0 / (a * a), 1.0 / (b * b));

  m.chart.domain = {ChartInterval{0.0, kPi}, ChartInterval{0.0, 2.0 * kPi},
                    ChartInterval{0.0, kPi}, ChartInterval{0.0, 2.0 * kPi}};
  m.chart.periodic = {false, true, false, true};
  m.chart.analytic = true;
  m.chart.metric = [a, b](const Vec4& p) {
    const double s1 = std::sin(p[0]);
    const double s2 = std::sin(p[2]);
    Mat4 g = Mat4::Zero();
    g(0, 0) = a * a;
    g(1, 1) = a * a * s1 * s1;
    g(2, 2) = b * b;
    g(3, 3) = b * b * s2 * s2;
    return g;
  };

  product_quadrature(m, {sin1_rule(n), uniform_periodic(n, 2.0 * kPi), sin1_rule(n),
                         uniform_periodic(n, 2.0 * kPi)},
                     a * a * b * b);
  return m;
}

ModelManifold make_s2xt2(double a, double l1, double l2, int n) {
  check_positive(a, "a");
  check_positive(l1, "l1");
  check_positive(l2, "l2");
  check_nodes(n);
  ModelManifold m;
  m.name = "s2xt2";
  m.parameters = {{"a", a}, {"l1", l1}, {"l2", l2}, {"n", static_cast<double>(n)}};
  m.euler_characteristic = 0;
  m.volume = 4.0 * kPi * a * a * l1 * l2;
  m.blocks = product_of_spheres_blocks(1.0 / (a * a), 0.0);

  m.chart.domain = {ChartInterval{0.0, kPi}, ChartInterval{0.0, 2.0 * kPi},
                    ChartInterval{0.0, l1}, ChartInterval{0.0, l2}};
  m.chart.periodic = {false, true, true, true};
  m.chart.analytic = true;
  m.chart.metric = [a](const Vec4& p) {
    const double s1 = std::sin(p[0]);
    Mat4 g = Mat4::Zero();
    g(0, 0) = a * a;
    g(1, 1) = a * a * s1 * s1;
    g(2, 2) = 1.0;
    g(3, 3) = 1.0;
    return g;
  };

  product_quadrature(
      m, {sin1_rule(n), uniform_periodic(n, 2.0 * kPi), uniform_periodic(n, l1),
          uniform_periodic(n, l2)},
      a * a);
  return m;
}

ModelManifold make_t4(double l1, double l2, double l3, double l4, int n) {
  check_positive(l1, "l1");
  check_positive(l2, "l2");
  check_positive(l3, "l3");
  check_positive(l4, "l4");
  check_nodes(n);
  ModelManifold m;
  m.name = "t4";
  m.parameters = {{"l1", l1}, {"l2", l2}, {"l3", l3}, {"l4", l4}, {"n", static_cast<double>(n)}};
  m.euler_characteristic = 0;
  m.volume = l1 * l2 * l3 * l4;
  m.blocks.s = 0.0;
  m.blocks.wplus = Mat3::Zero();
  m.blocks.wminus = Mat3::Zero();
  m.blocks.b = Mat3::Zero();

  m.chart.domain = {ChartInterval{0.0, l1}, ChartInterval{0.0, l2}, ChartInterval{0.0, l3},
                    ChartInterval{0.0, l4}};
  m.chart.periodic = {true, true, true, true};
  m.chart.analytic = true;
  m.chart.metric = [](const Vec4&) { return Mat4(Mat4::Identity()); };

  product_quadrature(m, {uniform_periodic(n, l1), uniform_periodic(n, l2),
                         uniform_periodic(n, l3), uniform_periodic(n, l4)},
                     1.0);
  return m;
}

ModelManifold make_s3xs1(double r, double l, int n) {
  check_positive(r, "r");
  check_positive(l, "l");
  check_nodes(n);
  ModelManifold m;
  m.name = "s3xs1";
  m.parameters = {{"r", r}, {"l", l}, {"n", static_cast<double>(n)}};
  m.euler_characteristic = 0;
  m.volume = 2.0 * kPi * kPi * r * r * r * l;

  // curvature operator: k on the three sphere planes, zero on planes meeting
  // the circle factor
  const double k = 1.0 / (r * r);
  m.blocks.s = 6.0 * k;
  m.blocks.wplus = Mat3::Zero();
  m.blocks.wminus = Mat3::Zero();
  m.blocks.b = Mat3::Zero();
  m.blocks.b(0, 0) = 0.5 * k;
  m.blocks.b(1, 1) = 0.5 * k;
  m.blocks.b(2, 2) = -0.5 * k;

  m.chart.domain = {ChartInterval{0.0, kPi}, ChartInterval{0.0, kPi},
                    ChartInterval{0.0, 2.0 * kPi}, ChartInterval{0.0, l}};
  m.chart.periodic = {false, false, true, true};
  m.chart.analytic = true;
  m.chart.metric = [r](const Vec4& p) {
    const double s1 = std::sin(p[0]);
    const double s2 = std::sin(p[1]);
    const double r2 = r * r;
    Mat4 g = Mat4::Zero();
    g(0, 0) = r2;
    g(1, 1) = r2 * s1 * s1;
    g(2, 2) = r2 * s1 * s1 * s2 * s2;
    g(3, 3) = 1.0;
    return g;
  };

  product_quadrature(m, {sin2_rule(n), sin1_rule(n), uniform_periodic(n, 2.0 * kPi),
                         uniform_periodic(n, l)},
                     r * r * r);
  return m;
}

ModelManifold make_cp2(int n) {
  check_nodes(n);
  ModelManifold m;
  m.name = "cp2";
  m.parameters = {{"n", static_cast<double>(n)}};
  m.euler_characteristic = 3;
  m.volume = kPi * kPi / 2.0;

  // Distinguished frame: first self-dual direction along the parallel
  // two-form of the complex structure.
  m.blocks.s = 24.0;
  m.blocks.wplus = Mat3::Zero();
  m.blocks.wplus(0, 0) = 4.0;
  m.blocks.wplus(1, 1) = -2.0;
  m.blocks.wplus(2, 2) = -2.0;
  m.blocks.wminus = Mat3::Zero();
  m.blocks.b = Mat3::Zero();

  const double inf = std::numeric_limits<double>::infinity();
  m.chart.domain = {ChartInterval{-inf, inf}, ChartInterval{-inf, inf}, ChartInterval{-inf, inf},
                    ChartInterval{-inf, inf}};
  m.chart.periodic = {false, false, false, false};
  m.chart.analytic = true;
  m.chart.metric = [](const Vec4& p) {
    using cplx = std::complex<double>;
    const cplx z[2] = {cplx(p[0], p[1]), cplx(p[2], p[3])};
    const double d = 1.0 + std::norm(z[0]) + std::norm(z[1]);
    cplx h[2][2];
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const double delta = (j == k) ? 1.0 : 0.0;
        h[j][k] = (d * delta - std::conj(z[j]) * z[k]) / (d * d);
      }
    }
    // dz_j = sum_mu jac[j][mu] dx_mu
    const cplx jac[2][4] = {{cplx(1, 0), cplx(0, 1), cplx(0, 0), cplx(0, 0)},
                            {cplx(0, 0), cplx(0, 0), cplx(1, 0), cplx(0, 1)}};
    Mat4 g = Mat4::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        cplx acc(0, 0);
        for (int j = 0; j < 2; ++j) {
          for (int k = 0; k < 2; ++k) {
            acc += h[j][k] * jac[j][mu] * std::conj(jac[k][nu]);
          }
        }
        g(mu, nu) = acc.real();
      }
    }
    return g;
  };

  // Radial-angular quadrature: x = r * omega with omega on the unit
  // three-sphere (angles psi1, psi2, theta); the density wrt Lebesgue measure
  // is (1 + r^2)^{-3}, handled exactly by the radial rule.
  const Rule1D radial = plane_radial_rule(n);
  const Rule1D a1 = sin2_rule(n);
  const Rule1D a2 = sin1_rule(n);
  const Rule1D a3 = uniform_periodic(n, 2.0 * kPi);
  m.quadrature.clear();
  m.quadrature.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int ir = 0; ir < n; ++ir) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int i3 = 0; i3 < n; ++i3) {
          const double r = radial.x[ir];
          const double p1 = a1.x[i1];
          const double p2 = a2.x[i2];
          const double th = a3.x[i3];
          QuadratureNode node;
          node.x = Vec4(r * std::cos(p1), r * std::sin(p1) * std::cos(p2),
                        r * std::sin(p1) * std::sin(p2) * std::cos(th),
                        r * std::sin(p1) * std::sin(p2) * std::sin(th));
          node.w = radial.w[ir] * a1.w[i1] * a2.w[i2] * a3.w[i3];
          m.quadrature.push_back(node);
        }
      }
    }
  }
  return m;
}

std::vector<std::string> model_names() {
  return {"s4", "s2xs2", "s2xt2", "t4", "s3xs1", "cp2"};
}

std::vector<ModelManifold> catalog() {
  std::vector<ModelManifold> out;
  out.push_back(make_sphere4());
  out.push_back(make_s2xs2());
  out.push_back(make_s2xt2());
  out.push_back(make_t4());
  out.push_back(make_s3xs1());
  out.push_back(make_cp2());
  return out;
}

ModelManifold make_model(const std::string& name, const std::map<std::string, double>& params) {
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"s4", {"r", "n"}},
      {"s2xs2", {"a", "b", "n"}},
      {"s2xt2", {"a", "l1", "l2", "n"}},
      {"t4", {"l1", "l2", "l3", "l4", "n"}},
      {"s3xs1", {"r", "l", "n"}},
      {"cp2", {"n"}},
  };
  const auto it = allowed.find(name);
  if (it == allowed.end()) {
    throw std::invalid_argument("unknown model name: " + name);
  }
  for (const auto& [key, value] : params) {
    if (it->second.count(key) == 0) {
      throw std::invalid_argument("model '" + name + "' does not take parameter '" + key + "'");
    }
    require_finite(value, "model parameter");
  }
  auto get = [&params](const char* key, double fallback) {
    const auto p = params.find(key);
    return p == params.end() ? fallback : p->second;
  };
  const int n = static_cast<int>(std::llround(get("n", 24.0)));

  if (name == "s4") return make_sphere4(get("r", 1.0), n);
  if (name == "s2xs2") return make_s2xs2(get("a", 1.0), get("b", 1.0), n);
  if (name == "s2xt2") {
    return make_s2xt2(get("a", 1.0), get("l1", 2.0 * kPi), get("l2", 2.0 * kPi), n);
  }
  if (name == "t4") {
    return make_t4(get("l1", 2.0 * kPi), get("l2", 2.0 * kPi), get("l3", 2.0 * kPi),
                   get("l4", 2.0 * kPi), n);
  }
  if (name == "s3xs1") return make_s3xs1(get("r", 1.0), get("l", 2.0 * kPi), n);
  return make_cp2(n);
}

}  // namespace biortho
