#include "biortho/yamabe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "biortho/analysis.hpp"

namespace biortho {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double base_k1perp(const Mesh4& mesh) { return kperp_spectral(mesh.blocks).k1perp; }

struct Differential {
  double raw = 0.0;       // quotient in raw units
  double value = 0.0;     // reported value (raw / 12 for the k1perp kind)
  double quartic = 0.0;   // sum w u^4
  Field grad;             // d(raw)/du
  Field euler_lagrange;   // grad / w
  double gradient_norm = 0.0;  // weighted L2 norm of euler_lagrange
};

double reported_value(FunctionalKind kind, double raw) {
  return kind == FunctionalKind::Y1perp ? raw / 12.0 : raw;
}

Differential evaluate_with_gradient(const Mesh4& mesh, FunctionalKind kind, const Field& weight_f,
                                    const Field& u) {
  Differential out;
  const Field gsq = mesh.gradsq(u);
  const double gradient_term = 6.0 * mesh.integrate(gsq);
  const Field fu = weight_f.cwiseProduct(u);
  const double potential_term = mesh.integrate(fu.cwiseProduct(u));
  const Field u3 = u.array().cube().matrix();
  out.quartic = mesh.integrate(u3.cwiseProduct(u));
  if (!(out.quartic > 0.0)) {
    throw NumericFailure("conformal functional: vanishing quartic normalization");
  }
  const double numerator = gradient_term + potential_term;
  const double root_q = std::sqrt(out.quartic);
  out.raw = numerator / root_q;
  out.value = reported_value(kind, out.raw);
  require_finite(out.raw, "conformal functional value");

  Field grad_n = 6.0 * mesh.dirichlet_gradient(u);
  grad_n += 2.0 * mesh.weights.cwiseProduct(fu);
  grad_n -= (2.0 * numerator / out.quartic) * mesh.weights.cwiseProduct(u3);
  out.grad = grad_n / root_q;
  out.euler_lagrange = out.grad.cwiseQuotient(mesh.weights);
  out.gradient_norm = std::sqrt(std::max(0.0, out.euler_lagrange.dot(out.grad)));
  require_finite(out.gradient_norm, "conformal functional gradient");
  return out;
}

void check_field(const Mesh4& mesh, const Field& u, const char* what) {
  if (u.size() != mesh.size()) {
    throw std::invalid_argument(std::string(what) + ": field size does not match the mesh");
  }
  if (!u.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": field has non-finite entries");
  }
}

}  // namespace

FunctionalKind parse_kind(const std::string& name) {
  const std::string k = lower(name);
  if (k == "y") return FunctionalKind::Y;
  if (k == "yperp") return FunctionalKind::Yperp;
  if (k == "y1perp") return FunctionalKind::Y1perp;
  throw std::invalid_argument("unknown functional kind: " + name);
}

std::string kind_name(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::Y: return "y";
    case FunctionalKind::Yperp: return "yperp";
    default: return "y1perp";
  }
}

Field functional_weight(const Mesh4& mesh, FunctionalKind kind) {
  const double s = mesh.blocks.s;
  double value = 0.0;
  switch (kind) {
    case FunctionalKind::Y: value = s; break;
    case FunctionalKind::Yperp: value = 24.0 * base_k1perp(mesh) - s; break;
    case FunctionalKind::Y1perp: value = 12.0 * base_k1perp(mesh); break;
  }
  return Field::Constant(mesh.size(), value);
}

FunctionalBreakdown functional_breakdown(const Mesh4& mesh, FunctionalKind kind,
                                         const Field& u) {
  check_field(mesh, u, "functional_breakdown");
  const Field weight_f = functional_weight(mesh, kind);
  FunctionalBreakdown out;
  const Field gsq = mesh.gradsq(u);
  out.gradient_term = 6.0 * mesh.integrate(gsq);
  const Field fu = weight_f.cwiseProduct(u);
  out.potential_term = mesh.integrate(fu.cwiseProduct(u));
  const Field u3 = u.array().cube().matrix();
  out.quartic_norm = mesh.integrate(u3.cwiseProduct(u));
  if (!(out.quartic_norm > 0.0)) {
    throw std::invalid_argument("functional_breakdown: field must be nonzero (sum w u^4 > 0)");
  }
  out.raw = (out.gradient_term + out.potential_term) / std::sqrt(out.quartic_norm);
  out.value = reported_value(kind, out.raw);
  require_finite(out.value, "functional value");
  return out;
}

double functional_value(const Mesh4& mesh, FunctionalKind kind, const Field& u) {
  return functional_breakdown(mesh, kind, u).value;
}

MinimizeResult minimize(const Mesh4& mesh, FunctionalKind kind, const Field& start,
                        const MinimizeOptions& opts) {
  check_field(mesh, start, "minimize");
  if (!(opts.positivity_floor > 0.0)) {
    throw std::invalid_argument("minimize: positivity floor must be positive");
  }
  const Field weight_f = functional_weight(mesh, kind);

  auto clamp_count = [&](Field& u) -> long {
    long clamped = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u[i] < opts.positivity_floor) {
        u[i] = opts.positivity_floor;
        ++clamped;
      }
    }
    return clamped;
  };
  auto normalize = [&](Field& u) {
    const Field u3 = u.array().cube().matrix();
    const double q = mesh.integrate(u3.cwiseProduct(u));
    if (!(q > 0.0)) throw NumericFailure("minimize: vanishing quartic normalization");
    u *= std::pow(mesh.volume / q, 0.25);
  };

  MinimizeResult result;
  Field u = start;
  const long start_clamps = clamp_count(u);
  normalize(u);
  result.total_clamps = start_clamps;

  Differential cur = evaluate_with_gradient(mesh, kind, weight_f, u);
  result.trace.push_back(TraceRow{0, cur.value, cur.gradient_norm, start_clamps});

  // Conjugate momentum state: steepest descent with exact line search
  // zigzags on narrow valleys, so the trial direction carries a
  // Polak-Ribiere momentum term that is dropped (restart) whenever it fails
  // the descent test or the step was cut by the safeguards.
  Field prev_el;
  Field prev_dir;
  bool have_momentum = false;

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    Field steepest =
        opts.band_limit_directions ? Field(-mesh.band_project(cur.euler_lagrange))
                                   : Field(-cur.euler_lagrange);
    Field direction = steepest;
    if (have_momentum) {
      const Field el_new = -steepest;
      const double denom = prev_el.dot(mesh.weights.cwiseProduct(prev_el));
      double beta = 0.0;
      if (denom > 0.0) {
        beta = el_new.dot(mesh.weights.cwiseProduct(Field(el_new - prev_el))) / denom;
      }
      if (beta > 0.0) direction = steepest + beta * prev_dir;
    }
    double slope = cur.grad.dot(direction);
    if (have_momentum && !(slope < 0.0)) {
      direction = steepest;  // restart: momentum direction is not a descent
      slope = cur.grad.dot(direction);
    }
    if (!(slope < 0.0)) {
      result.converged = true;
      break;
    }

    // Along the ray u + t d the raw quotient is (a0 + a1 t + a2 t^2) divided
    // by the square root of a quartic in t, so the one-dimensional optimum
    // solves a polynomial equation: bracket the derivative's sign change and
    // bisect.  The trial step is that optimum, restricted so every node
    // stays at or above the positivity floor.
    const double n0 = cur.raw * std::sqrt(cur.quartic);
    const Field wu3 = mesh.weights.cwiseProduct(Field(u.array().cube().matrix()));
    const double c3 = wu3.dot(direction);
    const double a0 = n0;
    const double a1 = std::sqrt(cur.quartic) * slope + (2.0 * n0 / cur.quartic) * c3;
    const Field fd = weight_f.cwiseProduct(direction);
    const double a2 =
        6.0 * mesh.integrate(mesh.gradsq(direction)) + mesh.integrate(fd.cwiseProduct(direction));
    const Field wd = mesh.weights.cwiseProduct(direction);
    const Field u2 = u.cwiseProduct(u);
    const Field d2 = direction.cwiseProduct(direction);
    const double q0 = cur.quartic;
    const double q1 = 4.0 * c3;
    const double q2 = 6.0 * wd.dot(u2.cwiseProduct(direction));
    const double q3 = 4.0 * wd.dot(d2.cwiseProduct(u));
    const double q4 = wd.dot(d2.cwiseProduct(direction));

    // sign of d/dt [N / sqrt(Q)]: N'(t) Q(t) - N(t) Q'(t) / 2
    auto deriv_sign = [&](double t) {
      const double n = a0 + t * (a1 + t * a2);
      const double np = a1 + 2.0 * t * a2;
      const double q = q0 + t * (q1 + t * (q2 + t * (q3 + t * q4)));
      const double qp = q1 + t * (2.0 * q2 + t * (3.0 * q3 + 4.0 * t * q4));
      return np * q - 0.5 * n * qp;
    };

    double t_hi = 1e12;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (direction[i] < 0.0) {
        t_hi = std::min(t_hi, (u[i] - opts.positivity_floor) / (-direction[i]));
      }
    }
    t_hi = std::max(t_hi, 0.0);

    double step = 0.0;
    if (t_hi > 0.0) {
      double tl = 0.0;
      double tr = std::min(t_hi, 1.0 / std::max(1.0, cur.gradient_norm));
      bool bracketed = false;
      for (int k = 0; k < 80; ++k) {
        if (deriv_sign(tr) >= 0.0) {
          bracketed = true;
          break;
        }
        tl = tr;
        if (tr >= t_hi) break;
        tr = std::min(2.0 * tr, t_hi);
      }
      if (bracketed) {
        for (int k = 0; k < 200 && tr - tl > 1e-15 * tr; ++k) {
          const double tm = 0.5 * (tl + tr);
          (deriv_sign(tm) < 0.0 ? tl : tr) = tm;
        }
        step = 0.5 * (tl + tr);
      } else {
        step = t_hi;  // decreasing all the way to the feasible boundary
      }
    }
    if (!(step > 0.0)) {
      result.converged = true;
      break;
    }

    // Armijo backtracking as a safeguard around the one-dimensional solve.
    const double proposed = step;
    bool accepted = false;
    Field candidate;
    Differential next;
    long clamped = 0;
    for (int halving = 0; halving <= 60; ++halving) {
      candidate = u + step * direction;
      clamped = clamp_count(candidate);
      normalize(candidate);
      next = evaluate_with_gradient(mesh, kind, weight_f, candidate);
      if (next.raw <= cur.raw + opts.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.converged = true;
      break;
    }

    if (step == proposed && clamped == 0) {
      prev_el = -steepest;
      prev_dir = direction;
      have_momentum = true;
    } else {
      have_momentum = false;  // safeguards fired: restart the momentum
    }

    const double drop = (cur.value - next.value) / std::max(1.0, std::abs(cur.value));
    u = candidate;
    cur = next;
    result.total_clamps += clamped;
    result.trace.push_back(TraceRow{iter, cur.value, cur.gradient_norm, clamped});
    if (drop < opts.value_tolerance) {
      result.converged = true;
      break;
    }
  }

  result.u = u;
  result.value = cur.value;
  return result;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);
  out << "iteration,value,gradient_norm,clamp_count\n";
  for (const TraceRow& row : trace) {
    out << row.iteration << ',' << fmt_g17(row.value) << ',' << fmt_g17(row.gradient_norm) << ','
        << row.clamp_count << '\n';
  }
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

ConformalFields conformal_pointwise(const Mesh4& mesh, const Field& u) {
  check_field(mesh, u, "conformal_pointwise");
  if (!(u.minCoeff() > 0.0)) {
    throw std::invalid_argument("conformal_pointwise: conformal factor must be positive");
  }
  const Field lap = mesh.laplacian(u);
  const double s = mesh.blocks.s;
  const double k1 = base_k1perp(mesh);
  ConformalFields out;
  out.scalar.resize(u.size());
  out.k1perp.resize(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double u3 = u[i] * u[i] * u[i];
    out.scalar[i] = (-6.0 * lap[i] + s * u[i]) / u3;
    out.k1perp[i] = (-6.0 * lap[i] + 12.0 * k1 * u[i]) / (12.0 * u3);
  }
  if (!out.scalar.allFinite() || !out.k1perp.allFinite()) {
    throw NumericFailure("conformal_pointwise: non-finite result");
  }
  return out;
}

SignObstructionReport sign_obstruction_certificate(const Mesh4& mesh, const Field& u) {
  check_field(mesh, u, "sign_obstruction_certificate");
  const double k1 = base_k1perp(mesh);
  if (std::abs(k1) > 1e-12) {
    throw std::invalid_argument(
        "sign_obstruction_certificate: base metric must have vanishing minimal bi-orthogonal "
        "curvature (product of equal-curvature two-spheres)");
  }
  const ConformalFields fields = conformal_pointwise(mesh, u);
  const Field u3 = u.array().cube().matrix();
  SignObstructionReport report;
  report.integral = mesh.integrate(fields.k1perp.cwiseProduct(u3));
  report.min_node = fields.k1perp.minCoeff();
  report.integral_vanishes = std::abs(report.integral) <= report.integral_tolerance;
  report.min_nonpositive = report.min_node <= report.integral_tolerance;
  return report;
}

}  // namespace biortho
