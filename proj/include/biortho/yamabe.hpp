#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biortho/common.hpp"
#include "biortho/mesh.hpp"

namespace biortho {

// Conformal energy functionals over a conformal class {u^2 g : u > 0} on a
// meshed model.  Each kind is the volume-normalized total of a curvature
// quantity of the deformed metric, expressed through the base metric by the
// 4-dimensional conformal laws; all reduce to
//
//   E[u] = sum w (6 |grad u|^2 + F u^2) / sqrt(sum w u^4)
//
// with a pointwise weight F of the base metric:
//   Y      : F = s              (total scalar curvature quotient)
//   Yperp  : F = 24 k1perp - s  (total of 24 k1perp~ - s~)
//   Y1perp : F = 12 k1perp      (total of 12 k1perp~; the reported value is
//                                the quotient divided by 12 so it normalizes
//                                the plain k1perp~ total, with the raw
//                                quotient also exposed)
enum class FunctionalKind { Y, Yperp, Y1perp };

// Accepts "y", "yperp", "y1perp" (case-insensitive); throws
// std::invalid_argument otherwise.
FunctionalKind parse_kind(const std::string& name);
std::string kind_name(FunctionalKind kind);

// Pointwise weight field F for the kind on this mesh (constant for catalog
// models).
Field functional_weight(const Mesh4& mesh, FunctionalKind kind);

struct FunctionalBreakdown {
  double gradient_term = 0.0;  // sum w 6 |grad u|^2
  double potential_term = 0.0; // sum w F u^2
  double quartic_norm = 0.0;   // sum w u^4
  double raw = 0.0;            // (gradient_term + potential_term) / sqrt(quartic_norm)
  double value = 0.0;          // raw, divided by 12 for Y1perp
};

// Requires u > 0 somewhere and finite entries; throws std::invalid_argument
// on an all-zero or negative-floor start and NumericFailure on non-finite
// results.  Invariant under u -> c u for c > 0.
FunctionalBreakdown functional_breakdown(const Mesh4& mesh, FunctionalKind kind,
                                         const Field& u);
double functional_value(const Mesh4& mesh, FunctionalKind kind, const Field& u);

struct MinimizeOptions {
  int max_iterations = 5000;
  double value_tolerance = 1e-8;   // stop when the relative value drop per
                                   // accepted step falls below this
  double armijo_c = 1e-4;          // sufficient-decrease constant
  double positivity_floor = 1e-8;  // clamp level for u
  bool band_limit_directions = true;
};

struct TraceRow {
  int iteration = 0;
  double value = 0.0;
  double gradient_norm = 0.0;  // weighted L2 norm of the Euler-Lagrange field
  long clamp_count = 0;        // nodes clamped at the floor this step
};

struct MinimizeResult {
  Field u;                  // best iterate, normalized to sum w u^4 = volume
  double value = 0.0;
  bool converged = false;   // false = iteration budget exhausted
  long total_clamps = 0;    // nonzero values flag untrusted runs
  std::vector<TraceRow> trace;  // row 0 is the start; values non-increasing
};

// Projected gradient descent with backtracking line search on E[u]; iterates
// are renormalized to sum w u^4 = volume and clamped at the positivity floor
// after every step.  The result value never exceeds the start value.
MinimizeResult minimize(const Mesh4& mesh, FunctionalKind kind, const Field& start,
                        const MinimizeOptions& opts = {});

// Write a minimization trace as CSV with header
// iteration,value,gradient_norm,clamp_count.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

// Pointwise curvature of the deformed metric u^2 g from the 4-dimensional
// conformal laws (scalar: s~ u^3 = -6 lap u + s u; minimal bi-orthogonal
// curvature: 12 k1perp~ u^3 = -6 lap u + 12 k1perp u, equivalently
// k1perp~ = s~/12 + (w1plus + w1minus) / (2 u^2)).
struct ConformalFields {
  Field scalar;   // s~ per node
  Field k1perp;   // k1perp~ per node
};
ConformalFields conformal_pointwise(const Mesh4& mesh, const Field& u);

// Sign obstruction certificate on a meshed product of two equal-curvature
// two-spheres (base k1perp = 0): the total of k1perp~ against the deformed
// volume form equals -(1/2) sum w lap u, which vanishes; so a nonconstant
// deformation always has negative k1perp~ somewhere.  Reports the integral,
// the minimal node value, and whether the certificate holds at the stated
// tolerances.
struct SignObstructionReport {
  double integral = 0.0;        // sum w k1perp~ u^3
  double min_node = 0.0;        // min over nodes of k1perp~
  double integral_tolerance = 1e-6;
  bool integral_vanishes = false;  // |integral| <= integral_tolerance
  bool min_nonpositive = false;    // min_node <= integral_tolerance
};
SignObstructionReport sign_obstruction_certificate(const Mesh4& mesh, const Field& u);

}  // namespace biortho
