// biortho: batch command-line surface over the library.
//
// Subcommands: models, analyze, check, yamabe, props.
// Output formats: flat "name = value" text (default) or JSON.  Every report
// begins with "# key = value" header lines echoing the effective config,
// followed by the "# ===" delimiter and the payload.  No timestamps or other
// run-varying data are emitted, so identical configs produce byte-identical
// output.
//
// Exit codes: 0 pass, 1 invariant violation, 2 numeric failure, 3 usage
// error.  The env var BIORTHO_OUT_DIR, when set, is the directory under
// which relative output paths (--out, --trace) are resolved.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "biortho/analysis.hpp"
#include "biortho/common.hpp"
#include "biortho/integrals.hpp"
#include "biortho/mesh.hpp"
#include "biortho/models.hpp"
#include "biortho/property_lab.hpp"
#include "biortho/report.hpp"
#include "biortho/yamabe.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using biortho::Report;

// ---------------------------------------------------------------------------
// Shared run state

struct GlobalConfig {
  std::string format = "flat";  // flat | json
  std::string out_path;         // empty -> stdout
  std::vector<Report> reports;
  int violation = 0;  // set to 1 when an invariant check fails
};

std::string resolve_output_path(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  const char* dir = std::getenv("BIORTHO_OUT_DIR");
  if (dir != nullptr && *dir != '\0' && p.is_relative()) {
    return (std::filesystem::path(dir) / p).string();
  }
  return path;
}

void emit_reports(const GlobalConfig& cfg) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    const std::string resolved = resolve_output_path(cfg.out_path);
    file.open(resolved);
    if (!file) throw std::invalid_argument("cannot open output file: " + resolved);
    os = &file;
  }
  if (cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Report& r : cfg.reports) arr.push_back(r.to_json());
    *os << arr.dump(2) << "\n";
  } else {
    bool first = true;
    for (const Report& r : cfg.reports) {
      if (!first) *os << "\n";
      first = false;
      r.print_flat(*os);
    }
  }
}

void standard_header(Report& rep, const std::string& command) {
  rep.header("biortho", kVersion);
  rep.header("command", command);
}

// ---------------------------------------------------------------------------
// Model construction from flags

struct ModelFlags {
  std::map<std::string, double> set_params;  // only the flags the user passed

  void attach(CLI::App* cmd) {
    auto track = [this](const std::string& key) {
      return [this, key](double v) { set_params[key] = v; };
    };
    cmd->add_option_function<double>("--r", track("r"), "radius parameter");
    cmd->add_option_function<double>("--a", track("a"), "first factor radius");
    cmd->add_option_function<double>("--b", track("b"), "second factor radius");
    cmd->add_option_function<double>("--l", track("l"), "circle length");
    cmd->add_option_function<double>("--l1", track("l1"), "side length 1");
    cmd->add_option_function<double>("--l2", track("l2"), "side length 2");
    cmd->add_option_function<double>("--l3", track("l3"), "side length 3");
    cmd->add_option_function<double>("--l4", track("l4"), "side length 4");
    cmd->add_option_function<double>("--n", track("n"), "quadrature nodes per axis");
  }
};

void echo_model_header(Report& rep, const biortho::ModelManifold& model) {
  rep.header("model", model.name);
  for (const auto& [key, value] : model.parameters) {
    rep.header("param." + key, biortho::fmt_g17(value));
  }
}

// ---------------------------------------------------------------------------
// models

void cmd_models(GlobalConfig& cfg) {
  Report rep("models");
  standard_header(rep, "models");
  for (const biortho::ModelManifold& model : biortho::catalog()) {
    rep.add(model.name + ".chi", model.euler_characteristic);
    rep.add(model.name + ".volume", model.volume);
    for (const auto& [key, value] : model.parameters) {
      rep.add(model.name + ".param." + key, value);
    }
  }
  cfg.reports.push_back(std::move(rep));
}

// ---------------------------------------------------------------------------
// analyze

void cmd_analyze(GlobalConfig& cfg, const std::string& model_name,
                 const ModelFlags& flags, int samples) {
  biortho::ModelManifold model = biortho::make_model(model_name, flags.set_params);
  Report rep("analyze");
  standard_header(rep, "analyze");
  echo_model_header(rep, model);
  rep.header("samples", std::to_string(samples));

  rep.add("model", model.name);
  rep.add("chi", model.euler_characteristic);
  rep.add("volume", model.volume);

  const int node_count = static_cast<int>(model.quadrature.size());
  double k1_min = 0.0, k1_max = 0.0, k3_min = 0.0, k3_max = 0.0;
  for (int i = 0; i < node_count; ++i) {
    const biortho::SpectralSummary sum =
        biortho::kperp_spectral(model.blocks_at(model.quadrature[i].x));
    if (i == 0) {
      k1_min = k1_max = sum.k1perp;
      k3_min = k3_max = sum.k3perp;
    } else {
      k1_min = std::min(k1_min, sum.k1perp);
      k1_max = std::max(k1_max, sum.k1perp);
      k3_min = std::min(k3_min, sum.k3perp);
      k3_max = std::max(k3_max, sum.k3perp);
    }
  }

  const int shown = std::max(1, std::min(samples, node_count));
  for (int k = 0; k < shown; ++k) {
    const int idx = (shown == 1) ? 0 : static_cast<int>(
        static_cast<long long>(k) * (node_count - 1) / (shown - 1));
    const biortho::SpectralSummary sum =
        biortho::kperp_spectral(model.blocks_at(model.quadrature[idx].x));
    const std::string p = "point" + std::to_string(k) + ".";
    rep.add(p + "k1perp", sum.k1perp);
    rep.add(p + "k2perp", sum.k2perp);
    rep.add(p + "k3perp", sum.k3perp);
    rep.add(p + "w1plus", sum.wplus_eigs[0]);
    rep.add(p + "w2plus", sum.wplus_eigs[1]);
    rep.add(p + "w3plus", sum.wplus_eigs[2]);
    rep.add(p + "w1minus", sum.wminus_eigs[0]);
    rep.add(p + "w2minus", sum.wminus_eigs[1]);
    rep.add(p + "w3minus", sum.wminus_eigs[2]);
  }

  rep.add("k1perp.min", k1_min);
  rep.add("k1perp.max", k1_max);
  rep.add("k3perp.min", k3_min);
  rep.add("k3perp.max", k3_max);

  const biortho::CurvaturePredicates preds = biortho::predicates(model.blocks);
  rep.add("einstein", preds.einstein);
  rep.add("conformally_flat", preds.conformally_flat);
  rep.add("positive_isotropic", preds.positive_isotropic);
  rep.add("nonneg_isotropic", preds.nonneg_isotropic);
  rep.add("pinched_quarter_one", preds.pinched_quarter_one);
  rep.add("k1perp_nonneg", preds.k1perp_nonneg);
  rep.add("k1perp_positive", preds.k1perp_positive);

  cfg.reports.push_back(std::move(rep));
}

// ---------------------------------------------------------------------------
// check

void append_integral_report(GlobalConfig& cfg, const std::string& command,
                            const biortho::ModelManifold& model,
                            const biortho::IntegralReport& ir, double tol) {
  Report rep(command);
  standard_header(rep, "check");
  echo_model_header(rep, model);
  rep.header("tol", biortho::fmt_g17(tol));
  rep.add("report", command);
  rep.add("model", ir.model);
  rep.add("chi", ir.chi);
  rep.add("hypotheses_met", ir.hypotheses_met);
  for (const auto& [name, value] : ir.integrals) rep.add(name, value);
  for (const auto& [name, value] : ir.residuals) rep.add(name, value);
  cfg.reports.push_back(std::move(rep));
}

void cmd_check(GlobalConfig& cfg, const std::string& which, const ModelFlags& flags,
               double tol) {
  std::vector<biortho::ModelManifold> models;
  if (which == "all") {
    if (!flags.set_params.empty()) {
      throw std::invalid_argument("model parameters require an explicit --model");
    }
    models = biortho::catalog();
  } else {
    models.push_back(biortho::make_model(which, flags.set_params));
  }

  for (const biortho::ModelManifold& model : models) {
    const biortho::IntegralReport gb = biortho::gauss_bonnet_check(model);
    append_integral_report(cfg, "gauss_bonnet", model, gb, tol);
    if (gb.get("gauss_bonnet_rel") > tol) cfg.violation = 1;

    const biortho::IntegralReport bound = biortho::euler_bound_check(model);
    append_integral_report(cfg, "euler_bound", model, bound, tol);
    if (bound.hypotheses_met) {
      // the bound itself: 8 pi^2 chi below the larger branch
      const double lhs = bound.get("euler_lhs");
      const double best = std::max(bound.get("bound_loose"), bound.get("bound_sharp"));
      if (!(lhs < best)) cfg.violation = 1;
    }

    if (model.name == "s2xs2") {
      const biortho::ThresholdReport th =
          biortho::scalar_energy_threshold_report(model);
      Report rep("scalar_energy_threshold");
      standard_header(rep, "check");
      echo_model_header(rep, model);
      rep.header("tol", biortho::fmt_g17(tol));
      rep.add("report", "scalar_energy_threshold");
      rep.add("model", model.name);
      rep.add("threshold", th.threshold);
      rep.add("total_s2", th.integral_s2);
      rep.add("min_k1perp", th.min_k1perp);
      rep.add("below_threshold", th.below_threshold);
      rep.add("negativity_observed", th.negativity_observed);
      rep.add("exclusion_respected", th.exclusion_respected);
      cfg.reports.push_back(std::move(rep));
      if (!th.exclusion_respected) cfg.violation = 1;
    }
  }
}

// ---------------------------------------------------------------------------
// yamabe

std::array<int, 4> default_mesh_dims(const std::string& model_name) {
  if (model_name == "s2xs2") return {32, 64, 32, 64};
  if (model_name == "s4") return {16, 16, 16, 32};
  if (model_name == "s2xt2") return {16, 32, 16, 16};
  if (model_name == "s3xs1") return {16, 16, 32, 16};
  return {16, 16, 16, 16};  // t4
}

void cmd_yamabe(GlobalConfig& cfg, const std::string& model_name,
                const ModelFlags& flags, const std::string& kind_name,
                const std::string& start_name, double amp, std::uint64_t seed,
                std::vector<int> mesh_dims, int max_iters, double tol,
                const std::string& trace_path) {
  biortho::ModelManifold model = biortho::make_model(model_name, flags.set_params);
  const biortho::FunctionalKind kind = biortho::parse_kind(kind_name);

  std::array<int, 4> dims = default_mesh_dims(model.name);
  if (!mesh_dims.empty()) {
    if (mesh_dims.size() != 4) {
      throw std::invalid_argument("--mesh expects exactly 4 comma-separated sizes");
    }
    for (int i = 0; i < 4; ++i) dims[i] = mesh_dims[static_cast<size_t>(i)];
  }
  biortho::Mesh4 mesh = biortho::make_mesh(model, dims);

  biortho::Field start;
  if (start_name == "const") {
    start = biortho::Field::Ones(mesh.size());
  } else if (start_name == "random") {
    const biortho::SmoothField f = biortho::random_smooth_field(model, seed, amp);
    start = mesh.evaluate([&](const biortho::Vec4& p) { return 1.0 + f.value(p); });
  } else if (start_name == "first-harmonic") {
    start = mesh.evaluate(
        [&](const biortho::Vec4& p) { return 1.0 + amp * std::cos(p[0]); });
  } else {
    throw std::invalid_argument("unknown start field: " + start_name +
                                " (expected const, random, or first-harmonic)");
  }

  const biortho::FunctionalBreakdown at_start =
      biortho::functional_breakdown(mesh, kind, start);

  biortho::MinimizeOptions opts;
  opts.max_iterations = max_iters;
  opts.value_tolerance = tol;
  const biortho::MinimizeResult res = biortho::minimize(mesh, kind, start, opts);

  bool monotone = true;
  for (size_t i = 1; i < res.trace.size(); ++i) {
    if (res.trace[i].value > res.trace[i - 1].value + 1e-12) monotone = false;
  }

  Report rep("yamabe");
  standard_header(rep, "yamabe");
  echo_model_header(rep, model);
  rep.header("kind", biortho::kind_name(kind));
  rep.header("start", start_name);
  rep.header("amp", biortho::fmt_g17(amp));
  rep.header("seed", std::to_string(seed));
  {
    std::ostringstream dims_text;
    dims_text << dims[0] << "," << dims[1] << "," << dims[2] << "," << dims[3];
    rep.header("mesh", dims_text.str());
  }
  rep.header("max_iters", std::to_string(max_iters));
  rep.header("tol", biortho::fmt_g17(tol));

  rep.add("model", model.name);
  rep.add("kind", biortho::kind_name(kind));
  rep.add("mesh_nodes", mesh.size());
  rep.add("start.value", at_start.value);
  rep.add("start.raw", at_start.raw);
  rep.add("start.gradient_term", at_start.gradient_term);
  rep.add("start.potential_term", at_start.potential_term);
  rep.add("start.quartic_norm", at_start.quartic_norm);
  rep.add("minimize.value", res.value);
  rep.add("minimize.iterations",
          static_cast<std::int64_t>(res.trace.empty() ? 0 : res.trace.size() - 1));
  rep.add("minimize.converged", res.converged);
  rep.add("minimize.total_clamps", static_cast<std::int64_t>(res.total_clamps));
  rep.add("minimize.monotone", monotone);
  rep.add("minimize.u_min", double(res.u.minCoeff()));
  rep.add("minimize.u_max", double(res.u.maxCoeff()));

  if (!trace_path.empty()) {
    const std::string resolved = resolve_output_path(trace_path);
    biortho::write_trace_csv(resolved, res.trace);
    rep.add("trace_file", trace_path);
  }

  cfg.reports.push_back(std::move(rep));
}

// ---------------------------------------------------------------------------
// props

void cmd_props(GlobalConfig& cfg, const std::string& which,
               const biortho::RandomBlockSpec& spec,
               const std::string& constraint_name) {
  biortho::RandomBlockSpec effective = spec;
  effective.constraint = biortho::parse_constraint(constraint_name);

  std::vector<std::string> names;
  if (which == "all") {
    names = biortho::suite_names();
  } else {
    names.push_back(which);
  }

  for (const std::string& name : names) {
    const biortho::SuiteReport sr = biortho::run_suite(name, effective);
    Report rep("suite." + name);
    standard_header(rep, "props");
    rep.header("suite", name);
    rep.header("seed", std::to_string(effective.seed));
    rep.header("count", std::to_string(effective.count));
    rep.header("s_scale", biortho::fmt_g17(effective.s_scale));
    rep.header("w_scale", biortho::fmt_g17(effective.w_scale));
    rep.header("b_scale", biortho::fmt_g17(effective.b_scale));
    rep.header("constraint", constraint_name);
    rep.add("suite", sr.suite);
    rep.add("count", sr.count);
    rep.add("tolerance", sr.tolerance);
    rep.add("max_residual", sr.max_residual);
    rep.add("failures", sr.failures);
    rep.add("passed", sr.passed);
    if (!sr.counterexample.empty()) rep.add("counterexample", sr.counterexample);
    cfg.reports.push_back(std::move(rep));
    if (!sr.passed) cfg.violation = 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for curvature of oriented 4-manifolds"};
  app.set_config("--config", "", "key-value config file merged under flags");
  app.require_subcommand(1);

  GlobalConfig cfg;
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"flat", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path,
                 "output file (default stdout; relative paths resolve under "
                 "BIORTHO_OUT_DIR when set)");

  // models
  app.add_subcommand("models", "list catalog models with chi and volume")
      ->fallthrough();

  // analyze
  CLI::App* analyze = app.add_subcommand(
      "analyze", "pointwise curvature summary and predicates of a model");
  analyze->fallthrough();
  std::string analyze_model;
  analyze->add_option("--model", analyze_model, "model name")->required();
  ModelFlags analyze_flags;
  analyze_flags.attach(analyze);
  int analyze_samples = 3;
  analyze->add_option("--samples", analyze_samples, "sampled points to print")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // check
  CLI::App* check = app.add_subcommand(
      "check", "integral identities and bounds (Gauss-Bonnet, Euler bound)");
  check->fallthrough();
  std::string check_model = "all";
  check->add_option("--model", check_model, "model name or 'all'")
      ->capture_default_str();
  ModelFlags check_flags;
  check_flags.attach(check);
  double check_tol = 1e-6;
  check->add_option("--tol", check_tol, "relative residual tolerance")
      ->capture_default_str();

  // yamabe
  CLI::App* yamabe = app.add_subcommand(
      "yamabe", "conformal functional evaluation and minimization");
  yamabe->fallthrough();
  std::string yamabe_model;
  yamabe->add_option("--model", yamabe_model, "model name (meshable)")->required();
  ModelFlags yamabe_flags;
  yamabe_flags.attach(yamabe);
  std::string yamabe_kind = "y";
  yamabe->add_option("--kind", yamabe_kind, "functional kind: y, yperp, y1perp")
      ->capture_default_str();
  std::string yamabe_start = "const";
  yamabe
      ->add_option("--u,--start", yamabe_start,
                   "start field: const, random, first-harmonic")
      ->capture_default_str();
  double yamabe_amp = 0.3;
  yamabe->add_option("--amp", yamabe_amp, "start perturbation amplitude")
      ->capture_default_str();
  std::uint64_t yamabe_seed = 7;
  yamabe->add_option("--seed", yamabe_seed, "seed for the random start")
      ->capture_default_str();
  std::vector<int> yamabe_mesh;
  yamabe->add_option("--mesh", yamabe_mesh,
                     "per-axis node counts n0,n1,n2,n3 (default per model)")
      ->delimiter(',');
  int yamabe_max_iters = 5000;
  yamabe->add_option("--max-iters", yamabe_max_iters, "iteration budget")
      ->capture_default_str();
  double yamabe_tol = 1e-8;
  yamabe->add_option("--tol", yamabe_tol, "relative value-drop stop tolerance")
      ->capture_default_str();
  std::string yamabe_trace;
  yamabe->add_option("--trace", yamabe_trace,
                     "write the iteration trace CSV to this path");

  // props
  CLI::App* props = app.add_subcommand(
      "props", "bulk algebraic property suites on random curvature blocks");
  props->fallthrough();
  std::string props_suite = "all";
  props->add_option("--suite", props_suite, "suite name or 'all'")
      ->capture_default_str();
  biortho::RandomBlockSpec props_spec;
  props->add_option("--seed", props_spec.seed, "generator seed")
      ->capture_default_str();
  props->add_option("--count", props_spec.count, "samples per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  props->add_option("--s-scale", props_spec.s_scale, "scalar curvature scale")
      ->capture_default_str();
  props->add_option("--w-scale", props_spec.w_scale, "W block entry scale")
      ->capture_default_str();
  props->add_option("--b-scale", props_spec.b_scale, "B block entry scale")
      ->capture_default_str();
  std::string props_constraint = "none";
  props
      ->add_option("--constraint", props_constraint,
                   "none, einstein, confflat, nonneg-k1")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand("models")) {
      cmd_models(cfg);
    } else if (app.got_subcommand(analyze)) {
      cmd_analyze(cfg, analyze_model, analyze_flags, analyze_samples);
    } else if (app.got_subcommand(check)) {
      cmd_check(cfg, check_model, check_flags, check_tol);
    } else if (app.got_subcommand(yamabe)) {
      cmd_yamabe(cfg, yamabe_model, yamabe_flags, yamabe_kind, yamabe_start,
                 yamabe_amp, yamabe_seed, yamabe_mesh, yamabe_max_iters, yamabe_tol,
                 yamabe_trace);
    } else if (app.got_subcommand(props)) {
      cmd_props(cfg, props_suite, props_spec, props_constraint);
    }
    emit_reports(cfg);
    return cfg.violation;
  } catch (const biortho::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
