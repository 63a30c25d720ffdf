// epi-lab: batch front-end for the entropy/Fisher/EPI laboratory.
// Parses distribution descriptors, runs the requested computation, and
// writes a deterministic JSON or CSV report (atomic write, stable bytes).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epilab/analytic_density.hpp"
#include "epilab/descriptors.hpp"
#include "epilab/distribution_function.hpp"
#include "epilab/entropy.hpp"
#include "epilab/errors.hpp"
#include "epilab/grid_density.hpp"
#include "epilab/heat_flow.hpp"
#include "epilab/integer_pmf.hpp"
#include "epilab/isoperimetry.hpp"
#include "epilab/log_concave_extension.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"
#include "epilab/stability.hpp"

namespace {

using namespace epilab;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string out;
  std::string format = "json";
  std::string config;
};

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad config JSON: ") + e.what());
  }
  return j;
}

// Flags win over config which wins over defaults.
template <typename T>
void merge(const CLI::Option* opt, const nlohmann::json& cfg, const std::string& key, T& value) {
  if (opt != nullptr && opt->count() > 0) return;
  if (!cfg.is_null() && cfg.contains(key)) {
    try {
      value = cfg.at(key).get<T>();
    } catch (const std::exception&) {
      throw UsageError("config value for '" + key + "' has the wrong type");
    }
  }
}

void emit(const CommonOpts& common, const std::string& text) {
  if (common.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (!text.empty() && text.back() != '\n') std::fputc('\n', stdout);
  } else {
    write_file_atomic(common.out, text);
  }
}

double default_tail(const AnalyticDensity& d) {
  // Heavy tails get the mass-driven 1e-4 window; everything else 1e-12.
  return std::holds_alternative<Cauchy>(d) ? 1e-4 : 1e-12;
}

GridDensity render_input(const AnalyticDensity& d, Eigen::Index points,
                         const std::optional<std::array<double, 2>>& window, double tail) {
  if (window) return render(d, *window, points, 1.0 - 2.0 * tail);
  return render(d, default_window(d, tail), points, 1.0 - 2.0 * tail);
}

std::optional<std::array<double, 2>> parse_window(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::stringstream ss(s);
  std::string a, b;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
    throw UsageError("window must be 'lo,hi': " + s);
  }
  try {
    return std::array<double, 2>{std::stod(a), std::stod(b)};
  } catch (const std::exception&) {
    throw UsageError("window must be numeric 'lo,hi': " + s);
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + tok + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(what + " is empty");
  return out;
}

std::vector<double> default_t_grid() {
  std::vector<double> t;
  for (int k = 16; k >= 5; --k) t.push_back(std::pow(2.0, -k));
  for (double v = 0.05; v < 0.999; v += 0.025) t.push_back(v);
  t.push_back(1.0);
  return t;
}

void params_header(JsonWriter& w, const std::string& command) {
  w.begin_object();
  w.key("command").string(command);
  w.key("version").string(kVersion);
}

// ---------------------------------------------------------------- entropy / fisher

int run_functional(const CommonOpts& common, const std::string& command,
                   const std::vector<std::string>& inputs, long points, const std::string& window_s,
                   double tail_override, bool tail_given) {
  const auto window = parse_window(window_s);
  JsonWriter w;
  params_header(w, command);
  w.key("params").begin_object();
  w.key("points").integer(points);
  w.key("window").string(window_s.empty() ? "auto" : window_s);
  w.end_object();
  w.key("results").begin_array();
  std::string csv = "input,value,refinement_gap,tail_mass_dropped,jump_warning\n";
  for (const auto& in : inputs) {
    const AnalyticDensity d = parse_analytic_descriptor(in);
    const double tail = tail_given ? tail_override : default_tail(d);
    FunctionalEstimate est;
    if (command == "entropy") {
      if (const auto h = closed_form_entropy(d)) {
        est = FunctionalEstimate{*h, 0.0, 0.0, false};
      } else {
        est = differential_entropy(render_input(d, points, window, tail));
      }
    } else {
      if (const auto fi = closed_form_fisher(d)) {
        est = FunctionalEstimate{*fi, 0.0, 0.0, std::isinf(*fi)};
      } else {
        est = fisher_information(render_input(d, points, window, tail));
      }
    }
    w.begin_object();
    w.key("input").string(in);
    w.key("value").number(est.value);
    w.key("refinement_gap").number(est.refinement_gap);
    w.key("tail_mass_dropped").number(est.tail_mass_dropped);
    w.key("jump_warning").boolean(est.jump_warning);
    w.end_object();
    csv += in + ',' + format_double(est.value) + ',' + format_double(est.refinement_gap) + ',' +
           format_double(est.tail_mass_dropped) + ',' + (est.jump_warning ? "true" : "false") +
           '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- deficit

int run_deficit(const CommonOpts& common, const std::string& x, const std::string& y, double lambda,
                long points) {
  const AnalyticDensity dx = parse_analytic_descriptor(x);
  const AnalyticDensity dy = parse_analytic_descriptor(y);
  const GridDensity fx = render_input(dx, points, std::nullopt, default_tail(dx));
  const GridDensity fy = render_input(dy, points, std::nullopt, default_tail(dy));
  const DeficitReport r = epi_deficit(fx, fy, lambda);
  JsonWriter w;
  params_header(w, "deficit");
  w.key("params").begin_object();
  w.key("x").string(x);
  w.key("y").string(y);
  w.key("lambda").number(lambda);
  w.key("points").integer(points);
  w.end_object();
  w.key("lambda").number(r.lambda);
  w.key("h_x").number(r.h_x);
  w.key("h_y").number(r.h_y);
  w.key("h_mix").number(r.h_mix);
  w.key("deficit").number(r.deficit);
  w.end_object();
  std::string csv = "lambda,h_x,h_y,h_mix,deficit\n" + format_double(r.lambda) + ',' +
                    format_double(r.h_x) + ',' + format_double(r.h_y) + ',' +
                    format_double(r.h_mix) + ',' + format_double(r.deficit) + '\n';
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- debruijn

int run_debruijn(const CommonOpts& common, const std::string& input, const std::string& t_list,
                 double dt, bool dt_given, long points) {
  const AnalyticDensity d = parse_analytic_descriptor(input);
  const GridDensity f = render_input(d, points, std::nullopt, default_tail(d));
  const auto ts = parse_list(t_list, "--t");
  JsonWriter w;
  params_header(w, "debruijn");
  w.key("params").begin_object();
  w.key("input").string(input);
  w.key("points").integer(points);
  w.key("dt").string(dt_given ? format_double(dt) : "t/100");
  w.end_object();
  w.key("results").begin_array();
  std::string csv = "t,dt,residual\n";
  for (double t : ts) {
    const double use_dt = dt_given ? dt : t / 100.0;
    const double r = debruijn_residual(f, t, use_dt);
    w.begin_object();
    w.key("t").number(t);
    w.key("dt").number(use_dt);
    w.key("residual").number(r);
    w.end_object();
    csv += format_double(t) + ',' + format_double(use_dt) + ',' + format_double(r) + '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- trajectory

int run_trajectory(const CommonOpts& common, const std::string& x, const std::string& y,
                   double lambda, const std::string& t_list, long points) {
  const AnalyticDensity dx = parse_analytic_descriptor(x);
  const AnalyticDensity dy = parse_analytic_descriptor(y);
  const GridDensity fx = render_input(dx, points, std::nullopt, default_tail(dx));
  const GridDensity fy = render_input(dy, points, std::nullopt, default_tail(dy));
  const std::vector<double> ts = t_list.empty() ? default_t_grid() : parse_list(t_list, "--t");
  const HeatTrajectory tr = deficit_monotonicity(fx, fy, lambda, ts);
  if (common.format == "csv") {
    emit(common, trajectory_csv(tr));
    return 0;
  }
  JsonWriter w;
  params_header(w, "trajectory");
  w.key("params").begin_object();
  w.key("x").string(x);
  w.key("y").string(y);
  w.key("lambda").number(lambda);
  w.key("points").integer(points);
  w.end_object();
  w.key("results").begin_array();
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    w.begin_object();
    w.key("t").number(tr.times[i]);
    w.key("h_x").number(tr.h_x[i]);
    w.key("h_y").number(tr.h_y[i]);
    w.key("h_mix").number(tr.h_mix[i]);
    w.key("I_x").number(tr.fisher_x[i]);
    w.key("I_y").number(tr.fisher_y[i]);
    w.key("I_mix").number(tr.fisher_mix[i]);
    w.key("delta").number(tr.delta[i]);
    w.key("dprime_num").number(tr.delta_prime_numeric[i]);
    w.key("dprime_formula").number(tr.delta_prime_formula[i]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(common, w.str());
  return 0;
}

// ---------------------------------------------------------------- discrete-deficit

int run_discrete_deficit(const CommonOpts& common, const std::vector<std::string>& pmfs) {
  JsonWriter w;
  params_header(w, "discrete-deficit");
  w.key("results").begin_array();
  std::string csv = "pmf,H,H_sum,tao_deficit,sigma\n";
  for (const auto& s : pmfs) {
    const IntegerPmf p = parse_pmf_descriptor(s);
    const double h1 = discrete_entropy(p);
    const double h2 = discrete_entropy(self_convolve(p));
    const double td = h2 - h1 - 0.5 * kLog2;
    w.begin_object();
    w.key("pmf").string(s);
    w.key("H").number(h1);
    w.key("H_sum").number(h2);
    w.key("tao_deficit").number(td);
    w.key("sigma").number(std::sqrt(p.variance));
    w.end_object();
    csv += s + ',' + format_double(h1) + ',' + format_double(h2) + ',' + format_double(td) + ',' +
           format_double(std::sqrt(p.variance)) + '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- isoperimetry

int run_isoperimetry(const CommonOpts& common, const std::vector<std::string>& pmfs) {
  JsonWriter w;
  params_header(w, "isoperimetry");
  w.key("results").begin_array();
  std::string csv =
      "pmf,iso_constant,argmin_cell,argmin_point,cheeger_upper,rayleigh_lower,sigma2\n";
  for (const auto& s : pmfs) {
    const IntegerPmf p = parse_pmf_descriptor(s);
    const IsoperimetryReport r = isoperimetry_report(p);
    w.begin_object();
    w.key("pmf").string(s);
    w.key("iso_constant").number(r.iso_constant);
    w.key("argmin_cell").integer(r.argmin_cell);
    w.key("argmin_point").number(r.argmin_point);
    w.key("cheeger_upper").number(r.cheeger_upper);
    w.key("rayleigh_lower").number(r.rayleigh_lower);
    w.key("sigma2").number(r.sigma2);
    w.end_object();
    csv += s + ',' + format_double(r.iso_constant) + ',' + std::to_string(r.argmin_cell) + ',' +
           format_double(r.argmin_point) + ',' + format_double(r.cheeger_upper) + ',' +
           format_double(r.rayleigh_lower) + ',' + format_double(r.sigma2) + '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- prop10

int run_prop10(const CommonOpts& common, const std::vector<std::string>& pmfs) {
  JsonWriter w;
  params_header(w, "prop10");
  w.key("results").begin_array();
  std::string csv =
      "pmf,sigma2,iso_constant,cheeger_upper,budget,observed_ratio,proof_chain_margin,passes\n";
  for (const auto& s : pmfs) {
    const IntegerPmf p = parse_pmf_descriptor(s);
    const Prop10Report r = verify_prop10(p);
    w.begin_object();
    w.key("pmf").string(s);
    w.key("sigma2").number(r.sigma2);
    w.key("iso_constant").number(r.iso_constant);
    w.key("cheeger_upper").number(r.cheeger_upper);
    w.key("budget").number(r.budget);
    w.key("observed_ratio").number(r.observed_ratio);
    w.key("proof_chain_margin").number(r.proof_chain_margin);
    w.key("passes").boolean(r.passes);
    w.end_object();
    csv += s + ',' + format_double(r.sigma2) + ',' + format_double(r.iso_constant) + ',' +
           format_double(r.cheeger_upper) + ',' + format_double(r.budget) + ',' +
           format_double(r.observed_ratio) + ',' + format_double(r.proof_chain_margin) + ',' +
           (r.passes ? "true" : "false") + '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- theorem9

int run_theorem9(const CommonOpts& common, const std::vector<std::string>& pmfs, double c2,
                 bool verdict) {
  JsonWriter w;
  params_header(w, "theorem9");
  w.key("params").begin_object();
  w.key("c2_budget").number(c2);
  w.key("verdict").boolean(verdict);
  w.end_object();
  w.key("results").begin_array();
  std::string csv =
      "pmf,sigma,kl_to_dgauss,tao_deficit,c1_term,required_c2,passes_with_budget,scope_warning\n";
  bool scope_violation = false;
  for (const auto& s : pmfs) {
    const IntegerPmf p = parse_pmf_descriptor(s);
    const DiscreteStabilityReport r = theorem9_report(p, c2);
    if (r.scope_warning) scope_violation = true;
    w.begin_object();
    w.key("pmf").string(s);
    w.key("sigma").number(r.sigma);
    w.key("kl_to_dgauss").number(r.kl_to_dgauss);
    w.key("tao_deficit").number(r.tao_deficit);
    w.key("c1_term").number(r.c1_term);
    w.key("required_c2").number(r.required_c2);
    w.key("passes_with_budget").boolean(r.passes_with_budget);
    w.key("scope_warning").boolean(r.scope_warning);
    w.end_object();
    csv += s + ',' + format_double(r.sigma) + ',' + format_double(r.kl_to_dgauss) + ',' +
           format_double(r.tao_deficit) + ',' + format_double(r.c1_term) + ',' +
           format_double(r.required_c2) + ',' + (r.passes_with_budget ? "true" : "false") + ',' +
           (r.scope_warning ? "true" : "false") + '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  // A verdict request on out-of-scope sigma is a scope violation (exit 1),
  // but the report is still written.
  return (verdict && scope_violation) ? 1 : 0;
}

// ---------------------------------------------------------------- stability

int run_stability(const CommonOpts& common, const std::string& input, double cp, bool cp_given,
                  long points) {
  const AnalyticDensity d = parse_analytic_descriptor(input);
  const GridDensity f = render_input(d, points, std::nullopt, default_tail(d));
  double poincare = cp;
  std::string cp_source = "flag";
  if (!cp_given) {
    if (std::holds_alternative<Gaussian>(d)) {
      poincare = std::get<Gaussian>(d).variance;  // exact for Gaussians
      cp_source = "gaussian";
    } else if (std::holds_alternative<Uniform>(d)) {
      const auto& u = std::get<Uniform>(d);
      poincare = (u.b - u.a) * (u.b - u.a) / (kPi * kPi);  // Neumann eigenvalue
      cp_source = "uniform";
    } else {
      poincare = grid_poincare_cheeger_upper(f);  // certified Cheeger route
      cp_source = "cheeger";
    }
  }
  const ContinuousStabilityReport r = continuous_stability_report(f, poincare);
  JsonWriter w;
  params_header(w, "stability");
  w.key("params").begin_object();
  w.key("input").string(input);
  w.key("points").integer(points);
  w.key("cp_source").string(cp_source);
  w.end_object();
  w.key("variance").number(r.variance);
  w.key("poincare_upper").number(r.poincare_upper);
  w.key("deficit_half").number(r.deficit_half);
  w.key("kl_to_gaussian").number(r.kl_to_gaussian);
  w.key("bbn_bound").number(r.bbn_bound);
  w.key("km_bound").number(r.km_bound);
  w.key("km_slack").number(r.km_bound - r.kl_to_gaussian);
  w.end_object();
  std::string csv =
      "variance,poincare_upper,deficit_half,kl_to_gaussian,bbn_bound,km_bound,km_slack\n" +
      format_double(r.variance) + ',' + format_double(r.poincare_upper) + ',' +
      format_double(r.deficit_half) + ',' + format_double(r.kl_to_gaussian) + ',' +
      format_double(r.bbn_bound) + ',' + format_double(r.km_bound) + ',' +
      format_double(r.km_bound - r.kl_to_gaussian) + '\n';
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

// ---------------------------------------------------------------- weak-demo

int run_weak_demo(const CommonOpts& common, const std::string& a_list, long points) {
  const auto as = parse_list(a_list, "--a");
  const auto rows = weak_stability_demo(as, points);
  JsonWriter w;
  params_header(w, "weak-demo");
  w.key("params").begin_object();
  w.key("points").integer(points);
  w.end_object();
  w.key("results").begin_array();
  std::string csv = "a,deficit,levy_to_gaussian\n";
  for (const auto& r : rows) {
    w.begin_object();
    w.key("a").number(r.a);
    w.key("deficit").number(r.deficit);
    w.key("levy_to_gaussian").number(r.levy_to_gaussian);
    w.end_object();
    csv += format_double(r.a) + ',' + format_double(r.deficit) + ',' +
           format_double(r.levy_to_gaussian) + '\n';
  }
  w.end_array();
  w.end_object();
  emit(common, common.format == "csv" ? csv : w.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epi-lab: numerical laboratory for entropy power inequality machinery"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string x_desc, y_desc, input_desc, window_s, t_list, a_list;
  std::vector<std::string> inputs, pmfs;
  double lambda = 0.5, dt = 1e-3, c2 = 1e10, cp = 0.0, tail = 1e-12;
  long points = 1 << 14;
  bool verdict = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output path (stdout if omitted)");
    sub->add_option("--format", common.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", common.config, "JSON config file (flags win)");
  };

  auto* c_entropy = app.add_subcommand("entropy", "differential entropy of continuous inputs");
  auto* o_e_in = c_entropy->add_option("--input", inputs, "distribution descriptor(s)");
  auto* o_e_pts = c_entropy->add_option("--points", points, "grid points");
  auto* o_e_win = c_entropy->add_option("--window", window_s, "grid window lo,hi");
  auto* o_e_tail = c_entropy->add_option("--tail", tail, "window tail mass");
  add_common(c_entropy);

  auto* c_fisher = app.add_subcommand("fisher", "Fisher information of continuous inputs");
  auto* o_f_in = c_fisher->add_option("--input", inputs, "distribution descriptor(s)");
  auto* o_f_pts = c_fisher->add_option("--points", points, "grid points");
  auto* o_f_win = c_fisher->add_option("--window", window_s, "grid window lo,hi");
  auto* o_f_tail = c_fisher->add_option("--tail", tail, "window tail mass");
  add_common(c_fisher);

  auto* c_deficit = app.add_subcommand("deficit", "EPI deficit of a pair");
  auto* o_d_x = c_deficit->add_option("--x", x_desc, "X descriptor");
  auto* o_d_y = c_deficit->add_option("--y", y_desc, "Y descriptor");
  auto* o_d_l = c_deficit->add_option("--lambda", lambda, "mixing weight in (0,1)");
  auto* o_d_pts = c_deficit->add_option("--points", points, "grid points");
  add_common(c_deficit);

  auto* c_debruijn = app.add_subcommand("debruijn", "de Bruijn identity residuals");
  auto* o_b_in = c_debruijn->add_option("--input", input_desc, "distribution descriptor");
  auto* o_b_t = c_debruijn->add_option("--t", t_list, "comma list of t values");
  auto* o_b_dt = c_debruijn->add_option("--dt", dt, "central-difference step (default t/100)");
  auto* o_b_pts = c_debruijn->add_option("--points", points, "grid points");
  add_common(c_debruijn);

  auto* c_traj = app.add_subcommand("trajectory", "deficit trajectory along the perturbation");
  auto* o_t_x = c_traj->add_option("--x", x_desc, "X descriptor");
  auto* o_t_y = c_traj->add_option("--y", y_desc, "Y descriptor");
  auto* o_t_l = c_traj->add_option("--lambda", lambda, "mixing weight in (0,1)");
  auto* o_t_t =
      c_traj->add_option("--t", t_list, "comma list of t values (default grid if omitted)");
  auto* o_t_pts = c_traj->add_option("--points", points, "grid points");
  add_common(c_traj);

  auto* c_dd = app.add_subcommand("discrete-deficit", "Tao deficit of integer pmfs");
  auto* o_dd_pmf = c_dd->add_option("--pmf", pmfs, "pmf descriptor(s)");
  add_common(c_dd);

  auto* c_iso = app.add_subcommand("isoperimetry", "exact isoperimetric constants for X+U");
  auto* o_i_pmf = c_iso->add_option("--pmf", pmfs, "pmf descriptor(s)");
  add_common(c_iso);

  auto* c_p10 = app.add_subcommand("prop10", "Poincare budget verification for X+U");
  auto* o_p_pmf = c_p10->add_option("--pmf", pmfs, "pmf descriptor(s)");
  add_common(c_p10);

  auto* c_t9 = app.add_subcommand("theorem9", "discrete stability reports");
  auto* o_9_pmf = c_t9->add_option("--pmf", pmfs, "pmf descriptor(s)");
  auto* o_9_c2 = c_t9->add_option("--c2", c2, "C2 budget");
  auto* o_9_v = c_t9->add_flag("--verdict", verdict, "exit 1 when sigma is below the scope gate");
  add_common(c_t9);

  auto* c_stab = app.add_subcommand("stability", "continuous Poincare-based stability bounds");
  auto* o_s_in = c_stab->add_option("--input", input_desc, "distribution descriptor");
  auto* o_s_cp = c_stab->add_option("--cp", cp, "certified Poincare upper bound");
  auto* o_s_pts = c_stab->add_option("--points", points, "grid points");
  add_common(c_stab);

  auto* c_weak = app.add_subcommand("weak-demo", "weak-stability demo along an a-sequence");
  auto* o_w_a = c_weak->add_option("--a", a_list, "comma list of a values");
  auto* o_w_pts = c_weak->add_option("--points", points, "grid points");
  add_common(c_weak);

  try {
    app.parse(argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    const nlohmann::json cfg = load_config(common.config);
    const std::string name = sub->get_name();

    if (name == "entropy" || name == "fisher") {
      const bool is_entropy = name == "entropy";
      merge(is_entropy ? o_e_in : o_f_in, cfg, "input", inputs);
      merge(is_entropy ? o_e_pts : o_f_pts, cfg, "points", points);
      merge(is_entropy ? o_e_win : o_f_win, cfg, "window", window_s);
      merge(is_entropy ? o_e_tail : o_f_tail, cfg, "tail", tail);
      if (inputs.empty()) throw UsageError(name + ": missing --input");
      const bool tail_given = (is_entropy ? o_e_tail : o_f_tail)->count() > 0 ||
                              (!cfg.is_null() && cfg.contains("tail"));
      return run_functional(common, name, inputs, points, window_s, tail, tail_given);
    }
    if (name == "deficit") {
      merge(o_d_x, cfg, "x", x_desc);
      merge(o_d_y, cfg, "y", y_desc);
      merge(o_d_l, cfg, "lambda", lambda);
      merge(o_d_pts, cfg, "points", points);
      if (x_desc.empty()) throw UsageError("deficit: missing --x");
      if (y_desc.empty()) throw UsageError("deficit: missing --y");
      if (o_d_l->count() == 0 && (cfg.is_null() || !cfg.contains("lambda"))) {
        throw UsageError("deficit: missing --lambda");
      }
      return run_deficit(common, x_desc, y_desc, lambda, points);
    }
    if (name == "debruijn") {
      merge(o_b_in, cfg, "input", input_desc);
      merge(o_b_t, cfg, "t", t_list);
      merge(o_b_dt, cfg, "dt", dt);
      merge(o_b_pts, cfg, "points", points);
      if (input_desc.empty()) throw UsageError("debruijn: missing --input");
      if (t_list.empty()) throw UsageError("debruijn: missing --t");
      const bool dt_given = o_b_dt->count() > 0 || (!cfg.is_null() && cfg.contains("dt"));
      return run_debruijn(common, input_desc, t_list, dt, dt_given, points);
    }
    if (name == "trajectory") {
      merge(o_t_x, cfg, "x", x_desc);
      merge(o_t_y, cfg, "y", y_desc);
      merge(o_t_l, cfg, "lambda", lambda);
      merge(o_t_t, cfg, "t", t_list);
      merge(o_t_pts, cfg, "points", points);
      if (x_desc.empty()) throw UsageError("trajectory: missing --x");
      if (y_desc.empty()) throw UsageError("trajectory: missing --y");
      if (o_t_l->count() == 0 && (cfg.is_null() || !cfg.contains("lambda"))) {
        throw UsageError("trajectory: missing --lambda");
      }
      return run_trajectory(common, x_desc, y_desc, lambda, t_list, points);
    }
    if (name == "discrete-deficit") {
      merge(o_dd_pmf, cfg, "pmf", pmfs);
      if (pmfs.empty()) throw UsageError("discrete-deficit: missing --pmf");
      return run_discrete_deficit(common, pmfs);
    }
    if (name == "isoperimetry") {
      merge(o_i_pmf, cfg, "pmf", pmfs);
      if (pmfs.empty()) throw UsageError("isoperimetry: missing --pmf");
      return run_isoperimetry(common, pmfs);
    }
    if (name == "prop10") {
      merge(o_p_pmf, cfg, "pmf", pmfs);
      if (pmfs.empty()) throw UsageError("prop10: missing --pmf");
      return run_prop10(common, pmfs);
    }
    if (name == "theorem9") {
      merge(o_9_pmf, cfg, "pmf", pmfs);
      merge(o_9_c2, cfg, "c2", c2);
      if (o_9_v->count() == 0 && !cfg.is_null() && cfg.contains("verdict")) {
        verdict = cfg.at("verdict").get<bool>();
      }
      if (pmfs.empty()) throw UsageError("theorem9: missing --pmf");
      return run_theorem9(common, pmfs, c2, verdict);
    }
    if (name == "stability") {
      merge(o_s_in, cfg, "input", input_desc);
      merge(o_s_cp, cfg, "cp", cp);
      merge(o_s_pts, cfg, "points", points);
      if (input_desc.empty()) throw UsageError("stability: missing --input");
      const bool cp_given = o_s_cp->count() > 0 || (!cfg.is_null() && cfg.contains("cp"));
      return run_stability(common, input_desc, cp, cp_given, points);
    }
    if (name == "weak-demo") {
      merge(o_w_a, cfg, "a", a_list);
      merge(o_w_pts, cfg, "points", points);
      if (a_list.empty()) a_list = "0.4,0.2,0.1,0.05,0.025";
      return run_weak_demo(common, a_list, points);
    }
    throw UsageError("unknown command");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
