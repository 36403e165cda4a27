#include "lciso/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

#include "CLI11.hpp"
#include "lciso/deficit.hpp"
#include "lciso/errors.hpp"
#include "lciso/format.hpp"
#include "lciso/interval_set.hpp"
#include "lciso/measure_config.hpp"
#include "lciso/reducer.hpp"
#include "lciso/verifier.hpp"

namespace lciso {

namespace {

struct Options {
  std::string measure = "gaussian";
  std::string out_path;
  std::uint64_t seed = 42;
  std::optional<std::size_t> trials;
  std::optional<int> grid;
  bool quantile_coords = false;

  std::string quantity;
  double at = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  std::string set;
  std::string suite;
  int k_max = 2;
  double x = 0.25;
  int depth = 30;
  std::vector<double> mu_values;
  std::vector<double> lambda_values;
};

MeasureModel resolve_measure(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return load_measure_config(name_or_path);
  if (name_or_path == "gaussian") return MeasureModel::gaussian();
  if (name_or_path == "logistic") return MeasureModel::logistic(1.0);
  if (name_or_path == "laplace") return MeasureModel::laplace(1.0);
  throw InvalidMeasure("--measure: no such file and not a built-in name: " + name_or_path);
}

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

IntervalSet parse_set(const Options& o, const MeasureModel& m) {
  std::vector<Interval> raw = parse_set_literal(o.set);
  if (o.quantile_coords) {
    const auto to_real = [&](double t) {
      if (!(t >= 0.0 && t <= 1.0)) throw InvalidInterval("quantile endpoint outside [0, 1]");
      if (t == 0.0) return -std::numeric_limits<double>::infinity();
      if (t == 1.0) return std::numeric_limits<double>::infinity();
      return m.quantile(t);
    };
    for (Interval& iv : raw) iv = {to_real(iv.lo), to_real(iv.hi)};
  }
  return normalize(std::move(raw));
}

int cmd_eval(const Options& o, const MeasureModel& m, std::ostream& out) {
  double v = 0.0;
  if (o.quantity == "density") {
    v = m.density(o.at);
  } else if (o.quantity == "cdf") {
    v = m.cdf(o.at);
  } else if (o.quantity == "quantile") {
    if (!(o.at >= 0.0 && o.at <= 1.0)) throw OutOfDomain("quantile needs 0 <= p <= 1");
    v = m.quantile(o.at);
  } else {
    if (!(o.at >= 0.0 && o.at <= 1.0)) throw OutOfDomain("profile needs 0 <= r <= 1");
    v = m.profile(o.at);
  }
  out << fmt15(v) << "\n";
  return kExitOk;
}

std::string row_csv(const ScanRow& r) {
  return fmt15(r.mu) + "," + fmt15(r.lambda) + "," + to_string(r.domain) + "," + fmt15(r.j_m) +
         "," + fmt15(r.k) + "," + fmt15(r.l) + "," + fmt15(r.bound) + "," +
         fmt15(r.optimal_perimeter);
}

int cmd_bounds(const Options& o, const MeasureModel& m, std::ostream& out) {
  out << "mu,lambda,domain,J_m,K,L,bound,optimal_perimeter\n" << row_csv(bound_row(m, o.mu, o.lambda)) << "\n";
  return kExitOk;
}

int cmd_optimal(const Options& o, const MeasureModel& m, std::ostream& out) {
  const IntervalSet s = optimal_set(m, o.mu, o.lambda);
  out << to_literal(s) << "\n";
  out << "domain=" << to_string(classify_domain(o.mu, o.lambda).id) << "\n";
  out << "perimeter=" << fmt15(perimeter(s, m)) << "\n";
  return kExitOk;
}

int cmd_reduce(const Options& o, const MeasureModel& m, std::ostream& out, std::ostream& err) {
  const IntervalSet s = parse_set(o, m);
  const ReductionResult r = reduce(s, m);
  out << trace_to_jsonl(r.trace);
  err << "case=" << to_string(r.kase) << " final=" << to_literal(r.set)
      << " perimeter=" << fmt15(r.trace.steps.back().perimeter_after) << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, const MeasureModel& m, std::ostream& out) {
  VerificationReport r;
  if (o.suite == "shifting") {
    r = check_shifting_property(m, o.trials.value_or(10000), o.seed);
  } else if (o.suite == "theorem-main") {
    r = verify_theorem_main(m, o.grid.value_or(40), o.k_max);
  } else if (o.suite == "reducer") {
    r = verify_reducer(m, o.trials.value_or(1000), o.seed);
  } else if (o.suite == "continuity") {
    r = verify_continuity(m, o.x, o.depth);
  } else {
    r = verify_exp_equivalence(m);
  }
  out << to_json(r) << "\n";
  return r.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_scan(const Options& o, const MeasureModel& m, std::ostream& out, std::ostream& err) {
  ScanTable table;
  if (!o.mu_values.empty() || !o.lambda_values.empty()) {
    if (o.mu_values.empty() || o.lambda_values.empty())
      throw OutOfDomain("scan needs both --mu-values and --lambda-values");
    table = scan_bounds(m, o.mu_values, o.lambda_values);
  } else {
    table = scan_bounds_relative(m, o.grid.value_or(50));
  }
  out << scan_to_csv(table);
  if (table.omitted > 0) err << "omitted " << table.omitted << " infeasible (mu, lambda) cells\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantitative isoperimetry for symmetric log-concave measures on the line", "lciso"};
  app.require_subcommand(1);
  // Global options may follow the subcommand.
  app.fallthrough();
  Options o;
  app.add_option("--measure", o.measure, "Measure config JSON path, or gaussian|logistic|laplace")
      ->capture_default_str();
  app.add_option("--out", o.out_path, "Write output to this file");
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--trials", o.trials, "Number of random trials");
  app.add_option("--grid", o.grid, "Grid size");
  app.add_flag("--quantile-coords", o.quantile_coords, "Set literals are given in quantiles");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate density, cdf, quantile or profile");
  eval->add_option("--quantity", o.quantity)
      ->required()
      ->check(CLI::IsMember({"density", "cdf", "quantile", "profile"}));
  eval->add_option("--at", o.at)->required();

  CLI::App* bounds = app.add_subcommand("bounds", "Deficit bounds at (mu, lambda)");
  CLI::App* optimal = app.add_subcommand("optimal", "Perimeter minimizer at (mu, lambda)");
  for (CLI::App* sub : {bounds, optimal}) {
    sub->add_option("--mu", o.mu)->required();
    sub->add_option("--lambda", o.lambda)->required();
  }

  CLI::App* red = app.add_subcommand("reduce", "Reduce a set, printing the JSON-lines trace");
  red->add_option("--set", o.set, "Set literal such as (-inf,-1)u(1,inf)")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"shifting", "theorem-main", "reducer", "continuity", "exp-equivalence"}));
  verify->add_option("--k-max", o.k_max, "Intervals per enumerated set")->capture_default_str();
  verify->add_option("--x", o.x, "Measure argument for the continuity suite")->capture_default_str();
  verify->add_option("--depth", o.depth, "Continuity depth")->capture_default_str();

  CLI::App* scan = app.add_subcommand("scan", "CSV table of bounds over a (mu, lambda) grid");
  scan->add_option("--mu-values", o.mu_values)->delimiter(',');
  scan->add_option("--lambda-values", o.lambda_values)->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const MeasureModel m = resolve_measure(o.measure);
    const ConcavityReport concavity = check_profile_concavity(m, 1001);
    if (!concavity.concave) {
      err << (verify->parsed() ? "warning" : "error") << ": profile of " << m.name()
          << " is not concave (midpoint violation " << fmt15(concavity.worst_violation) << " at "
          << fmt15(concavity.worst_u) << ", " << fmt15(concavity.worst_v) << ")\n";
      if (!verify->parsed()) return kExitUsage;
    }
    Sink sink(o.out_path, out);
    if (eval->parsed()) return cmd_eval(o, m, *sink);
    if (bounds->parsed()) return cmd_bounds(o, m, *sink);
    if (optimal->parsed()) return cmd_optimal(o, m, *sink);
    if (red->parsed()) return cmd_reduce(o, m, *sink, err);
    if (verify->parsed()) return cmd_verify(o, m, *sink);
    return cmd_scan(o, m, *sink, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lciso
