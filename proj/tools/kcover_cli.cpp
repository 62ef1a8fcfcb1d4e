// kcover: scenario generation, single solves, sweeps and metric recomputation.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kcover/errors.hpp"
#include "kcover/exact_solver.hpp"
#include "kcover/greedy_solver.hpp"
#include "kcover/harness.hpp"
#include "kcover/report.hpp"
#include "kcover/scenario.hpp"

namespace {

using namespace kcover;

double resolve_rho(const std::string& text, std::size_t n, std::size_t q) {
  if (text.empty() || text == "default") return default_rho(n, q);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw InvalidArgument("--rho: expected a number or 'default', got '" + text + "'");
  return value;
}

void print_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [key, value] : pairs) std::cout << key << '=' << value << '\n';
}

void print_assignment(const Assignment& a) {
  std::cout << "assignment:\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::cout << "  sensor " << i << ": ";
    if (a[i])
      std::cout << "pan " << a[i]->value << '\n';
    else
      std::cout << "off\n";
  }
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct GenerateArgs {
  std::uint64_t seed = 1;
  std::size_t n = 8;
  std::size_t m = 16;
  double range = 25.0;
  std::uint32_t pans = 8;
  double width = 125.0;
  double height = 125.0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const auto family = generate(a.seed, a.n, a.m, CameraModel(a.range, a.pans), {a.width, a.height});
  save(family.master, a.out);
  std::cout << "wrote " << a.out << " (" << a.n << " sensors, " << a.m << " targets)\n";
  return 0;
}

struct SolveArgs {
  std::string scenario;
  std::string solver;
  std::uint32_t k = 2;
  std::string rho = "default";
  std::string objective;  // greedy report objective
  bool oracle = false;
  bool trace = false;
  std::string assignment_out;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::int64_t> time_limit_ms;
};

int run_solve(const SolveArgs& a) {
  const auto solver = parse_solver_kind(a.solver);
  const Scenario scenario = load(a.scenario);
  const auto matrix = build_coverage_matrix(scenario);
  const double rho = resolve_rho(a.rho, matrix.sensor_count(), matrix.pan_count());
  ObjectiveSpec spec{objective_of(solver), a.k, rho};
  if (!a.objective.empty()) {
    if (is_exact(solver)) throw InvalidArgument("--objective applies to greedy solvers only");
    spec.kind = parse_objective_kind(a.objective);
  }
  spec.validate();

  SearchBudget budget;
  budget.max_nodes = a.node_limit;
  if (a.time_limit_ms) budget.max_time = std::chrono::milliseconds(*a.time_limit_ms);

  Assignment assignment;
  SolutionReport rep;
  std::vector<std::pair<std::string, std::string>> header{{"solver", std::string(to_string(solver))},
                                                          {"sensors", std::to_string(matrix.sensor_count())},
                                                          {"pans", std::to_string(matrix.pan_count())},
                                                          {"objective", std::string(to_string(spec.kind))},
                                                          {"rho", fixed(rho, 9)}};
  if (is_exact(solver)) {
    ExactOptions opts;
    opts.budget = budget;
    const auto r = solve_exact(matrix, spec, opts);
    assignment = r.assignment;
    rep = r.report;
    header.emplace_back("optimal", r.stats.proven_optimal ? "true" : "false");
    if (a.trace) {
      header.emplace_back("nodes_explored", std::to_string(r.stats.nodes_explored));
      header.emplace_back("nodes_pruned", std::to_string(r.stats.nodes_pruned));
    }
  } else {
    GreedyOptions opts;
    opts.record_trace = a.trace;
    opts.report_spec = spec;
    const auto mode = solver == SolverKind::GreedyLinear ? BenefitMode::Linear : BenefitMode::Quadratic;
    const auto r = solve_greedy(matrix, a.k, mode, opts);
    assignment = r.assignment;
    rep = r.report;
    header.emplace_back("iterations", std::to_string(r.iterations));
    if (a.trace) {
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& step = r.trace[i];
        std::string hist;
        for (auto h : step.histogram) hist += (hist.empty() ? "" : ",") + std::to_string(h);
        std::cout << "step " << i + 1 << ": sensor " << step.chosen.sensor << " pan "
                  << step.chosen.pan.value << " incentive " << step.incentive << " histogram "
                  << hist << '\n';
      }
    }
  }
  print_pairs(header);
  print_pairs(to_key_values(rep));

  int status = 0;
  if (a.oracle) {
    const auto best = brute_force_optimum(matrix, spec);
    const bool match = std::abs(best.value.value - rep.objective.value) <= kTieTolerance;
    std::cout << "oracle_value=" << fixed(best.value.value, 9) << '\n'
              << "oracle_assignments_checked=" << best.assignments_checked << '\n'
              << "oracle_match=" << (match ? "true" : "false") << '\n';
    if (!match && is_exact(solver)) {
      std::cerr << "kcover: exact solver disagrees with enumeration\n";
      status = 3;
    }
  }
  print_assignment(assignment);
  if (!a.assignment_out.empty()) save_assignment(assignment, a.assignment_out);
  return status;
}

struct SweepArgs {
  std::string config;
  std::string axis;
  std::optional<std::size_t> n, m;
  std::string m_list, n_list;
  std::optional<std::uint32_t> k;
  std::string seeds, solvers;
  std::string out, summary;
  std::string format = "csv";
  std::optional<double> width, height, range;
  std::optional<std::uint32_t> pans;
  std::string rho;
  std::optional<std::uint64_t> node_limit;
  bool timing = false;
};

std::vector<SolverKind> parse_solvers(const std::string& text) {
  std::vector<SolverKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_solver_kind(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_sweep_cmd(const SweepArgs& a) {
  ExperimentConfig c = a.config.empty() ? desk_scale_defaults() : load_config(a.config);
  if (!a.axis.empty()) c.axis = parse_sweep_axis(a.axis);
  if (!a.m_list.empty() && !a.n_list.empty())
    throw InvalidArgument("give either --m-list or --n-list, not both");
  if (!a.m_list.empty()) {
    c.axis = SweepAxis::VaryTargets;
    c.sweep = parse_count_list(a.m_list);
  }
  if (!a.n_list.empty()) {
    c.axis = SweepAxis::VarySensors;
    c.sweep = parse_count_list(a.n_list);
  }
  if (c.axis == SweepAxis::VaryTargets && a.n) c.fixed_count = *a.n;
  if (c.axis == SweepAxis::VarySensors && a.m) c.fixed_count = *a.m;
  if (a.k) c.k = *a.k;
  if (!a.seeds.empty()) c.seeds = parse_seed_list(a.seeds);
  if (!a.solvers.empty()) c.solvers = parse_solvers(a.solvers);
  if (a.width) c.grid.width = *a.width;
  if (a.height) c.grid.height = *a.height;
  if (a.range || a.pans) c.camera = CameraModel(a.range.value_or(c.camera.sensing_range()), a.pans.value_or(c.camera.pan_count()));
  if (a.rho == "default")
    c.rho.reset();
  else if (!a.rho.empty())
    c.rho = resolve_rho(a.rho, 1, 1);
  if (a.node_limit) c.budget.max_nodes = *a.node_limit;
  if (a.timing) c.record_timing = true;
  c.validate();

  OutputFormat format;
  if (a.format == "csv")
    format = OutputFormat::Csv;
  else if (a.format == "text")
    format = OutputFormat::Text;
  else
    throw InvalidArgument("--format must be 'csv' or 'text'");

  const auto rows = run_sweep(c);
  if (a.out.empty()) {
    if (format == OutputFormat::Csv)
      write_csv(std::cout, rows);
    else
      write_records(std::cout, rows);
  } else {
    emit(rows, format, a.out);
    std::cerr << "wrote " << rows.size() << " rows to " << a.out << '\n';
  }
  if (!a.summary.empty()) {
    std::ofstream s(a.summary);
    if (!s) throw IoError("cannot open '" + a.summary + "' for writing");
    write_summary_csv(s, summarize(rows));
    if (!s.flush()) throw IoError("write to '" + a.summary + "' failed");
  }
  return 0;
}

struct MetricsArgs {
  std::string scenario, assignment;
  std::uint32_t k = 2;
  std::string rho = "default";
  std::string objective = "INLP";
};

int run_metrics(const MetricsArgs& a) {
  const Scenario scenario = load(a.scenario);
  const auto matrix = build_coverage_matrix(scenario);
  const auto assignment = load_assignment(a.assignment);
  const double rho = resolve_rho(a.rho, matrix.sensor_count(), matrix.pan_count());
  const ObjectiveSpec spec{parse_objective_kind(a.objective), a.k, rho};
  print_pairs({{"objective", std::string(to_string(spec.kind))}, {"rho", fixed(rho, 9)}});
  print_pairs(to_key_values(report(matrix, assignment, spec)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced k-coverage for pan-only directional sensor networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a random scenario file");
  g->add_option("--seed", gen.seed, "Scenario seed")->required();
  g->add_option("--n", gen.n, "Sensor count")->capture_default_str();
  g->add_option("--m", gen.m, "Target count")->capture_default_str();
  g->add_option("--range", gen.range, "Sensing range")->capture_default_str();
  g->add_option("--pans", gen.pans, "Pan count")->capture_default_str();
  g->add_option("--width", gen.width, "Grid width")->capture_default_str();
  g->add_option("--height", gen.height, "Grid height")->capture_default_str();
  g->add_option("--out", gen.out, "Output scenario file")->required();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve one scenario");
  s->add_option("--scenario", sol.scenario, "Scenario file")->required();
  s->add_option("--solver", sol.solver,
                "ILP-exact, IQP-exact, INLP-exact, GreedyLinear or GreedyQuadratic")
      ->required();
  s->add_option("--k", sol.k, "Coverage requirement")->capture_default_str();
  s->add_option("--rho", sol.rho, "Activation penalty, or 'default' for 1/(2n)")->capture_default_str();
  s->add_option("--objective", sol.objective, "Objective used to report greedy results (ILP, IQP, INLP)");
  s->add_flag("--oracle", sol.oracle, "Cross-check against exhaustive enumeration");
  s->add_flag("--trace", sol.trace, "Print greedy steps or search statistics");
  s->add_option("--assignment-out", sol.assignment_out, "Write the assignment to this file");
  s->add_option("--node-limit", sol.node_limit, "Exact search node budget");
  s->add_option("--time-limit-ms", sol.time_limit_ms, "Exact search time budget");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Run a nested-scenario sweep");
  w->add_option("--config", sw.config, "key=value config file; flags override it");
  w->add_option("--axis", sw.axis, "targets or sensors");
  w->add_option("--n", sw.n, "Sensor count when sweeping targets");
  w->add_option("--m", sw.m, "Target count when sweeping sensors");
  w->add_option("--m-list", sw.m_list, "Target counts, e.g. 4,8,16");
  w->add_option("--n-list", sw.n_list, "Sensor counts, e.g. 4,6,8");
  w->add_option("--k", sw.k, "Coverage requirement");
  w->add_option("--seeds", sw.seeds, "Seeds, e.g. 1-30 or 1,2,5");
  w->add_option("--solvers", sw.solvers, "Comma-separated solver names");
  w->add_option("--out", sw.out, "Output file (stdout when omitted)");
  w->add_option("--summary", sw.summary, "Per-point means CSV");
  w->add_option("--format", sw.format, "csv or text")->capture_default_str();
  w->add_option("--width", sw.width, "Grid width");
  w->add_option("--height", sw.height, "Grid height");
  w->add_option("--range", sw.range, "Sensing range");
  w->add_option("--pans", sw.pans, "Pan count");
  w->add_option("--rho", sw.rho, "Activation penalty, or 'default'");
  w->add_option("--node-limit", sw.node_limit, "Exact search node budget per solve");
  w->add_flag("--timing", sw.timing, "Record wall times (output is then not reproducible)");

  MetricsArgs met;
  auto* x = app.add_subcommand("metrics", "Recompute metrics for a scenario and assignment");
  x->add_option("--scenario", met.scenario, "Scenario file")->required();
  x->add_option("--assignment", met.assignment, "Assignment file")->required();
  x->add_option("--k", met.k, "Coverage requirement")->capture_default_str();
  x->add_option("--rho", met.rho, "Activation penalty, or 'default'")->capture_default_str();
  x->add_option("--objective", met.objective, "ILP, IQP or INLP")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*g) return run_generate(gen);
    if (*s) return run_solve(sol);
    if (*w) return run_sweep_cmd(sw);
    if (*x) return run_metrics(met);
  } catch (const std::exception& e) {
    std::cerr << "kcover: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
