#include "kcover/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "kcover/errors.hpp"

namespace kcover {

namespace {

using Clock = std::chrono::steady_clock;

std::string fixed6(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return buf.data();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T to_number(std::string_view text, std::string_view what, std::size_t line = 0) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(std::string(what) + ": cannot parse '" + std::string(text) + "'", line);
  }
  return value;
}

std::vector<std::string> csv_header(std::uint32_t k) {
  std::vector<std::string> h = {"seed",           "n",
                                "m",              "k",
                                "solver",         "balancing_index",
                                "fairness_index", "total_coverage",
                                "active_sensors", "sensor_usage_percent"};
  for (std::uint32_t level = 0; level < k; ++level) h.push_back("cov_" + std::to_string(level));
  h.push_back("cov_ge_" + std::to_string(k));
  h.push_back("wall_time_ms");
  h.push_back("optimal");
  return h;
}

std::vector<std::string> row_fields(const ResultRow& r) {
  std::vector<std::string> f = {std::to_string(r.seed),
                                std::to_string(r.n),
                                std::to_string(r.m),
                                std::to_string(r.k),
                                std::string(to_string(r.solver)),
                                fixed6(r.balancing_index),
                                fixed6(r.fairness_index),
                                std::to_string(r.total_coverage),
                                std::to_string(r.active_sensors),
                                fixed6(r.sensor_usage_percent)};
  for (const auto c : r.histogram) f.push_back(std::to_string(c));
  f.push_back(fixed6(r.wall_time_ms));
  f.push_back(r.optimal ? "1" : "0");
  return f;
}

void require_uniform_k(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw InvalidArgument("no result rows to emit");
  for (const auto& r : rows) {
    if (r.k != rows.front().k) throw InvalidArgument("rows with different k cannot share a table");
    if (r.histogram.size() != r.k + 1u) throw InvalidArgument("row histogram does not match k");
  }
}

}  // namespace

std::string_view to_string(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::IlpExact: return "ILP-exact";
    case SolverKind::IqpExact: return "IQP-exact";
    case SolverKind::InlpExact: return "INLP-exact";
    case SolverKind::GreedyLinear: return "GreedyLinear";
    case SolverKind::GreedyQuadratic: return "GreedyQuadratic";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view text) {
  for (const auto kind : {SolverKind::IlpExact, SolverKind::IqpExact, SolverKind::InlpExact,
                          SolverKind::GreedyLinear, SolverKind::GreedyQuadratic}) {
    if (text == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown solver '" + std::string(text) +
                        "' (expected ILP-exact, IQP-exact, INLP-exact, GreedyLinear or "
                        "GreedyQuadratic)");
}

bool is_exact(SolverKind kind) noexcept {
  return kind == SolverKind::IlpExact || kind == SolverKind::IqpExact ||
         kind == SolverKind::InlpExact;
}

ObjectiveKind objective_of(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::IlpExact: return ObjectiveKind::CoverageMax;
    case SolverKind::IqpExact: return ObjectiveKind::VectorDistance;
    default: return ObjectiveKind::BalancingIndex;
  }
}

SolveOutcome run_solver(SolverKind kind, const CoverageMatrix& matrix, std::uint32_t k, double rho,
                        const SearchBudget& budget) {
  const ObjectiveSpec spec{objective_of(kind), k, rho};
  const auto start = Clock::now();
  SolveOutcome outcome;
  if (is_exact(kind)) {
    ExactOptions options;
    options.budget = budget;
    auto result = solve_exact(matrix, spec, options);
    outcome.assignment = std::move(result.assignment);
    outcome.report = std::move(result.report);
    outcome.optimal = result.stats.proven_optimal;
    outcome.stats = result.stats;
  } else {
    GreedyOptions options;
    options.report_spec = spec;
    const auto mode =
        kind == SolverKind::GreedyLinear ? BenefitMode::Linear : BenefitMode::Quadratic;
    auto result = solve_greedy(matrix, k, mode, options);
    outcome.assignment = std::move(result.assignment);
    outcome.report = std::move(result.report);
  }
  outcome.wall_time = Clock::now() - start;
  return outcome;
}

std::string_view to_string(SweepAxis axis) noexcept {
  return axis == SweepAxis::VaryTargets ? "targets" : "sensors";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "targets" || text == "vary_targets") return SweepAxis::VaryTargets;
  if (text == "sensors" || text == "vary_sensors") return SweepAxis::VarySensors;
  throw InvalidArgument("unknown sweep axis '" + std::string(text) +
                        "' (expected targets or sensors)");
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw InvalidArgument("experiment needs at least one seed");
  if (solvers.empty()) throw InvalidArgument("experiment needs at least one solver");
  if (sweep.empty()) throw InvalidArgument("experiment needs at least one sweep value");
  if (fixed_count == 0) throw InvalidArgument("fixed sensor/target count must be positive");
  if (k == 0) throw InvalidArgument("coverage requirement k must be at least 1");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i] == 0) throw InvalidArgument("sweep values must be positive");
    if (i > 0 && sweep[i] <= sweep[i - 1]) {
      throw InvalidArgument("sweep values must be strictly increasing");
    }
  }
  if (rho && (!(*rho > 0.0) || *rho > 1.0)) throw InvalidArgument("rho must lie in (0, 1]");
  if (!(grid.width > 0.0) || !(grid.height > 0.0)) {
    throw InvalidArgument("grid dimensions must be positive");
  }
}

ExperimentConfig desk_scale_defaults() {
  ExperimentConfig c;
  c.axis = SweepAxis::VaryTargets;
  c.fixed_count = 8;
  c.sweep = {4, 8, 16, 24, 32};
  c.k = 2;
  for (std::uint64_t s = 1; s <= 30; ++s) c.seeds.push_back(s);
  c.solvers = {SolverKind::IlpExact, SolverKind::IqpExact, SolverKind::InlpExact,
               SolverKind::GreedyLinear, SolverKind::GreedyQuadratic};
  c.camera = CameraModel(25.0, 8);
  c.grid = {50.0, 50.0};
  return c;
}

ResultRow make_row(std::uint64_t seed, std::size_t n, std::uint32_t k, SolverKind solver,
                   const SolveOutcome& outcome, bool record_timing) {
  const auto& rep = outcome.report;
  ResultRow row;
  row.seed = seed;
  row.n = n;
  row.m = rep.coverage.target_count();
  row.k = k;
  row.solver = solver;
  row.balancing_index = rep.balancing_index;
  row.fairness_index = rep.fairness_index;
  row.total_coverage = rep.total_coverage();
  row.active_sensors = rep.active_sensor_count;
  row.sensor_usage_percent =
      n == 0 ? 0.0 : 100.0 * static_cast<double>(rep.active_sensor_count) / static_cast<double>(n);
  row.histogram = rep.histogram;
  row.wall_time_ms =
      record_timing ? std::chrono::duration<double, std::milli>(outcome.wall_time).count() : 0.0;
  row.optimal = outcome.optimal;
  return row;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const bool vary_targets = config.axis == SweepAxis::VaryTargets;
  const std::size_t n_max = vary_targets ? config.fixed_count : config.sweep.back();
  const std::size_t m_max = vary_targets ? config.sweep.back() : config.fixed_count;

  std::vector<ResultRow> rows;
  rows.reserve(config.seeds.size() * config.sweep.size() * config.solvers.size());
  for (const std::uint64_t seed : config.seeds) {
    const ScenarioFamily family = generate(seed, n_max, m_max, config.camera, config.grid);
    for (const std::size_t value : config.sweep) {
      const std::size_t n = vary_targets ? config.fixed_count : value;
      const std::size_t m = vary_targets ? value : config.fixed_count;
      const CoverageMatrix matrix = build_coverage_matrix(family.prefix(n, m));
      const double rho = config.rho.value_or(default_rho(n, config.camera.pan_count()));
      for (const SolverKind solver : config.solvers) {
        const SolveOutcome outcome = run_solver(solver, matrix, config.k, rho, config.budget);
        rows.push_back(make_row(seed, n, config.k, solver, outcome, config.record_timing));
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  require_uniform_k(rows);
  auto write_line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  write_line(csv_header(rows.front().k));
  for (const auto& r : rows) write_line(row_fields(r));
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV input", 1);
  const auto header = split(trim(line), ',');
  if (header.size() < 13 || header[3] != "k") throw ParseError("unrecognized CSV header", 1);
  const std::size_t histogram_columns = header.size() - 12;
  const auto k = static_cast<std::uint32_t>(histogram_columns - 1);
  const auto expected = csv_header(k);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (header[i] != expected[i]) {
      throw ParseError("unexpected column '" + std::string(header[i]) + "', expected '" +
                           expected[i] + "'",
                       1);
    }
  }

  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != expected.size()) {
      throw ParseError("expected " + std::to_string(expected.size()) + " fields, got " +
                           std::to_string(f.size()),
                       line_no);
    }
    ResultRow r;
    r.seed = to_number<std::uint64_t>(f[0], "seed", line_no);
    r.n = to_number<std::size_t>(f[1], "n", line_no);
    r.m = to_number<std::size_t>(f[2], "m", line_no);
    r.k = to_number<std::uint32_t>(f[3], "k", line_no);
    if (r.k != k) throw ParseError("row k disagrees with header", line_no);
    try {
      r.solver = parse_solver_kind(f[4]);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
    r.balancing_index = to_number<double>(f[5], "balancing_index", line_no);
    r.fairness_index = to_number<double>(f[6], "fairness_index", line_no);
    r.total_coverage = to_number<std::uint64_t>(f[7], "total_coverage", line_no);
    r.active_sensors = to_number<std::size_t>(f[8], "active_sensors", line_no);
    r.sensor_usage_percent = to_number<double>(f[9], "sensor_usage_percent", line_no);
    for (std::size_t c = 0; c < histogram_columns; ++c) {
      r.histogram.push_back(to_number<std::uint32_t>(f[10 + c], header[10 + c], line_no));
    }
    r.wall_time_ms = to_number<double>(f[10 + histogram_columns], "wall_time_ms", line_no);
    r.optimal = to_number<int>(f[11 + histogram_columns], "optimal", line_no) != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_records(std::ostream& out, const std::vector<ResultRow>& rows) {
  require_uniform_k(rows);
  const auto header = csv_header(rows.front().k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out << '\n';
    const auto fields = row_fields(rows[i]);
    for (std::size_t c = 0; c < header.size(); ++c) out << header[c] << '=' << fields[c] << '\n';
  }
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::filesystem::path& path) {
  require_uniform_k(rows);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  if (format == OutputFormat::Csv) {
    write_csv(out, rows);
  } else {
    write_records(out, rows);
  }
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::size_t, std::size_t, SolverKind>;
  std::vector<Key> order;
  std::map<Key, SummaryRow> acc;
  for (const auto& r : rows) {
    const Key key{r.n, r.m, r.solver};
    auto [it, inserted] = acc.try_emplace(key);
    SummaryRow& s = it->second;
    if (inserted) {
      order.push_back(key);
      s.n = r.n;
      s.m = r.m;
      s.solver = r.solver;
      s.all_optimal = true;
    }
    ++s.seeds;
    s.mean_balancing_index += r.balancing_index;
    s.mean_fairness_index += r.fairness_index;
    s.mean_total_coverage += static_cast<double>(r.total_coverage);
    s.mean_active_sensors += static_cast<double>(r.active_sensors);
    s.mean_sensor_usage_percent += r.sensor_usage_percent;
    if (r.m > 0 && !r.histogram.empty()) {
      s.mean_uncovered_fraction += static_cast<double>(r.histogram[0]) / static_cast<double>(r.m);
    }
    s.all_optimal = s.all_optimal && r.optimal;
  }
  std::vector<SummaryRow> out;
  out.reserve(order.size());
  for (const auto& key : order) {
    SummaryRow s = acc.at(key);
    const auto count = static_cast<double>(s.seeds);
    s.mean_balancing_index /= count;
    s.mean_fairness_index /= count;
    s.mean_total_coverage /= count;
    s.mean_active_sensors /= count;
    s.mean_sensor_usage_percent /= count;
    s.mean_uncovered_fraction /= count;
    out.push_back(s);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "n,m,solver,seeds,mean_balancing_index,mean_fairness_index,mean_total_coverage,"
         "mean_active_sensors,mean_sensor_usage_percent,mean_uncovered_fraction,all_optimal\n";
  for (const auto& s : summary) {
    out << s.n << ',' << s.m << ',' << to_string(s.solver) << ',' << s.seeds << ','
        << fixed6(s.mean_balancing_index) << ',' << fixed6(s.mean_fairness_index) << ','
        << fixed6(s.mean_total_coverage) << ',' << fixed6(s.mean_active_sensors) << ','
        << fixed6(s.mean_sensor_usage_percent) << ',' << fixed6(s.mean_uncovered_fraction) << ','
        << (s.all_optimal ? 1 : 0) << '\n';
  }
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> values;
  for (const auto part : split(text, ',')) values.push_back(to_number<std::size_t>(part, "list"));
  return values;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const auto part : split(text, ',')) {
    if (const auto dash = part.find('-'); dash != std::string_view::npos && dash > 0) {
      const auto lo = to_number<std::uint64_t>(trim(part.substr(0, dash)), "seed range");
      const auto hi = to_number<std::uint64_t>(trim(part.substr(dash + 1)), "seed range");
      if (hi < lo) throw ParseError("seed range '" + std::string(part) + "' is reversed", 0);
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(to_number<std::uint64_t>(part, "seed"));
    }
  }
  return seeds;
}

ExperimentConfig read_config(std::istream& in) {
  static constexpr std::array<std::string_view, 16> kKeys = {
      "axis",          "n",         "m",   "n_list",     "m_list",        "k",
      "seeds",         "solvers",   "grid_width",        "grid_height",   "sensing_range",
      "pan_count",     "rho",       "node_limit",        "time_limit_ms", "timing"};
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> kv;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    const std::string key(trim(line.substr(0, eq)));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ParseError("unknown config key '" + key + "'", line_no);
    }
    if (!kv.emplace(key, std::make_pair(std::string(trim(line.substr(eq + 1))), line_no)).second) {
      throw ParseError("duplicate config key '" + key + "'", line_no);
    }
  }

  ExperimentConfig c = desk_scale_defaults();
  auto get = [&](std::string_view key) -> const std::pair<std::string, std::size_t>* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto wrap = [](std::size_t line, auto&& fn) {
    try {
      fn();
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line);
    }
  };

  if (auto v = get("axis")) wrap(v->second, [&] { c.axis = parse_sweep_axis(v->first); });
  const bool vary_targets = c.axis == SweepAxis::VaryTargets;
  if (vary_targets) {
    if (auto v = get("n")) c.fixed_count = to_number<std::size_t>(v->first, "n", v->second);
    if (auto v = get("m_list")) wrap(v->second, [&] { c.sweep = parse_count_list(v->first); });
    if (get("m") || get("n_list")) {
      throw ParseError("'m' and 'n_list' apply only to axis=sensors", 0);
    }
  } else {
    if (auto v = get("m")) c.fixed_count = to_number<std::size_t>(v->first, "m", v->second);
    if (auto v = get("n_list")) wrap(v->second, [&] { c.sweep = parse_count_list(v->first); });
    if (get("n") || get("m_list")) {
      throw ParseError("'n' and 'm_list' apply only to axis=targets", 0);
    }
  }
  if (auto v = get("k")) c.k = to_number<std::uint32_t>(v->first, "k", v->second);
  if (auto v = get("seeds")) wrap(v->second, [&] { c.seeds = parse_seed_list(v->first); });
  if (auto v = get("solvers")) {
    wrap(v->second, [&] {
      c.solvers.clear();
      for (const auto name : split(v->first, ',')) c.solvers.push_back(parse_solver_kind(name));
    });
  }
  if (auto v = get("grid_width")) c.grid.width = to_number<double>(v->first, "grid_width", v->second);
  if (auto v = get("grid_height")) {
    c.grid.height = to_number<double>(v->first, "grid_height", v->second);
  }
  {
    double range = c.camera.sensing_range();
    std::uint32_t pans = c.camera.pan_count();
    if (auto v = get("sensing_range")) range = to_number<double>(v->first, "sensing_range", v->second);
    if (auto v = get("pan_count")) pans = to_number<std::uint32_t>(v->first, "pan_count", v->second);
    wrap(0, [&] { c.camera = CameraModel(range, pans); });
  }
  if (auto v = get("rho"); v && v->first != "default") {
    c.rho = to_number<double>(v->first, "rho", v->second);
  }
  if (auto v = get("node_limit")) {
    c.budget.max_nodes = to_number<std::uint64_t>(v->first, "node_limit", v->second);
  }
  if (auto v = get("time_limit_ms")) {
    c.budget.max_time =
        std::chrono::milliseconds(to_number<std::int64_t>(v->first, "time_limit_ms", v->second));
  }
  if (auto v = get("timing")) c.record_timing = to_number<int>(v->first, "timing", v->second) != 0;
  wrap(0, [&] { c.validate(); });
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_config(in);
}

}  // namespace kcover
