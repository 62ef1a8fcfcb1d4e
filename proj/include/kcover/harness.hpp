#pragma once

// Experiment driver: nested-scenario sweeps over targets or sensors, every
// requested solver on the identical coverage matrix, CSV/text emission.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcover/exact_solver.hpp"
#include "kcover/greedy_solver.hpp"
#include "kcover/scenario.hpp"

namespace kcover {

enum class SolverKind { IlpExact, IqpExact, InlpExact, GreedyLinear, GreedyQuadratic };

/// "ILP-exact", "IQP-exact", "INLP-exact", "GreedyLinear", "GreedyQuadratic".
std::string_view to_string(SolverKind kind) noexcept;
SolverKind parse_solver_kind(std::string_view text);
bool is_exact(SolverKind kind) noexcept;
/// The objective an exact solver optimizes. Greedy solvers are reported
/// under the balancing objective.
ObjectiveKind objective_of(SolverKind kind) noexcept;

struct SolveOutcome {
  Assignment assignment;
  SolutionReport report;
  bool optimal = false;  // proven optimal; always false for greedy solvers
  std::chrono::nanoseconds wall_time{0};
  std::optional<SearchStats> stats;
};

SolveOutcome run_solver(SolverKind kind, const CoverageMatrix& matrix, std::uint32_t k, double rho,
                        const SearchBudget& budget = {});

enum class SweepAxis {
  VaryTargets,  // n fixed, m swept
  VarySensors,  // m fixed, n swept
};

std::string_view to_string(SweepAxis axis) noexcept;
SweepAxis parse_sweep_axis(std::string_view text);

struct ExperimentConfig {
  SweepAxis axis = SweepAxis::VaryTargets;
  std::size_t fixed_count = 8;     // n when varying targets, m when varying sensors
  std::vector<std::size_t> sweep;  // strictly increasing m (or n) values
  std::uint32_t k = 2;
  std::vector<std::uint64_t> seeds;
  std::vector<SolverKind> solvers;
  CameraModel camera;
  GridSize grid;
  std::optional<double> rho;  // default_rho(n) at each sweep point when unset
  SearchBudget budget;        // exact solvers only
  bool record_timing = false;  // wall_time_ms is 0 otherwise, keeping output deterministic

  /// Throws InvalidArgument on empty seeds/solvers/sweep, a non-increasing
  /// sweep, zero sizes, or an out-of-range rho.
  void validate() const;
};

/// Desk-scale defaults: n = 8, m in {4, 8, 16, 24, 32}, k = 2, seeds 1..30,
/// all five solvers, 8-pan range-25 camera on a 50 x 50 grid.
ExperimentConfig desk_scale_defaults();

struct ResultRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t k = 1;
  SolverKind solver = SolverKind::GreedyLinear;
  double balancing_index = 0.0;
  double fairness_index = 0.0;
  std::uint64_t total_coverage = 0;
  std::size_t active_sensors = 0;
  double sensor_usage_percent = 0.0;
  std::vector<std::uint32_t> histogram;  // levels 0..k-1, then >= k
  double wall_time_ms = 0.0;
  bool optimal = false;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

ResultRow make_row(std::uint64_t seed, std::size_t n, std::uint32_t k, SolverKind solver,
                   const SolveOutcome& outcome, bool record_timing);

/// Rows ordered by seed, then sweep point, then solver, following the config.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

enum class OutputFormat { Csv, Text };

/// Throws InvalidArgument on an empty row list or rows with differing k.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);
/// Blank-line separated key=value records.
void write_records(std::ostream& out, const std::vector<ResultRow>& rows);
void emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::filesystem::path& path);

/// Per-(n, m, solver) means over seeds.
struct SummaryRow {
  std::size_t n = 0;
  std::size_t m = 0;
  SolverKind solver = SolverKind::GreedyLinear;
  std::size_t seeds = 0;
  double mean_balancing_index = 0.0;
  double mean_fairness_index = 0.0;
  double mean_total_coverage = 0.0;
  double mean_active_sensors = 0.0;
  double mean_sensor_usage_percent = 0.0;
  double mean_uncovered_fraction = 0.0;
  bool all_optimal = false;
};

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

/// "4,8,16" style lists.
std::vector<std::size_t> parse_count_list(std::string_view text);
/// Comma-separated seeds and inclusive ranges, e.g. "1-30" or "3,7,10-12".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// key=value file; keys: axis, n, m, n_list, m_list, k, seeds, solvers,
/// grid_width, grid_height, sensing_range, pan_count, rho, node_limit,
/// time_limit_ms, timing. Unset keys keep desk-scale defaults.
ExperimentConfig read_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace kcover
