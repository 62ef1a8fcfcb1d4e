#pragma once

// Exact optimization of an ObjectiveSpec over all (q+1)^n assignments by
// depth-first branch-and-bound.
//
// Sensors are decided in index order; for each sensor the pans are tried in
// index order and Off last. The incumbent is only replaced by a strictly
// better value (see is_better), so the result is the first optimum in that
// order whether or not pruning is enabled.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "kcover/report.hpp"

namespace kcover {

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_time;
};

struct ExactOptions {
  SearchBudget budget;
  bool pruning = true;
  /// Seed the pruning threshold with the best greedy value. Has no effect on
  /// which assignment is returned, only on how much of the tree is visited.
  bool warm_start = true;
};

struct SearchStats {
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  std::chrono::nanoseconds wall_time{0};
  ObjectiveValue optimal_value;
  /// False when the budget ran out; the assignment is then the best found.
  bool proven_optimal = false;
};

struct ExactResult {
  Assignment assignment;
  SolutionReport report;
  SearchStats stats;
};

/// Throws InvalidArgument for an empty sensor or target set.
ExactResult solve_exact(const CoverageMatrix& matrix, const ObjectiveSpec& spec,
                        const ExactOptions& options = {});

/// Optimistic bound on the objective over every completion of `decided`
/// (choices for sensors 0..decided.size()-1): an upper bound when the
/// objective is maximized, a lower bound when it is minimized. Equals the
/// exact objective value once every sensor is decided.
double completion_bound(std::span<const Assignment::Choice> decided, const CoverageMatrix& matrix,
                        const ObjectiveSpec& spec);

struct EnumerationResult {
  Assignment assignment;
  ObjectiveValue value;
  std::uint64_t assignments_checked = 0;
};

/// Plain enumeration of every assignment through coverage_of() and
/// evaluate(), in the same order as solve_exact. Throws InvalidArgument
/// beyond `max_assignments`.
EnumerationResult brute_force_optimum(const CoverageMatrix& matrix, const ObjectiveSpec& spec,
                                      std::uint64_t max_assignments = 100'000'000);

}  // namespace kcover
