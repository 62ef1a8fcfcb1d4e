#pragma once

// Centralized greedy k-coverage: repeatedly activate the inactive
// (sensor, pan) pair with the largest incentive until no pair helps.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcover/report.hpp"

namespace kcover {

enum class BenefitMode {
  Linear,     // every under-covered target is worth 1
  Quadratic,  // a target at count c < k is worth (k-c)^2 - (k-c-1)^2
};

/// Incentive of covering the targets in `phi` given current raw counts.
/// Targets already covered k or more times contribute nothing.
std::uint64_t benefit(std::span<const std::uint32_t> phi, std::span<const std::uint32_t> counts,
                      std::uint32_t k, BenefitMode mode);

struct SensorPan {
  std::size_t sensor = 0;
  PanIndex pan;

  friend auto operator<=>(const SensorPan&, const SensorPan&) = default;
};

/// Lowest sensor index, then lowest pan. Throws InvalidArgument when empty.
SensorPan tie_break(std::span<const SensorPan> candidates);

struct GreedyStep {
  SensorPan chosen;
  std::uint64_t incentive = 0;
  /// Raw coverage histogram after this activation (levels 0..k-1, then >= k).
  std::vector<std::uint32_t> histogram;
};

struct GreedyOptions {
  bool record_trace = false;
  /// Recount coverage from scratch after every activation and throw
  /// std::logic_error if it disagrees with the incremental counts.
  bool verify_counts = false;
  /// Objective used to fill the report; INLP with rho = 1/(2n) when unset.
  std::optional<ObjectiveSpec> report_spec;
};

struct GreedyResult {
  Assignment assignment;
  SolutionReport report;
  std::size_t iterations = 0;
  std::vector<GreedyStep> trace;
};

GreedyResult solve_greedy(const CoverageMatrix& matrix, std::uint32_t k, BenefitMode mode,
                          const GreedyOptions& options = {});

}  // namespace kcover
