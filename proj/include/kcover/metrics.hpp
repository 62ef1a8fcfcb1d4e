#pragma once

// Assignments, coverage accounting and the Fairness/Balancing indices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcover/geometry.hpp"

namespace kcover {

/// Per-sensor choice: Off (nullopt) or exactly one pan.
class Assignment {
 public:
  using Choice = std::optional<PanIndex>;

  Assignment() = default;
  /// All sensors Off.
  explicit Assignment(std::size_t sensor_count) : choices_(sensor_count) {}
  explicit Assignment(std::vector<Choice> choices) : choices_(std::move(choices)) {}

  std::size_t size() const noexcept { return choices_.size(); }
  const Choice& operator[](std::size_t sensor) const { return choices_.at(sensor); }
  void set(std::size_t sensor, Choice choice) { choices_.at(sensor) = choice; }
  std::span<const Choice> choices() const noexcept { return choices_; }

  std::size_t active_count() const noexcept;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Choice> choices_;
};

/// Raw per-target counts (xi) and their k-capped values (psi = min(xi, k)).
struct CoverageVector {
  std::vector<std::uint32_t> raw;
  std::vector<std::uint32_t> capped;
  std::uint32_t k = 1;

  std::size_t target_count() const noexcept { return raw.size(); }

  friend bool operator==(const CoverageVector&, const CoverageVector&) = default;
};

/// Builds a CoverageVector from raw counts, capping at k.
CoverageVector make_coverage(std::vector<std::uint32_t> raw, std::uint32_t k);

/// Throws InvalidArgument on a sensor-count mismatch, an out-of-range pan or k == 0.
CoverageVector coverage_of(const CoverageMatrix& matrix, const Assignment& assignment,
                           std::uint32_t k);

/// Jain's index over capped counts; 0 when every capped count is 0.
/// Throws InvalidArgument for an empty target set.
double fairness_index(const CoverageVector& coverage);

/// fairness_index * sum(psi) / (k*m).
double balancing_index(const CoverageVector& coverage);

}  // namespace kcover
