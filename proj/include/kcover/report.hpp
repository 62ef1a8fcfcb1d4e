#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kcover/objectives.hpp"

namespace kcover {

struct SolutionReport {
  CoverageVector coverage;
  std::size_t active_sensor_count = 0;
  double fairness_index = 0.0;
  double balancing_index = 0.0;
  ObjectiveValue objective;
  /// histogram[l] counts targets with raw coverage exactly l for l < k;
  /// histogram[k] counts targets covered k or more times.
  std::vector<std::uint32_t> histogram;

  std::uint64_t total_coverage() const noexcept;
};

SolutionReport report(const CoverageMatrix& matrix, const Assignment& assignment,
                      const ObjectiveSpec& spec);

/// Flat key/value view, in a fixed key order.
std::vector<std::pair<std::string, std::string>> to_key_values(const SolutionReport& report);

/// Assignment files: "schema_version=1", "sensor_count=N", then one
/// "choice <sensor> <pan|off>" line per sensor; '#' starts a comment.
void write_assignment(std::ostream& out, const Assignment& assignment);
Assignment read_assignment(std::istream& in);
void save_assignment(const Assignment& assignment, const std::filesystem::path& path);
Assignment load_assignment(const std::filesystem::path& path);

}  // namespace kcover
