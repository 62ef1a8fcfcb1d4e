#pragma once

// Scenario representation, seeded nested generation, and the scenario text
// file format.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "kcover/geometry.hpp"

namespace kcover {

struct GridSize {
  double width = 125.0;
  double height = 125.0;

  friend bool operator==(const GridSize&, const GridSize&) = default;
};

struct Scenario {
  std::vector<Point2D> sensors;
  std::vector<Point2D> targets;
  CameraModel camera;
  GridSize grid;
  std::uint64_t seed = 0;  // provenance only; 0 for hand-written scenarios

  /// Throws InvalidArgument if the grid is not positive or any point lies
  /// outside [0, width] x [0, height].
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// A master scenario whose prefixes form nested smaller scenarios.
struct ScenarioFamily {
  Scenario master;
  std::uint64_t seed = 0;

  /// First n sensors and first m targets of the master.
  Scenario prefix(std::size_t n, std::size_t m) const;
};

/// Uniform placement over the grid. Sensors and targets come from two
/// independent mt19937_64 streams keyed by (seed, stream id), so sensor
/// positions do not depend on m_max and target positions do not depend on
/// n_max. Coordinates are (draw >> 11) * 2^-53 * extent, x before y.
ScenarioFamily generate(std::uint64_t seed, std::size_t n_max, std::size_t m_max,
                        const CameraModel& camera, GridSize grid);

Scenario prefix(const ScenarioFamily& family, std::size_t n, std::size_t m);

inline CoverageMatrix build_coverage_matrix(const Scenario& scenario) {
  return build_coverage_matrix(scenario.sensors, scenario.targets, scenario.camera);
}

inline constexpr int kScenarioSchemaVersion = 1;

void write_scenario(std::ostream& out, const Scenario& scenario);
Scenario read_scenario(std::istream& in);

void save(const Scenario& scenario, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

}  // namespace kcover
