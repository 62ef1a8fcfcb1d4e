#pragma once

// Pan-only camera model, the Target-in-Sector test and the binary coverage
// matrix built from it.

#include <cstddef>
#include <cstdint>
#include <compare>
#include <numbers>
#include <span>
#include <vector>

namespace kcover {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// One of the camera's disjoint orientations. Pan j spans the polar-angle
/// interval [j*aov, (j+1)*aov), measured counterclockwise from +x.
struct PanIndex {
  std::uint32_t value = 0;

  friend auto operator<=>(const PanIndex&, const PanIndex&) = default;
};

/// Homogeneous camera: sensing range plus an angle of view that tiles the
/// circle into `pan_count` non-overlapping pans.
class CameraModel {
 public:
  static constexpr double kTwoPi = 2.0 * std::numbers::pi;
  static constexpr double kTilingTolerance = 1e-9;

  /// Defaults to the 8-pan, range-25 camera used throughout the experiments.
  CameraModel() : CameraModel(25.0, 8) {}

  /// aov is derived as 2*pi / pan_count.
  CameraModel(double sensing_range, std::uint32_t pan_count);

  /// Throws InvalidArgument unless pan_count * aov == 2*pi within 1e-9.
  CameraModel(double sensing_range, double aov, std::uint32_t pan_count);

  double sensing_range() const noexcept { return sensing_range_; }
  double aov() const noexcept { return aov_; }
  std::uint32_t pan_count() const noexcept { return pan_count_; }

  friend bool operator==(const CameraModel&, const CameraModel&) = default;

 private:
  double sensing_range_;
  double aov_;
  std::uint32_t pan_count_;
};

/// Polar angle of (dx, dy) normalized to [0, 2*pi).
double polar_angle(double dx, double dy) noexcept;

/// The pan whose half-open interval contains `angle` (expected in [0, 2*pi)).
PanIndex pan_containing(double angle, const CameraModel& camera) noexcept;

/// TIS test. A target coinciding with the sensor is covered by every pan.
bool target_in_sector(Point2D sensor, PanIndex pan, const CameraModel& camera,
                      Point2D target);

/// Binary tensor a[i][j][t] over (sensor, pan, target), together with the
/// per-(sensor, pan) target lists.
class CoverageMatrix {
 public:
  CoverageMatrix() = default;

  /// Builds a matrix from explicit target sets: sets[i][j] lists the targets
  /// covered by sensor i at pan j. Every sensor must list exactly
  /// `pan_count` sets. Intended for hand-built instances.
  static CoverageMatrix from_target_sets(
      std::size_t target_count, std::uint32_t pan_count,
      const std::vector<std::vector<std::vector<std::uint32_t>>>& sets);

  std::size_t sensor_count() const noexcept { return sensor_count_; }
  std::uint32_t pan_count() const noexcept { return pan_count_; }
  std::size_t target_count() const noexcept { return target_count_; }

  bool covers(std::size_t sensor, PanIndex pan, std::size_t target) const;

  /// Sorted target indices covered by `sensor` at `pan`.
  std::span<const std::uint32_t> targets_of(std::size_t sensor, PanIndex pan) const;

  friend bool operator==(const CoverageMatrix&, const CoverageMatrix&) = default;

 private:
  friend CoverageMatrix build_coverage_matrix(std::span<const Point2D>,
                                              std::span<const Point2D>,
                                              const CameraModel&);

  CoverageMatrix(std::size_t sensors, std::uint32_t pans, std::size_t targets);
  std::size_t slot(std::size_t sensor, PanIndex pan) const;
  void mark(std::size_t sensor, PanIndex pan, std::uint32_t target);

  std::size_t sensor_count_ = 0;
  std::uint32_t pan_count_ = 0;
  std::size_t target_count_ = 0;
  std::vector<std::uint8_t> bits_;                  // (sensor, pan, target)
  std::vector<std::vector<std::uint32_t>> target_sets_;  // (sensor, pan)
};

/// O(n*m*q) construction; entry (i, j, t) equals
/// target_in_sector(sensors[i], j, camera, targets[t]).
CoverageMatrix build_coverage_matrix(std::span<const Point2D> sensors,
                                     std::span<const Point2D> targets,
                                     const CameraModel& camera);

}  // namespace kcover
