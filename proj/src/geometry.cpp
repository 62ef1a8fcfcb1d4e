#include "kcover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kcover/errors.hpp"

namespace kcover {

namespace {

constexpr double kRangeTolerance = 1e-9;

bool in_range(Point2D sensor, Point2D target, double range) {
  return std::hypot(target.x - sensor.x, target.y - sensor.y) <= range + kRangeTolerance;
}

void validate_range(double sensing_range) {
  if (!(sensing_range > 0.0) || !std::isfinite(sensing_range)) {
    throw InvalidArgument("sensing range must be positive and finite, got " +
                          std::to_string(sensing_range));
  }
}

}  // namespace

CameraModel::CameraModel(double sensing_range, std::uint32_t pan_count)
    : sensing_range_(sensing_range),
      aov_(pan_count == 0 ? 0.0 : kTwoPi / pan_count),
      pan_count_(pan_count) {
  validate_range(sensing_range);
  if (pan_count == 0) throw InvalidArgument("pan count must be positive");
}

CameraModel::CameraModel(double sensing_range, double aov, std::uint32_t pan_count)
    : sensing_range_(sensing_range), aov_(aov), pan_count_(pan_count) {
  validate_range(sensing_range);
  if (pan_count == 0) throw InvalidArgument("pan count must be positive");
  if (!(aov > 0.0) || std::abs(pan_count * aov - kTwoPi) > kTilingTolerance) {
    throw InvalidArgument("angle of view " + std::to_string(aov) + " does not tile the circle in " +
                          std::to_string(pan_count) + " pans");
  }
}

double polar_angle(double dx, double dy) noexcept {
  double angle = std::atan2(dy, dx);
  if (angle < 0.0) angle += CameraModel::kTwoPi;
  // -tiny + 2*pi can round up to exactly 2*pi.
  if (angle >= CameraModel::kTwoPi) angle = 0.0;
  return angle;
}

PanIndex pan_containing(double angle, const CameraModel& camera) noexcept {
  const double aov = camera.aov();
  const auto last = static_cast<std::int64_t>(camera.pan_count()) - 1;
  auto j = static_cast<std::int64_t>(std::floor(angle / aov));
  // The division can land one ulp on the wrong side of a boundary; settle
  // against the boundaries j*aov themselves.
  if (j < last && angle >= static_cast<double>(j + 1) * aov) ++j;
  if (j > 0 && angle < static_cast<double>(j) * aov) --j;
  return PanIndex{static_cast<std::uint32_t>(std::clamp<std::int64_t>(j, 0, last))};
}

bool target_in_sector(Point2D sensor, PanIndex pan, const CameraModel& camera, Point2D target) {
  if (!in_range(sensor, target, camera.sensing_range())) return false;
  const double dx = target.x - sensor.x;
  const double dy = target.y - sensor.y;
  if (dx == 0.0 && dy == 0.0) return true;
  return pan_containing(polar_angle(dx, dy), camera) == pan;
}

CoverageMatrix::CoverageMatrix(std::size_t sensors, std::uint32_t pans, std::size_t targets)
    : sensor_count_(sensors),
      pan_count_(pans),
      target_count_(targets),
      bits_(sensors * pans * targets, 0),
      target_sets_(sensors * pans) {}

std::size_t CoverageMatrix::slot(std::size_t sensor, PanIndex pan) const {
  if (sensor >= sensor_count_ || pan.value >= pan_count_) {
    throw InvalidArgument("coverage matrix index out of range: sensor " + std::to_string(sensor) +
                          ", pan " + std::to_string(pan.value));
  }
  return sensor * pan_count_ + pan.value;
}

void CoverageMatrix::mark(std::size_t sensor, PanIndex pan, std::uint32_t target) {
  const std::size_t s = slot(sensor, pan);
  auto& bit = bits_[s * target_count_ + target];
  if (bit == 0) {
    bit = 1;
    target_sets_[s].push_back(target);
  }
}

bool CoverageMatrix::covers(std::size_t sensor, PanIndex pan, std::size_t target) const {
  if (target >= target_count_) {
    throw InvalidArgument("target index " + std::to_string(target) + " out of range");
  }
  return bits_[slot(sensor, pan) * target_count_ + target] != 0;
}

std::span<const std::uint32_t> CoverageMatrix::targets_of(std::size_t sensor, PanIndex pan) const {
  return target_sets_[slot(sensor, pan)];
}

CoverageMatrix CoverageMatrix::from_target_sets(
    std::size_t target_count, std::uint32_t pan_count,
    const std::vector<std::vector<std::vector<std::uint32_t>>>& sets) {
  if (pan_count == 0) throw InvalidArgument("pan count must be positive");
  CoverageMatrix matrix(sets.size(), pan_count, target_count);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() != pan_count) {
      throw InvalidArgument("sensor " + std::to_string(i) + " lists " +
                            std::to_string(sets[i].size()) + " pans, expected " +
                            std::to_string(pan_count));
    }
    for (std::uint32_t j = 0; j < pan_count; ++j) {
      for (const std::uint32_t t : sets[i][j]) {
        if (t >= target_count) {
          throw InvalidArgument("target index " + std::to_string(t) + " out of range");
        }
        matrix.mark(i, PanIndex{j}, t);
      }
      auto& list = matrix.target_sets_[matrix.slot(i, PanIndex{j})];
      std::sort(list.begin(), list.end());
    }
  }
  return matrix;
}

CoverageMatrix build_coverage_matrix(std::span<const Point2D> sensors,
                                     std::span<const Point2D> targets,
                                     const CameraModel& camera) {
  CoverageMatrix matrix(sensors.size(), camera.pan_count(), targets.size());
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const Point2D s = sensors[i];
      const Point2D g = targets[t];
      if (!in_range(s, g, camera.sensing_range())) continue;
      const auto target = static_cast<std::uint32_t>(t);
      if (g.x == s.x && g.y == s.y) {
        for (std::uint32_t j = 0; j < camera.pan_count(); ++j) matrix.mark(i, PanIndex{j}, target);
      } else {
        matrix.mark(i, pan_containing(polar_angle(g.x - s.x, g.y - s.y), camera), target);
      }
    }
  }
  return matrix;
}

}  // namespace kcover
