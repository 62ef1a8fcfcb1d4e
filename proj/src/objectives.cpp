#include "kcover/objectives.hpp"

#include <cmath>
#include <string>

#include "kcover/errors.hpp"

namespace kcover {

std::string_view to_string(ObjectiveKind kind) noexcept {
  switch (kind) {
    case ObjectiveKind::CoverageMax: return "ILP";
    case ObjectiveKind::VectorDistance: return "IQP";
    case ObjectiveKind::BalancingIndex: return "INLP";
  }
  return "?";
}

ObjectiveKind parse_objective_kind(std::string_view text) {
  if (text == "ILP" || text == "CoverageMax") return ObjectiveKind::CoverageMax;
  if (text == "IQP" || text == "VectorDistance") return ObjectiveKind::VectorDistance;
  if (text == "INLP" || text == "BalancingIndex") return ObjectiveKind::BalancingIndex;
  throw InvalidArgument("unknown objective '" + std::string(text) + "'");
}

void ObjectiveSpec::validate() const {
  if (k < 1) throw InvalidArgument("coverage requirement k must be at least 1");
  if (!(rho > 0.0) || rho > 1.0) {
    throw InvalidArgument("penalty rho must lie in (0, 1], got " + std::to_string(rho));
  }
}

Sense ObjectiveSpec::sense() const noexcept {
  return kind == ObjectiveKind::VectorDistance ? Sense::Minimize : Sense::Maximize;
}

CoverageSums sums_of(const CoverageVector& coverage) {
  CoverageSums s;
  for (const std::uint32_t psi : coverage.capped) {
    const std::uint64_t deficit = coverage.k - psi;
    s.total += psi;
    s.squares += static_cast<std::uint64_t>(psi) * psi;
    s.deficit_squares += deficit * deficit;
  }
  return s;
}

ObjectiveValue evaluate_sums(const ObjectiveSpec& spec, const CoverageSums& sums,
                             std::size_t target_count, std::size_t active_count) {
  const double penalty = spec.rho * static_cast<double>(active_count);
  switch (spec.kind) {
    case ObjectiveKind::CoverageMax:
      return {static_cast<double>(sums.total) - penalty, Sense::Maximize};
    case ObjectiveKind::VectorDistance:
      return {static_cast<double>(sums.deficit_squares) + penalty, Sense::Minimize};
    case ObjectiveKind::BalancingIndex: {
      if (target_count == 0) throw InvalidArgument("balancing objective needs at least one target");
      double balance = 0.0;
      if (sums.total > 0) {
        const auto total = static_cast<double>(sums.total);
        const auto m = static_cast<double>(target_count);
        balance = total * total * total / static_cast<double>(sums.squares) / (spec.k * m * m);
      }
      return {balance - penalty, Sense::Maximize};
    }
  }
  throw InvalidArgument("unknown objective kind");
}

ObjectiveValue evaluate(const ObjectiveSpec& spec, const CoverageVector& coverage,
                        std::size_t active_count) {
  if (coverage.k != spec.k) {
    throw InvalidArgument("coverage computed for k=" + std::to_string(coverage.k) +
                          " but objective uses k=" + std::to_string(spec.k));
  }
  return evaluate_sums(spec, sums_of(coverage), coverage.target_count(), active_count);
}

bool is_better(const ObjectiveSpec& spec, const ObjectiveValue& a, const ObjectiveValue& b) {
  if (a.sense != b.sense || a.sense != spec.sense()) {
    throw InvalidArgument("cannot compare objective values of different senses");
  }
  return a.sense == Sense::Maximize ? a.value > b.value + kTieTolerance
                                    : a.value < b.value - kTieTolerance;
}

double default_rho(std::size_t sensor_count, std::size_t /*pan_count*/) {
  if (sensor_count == 0) throw InvalidArgument("default rho needs at least one sensor");
  return 1.0 / (2.0 * static_cast<double>(sensor_count));
}

}  // namespace kcover
