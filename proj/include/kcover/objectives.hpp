#pragma once

// The three objective functions (coverage maximization, squared vector
// distance, balancing index), each with a rho-weighted active-sensor penalty.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "kcover/metrics.hpp"

namespace kcover {

enum class ObjectiveKind {
  CoverageMax,     // ILP:  maximize sum(psi) - rho*a
  VectorDistance,  // IQP:  minimize sum((k - psi)^2) + rho*a
  BalancingIndex,  // INLP: maximize sum(psi)^3 / (k m^2 sum(psi^2)) - rho*a
};

enum class Sense { Maximize, Minimize };

std::string_view to_string(ObjectiveKind kind) noexcept;
/// Accepts ILP/IQP/INLP and the enumerator names, case-sensitive.
ObjectiveKind parse_objective_kind(std::string_view text);

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::BalancingIndex;
  std::uint32_t k = 1;
  double rho = 0.05;

  /// Throws InvalidArgument unless k >= 1 and 0 < rho <= 1.
  void validate() const;
  Sense sense() const noexcept;
};

struct ObjectiveValue {
  double value = 0.0;
  Sense sense = Sense::Maximize;
};

/// Integer aggregates of a capped coverage vector; every objective is a
/// function of these, the target count and the active-sensor count.
struct CoverageSums {
  std::uint64_t total = 0;            // sum psi
  std::uint64_t squares = 0;          // sum psi^2
  std::uint64_t deficit_squares = 0;  // sum (k - psi)^2
};

CoverageSums sums_of(const CoverageVector& coverage);

/// Throws InvalidArgument when coverage.k != spec.k.
ObjectiveValue evaluate(const ObjectiveSpec& spec, const CoverageVector& coverage,
                        std::size_t active_count);

/// Same arithmetic as evaluate(), from precomputed sums.
ObjectiveValue evaluate_sums(const ObjectiveSpec& spec, const CoverageSums& sums,
                             std::size_t target_count, std::size_t active_count);

inline constexpr double kTieTolerance = 1e-12;

/// True when `a` is strictly better than `b`; differences within 1e-12 tie.
/// Throws InvalidArgument on mixed senses.
bool is_better(const ObjectiveSpec& spec, const ObjectiveValue& a, const ObjectiveValue& b);

/// 1/(2n): the total penalty n*rho = 1/2 stays below one unit of coverage.
double default_rho(std::size_t sensor_count, std::size_t pan_count);

}  // namespace kcover
