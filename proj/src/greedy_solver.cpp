#include "kcover/greedy_solver.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "kcover/errors.hpp"

namespace kcover {

namespace {

std::vector<std::uint32_t> histogram_of(std::span<const std::uint32_t> counts, std::uint32_t k) {
  std::vector<std::uint32_t> h(k + 1, 0);
  for (const std::uint32_t c : counts) ++h[std::min(c, k)];
  return h;
}

}  // namespace

std::uint64_t benefit(std::span<const std::uint32_t> phi, std::span<const std::uint32_t> counts,
                      std::uint32_t k, BenefitMode mode) {
  std::uint64_t incentive = 0;
  for (const std::uint32_t t : phi) {
    const std::uint32_t c = counts[t];
    if (c >= k) continue;
    // (k-c)^2 - (k-c-1)^2 == 2(k-c) - 1
    incentive += mode == BenefitMode::Linear ? 1u : 2u * (k - c) - 1u;
  }
  return incentive;
}

SensorPan tie_break(std::span<const SensorPan> candidates) {
  if (candidates.empty()) throw InvalidArgument("tie_break needs at least one candidate");
  return *std::min_element(candidates.begin(), candidates.end());
}

GreedyResult solve_greedy(const CoverageMatrix& matrix, std::uint32_t k, BenefitMode mode,
                          const GreedyOptions& options) {
  if (k == 0) throw InvalidArgument("coverage requirement k must be at least 1");
  const std::size_t n = matrix.sensor_count();
  const std::uint32_t q = matrix.pan_count();
  if (n == 0) throw InvalidArgument("greedy solver needs at least one sensor");
  if (options.report_spec && options.report_spec->k != k) {
    throw InvalidArgument("report objective uses a different k than the greedy run");
  }

  GreedyResult result;
  result.assignment = Assignment(n);
  std::vector<std::uint32_t> counts(matrix.target_count(), 0);
  std::vector<bool> active(n, false);

  for (;;) {
    std::uint64_t best_incentive = 0;
    SensorPan best;
    // Scanning in (sensor, pan) order and replacing only on a strictly
    // larger incentive realizes tie_break().
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) continue;
      for (std::uint32_t j = 0; j < q; ++j) {
        const std::uint64_t incentive = benefit(matrix.targets_of(i, PanIndex{j}), counts, k, mode);
        if (incentive > best_incentive) {
          best_incentive = incentive;
          best = {i, PanIndex{j}};
        }
      }
    }
    if (best_incentive == 0) break;

    active[best.sensor] = true;
    result.assignment.set(best.sensor, best.pan);
    for (const std::uint32_t t : matrix.targets_of(best.sensor, best.pan)) ++counts[t];
    ++result.iterations;

    if (options.verify_counts) {
      if (coverage_of(matrix, result.assignment, k).raw != counts) {
        throw std::logic_error("greedy incremental counts diverged from recount at iteration " +
                               std::to_string(result.iterations));
      }
    }
    if (options.record_trace) {
      result.trace.push_back({best, best_incentive, histogram_of(counts, k)});
    }
  }
  assert(coverage_of(matrix, result.assignment, k).raw == counts);

  const ObjectiveSpec spec = options.report_spec.value_or(
      ObjectiveSpec{ObjectiveKind::BalancingIndex, k, default_rho(n, q)});
  result.report = report(matrix, result.assignment, spec);
  return result;
}

}  // namespace kcover
