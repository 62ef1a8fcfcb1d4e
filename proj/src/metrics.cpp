#include "kcover/metrics.hpp"

#include <algorithm>
#include <string>

#include "kcover/errors.hpp"

namespace kcover {

namespace {

struct Sums {
  std::uint64_t total = 0;
  std::uint64_t squares = 0;
};

Sums capped_sums(const CoverageVector& coverage) {
  if (coverage.capped.empty()) throw InvalidArgument("metrics need at least one target");
  Sums s;
  for (const std::uint32_t psi : coverage.capped) {
    s.total += psi;
    s.squares += static_cast<std::uint64_t>(psi) * psi;
  }
  return s;
}

}  // namespace

std::size_t Assignment::active_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(choices_.begin(), choices_.end(), [](const Choice& c) { return c.has_value(); }));
}

CoverageVector make_coverage(std::vector<std::uint32_t> raw, std::uint32_t k) {
  if (k == 0) throw InvalidArgument("coverage requirement k must be at least 1");
  CoverageVector v;
  v.k = k;
  v.capped.reserve(raw.size());
  for (const std::uint32_t xi : raw) v.capped.push_back(std::min(xi, k));
  v.raw = std::move(raw);
  return v;
}

CoverageVector coverage_of(const CoverageMatrix& matrix, const Assignment& assignment,
                           std::uint32_t k) {
  if (assignment.size() != matrix.sensor_count()) {
    throw InvalidArgument("assignment covers " + std::to_string(assignment.size()) +
                          " sensors, matrix has " + std::to_string(matrix.sensor_count()));
  }
  std::vector<std::uint32_t> raw(matrix.target_count(), 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (const auto& pan = assignment[i]) {
      for (const std::uint32_t t : matrix.targets_of(i, *pan)) ++raw[t];
    }
  }
  return make_coverage(std::move(raw), k);
}

double fairness_index(const CoverageVector& coverage) {
  const Sums s = capped_sums(coverage);
  if (s.total == 0) return 0.0;
  const auto total = static_cast<double>(s.total);
  return total * total /
         (static_cast<double>(coverage.capped.size()) * static_cast<double>(s.squares));
}

double balancing_index(const CoverageVector& coverage) {
  const Sums s = capped_sums(coverage);
  if (s.total == 0) return 0.0;
  const auto m = static_cast<double>(coverage.capped.size());
  return fairness_index(coverage) * static_cast<double>(s.total) / (coverage.k * m);
}

}  // namespace kcover
