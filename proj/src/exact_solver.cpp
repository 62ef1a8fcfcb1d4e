#include "kcover/exact_solver.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "kcover/errors.hpp"
#include "kcover/greedy_solver.hpp"

namespace kcover {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::int32_t kOff = -1;

// Incremental coverage state plus the bound used for pruning.
class SearchState {
 public:
  SearchState(const CoverageMatrix& matrix, const ObjectiveSpec& spec)
      : matrix_(matrix),
        spec_(spec),
        n_(matrix.sensor_count()),
        m_(matrix.target_count()),
        k_(spec.k),
        raw_(m_, 0),
        reach_((n_ + 1) * m_, 0),
        levels_(k_, 0) {
    sums_.deficit_squares = static_cast<std::uint64_t>(k_) * k_ * m_;
    // reach_[s*m + t]: sensors i >= s that can cover t with some pan.
    std::vector<std::uint8_t> seen(m_);
    for (std::size_t i = n_; i-- > 0;) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::uint32_t j = 0; j < matrix.pan_count(); ++j) {
        for (const std::uint32_t t : matrix.targets_of(i, PanIndex{j})) seen[t] = 1;
      }
      for (std::size_t t = 0; t < m_; ++t) reach_[i * m_ + t] = reach_[(i + 1) * m_ + t] + seen[t];
    }
  }

  void apply(std::size_t sensor, std::uint32_t pan) {
    for (const std::uint32_t t : matrix_.targets_of(sensor, PanIndex{pan})) {
      const std::uint32_t before = raw_[t]++;
      if (before < k_) {
        sums_.total += 1;
        sums_.squares += 2u * before + 1u;
        sums_.deficit_squares -= 2u * (k_ - before) - 1u;
      }
    }
    ++active_;
  }

  void undo(std::size_t sensor, std::uint32_t pan) {
    for (const std::uint32_t t : matrix_.targets_of(sensor, PanIndex{pan})) {
      const std::uint32_t after = --raw_[t];
      if (after < k_) {
        sums_.total -= 1;
        sums_.squares -= 2u * after + 1u;
        sums_.deficit_squares += 2u * (k_ - after) - 1u;
      }
    }
    --active_;
  }

  ObjectiveValue value() const { return evaluate_sums(spec_, sums_, m_, active_); }

  // Relaxation over sensors depth..n-1: a target t can end at most at
  // min(k, raw_t + reach_t), capped coverage never decreases, and the total
  // gain is at most the sum over undecided sensors of their best single-pan
  // gain. For a fixed total, sum(psi^2) is minimized by raising the lowest
  // levels first, which is optimal for all three objectives: CoverageMax
  // only needs the total, VectorDistance = m k^2 - 2k S + Q is minimized at
  // the largest total, and the balancing term S^3 / Q is maximized over
  // every reachable total.
  ObjectiveValue bound(std::size_t depth) {
    std::fill(levels_.begin(), levels_.end(), 0);
    std::uint64_t room = 0;
    const std::uint32_t* reach = reach_.data() + depth * m_;
    for (std::size_t t = 0; t < m_; ++t) {
      const std::uint32_t lo = std::min(raw_[t], k_);
      const std::uint32_t hi = std::min<std::uint32_t>(k_, raw_[t] + reach[t]);
      for (std::uint32_t level = lo; level < hi; ++level) ++levels_[level];
      room += hi - lo;
    }
    std::uint64_t gain_cap = 0;
    for (std::size_t i = depth; i < n_ && gain_cap < room; ++i) {
      std::uint64_t best = 0;
      for (std::uint32_t j = 0; j < matrix_.pan_count(); ++j) {
        best = std::max(best, benefit(matrix_.targets_of(i, PanIndex{j}), raw_, k_,
                                      BenefitMode::Linear));
      }
      gain_cap += best;
    }
    std::uint64_t units = std::min(room, gain_cap);

    CoverageSums s = sums_;
    ObjectiveValue best = evaluate_sums(spec_, s, m_, active_);
    if (spec_.kind != ObjectiveKind::BalancingIndex) {
      for (std::uint32_t level = 0; level < k_ && units > 0; ++level) {
        const std::uint64_t take = std::min<std::uint64_t>(levels_[level], units);
        s.total += take;
        s.squares += take * (2u * level + 1u);
        s.deficit_squares -= take * (2u * (k_ - level) - 1u);
        units -= take;
      }
      return evaluate_sums(spec_, s, m_, active_);
    }
    for (std::uint32_t level = 0; level < k_ && units > 0; ++level) {
      for (std::uint64_t u = 0; u < levels_[level] && units > 0; ++u, --units) {
        s.total += 1;
        s.squares += 2u * level + 1u;
        const ObjectiveValue v = evaluate_sums(spec_, s, m_, active_);
        if (v.value > best.value) best = v;
      }
    }
    return best;
  }

 private:
  const CoverageMatrix& matrix_;
  const ObjectiveSpec& spec_;
  std::size_t n_;
  std::size_t m_;
  std::uint32_t k_;
  std::vector<std::uint32_t> raw_;
  std::vector<std::uint32_t> reach_;
  std::vector<std::uint64_t> levels_;
  CoverageSums sums_;
  std::size_t active_ = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(const CoverageMatrix& matrix, const ObjectiveSpec& spec,
                 const ExactOptions& options)
      : matrix_(matrix),
        spec_(spec),
        options_(options),
        state_(matrix, spec),
        n_(matrix.sensor_count()),
        path_(n_, kOff),
        best_path_(n_, kOff),
        pans_(n_) {
    // A pan covering nothing only adds penalty, so it is never strictly
    // better than Off and cannot be the first optimum.
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::uint32_t j = 0; j < matrix.pan_count(); ++j) {
        if (!matrix.targets_of(i, PanIndex{j}).empty()) pans_[i].push_back(j);
      }
    }
    const double worst = spec.sense() == Sense::Maximize ? -std::numeric_limits<double>::infinity()
                                                         : std::numeric_limits<double>::infinity();
    incumbent_ = {worst, spec.sense()};
  }

  // Anything at least as good as `value` must still be accepted, so the
  // threshold sits just on the worse side of it.
  void seed_threshold(const ObjectiveValue& value) {
    const double slack = 1e-9;
    incumbent_ = {spec_.sense() == Sense::Maximize ? value.value - slack : value.value + slack,
                  value.sense};
  }

  void run() {
    start_ = Clock::now();
    search(0);
  }

  bool found() const noexcept { return found_; }
  bool aborted() const noexcept { return aborted_; }
  std::uint64_t explored() const noexcept { return explored_; }
  std::uint64_t pruned() const noexcept { return pruned_; }

  Assignment best_assignment() const {
    Assignment a(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (best_path_[i] != kOff) a.set(i, PanIndex{static_cast<std::uint32_t>(best_path_[i])});
    }
    return a;
  }

 private:
  bool out_of_budget() {
    const auto& budget = options_.budget;
    if (budget.max_nodes && explored_ > *budget.max_nodes) return true;
    if (budget.max_time && (explored_ & 1023u) == 0 && Clock::now() - start_ > *budget.max_time) {
      return true;
    }
    return false;
  }

  void search(std::size_t depth) {
    ++explored_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    if (depth == n_) {
      const ObjectiveValue v = state_.value();
      if (is_better(spec_, v, incumbent_)) {
        incumbent_ = v;
        best_path_ = path_;
        found_ = true;
      }
      return;
    }
    if (options_.pruning && !is_better(spec_, state_.bound(depth), incumbent_)) {
      ++pruned_;
      return;
    }
    for (const std::uint32_t j : pans_[depth]) {
      state_.apply(depth, j);
      path_[depth] = static_cast<std::int32_t>(j);
      search(depth + 1);
      state_.undo(depth, j);
      if (aborted_) return;
    }
    path_[depth] = kOff;
    search(depth + 1);
  }

  const CoverageMatrix& matrix_;
  const ObjectiveSpec& spec_;
  const ExactOptions& options_;
  SearchState state_;
  std::size_t n_;
  std::vector<std::int32_t> path_;
  std::vector<std::int32_t> best_path_;
  std::vector<std::vector<std::uint32_t>> pans_;
  ObjectiveValue incumbent_;
  bool found_ = false;
  bool aborted_ = false;
  std::uint64_t explored_ = 0;
  std::uint64_t pruned_ = 0;
  Clock::time_point start_;
};

void require_nonempty(const CoverageMatrix& matrix) {
  if (matrix.sensor_count() == 0 || matrix.target_count() == 0) {
    throw InvalidArgument("exact solver needs at least one sensor and one target");
  }
}

}  // namespace

ExactResult solve_exact(const CoverageMatrix& matrix, const ObjectiveSpec& spec,
                        const ExactOptions& options) {
  spec.validate();
  require_nonempty(matrix);
  const auto start = Clock::now();

  // Best of all-Off and both greedy variants; used as the pruning seed and
  // as the fallback when the budget runs out before any leaf is accepted.
  Assignment fallback(matrix.sensor_count());
  ObjectiveValue fallback_value = report(matrix, fallback, spec).objective;
  for (const BenefitMode mode : {BenefitMode::Linear, BenefitMode::Quadratic}) {
    GreedyOptions greedy_options;
    greedy_options.report_spec = spec;
    auto greedy = solve_greedy(matrix, spec.k, mode, greedy_options);
    if (is_better(spec, greedy.report.objective, fallback_value)) {
      fallback = std::move(greedy.assignment);
      fallback_value = greedy.report.objective;
    }
  }

  BranchAndBound search(matrix, spec, options);
  if (options.pruning && options.warm_start) search.seed_threshold(fallback_value);
  search.run();

  ExactResult result;
  result.assignment = search.found() ? search.best_assignment() : fallback;
  if (search.found() && search.aborted()) {
    // Best found may still trail the seed when the search stopped early.
    const auto found_value = report(matrix, result.assignment, spec).objective;
    if (is_better(spec, fallback_value, found_value)) result.assignment = fallback;
  }
  result.report = report(matrix, result.assignment, spec);
  result.stats.nodes_explored = search.explored();
  result.stats.nodes_pruned = search.pruned();
  result.stats.optimal_value = result.report.objective;
  result.stats.proven_optimal = !search.aborted();
  result.stats.wall_time = Clock::now() - start;
  return result;
}

double completion_bound(std::span<const Assignment::Choice> decided, const CoverageMatrix& matrix,
                        const ObjectiveSpec& spec) {
  spec.validate();
  if (decided.size() > matrix.sensor_count()) {
    throw InvalidArgument("partial assignment longer than the sensor count");
  }
  SearchState state(matrix, spec);
  for (std::size_t i = 0; i < decided.size(); ++i) {
    if (decided[i]) {
      if (decided[i]->value >= matrix.pan_count()) throw InvalidArgument("pan index out of range");
      state.apply(i, decided[i]->value);
    }
  }
  return state.bound(decided.size()).value;
}

EnumerationResult brute_force_optimum(const CoverageMatrix& matrix, const ObjectiveSpec& spec,
                                      std::uint64_t max_assignments) {
  spec.validate();
  require_nonempty(matrix);
  const std::size_t n = matrix.sensor_count();
  const std::uint32_t q = matrix.pan_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > max_assignments / (q + 1)) {
      throw InvalidArgument("enumeration space exceeds " + std::to_string(max_assignments));
    }
    total *= q + 1;
  }

  // Odometer over digits 0..q where digit q means Off; sensor 0 is the most
  // significant digit, which reproduces the branch-and-bound visiting order.
  std::vector<std::uint32_t> digits(n, 0);
  EnumerationResult result;
  bool have = false;
  for (std::uint64_t step = 0; step < total; ++step) {
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (digits[i] < q) a.set(i, PanIndex{digits[i]});
    }
    const ObjectiveValue v = evaluate(spec, coverage_of(matrix, a, spec.k), a.active_count());
    if (!have || is_better(spec, v, result.value)) {
      result.assignment = std::move(a);
      result.value = v;
      have = true;
    }
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] <= q) break;
      digits[i] = 0;
    }
  }
  result.assignments_checked = total;
  return result;
}

}  // namespace kcover
