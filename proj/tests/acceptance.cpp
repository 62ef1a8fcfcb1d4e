// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kcover/exact_solver.hpp"
#include "kcover/greedy_solver.hpp"
#include "kcover/harness.hpp"
#include "kcover/metrics.hpp"
#include "kcover/scenario.hpp"
#include "oracles.hpp"

using namespace kcover;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Desk-scale instances: the 8-pan, range-25 camera on a 50 x 50 grid keeps
// the sensor density per sensing disc of the 50-sensor, 125 x 125 setup.
constexpr double kDeskRho = 1e-4;

const std::vector<SolverKind> kAllSolvers = {SolverKind::IlpExact, SolverKind::IqpExact,
                                             SolverKind::InlpExact, SolverKind::GreedyLinear,
                                             SolverKind::GreedyQuadratic};

std::vector<std::uint64_t> seeds_1_to(std::uint64_t n) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 1; i <= n; ++i) s.push_back(i);
  return s;
}

ExperimentConfig desk_config(SweepAxis axis, std::size_t fixed, std::vector<std::size_t> sweep,
                             std::uint32_t k) {
  ExperimentConfig c = desk_scale_defaults();
  c.axis = axis;
  c.fixed_count = fixed;
  c.sweep = std::move(sweep);
  c.k = k;
  c.seeds = seeds_1_to(30);
  c.solvers = kAllSolvers;
  c.rho = kDeskRho;
  return c;
}

// Sweeps shared by criteria 4, 5 and 6.
struct DeskRuns {
  std::vector<ResultRow> vary_targets;  // n = 8, k = 2, m in {4, 8, 16, 24, 32}
  std::vector<ResultRow> vary_sensors;  // m = 16, k = 2, n in {4, 6, 8, 10}
  std::vector<ResultRow> under;         // n = 6, m = 12, k = 3
  double seconds = 0.0;
};

const DeskRuns& desk_runs() {
  static const DeskRuns runs = [] {
    DeskRuns r;
    const auto start = Clock::now();
    r.vary_targets = run_sweep(desk_config(SweepAxis::VaryTargets, 8, {4, 8, 16, 24, 32}, 2));
    r.vary_sensors = run_sweep(desk_config(SweepAxis::VarySensors, 16, {4, 6, 8, 10}, 2));
    r.under = run_sweep(desk_config(SweepAxis::VaryTargets, 6, {12}, 3));
    r.seconds = seconds_since(start);
    return r;
  }();
  return runs;
}

Outcome worked_metrics() {
  Outcome o;
  const double fi1 = fairness_index(make_coverage({3, 3, 1, 1}, 3));
  const double fi2 = fairness_index(make_coverage({2, 2, 2, 2}, 3));
  const double bi1 = balancing_index(make_coverage({2, 2, 2}, 3));
  const double bi2 = balancing_index(make_coverage({2, 3, 2}, 3));
  o.require(std::abs(fi1 - 0.8) <= 1e-9, fmt("FI(3,3,1,1) = %.12f", fi1));
  o.require(std::abs(fi2 - 1.0) <= 1e-9, fmt("FI(2,2,2,2) = %.12f", fi2));
  o.require(std::abs(bi1 - 0.666667) <= 1e-4, fmt("BI(2,2,2) = %.6f", bi1));
  o.require(std::abs(bi2 - 0.747253) <= 1e-4, fmt("BI(2,3,2) = %.6f", bi2));
  if (o.pass) o.detail = fmt("FI = %.6f, %.6f; BI = %.6f, %.6f", fi1, fi2, bi1, bi2);
  return o;
}

Outcome incentive_table() {
  Outcome o;
  const std::vector<std::uint32_t> phi{0};
  const std::uint64_t quad[] = {5, 3, 1};
  for (std::uint32_t c = 0; c < 3; ++c) {
    const std::vector<std::uint32_t> counts{c};
    const auto q = benefit(phi, counts, 3, BenefitMode::Quadratic);
    const auto l = benefit(phi, counts, 3, BenefitMode::Linear);
    o.require(q == quad[c], fmt("quadratic at c=%u gave %llu", c, (unsigned long long)q));
    o.require(l == 1, fmt("linear at c=%u gave %llu", c, (unsigned long long)l));
  }
  if (o.pass) o.detail = "quadratic 5,3,1; linear 1,1,1";
  return o;
}

Outcome exact_vs_enumeration() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick_n(1, 6);
  std::uniform_int_distribution<std::size_t> pick_m(1, 10);
  std::size_t instances = 0;
  std::size_t solves = 0;
  while (instances < 240) {
    // Every fourth instance uses the full n = 6.
    const std::size_t n = instances % 4 == 0 ? 6 : pick_n(rng);
    const std::size_t m = pick_m(rng);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(instances % 3);
    const auto s = oracle::random_scenario(rng, n, m);
    bool boundary = false;
    for (const auto& sp : s.sensors)
      for (const auto& tp : s.targets) boundary |= oracle::boundary_margin(sp, tp, 8) < 1e-9;
    if (boundary) continue;
    ++instances;
    const auto matrix = build_coverage_matrix(s);
    const double rho = default_rho(n, 8);
    const std::pair<ObjectiveKind, oracle::Objective> kinds[] = {
        {ObjectiveKind::CoverageMax, oracle::Objective::Ilp},
        {ObjectiveKind::VectorDistance, oracle::Objective::Iqp},
        {ObjectiveKind::BalancingIndex, oracle::Objective::Inlp}};
    for (const auto& [kind, okind] : kinds) {
      const auto exact = solve_exact(matrix, {kind, k, rho});
      const auto expected = oracle::enumerate_best(s, okind, k, rho);
      ++solves;
      o.require(exact.stats.proven_optimal, "search did not complete");
      o.require(exact.stats.optimal_value.value == expected.best,
                fmt("instance %zu (n=%zu m=%zu k=%u) %s: exact %.17g vs enumeration %.17g",
                    instances, n, m, k, std::string(to_string(kind)).c_str(),
                    exact.stats.optimal_value.value, expected.best));
    }
  }
  const double secs = seconds_since(start);
  o.require(secs < 300.0, fmt("took %.1f s (limit 300 s)", secs));
  if (o.pass) o.detail = fmt("%zu instances, %zu solves, all equal; %.1f s", instances, solves, secs);
  return o;
}

Outcome inlp_dominance() {
  Outcome o;
  const auto& runs = desk_runs();
  std::size_t points = 0;
  double worst_gap = -1.0;
  for (const auto* rows : {&runs.vary_targets, &runs.vary_sensors, &runs.under}) {
    // Group rows of one (seed, n, m) instance.
    std::map<std::tuple<std::uint64_t, std::size_t, std::size_t>, std::vector<const ResultRow*>> by;
    for (const auto& r : *rows) by[{r.seed, r.n, r.m}].push_back(&r);
    for (const auto& [key, group] : by) {
      const ResultRow* inlp = nullptr;
      for (const auto* r : group)
        if (r->solver == SolverKind::InlpExact) inlp = r;
      o.require(inlp != nullptr && inlp->optimal, "missing or unproven INLP row");
      if (!inlp) continue;
      ++points;
      for (const auto* r : group) {
        const double gap = r->balancing_index - inlp->balancing_index;
        worst_gap = std::max(worst_gap, gap);
        o.require(inlp->balancing_index >= r->balancing_index - 1e-3,
                  fmt("seed %llu n=%zu m=%zu: BI(INLP)=%.6f < BI(%s)=%.6f - 1e-3",
                      (unsigned long long)r->seed, r->n, r->m, inlp->balancing_index,
                      std::string(to_string(r->solver)).c_str(), r->balancing_index));
      }
    }
  }
  if (o.pass) o.detail = fmt("%zu instances, max BI(z) - BI(INLP) = %.2e", points, worst_gap);
  return o;
}

// Counts adjacent pairs that move the wrong way.
std::size_t violations(const std::vector<double>& curve, bool non_increasing) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double step = curve[i + 1] - curve[i];
    if (non_increasing ? step > 0.0 : step < 0.0) ++bad;
  }
  return bad;
}

std::string curve_text(const std::vector<double>& curve) {
  std::string s;
  for (double v : curve) s += (s.empty() ? "" : " ") + fmt("%.3f", v);
  return s;
}

Outcome regime_trends() {
  Outcome o;
  const auto& runs = desk_runs();
  std::string detail;
  auto check = [&](const std::vector<ResultRow>& rows, bool non_increasing, const char* label) {
    const auto summary = summarize(rows);
    for (const auto solver : kAllSolvers) {
      std::vector<double> curve;
      for (const auto& s : summary)
        if (s.solver == solver) curve.push_back(s.mean_balancing_index);
      const auto bad = violations(curve, non_increasing);
      o.require(bad <= 1, fmt("%s %s: %zu wrong-way steps in [%s]", label,
                              std::string(to_string(solver)).c_str(), bad,
                              curve_text(curve).c_str()));
      if (solver == SolverKind::InlpExact || solver == SolverKind::GreedyLinear) {
        detail += fmt("%s %s [%s]; ", label, std::string(to_string(solver)).c_str(),
                      curve_text(curve).c_str());
      }
    }
  };
  check(runs.vary_targets, true, "m-sweep");
  check(runs.vary_sensors, false, "n-sweep");
  if (o.pass) o.detail = detail + fmt("sweeps %.1f s", runs.seconds);
  return o;
}

Outcome uncovered_reduction() {
  Outcome o;
  const auto summary = summarize(desk_runs().under);
  std::map<SolverKind, double> uncovered;
  for (const auto& s : summary) uncovered[s.solver] = s.mean_uncovered_fraction;
  const SolverKind chain[] = {SolverKind::InlpExact, SolverKind::IqpExact,
                              SolverKind::GreedyQuadratic, SolverKind::GreedyLinear};
  std::string detail;
  for (std::size_t i = 0; i < 4; ++i) {
    detail += fmt("%s %.4f%s", std::string(to_string(chain[i])).c_str(), uncovered[chain[i]],
                  i + 1 < 4 ? " <= " : "");
    if (i + 1 < 4) {
      o.require(uncovered[chain[i]] <= uncovered[chain[i + 1]] + 0.02,
                fmt("%s %.4f > %s %.4f + 0.02", std::string(to_string(chain[i])).c_str(),
                    uncovered[chain[i]], std::string(to_string(chain[i + 1])).c_str(),
                    uncovered[chain[i + 1]]));
    }
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome greedy_invariants() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> pick_n(1, 30);
  std::uniform_int_distribution<std::size_t> pick_m(1, 60);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = pick_n(rng);
    const auto s = oracle::random_scenario(rng, n, pick_m(rng), 80.0);
    const auto matrix = build_coverage_matrix(s);
    const std::uint32_t k = 1 + rep % 4;
    const auto mode = rep % 2 ? BenefitMode::Quadratic : BenefitMode::Linear;
    GreedyOptions opts;
    opts.record_trace = true;
    opts.verify_counts = true;
    try {
      const auto r = solve_greedy(matrix, k, mode, opts);
      o.require(r.iterations <= n, fmt("instance %d: %zu iterations for n=%zu", rep, r.iterations, n));
      std::uint64_t prev = 0;
      for (const auto& step : r.trace) {
        std::uint64_t capped = 0;
        for (std::uint32_t level = 0; level <= k; ++level) capped += level * step.histogram[level];
        o.require(capped > prev, fmt("instance %d: capped coverage did not increase", rep));
        prev = capped;
      }
      const auto again = solve_greedy(matrix, k, mode, opts);
      o.require(again.assignment == r.assignment && again.trace.size() == r.trace.size(),
                fmt("instance %d: repeated run differs", rep));
    } catch (const std::logic_error& e) {
      o.require(false, e.what());
    }
  }
  const double secs = seconds_since(start);
  o.require(secs < 60.0, fmt("took %.1f s (limit 60 s)", secs));
  if (o.pass) o.detail = fmt("1000 instances; %.2f s", secs);
  return o;
}

Outcome geometry_invariants() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::uniform_real_distribution<double> factor(0.1, 10.0);
  const std::uint32_t pan_choices[] = {4, 6, 8, 12};
  std::size_t rotation_checked = 0;
  std::size_t scale_checked = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const std::uint32_t q = pan_choices[rep % 4];
    const CameraModel cam(25.0, q);
    const Point2D s{coord(rng), coord(rng)};
    const Point2D t{coord(rng), coord(rng)};
    const double dist = std::hypot(t.x - s.x, t.y - s.y);
    const bool near_range = std::abs(dist - 25.0) < 1e-6;
    const bool near_boundary = oracle::boundary_margin(s, t, q) < 1e-9;

    int covering = 0;
    std::uint32_t pan = 0;
    for (std::uint32_t j = 0; j < q; ++j) {
      if (target_in_sector(s, PanIndex{j}, cam, t)) {
        ++covering;
        pan = j;
      }
    }
    if (!near_range) {
      o.require(covering == (dist <= 25.0 ? 1 : 0),
                fmt("pair %d: %d covering pans at distance %.6f", rep, covering, dist));
    }
    if (near_range || near_boundary || covering == 0) continue;

    // Rotate the target about the sensor by exactly one pan width.
    const double a = cam.aov();
    const double dx = t.x - s.x, dy = t.y - s.y;
    const Point2D rotated{s.x + dx * std::cos(a) - dy * std::sin(a),
                          s.y + dx * std::sin(a) + dy * std::cos(a)};
    if (oracle::boundary_margin(s, rotated, q) > 1e-9) {
      ++rotation_checked;
      o.require(target_in_sector(s, PanIndex{(pan + 1) % q}, cam, rotated),
                fmt("pair %d: rotation by aov did not advance pan %u", rep, pan));
    }

    // Scale coordinates and range together.
    const double c = factor(rng);
    const CameraModel scaled_cam(25.0 * c, q);
    const Point2D ss{s.x * c, s.y * c};
    const Point2D ts{t.x * c, t.y * c};
    if (oracle::boundary_margin(ss, ts, q) > 1e-9) {
      ++scale_checked;
      for (std::uint32_t j = 0; j < q; ++j) {
        o.require(target_in_sector(ss, PanIndex{j}, scaled_cam, ts) ==
                      target_in_sector(s, PanIndex{j}, cam, t),
                  fmt("pair %d: scaling by %.3f changed pan %u", rep, c, j));
      }
    }
  }
  const double secs = seconds_since(start);
  if (o.pass) {
    o.detail = fmt("10000 pairs; rotation checked on %zu, scaling on %zu; %.2f s", rotation_checked,
                   scale_checked, secs);
  }
  return o;
}

double greedy_seconds(std::size_t n, std::size_t m, int repeats) {
  const auto family = generate(4242, n, m, CameraModel(25.0, 8), {125.0, 125.0});
  const auto matrix = build_coverage_matrix(family.master);
  const auto start = Clock::now();
  for (int r = 0; r < repeats; ++r) {
    auto result = solve_greedy(matrix, 3, BenefitMode::Quadratic);
    if (result.assignment.size() != n) std::abort();
  }
  return seconds_since(start) / repeats;
}

Outcome complexity_smoke() {
  Outcome o;
  const auto start = Clock::now();
  const auto family = generate(4242, 50, 100, CameraModel(25.0, 8), {125.0, 125.0});
  const auto matrix = build_coverage_matrix(family.master);
  solve_greedy(matrix, 3, BenefitMode::Quadratic);
  solve_greedy(matrix, 3, BenefitMode::Linear);
  const double single = seconds_since(start);
  o.require(single < 10.0, fmt("n=50 m=100 took %.2f s", single));

  // Growth when doubling n: cubic growth would be 8x; allow 16x for noise.
  const double t50 = greedy_seconds(50, 100, 200);
  const double t100 = greedy_seconds(100, 100, 200);
  const double ratio = t100 / t50;
  o.require(ratio <= 16.0, fmt("doubling n multiplied time by %.1f", ratio));
  if (o.pass) {
    o.detail = fmt("n=50,m=100: %.4f s; per-run %.2e s -> %.2e s when doubling n (x%.1f)", single,
                   t50, t100, ratio);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 worked-metric reproduction", worked_metrics},
      {"2 incentive table (k=3)", incentive_table},
      {"3 exact solver equals enumeration", exact_vs_enumeration},
      {"4 INLP dominance on BI (rho=1e-4)", inlp_dominance},
      {"5 regime trends of mean BI", regime_trends},
      {"6 uncovered-target ordering (n=6, m=12, k=3)", uncovered_reduction},
      {"7 greedy invariants", greedy_invariants},
      {"8 geometry invariants", geometry_invariants},
      {"9 greedy complexity smoke check", complexity_smoke},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome out = c.run();
    std::printf("[%s] %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", c.name, seconds_since(start),
                out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
