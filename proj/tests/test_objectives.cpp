#include "kcover/objectives.hpp"

#include <random>

#include "doctest.h"
#include "kcover/errors.hpp"
#include "kcover/report.hpp"
#include "oracles.hpp"

using namespace kcover;

TEST_CASE("objective worked values") {
  const auto v = make_coverage({3, 3, 1, 1}, 3);
  const ObjectiveSpec ilp{ObjectiveKind::CoverageMax, 3, 0.1};
  const auto value = evaluate(ilp, v, 4);
  CHECK(value.value == doctest::Approx(7.6));
  CHECK(value.sense == Sense::Maximize);

  const ObjectiveSpec iqp{ObjectiveKind::VectorDistance, 2, 0.3};
  const auto full = evaluate(iqp, make_coverage({2, 2, 5}, 2), 4);
  CHECK(full.value == doctest::Approx(1.2));
  CHECK(full.sense == Sense::Minimize);

  const ObjectiveSpec inlp{ObjectiveKind::BalancingIndex, 3, 0.5};
  const auto balanced = make_coverage({2, 2, 2}, 3);
  CHECK(evaluate(inlp, balanced, 0).value == doctest::Approx(216.0 / (27.0 * 12.0)));
  CHECK(evaluate(inlp, balanced, 0).value == doctest::Approx(balancing_index(balanced)));
  CHECK(evaluate(inlp, make_coverage({0, 0, 0}, 3), 2).value == doctest::Approx(-1.0));
}

TEST_CASE("objective argument checks") {
  CHECK_THROWS_AS(evaluate({ObjectiveKind::CoverageMax, 2, 0.1}, make_coverage({1}, 3), 0),
                  InvalidArgument);
  CHECK_THROWS_AS((ObjectiveSpec{ObjectiveKind::CoverageMax, 2, 0.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ObjectiveSpec{ObjectiveKind::CoverageMax, 2, 1.5}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ObjectiveSpec{ObjectiveKind::CoverageMax, 0, 0.5}.validate()), InvalidArgument);
  CHECK_NOTHROW((ObjectiveSpec{ObjectiveKind::CoverageMax, 1, 1.0}.validate()));
  CHECK(parse_objective_kind("INLP") == ObjectiveKind::BalancingIndex);
  CHECK_THROWS_AS(parse_objective_kind("LP"), InvalidArgument);
}

TEST_CASE("is_better respects sense and tolerance") {
  const ObjectiveSpec max_spec{ObjectiveKind::CoverageMax, 1, 0.1};
  const ObjectiveSpec min_spec{ObjectiveKind::VectorDistance, 1, 0.1};
  CHECK(is_better(max_spec, {7.6, Sense::Maximize}, {7.5, Sense::Maximize}));
  CHECK_FALSE(is_better(min_spec, {2.0, Sense::Minimize}, {1.0, Sense::Minimize}));
  CHECK(is_better(min_spec, {1.0, Sense::Minimize}, {2.0, Sense::Minimize}));
  CHECK_FALSE(is_better(max_spec, {1.0 + 1e-13, Sense::Maximize}, {1.0, Sense::Maximize}));
  CHECK_FALSE(is_better(max_spec, {1.0, Sense::Maximize}, {1.0 + 1e-13, Sense::Maximize}));
  CHECK_THROWS_AS(is_better(max_spec, {1.0, Sense::Maximize}, {1.0, Sense::Minimize}),
                  InvalidArgument);
}

TEST_CASE("default rho") {
  CHECK(default_rho(10, 8) == doctest::Approx(0.05));
  CHECK(default_rho(1, 8) == doctest::Approx(0.5));
  CHECK_THROWS_AS(default_rho(0, 8), InvalidArgument);
}

TEST_CASE("with the default rho, one more coverage unit beats any sensor saving") {
  // Exhaustive over all 9^3 assignments of random 3-sensor instances.
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = oracle::random_scenario(rng, 3, 8, 30.0);
    const auto mat = build_coverage_matrix(s);
    const std::uint32_t k = 2;
    const ObjectiveSpec spec{ObjectiveKind::CoverageMax, k, default_rho(3, 8)};
    struct Point {
      std::uint64_t total;
      double value;
    };
    std::vector<Point> all;
    for (std::uint32_t a = 0; a <= 8; ++a)
      for (std::uint32_t b = 0; b <= 8; ++b)
        for (std::uint32_t c = 0; c <= 8; ++c) {
          Assignment asg(3);
          if (a < 8) asg.set(0, PanIndex{a});
          if (b < 8) asg.set(1, PanIndex{b});
          if (c < 8) asg.set(2, PanIndex{c});
          const auto r = report(mat, asg, spec);
          all.push_back({r.total_coverage(), r.objective.value});
        }
    for (const auto& x : all)
      for (const auto& y : all)
        if (x.total > y.total) CHECK(x.value > y.value);
  }
}

TEST_CASE("objective identities on random capped vectors") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint32_t> count(0, 5);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::uint32_t k = 1 + rep % 4;
    const std::size_t m = 1 + rep % 9;
    std::vector<std::uint32_t> raw(m);
    for (auto& x : raw) x = count(rng);
    const auto v = make_coverage(raw, k);
    const std::size_t active = rep % 7;
    const double rho = 0.01;

    // INLP first term is the balancing index.
    const auto inlp = evaluate({ObjectiveKind::BalancingIndex, k, rho}, v, active);
    CHECK(inlp.value + rho * active == doctest::Approx(balancing_index(v)).epsilon(1e-12));

    // IQP is the squared distance to (k, ..., k) plus the penalty.
    double dist = 0;
    for (auto psi : v.capped) dist += (double(k) - psi) * (double(k) - psi);
    CHECK(evaluate({ObjectiveKind::VectorDistance, k, rho}, v, active).value ==
          doctest::Approx(dist + rho * active));

    // Raising an under-covered psi by one adds exactly 1 under ILP.
    const ObjectiveSpec ilp{ObjectiveKind::CoverageMax, k, rho};
    for (std::size_t t = 0; t < m; ++t) {
      if (v.capped[t] < k) {
        auto more = v.capped;
        ++more[t];
        CHECK(evaluate(ilp, make_coverage(more, k), active).value -
                  evaluate(ilp, v, active).value ==
              doctest::Approx(1.0));
        break;
      }
    }
  }
}

TEST_CASE("psi = min(xi, k) is the ILP-optimal choice under the linearizing constraints") {
  // For each xi, enumerate integer psi satisfying xi/n <= psi <= xi and
  // psi <= k; the largest feasible psi (what a maximizing ILP picks) must
  // equal min(xi, k).
  const std::size_t n = 6;
  for (std::uint32_t k = 1; k <= 4; ++k) {
    for (std::uint32_t xi = 0; xi <= n; ++xi) {
      std::optional<std::uint32_t> best;
      for (std::uint32_t psi = 0; psi <= n; ++psi) {
        const bool feasible = static_cast<double>(xi) / n <= psi && psi <= xi && psi <= k;
        if (feasible) best = psi;
      }
      REQUIRE(best);
      CHECK(*best == make_coverage({xi}, k).capped[0]);
    }
  }
}
