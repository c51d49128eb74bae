#include <doctest.h>

#include <chordwalk/dynamics.hpp>
#include <chordwalk/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support.hpp"

using namespace chordwalk;

TEST_CASE("transition probabilities start as an indicator") {
  const auto g = build_graph(30, 7);
  const auto spec = eig_symmetric(laplacian(g));
  for (int j : {1, 7, 15}) {
    const auto s = transition_probabilities(spec, j, {0.0, 0.5});
    for (int k = 1; k <= 30; ++k) CHECK(s.probability(0, k) == doctest::Approx(k == j ? 1.0 : 0.0).epsilon(1e-12));
    double total = 0.0;
    for (int k = 1; k <= 30; ++k) total += s.probability(1, k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("time grid") {
  const auto t = uniform_time_grid(0.0, 1.0, 0.1);
  CHECK(t.size() == 11);
  CHECK(t.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(uniform_time_grid(0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("far from the chord the walk sees a bare cycle at short times") {
  const auto g = build_graph(100, 11);
  const auto spec = eig_symmetric(laplacian(g));
  const auto cyc = eig_symmetric(laplacian(GraphSpec::cycle(100)));
  const auto times = uniform_time_grid(0.0, 50.0, 0.5);
  const auto a = transition_probabilities(spec, 56, times);
  const auto b = transition_probabilities(cyc, 56, times);
  double worst = 0.0;
  for (std::size_t t = 0; t < times.size(); ++t)
    for (int k = 40; k <= 72; ++k) worst = std::max(worst, std::abs(a.probability(t, k) - b.probability(t, k)));
  CHECK(worst < 1e-8);
}

TEST_CASE("return probability decay") {
  const auto g = build_graph(200, 21);
  const auto spec = eig_symmetric(laplacian(g));
  const auto far = transition_probabilities(spec, 111, uniform_time_grid(0.5, 20.0, 0.02));
  const double s_far = decay_exponent(far, 1.0, 20.0);
  CHECK(s_far < -0.8);
  CHECK(s_far > -1.2);
  const auto near = transition_probabilities(spec, 1, uniform_time_grid(0.5, 50.0, 0.02));
  CHECK(decay_exponent(near, 5.0, 50.0) > s_far + 0.3);
}

TEST_CASE("decay exponent of a constant series is zero") {
  EvolutionSeries s;
  s.start = 1;
  for (int i = 0; i < 100; ++i) {
    s.times.push_back(1.0 + i);
    s.probabilities.push_back({0.25, 0.75});
  }
  CHECK(std::abs(decay_exponent(s, 1.0, 100.0)) < 1e-12);
  CHECK_THROWS_AS(decay_exponent(s, 200.0, 300.0), DomainError);
}

TEST_CASE("limiting distribution is a doubly stochastic symmetric matrix") {
  for (auto [n, m] : {std::pair{12, 5}, {30, 7}, {100, 21}, {101, 11}}) {
    const auto chi = limiting_matrix(eig_symmetric(laplacian(build_graph(n, m))));
    for (int j = 0; j < n; ++j) {
      double row = 0.0;
      for (int k = 0; k < n; ++k) {
        row += chi(j, k);
        REQUIRE(chi(j, k) >= -1e-15);
        REQUIRE(std::abs(chi(j, k) - chi(k, j)) < 1e-12);
      }
      REQUIRE(row == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("limiting distribution matches long-time averages") {
  for (auto [n, m] : {std::pair{8, 3}, {10, 4}, {12, 5}}) {
    const auto spec = eig_symmetric(laplacian(build_graph(n, m)));
    const auto times = uniform_time_grid(0.0, 20000.0, 0.37);
    for (int j : {1, 2, n / 2 + 1}) {
      const auto series = transition_probabilities(spec, j, times);
      const auto chi = limiting_distribution(spec, j);
      for (int k = 1; k <= n; ++k) {
        double avg = 0.0;
        for (std::size_t t = 0; t < times.size(); ++t) avg += series.probability(t, k);
        avg /= static_cast<double>(times.size());
        REQUIRE(std::abs(avg - chi.at(k)) < 5e-3);
      }
    }
  }
}

TEST_CASE("limiting distribution and its approximation") {
  const auto g = build_graph(100, 21);
  const auto spec = eig_symmetric(laplacian(g));
  CHECK(limiting_distribution(spec, 11).at(11) == doctest::Approx(0.0198).epsilon(1e-9));
  const auto top = largest_eigenstate(g);
  CHECK(limiting_approximation(g, 11, 11, top) == doctest::Approx(0.0198).epsilon(1e-6));
  CHECK(limiting_approximation(g, 11, 61, top) == doctest::Approx(0.0198).epsilon(1e-6));
  CHECK(limiting_distribution(spec, 11).at(61) == doctest::Approx(0.0198).epsilon(1e-9));
  const double exact = limiting_distribution(spec, 1).at(1);
  CHECK(std::abs(limiting_approximation(g, 1, 1, top) - exact) < 0.01);

  const auto chi1 = limiting_distribution(spec, 1);
  std::vector<int> order(100);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return chi1.at(a) > chi1.at(b); });
  CHECK(((order[0] == 1 && order[1] == 21) || (order[0] == 21 && order[1] == 1)));
}

TEST_CASE("localization lower bound holds near the chord") {
  const auto g = build_graph(200, 50);
  const auto chi = limiting_matrix(eig_symmetric(laplacian(g)));
  for (int j : {1, 2, 49, 50, 51, 200})
    for (int k : {1, 2, 3, 48, 50, 199})
      CHECK(chi(j - 1, k - 1) >= localization_lower_bound(g, j, k));
  CHECK(localization_lower_bound(g, 1, 50) == doctest::Approx(0.125));
}
