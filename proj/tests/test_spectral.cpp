#include <doctest.h>

#include <chordwalk/chebyshev.hpp>
#include <chordwalk/errors.hpp>
#include <chordwalk/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace chordwalk;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense spectrum of the Laplacian, relied on as ground truth.
std::vector<double> dense_eigenvalues(const GraphSpec& g) { return eig_symmetric(laplacian(g)).eigenvalues; }

}  // namespace

TEST_CASE("determinant equation vanishes at the ground state") {
  for (int n : {5, 12, 31, 100, 200})
    for (int m : {3, std::max(3, n / 2), n - 1}) CHECK(std::abs(determinant_value(build_graph(n, m), 1.0)) < 1e-9);
}

TEST_CASE("x = -sqrt(2) is an approximate root for long chords") {
  const auto g = build_graph(100, 50);
  const double x = -std::numbers::sqrt2;
  CHECK(std::abs(determinant_value(g, x)) / determinant_scale(g, x) < 1e-10);
}

TEST_CASE("determinant equals half of c1 c4 - c2 c3") {
  for (auto [n, m] : {std::pair{12, 5}, {20, 7}, {31, 10}, {50, 25}}) {
    const auto g = build_graph(n, m);
    for (int i = 0; i < 100; ++i) {
      const double x = support::uniform(-1.5, 1.0);
      const auto c = determinant_coefficients(g, x);
      const double f = determinant_value(g, x);
      const double mag = std::max({std::abs(c.c1 * c.c4), std::abs(c.c2 * c.c3), 1.0});
      REQUIRE(std::abs(c.determinant() / 2.0 - f) / mag < 1e-8);
    }
  }
}

TEST_CASE("(T_N - 1) Theta = F G and the theta cofactor") {
  for (auto [n, m] : {std::pair{12, 5}, {20, 6}, {33, 11}, {100, 21}}) {
    const auto g = build_graph(n, m);
    for (int i = 0; i < 100; ++i) {
      const double x = support::uniform(-1.5, 1.0);
      const double lhs = (cheb_t(n, x) - 1.0) * theta_factor(g, x);
      const double rhs = determinant_value(g, x) * companion_factor(g, x);
      const double t = std::abs(cheb_t(n, x)), u = std::abs(cheb_u(n - 1, x)), a = std::abs(cheb_u(m - 2, x));
      const double mag = (t + 1.0) * (2.0 * a * a + 2.0 * (t + u + 1.0) * a + t + 2.0 * u + 1.0);
      REQUIRE(std::abs(lhs - rhs) / mag < 1e-12);
    }
    for (int i = 1; i < 200; ++i) {
      const double th = kPi * i / 200.0;
      const double x = std::cos(th);
      const double sf = std::sin(th) * determinant_value(g, x);
      REQUIRE(std::abs(sf - 2.0 * std::sin(0.5 * n * th) * theta_cofactor(n, m, th)) < 1e-10 * n);
    }
  }
}

TEST_CASE("root count of G(12,5) via the factorization matches the dense count") {
  const auto g = build_graph(12, 5);
  const int n = 12;
  int count = 1;  // x = 1
  const int grid = 20000;
  double prev = determinant_value(g, std::cos(kPi * 0.5 / grid));
  for (int i = 1; i < grid; ++i) {
    const double f = determinant_value(g, std::cos(kPi * (i + 0.5) / grid));
    if ((f >= 0) != (prev >= 0)) ++count;
    prev = f;
  }
  // Even multiplicity roots inside (-1, 1) show no sign change.
  for (int k = 1; 2 * k < n; ++k)
    if (cycle_root_multiplicity(g, k) == 2) count += 2;
  if (cycle_root_multiplicity(g, n / 2) == 1) ++count;
  prev = determinant_value(g, -1.0 - 1e-9);
  for (int i = 1; i <= 2000; ++i) {
    const double f = determinant_value(g, -1.0 - 1e-9 - i * 0.0005);
    if ((f >= 0) != (prev >= 0)) ++count;
    prev = f;
  }
  CHECK(count == static_cast<int>(dense_eigenvalues(g).size()));
}

TEST_CASE("oracle equivalence with the dense solver") {
  for (int n : {10, 12, 15, 20, 31, 50, 100}) {
    for (int m : {3, n / 3, n / 2}) {
      const auto g = build_graph(n, m);
      const auto cheb = solve_spectrum_chebyshev(g);
      CHECK(cheb.spectrum.source == SpectrumSource::DeterminantEquation);
      REQUIRE_MESSAGE(support::max_abs_diff(cheb.spectrum.eigenvalues, dense_eigenvalues(g)) < 1e-7, n, ",", m);
    }
  }
  const auto g = build_graph(20, 7);
  CHECK(support::max_abs_diff(solve_spectrum_chebyshev(g).spectrum.eigenvalues, dense_eigenvalues(g)) < 1e-8);
}

TEST_CASE("exhaustive small-graph equivalence") {
  for (int n = 5; n <= 40; ++n) {
    for (int m = 3; m <= n - 1; ++m) {
      const auto g = build_graph(n, m);
      const auto cheb = solve_spectrum_chebyshev(g);
      REQUIRE(cheb.dense_fallbacks == 0);
      REQUIRE_MESSAGE(support::max_abs_diff(cheb.spectrum.eigenvalues, dense_eigenvalues(g)) < 1e-9, n, ",", m);
    }
  }
}

TEST_CASE("determinant spectrum carries valid eigenvectors") {
  for (auto [n, m] : {std::pair{12, 5}, {41, 11}, {100, 21}, {101, 21}, {64, 33}}) {
    const auto g = build_graph(n, m);
    const auto h = laplacian(g);
    const auto cheb = solve_spectrum_chebyshev(g);
    const auto [res, orth] = support::spectrum_quality(h, cheb.spectrum);
    CHECK(res < 1e-8 * frobenius_norm(h));
    CHECK(orth < 1e-9);
  }
  const auto cyc = solve_spectrum_chebyshev(GraphSpec::cycle(9));
  CHECK(support::max_abs_diff(cyc.spectrum.eigenvalues, eig_symmetric(laplacian(GraphSpec::cycle(9))).eigenvalues) <
        1e-12);
}

TEST_CASE("every root satisfies the factorization") {
  for (auto [n, m] : {std::pair{15, 5}, {50, 16}, {100, 26}}) {
    const auto g = build_graph(n, m);
    for (const auto& r : solve_spectrum_chebyshev(g).roots) {
      const double tn = cheb_t(n, r.x);
      const double scale = determinant_scale(g, r.x);
      CHECK(std::min(std::abs(tn - 1.0), std::abs(theta_factor(g, r.x)) / (scale * scale)) <
            1e-5 * std::max(1.0, std::abs(tn)));
      if (r.branch == RootBranch::Cycle) CHECK(std::abs(tn - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("largest eigenvalue") {
  CHECK(largest_eigenvalue_asymptotic() == doctest::Approx(4.82842712474619).epsilon(1e-14));
  const auto e100_3 = solve_spectrum_chebyshev(build_graph(100, 3)).spectrum.eigenvalues.back();
  CHECK(e100_3 > 4.0);
  const auto e100_50 = solve_spectrum_chebyshev(build_graph(100, 50)).spectrum.eigenvalues.back();
  CHECK(std::abs(e100_50 - largest_eigenvalue_asymptotic()) < 1e-3);
  const auto e200 = solve_spectrum_chebyshev(build_graph(200, 100)).spectrum.eigenvalues.back();
  CHECK(std::abs(e200 - largest_eigenvalue_asymptotic()) < 1e-4);
  // m = 5 sits 0.045 below the limit.
  const auto e100_5 = solve_spectrum_chebyshev(build_graph(100, 5)).spectrum.eigenvalues.back();
  CHECK(e100_5 == doctest::Approx(4.78316).epsilon(1e-5));
  CHECK(std::abs(e100_5 - largest_eigenvalue_asymptotic()) < 0.05);
  CHECK(2.0 - 2.0 * largest_root(build_graph(100, 3)) == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("largest eigenvalue is isolated") {
  for (int n : {20, 40, 80, 150}) {
    for (int m = 5; m <= n / 2 + 1; m += 3) {
      const auto g = build_graph(n, m);
      if (cycle_distance(g, 1, m) < 4) continue;
      const auto e = dense_eigenvalues(g);
      REQUIRE(e[e.size() - 1] - e[e.size() - 2] > 0.5);
      REQUIRE(e[e.size() - 2] <= 4.0 + 1e-12);
    }
  }
}

TEST_CASE("localized eigenstate amplitudes") {
  const auto st = largest_eigenstate(build_graph(100, 50));
  const double target = std::pow(2.0, -0.75);
  CHECK(std::abs(std::abs(st.component(1)) - target) < 2e-3);
  CHECK(std::abs(std::abs(st.component(50)) - target) < 2e-3);
  CHECK(st.residual < 1e-10);

  const auto g = build_graph(100, 20);
  const auto s20 = largest_eigenstate(g);
  const double xm = std::abs(s20.component(20));
  for (int j = 1; j <= 100; ++j) {
    const int d = shortest_chord_distance(g, j);
    if (d < 1 || d > 3) continue;
    const double pred = localized_amplitude_prediction(g, xm, j);
    CHECK_MESSAGE(std::abs(std::abs(s20.component(j)) - pred) / pred < 0.05, "j=", j);
  }
}

TEST_CASE("largest eigenstate agrees with the dense eigenvector") {
  for (auto [n, m] : {std::pair{30, 9}, {100, 20}, {200, 100}}) {
    const auto g = build_graph(n, m);
    const auto st = largest_eigenstate(g);
    const auto dense = eig_symmetric(laplacian(g));
    const auto v = dense.eigenvectors.column(static_cast<std::size_t>(n - 1));
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += v[j] * st.components[j];
    CHECK(std::abs(std::abs(dot) - 1.0) < 1e-10);
    CHECK(st.energy == doctest::Approx(dense.eigenvalues.back()).epsilon(1e-12));
  }
}

TEST_CASE("symmetry-axis components vanish on the theta branch") {
  const auto g = build_graph(101, 21);
  const auto cheb = solve_spectrum_chebyshev(g);
  int checked = 0;
  for (const auto& r : cheb.roots) {
    if (r.branch != RootBranch::Theta) continue;
    const auto st = eigenstate_from_root(g, r.x, r.branch);
    CHECK(std::abs(st.component(11)) < 1e-7);
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("reconstructed eigenstates obey the chord symmetry") {
  for (auto [n, m] : {std::pair{12, 5}, {20, 6}, {31, 10}, {100, 21}, {101, 21}, {60, 30}}) {
    const auto g = build_graph(n, m);
    const auto cheb = solve_spectrum_chebyshev(g);
    for (const auto& r : cheb.roots) {
      AnalyticEigenstate st;
      try {
        st = eigenstate_from_root(g, r.x, r.branch);
      } catch (const DegenerateBasisError&) {
        // Dark cycle modes vanish at both chord ends.
        REQUIRE(r.branch == RootBranch::Cycle);
        continue;
      }
      double norm = 0.0;
      for (double c : st.components) norm += c * c;
      REQUIRE(std::abs(norm - 1.0) < 1e-9);
      REQUIRE(st.residual < 1e-8);
      for (int j = 1; j <= m; ++j) REQUIRE(std::abs(std::abs(st.component(j)) - std::abs(st.component(m + 1 - j))) < 1e-7);
      for (int j = m + 1; j <= n; ++j)
        REQUIRE(std::abs(std::abs(st.component(j)) - std::abs(st.component(m + n + 1 - j))) < 1e-7);
      if (r.branch == RootBranch::Theta) REQUIRE(std::abs(st.component(1) + st.component(m)) < 1e-9);
      if (r.branch == RootBranch::Cycle) REQUIRE(std::abs(st.component(1) - st.component(m)) < 1e-9);
    }
  }
}

TEST_CASE("endpoint propagation agrees with forward propagation inside the band") {
  const auto g = build_graph(40, 13);
  for (const auto& r : solve_spectrum_chebyshev(g).roots) {
    if (r.branch != RootBranch::Theta || r.x < -1.0) continue;
    const auto a = eigenstate_from_root(g, r.x, r.branch);
    const auto b = eigenstate_from_root_endpoints(g, r.x, r.branch);
    CHECK(support::max_abs_diff(a.components, b.components) < 1e-8);
  }
  CHECK_THROWS_AS(eigenstate_from_root(g, 0.123, RootBranch::Theta), DomainError);
}

TEST_CASE("perturbative corrections") {
  const auto p21 = perturbative_spectrum(build_graph(100, 21));
  const auto p3 = perturbative_spectrum(build_graph(100, 3));
  auto minus = [](const PerturbativeSpectrum& p, int n) {
    for (const auto& mode : p.modes)
      if (mode.n == n && mode.sign == -1) return mode.first;
    return -1.0;
  };
  CHECK(std::abs(minus(p21, 25)) < 1e-15);
  CHECK(minus(p3, 25) == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(p21.modes.size() == 100);
  CHECK(perturbative_spectrum(build_graph(101, 4)).modes.size() == 101);
  CHECK(p21.modes.back().first == doctest::Approx(0.0));
  CHECK(perturbative_spectrum(build_graph(100, 4)).modes.back().first == doctest::Approx(0.04));
  for (int n : {30, 31, 100}) {
    for (int m : {3, 7, n / 2}) {
      const auto p = perturbative_spectrum(build_graph(n, m));
      for (const auto& mode : p.modes) {
        CHECK(mode.first >= 0.0);
        CHECK(mode.first <= 8.0 / n + 1e-15);
      }
    }
  }
}

TEST_CASE("zeroth-order pair states are orthonormal") {
  const auto g = build_graph(40, 9);
  const auto p = perturbative_spectrum(g);
  std::vector<std::vector<Complex>> states;
  for (const auto& mode : p.modes) states.push_back(perturbative_state(g, mode));
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = 0; b < states.size(); ++b) {
      Complex dot{0.0, 0.0};
      for (std::size_t j = 0; j < states[a].size(); ++j) dot += std::conj(states[a][j]) * states[b][j];
      REQUIRE(std::abs(dot - Complex{a == b ? 1.0 : 0.0, 0.0}) < 1e-10);
    }
  }
  const auto h = laplacian(g);
  for (std::size_t a = 0; a < states.size(); ++a) {
    Complex e{0.0, 0.0};
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 40; ++j) e += std::conj(states[a][i]) * h(i, j) * states[a][j];
    if (p.modes[a].sign != 0) CHECK(std::abs(e.real() - p.modes[a].energy()) < 1e-10);
  }
}

TEST_CASE("perturbative error shrinks with N") {
  double previous = 1e9;
  for (int n : {50, 100, 200}) {
    const auto g = build_graph(n, 5);
    auto exact = dense_eigenvalues(g);
    auto pert = perturbative_spectrum(g).sorted_energies();
    exact.pop_back();
    pert.pop_back();
    const double err = support::max_abs_diff(exact, pert);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("cycle root shift") {
  CHECK(std::abs(cycle_root_shift(build_graph(100, 21), 25)) < 1e-15);
  CHECK(cycle_root_shift(build_graph(100, 3), 25) == doctest::Approx(0.02).epsilon(1e-12));
  const auto g = build_graph(60, 8);
  const auto p = perturbative_spectrum(g);
  for (const auto& mode : p.modes)
    if (mode.sign == -1) CHECK(4.0 * cycle_root_shift(g, mode.n) == doctest::Approx(mode.first).epsilon(1e-12));
}

TEST_CASE("exchange symmetry m -> n - m + 2") {
  for (int n : {12, 25, 40}) {
    for (int m = 3; m <= n - 1; ++m) {
      const auto a = dense_eigenvalues(build_graph(n, m));
      const auto b = dense_eigenvalues(build_graph(n, n - m + 2));
      REQUIRE(support::max_abs_diff(a, b) < 1e-9);
    }
  }
}

TEST_CASE("cycle root multiplicities") {
  const auto g = build_graph(100, 21);
  int pairs = 0;
  for (int k = 1; k < 50; ++k) pairs += cycle_root_multiplicity(g, k) == 2;
  CHECK(pairs == 9);
  CHECK(cycle_root_multiplicity(g, 50) == 1);
  CHECK(cycle_root_multiplicity(build_graph(100, 20), 50) == 0);
  CHECK(cycle_root_multiplicity(GraphSpec::cycle(10), 3) == 2);
  CHECK_THROWS_AS(cycle_root_multiplicity(g, 51), DomainError);
}
