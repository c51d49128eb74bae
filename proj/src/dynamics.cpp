#include "chordwalk/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "chordwalk/errors.hpp"

namespace chordwalk {

EvolutionSeries transition_probabilities(const Spectrum& spec, int start, const std::vector<double>& times) {
  return evolve_hermitian(spec, start, times);
}

std::vector<double> uniform_time_grid(double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) throw DomainError("time grid needs dt > 0 and t1 >= t0");
  const auto steps = static_cast<long long>(std::floor((t1 - t0) / dt + 1e-9));
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(steps + 1));
  for (long long i = 0; i <= steps; ++i) t.push_back(t0 + static_cast<double>(i) * dt);
  return t;
}

double decay_exponent(const EvolutionSeries& series, double t1, double t2) {
  std::vector<std::size_t> window;
  for (std::size_t i = 0; i < series.times.size(); ++i)
    if (series.times[i] >= t1 && series.times[i] <= t2) window.push_back(i);
  if (window.empty()) throw DomainError("decay window contains no samples");

  auto p = [&](std::size_t i) { return series.probability(i, series.start); };
  std::vector<double> lx, ly;
  for (std::size_t w = 0; w < window.size(); ++w) {
    const std::size_t i = window[w];
    const bool left = i == 0 || p(i) >= p(i - 1);
    const bool right = i + 1 == series.times.size() || p(i) >= p(i + 1);
    if (!(left && right)) continue;
    if (series.times[i] <= 0.0 || p(i) <= 0.0) continue;
    lx.push_back(std::log(series.times[i]));
    ly.push_back(std::log(p(i)));
  }
  if (lx.size() < 2) throw DomainError("decay window holds fewer than two envelope points");
  const double nn = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= nn;
  my /= nn;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("decay window spans a single time");
  return sxy / sxx;
}

double default_degeneracy_tol(const Spectrum& spec) {
  if (spec.eigenvalues.empty()) return 1e-8;
  const double range = spec.eigenvalues.back() - spec.eigenvalues.front();
  return 1e-8 * std::max(range, 1.0);
}

namespace {

// [begin, end) index ranges of eigenvalue clusters.
std::vector<std::pair<std::size_t, std::size_t>> degenerate_groups(const Spectrum& spec, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= spec.size(); ++k) {
    if (k == spec.size() || spec.eigenvalues[k] - spec.eigenvalues[k - 1] > tol) {
      groups.emplace_back(begin, k);
      begin = k;
    }
  }
  return groups;
}

}  // namespace

LimitingDistribution limiting_distribution(const Spectrum& spec, int start, double degeneracy_tol) {
  const std::size_t n = spec.size();
  if (start < 1 || static_cast<std::size_t>(start) > n) throw DomainError("start node out of range");
  const double tol = degeneracy_tol > 0.0 ? degeneracy_tol : default_degeneracy_tol(spec);
  const auto groups = degenerate_groups(spec, tol);
  const auto& v = spec.eigenvectors;
  const std::size_t j = static_cast<std::size_t>(start - 1);
  LimitingDistribution out;
  out.start = start;
  out.degeneracy_tol = tol;
  out.chi.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (const auto& [b, e] : groups) {
      double proj = 0.0;
      for (std::size_t l = b; l < e; ++l) proj += v(k, l) * v(j, l);
      sum += proj * proj;
    }
    out.chi[k] = sum;
  }
  return out;
}

Matrix limiting_matrix(const Spectrum& spec, double degeneracy_tol) {
  const std::size_t n = spec.size();
  Matrix chi(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = limiting_distribution(spec, static_cast<int>(j + 1), degeneracy_tol);
    for (std::size_t k = 0; k < n; ++k) chi(k, j) = col.chi[k];
  }
  return chi;
}

double limiting_approximation(const GraphSpec& g, int j, int k, const AnalyticEigenstate& largest_state) {
  if (!g.has_chord()) throw DomainError("limiting approximation needs a chord");
  if (!g.contains(j) || !g.contains(k)) throw DomainError("node out of range");
  const int n = g.size();
  const int m = g.chord_end();
  const double lambda = g.parity_flag();
  const double nn = n;
  auto ratio = [&](int a) {
    // Removable singularity whenever 2a/N is an integer.
    if ((2 * static_cast<long long>(a)) % n == 0) return nn - lambda;
    const double den = std::sin(2.0 * std::numbers::pi * a / nn);
    return std::sin(2.0 * std::numbers::pi * a * (1.0 - lambda / nn)) / den;
  };
  const double xj = largest_state.component(j);
  const double xk = largest_state.component(k);
  return xj * xj * xk * xk + 1.0 / nn - 1.0 / (nn * nn) +
         (ratio(j - k) + ratio(j + k - m - 1)) / (2.0 * nn * nn);
}

double localization_lower_bound(const GraphSpec& g, int j, int k) {
  const int d = shortest_chord_distance(g, j) + shortest_chord_distance(g, k);
  return 0.125 * std::pow(1.0 + std::numbers::sqrt2, -2.0 * d);
}

}  // namespace chordwalk
