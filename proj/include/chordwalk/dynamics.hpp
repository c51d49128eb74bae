#pragma once

#include <vector>

#include "chordwalk/graph.hpp"
#include "chordwalk/linalg.hpp"
#include "chordwalk/spectral.hpp"

namespace chordwalk {

/// Exact pi_{k,j}(t) from the spectral sum.
EvolutionSeries transition_probabilities(const Spectrum& spec, int start, const std::vector<double>& times);

/// t_0, t_0 + dt, ... up to and including t_1 (within rounding).
std::vector<double> uniform_time_grid(double t0, double t1, double dt);

/// Least-squares slope of log pi_{j,j} against log t over the local maxima
/// of the return probability inside [t1, t2]. Throws DomainError when the
/// window holds fewer than two usable points.
double decay_exponent(const EvolutionSeries& series, double t1, double t2);

struct LimitingDistribution {
  int start = 1;
  std::vector<double> chi;  // chi[k-1] = chi_{k,j}
  double degeneracy_tol = 0.0;

  double at(int k) const { return chi[static_cast<std::size_t>(k - 1)]; }
};

/// 1e-8 times the spectral range.
double default_degeneracy_tol(const Spectrum& spec);

/// chi_{k,j} = sum over degenerate groups g of (sum_{n in g} <k|n><n|j>)^2.
/// A non-positive tolerance selects the default.
LimitingDistribution limiting_distribution(const Spectrum& spec, int start, double degeneracy_tol = 0.0);

/// Full chi matrix, chi(k-1, j-1).
Matrix limiting_matrix(const Spectrum& spec, double degeneracy_tol = 0.0);

/// |x'_j|^2 |x'_k|^2 + 1/N - 1/N^2 + (1/2N^2)[R(j-k) + R(j+k-m-1)] with
/// R(a) = sin(2 pi a (1 - lambda/N)) / sin(2 pi a / N), R = N - lambda at the
/// removable singularities.
double limiting_approximation(const GraphSpec& g, int j, int k, const AnalyticEigenstate& largest_state);

/// (1/8)(1 + sqrt 2)^{-2(d_j + d_k)}.
double localization_lower_bound(const GraphSpec& g, int j, int k);

}  // namespace chordwalk
