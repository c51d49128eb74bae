#pragma once

#include <chordwalk/linalg.hpp>
#include <chordwalk/graph.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

namespace support {

using namespace chordwalk;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// BFS on the bare cycle, 1-based.
inline std::vector<int> bfs_cycle(int n, int source) {
  std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : {v == 1 ? n : v - 1, v == n ? 1 : v + 1}) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// exp(-i t H) by scaling and squaring of a long Taylor series.
inline ComplexMatrix taylor_propagator(const Matrix& h, double t) {
  const std::size_t n = h.rows();
  int squarings = 0;
  double scaled = t;
  while (std::abs(scaled) * 8.0 > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex{0.0, -scaled} * h(i, j);
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = multiply(term, a);
    for (auto& v : term.data()) v /= static_cast<double>(k);
    for (std::size_t p = 0; p < n * n; ++p) sum.data()[p] += term.data()[p];
  }
  for (int s = 0; s < squarings; ++s) sum = multiply(sum, sum);
  return sum;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// max_k |H v_k - E_k v_k| and max |V^T V - I|.
inline std::pair<double, double> spectrum_quality(const Matrix& h, const Spectrum& s) {
  const std::size_t n = h.rows();
  double res = 0.0, orth = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double hv = 0.0;
      for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * s.eigenvectors(j, k);
      res = std::max(res, std::abs(hv - s.eigenvalues[k] * s.eigenvectors(i, k)));
    }
    for (std::size_t l = 0; l < n; ++l) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += s.eigenvectors(i, k) * s.eigenvectors(i, l);
      orth = std::max(orth, std::abs(dot - (k == l ? 1.0 : 0.0)));
    }
  }
  return {res, orth};
}

}  // namespace support
