#include "chordwalk/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "chordwalk/errors.hpp"

namespace chordwalk {

GraphSpec GraphSpec::with_chord(int n, int m) {
  if (n < 5) throw DomainError("G(n,m) needs n >= 5, got n=" + std::to_string(n));
  if (m < 3 || m > n - 1) {
    throw DomainError("chord endpoint m must lie in [3, n-1], got m=" + std::to_string(m) +
                      " for n=" + std::to_string(n));
  }
  return GraphSpec(n, m);
}

GraphSpec GraphSpec::cycle(int n) {
  if (n < 3) throw DomainError("cycle needs n >= 3, got n=" + std::to_string(n));
  return GraphSpec(n, std::nullopt);
}

int GraphSpec::chord_end() const {
  if (!m_) throw DomainError("pure cycle has no chord");
  return *m_;
}

int GraphSpec::degree(int j) const {
  if (!contains(j)) throw DomainError("node " + std::to_string(j) + " out of range");
  if (m_ && (j == 1 || j == *m_)) return 3;
  return 2;
}

GraphSpec build_graph(int n, int m) { return GraphSpec::with_chord(n, m); }

Matrix laplacian(const GraphSpec& g) {
  const auto n = static_cast<std::size_t>(g.size());
  Matrix h(n, n);
  auto link = [&h](std::size_t a, std::size_t b) {
    h(a, b) -= 1.0;
    h(b, a) -= 1.0;
    h(a, a) += 1.0;
    h(b, b) += 1.0;
  };
  for (std::size_t i = 0; i < n; ++i) link(i, (i + 1) % n);
  if (g.has_chord()) link(0, static_cast<std::size_t>(g.chord_end() - 1));
  return h;
}

int cycle_distance(const GraphSpec& g, int a, int b) {
  if (!g.contains(a) || !g.contains(b)) throw DomainError("node out of range");
  const int d = std::abs(a - b);
  return std::min(d, g.size() - d);
}

int shortest_chord_distance(const GraphSpec& g, int j) {
  if (!g.contains(j)) {
    throw DomainError("node " + std::to_string(j) + " out of range [1, " + std::to_string(g.size()) + "]");
  }
  return std::min(cycle_distance(g, j, 1), cycle_distance(g, j, g.chord_end()));
}

}  // namespace chordwalk
