#pragma once

#include <optional>

#include "chordwalk/matrix.hpp"

namespace chordwalk {

/// A cycle of n nodes labelled 1..n, optionally with one chord joining
/// node 1 and node m. Labels are 1-based throughout the public API.
class GraphSpec {
 public:
  /// G(n, m). Requires n >= 5 and 3 <= m <= n-1.
  static GraphSpec with_chord(int n, int m);
  /// The unperturbed cycle baseline. Requires n >= 3.
  static GraphSpec cycle(int n);

  int size() const { return n_; }
  bool has_chord() const { return m_.has_value(); }
  /// Chord endpoint m. Throws DomainError on a pure cycle.
  int chord_end() const;
  /// 1 for even n, 0 for odd n.
  int parity_flag() const { return n_ % 2 == 0 ? 1 : 0; }
  int degree(int j) const;
  bool contains(int j) const { return j >= 1 && j <= n_; }

  bool operator==(const GraphSpec&) const = default;

 private:
  GraphSpec(int n, std::optional<int> m) : n_(n), m_(m) {}

  int n_;
  std::optional<int> m_;
};

GraphSpec build_graph(int n, int m);

/// Laplacian with degree on the diagonal and -1 for every edge.
Matrix laplacian(const GraphSpec& g);

/// Distance between a and b along the cycle, ignoring the chord.
int cycle_distance(const GraphSpec& g, int a, int b);

/// min(d(j,1), d(j,m)) measured on the cycle.
int shortest_chord_distance(const GraphSpec& g, int j);

}  // namespace chordwalk
