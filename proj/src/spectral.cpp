#include "chordwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "chordwalk/chebyshev.hpp"
#include "chordwalk/errors.hpp"

namespace chordwalk {

namespace {

constexpr double kPi = std::numbers::pi;

int require_chord(const GraphSpec& g) {
  if (!g.has_chord()) throw DomainError("operation needs a graph with a chord");
  return g.chord_end();
}

ChebyshevTable table_for(const GraphSpec& g, double x) { return ChebyshevTable(x, g.size() + 2); }

struct Factors {
  double f;
  double g;
};

}  // namespace

double theta_cofactor(int n, int m, double theta) {
  return std::sin(theta) * std::sin(0.5 * n * theta) +
         2.0 * std::sin(0.5 * (n - m + 1) * theta) * std::sin(0.5 * (m - 1) * theta);
}

namespace {

template <class Fn>
double bisect(Fn&& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if ((fm >= 0.0) == (flo >= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double graph_residual(const GraphSpec& g, const std::vector<double>& v, double energy) {
  const int n = g.size();
  double worst = 0.0;
  for (int j = 1; j <= n; ++j) {
    const int prev = j == 1 ? n : j - 1;
    const int next = j == n ? 1 : j + 1;
    double hv = g.degree(j) * v[j - 1] - v[prev - 1] - v[next - 1];
    if (g.has_chord()) {
      if (j == 1) hv -= v[g.chord_end() - 1];
      if (j == g.chord_end()) hv -= v[0];
    }
    worst = std::max(worst, std::abs(hv - energy * v[j - 1]));
  }
  return worst;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  s = std::sqrt(s);
  for (double& a : v) a /= s;
}

void require_root(const GraphSpec& g, double x) {
  if (!std::isfinite(x)) throw DomainError("root must be finite");
  const double f = determinant_value(g, x);
  if (std::abs(f) > 1e-8 * determinant_scale(g, x))
    throw DomainError("x = " + std::to_string(x) + " is not a root of the determinant equation");
}

AnalyticEigenstate finish(const GraphSpec& g, std::vector<double> v, double x, RootBranch branch) {
  normalize(v);
  AnalyticEigenstate st;
  st.x = x;
  st.energy = 2.0 - 2.0 * x;
  st.branch = branch;
  st.residual = graph_residual(g, v, st.energy);
  st.components = std::move(v);
  return st;
}

// Standing wave about the chord axis c = (m+1)/2 (c = 1 on the pure cycle).
std::vector<double> standing_wave(const GraphSpec& g, int n, bool odd) {
  const int size = g.size();
  const double c = g.has_chord() ? 0.5 * (g.chord_end() + 1) : 1.0;
  const double theta = 2.0 * kPi * n / size;
  std::vector<double> v(static_cast<std::size_t>(size));
  for (int j = 1; j <= size; ++j) v[j - 1] = odd ? std::sin((j - c) * theta) : std::cos((j - c) * theta);
  normalize(v);
  return v;
}

}  // namespace

DeterminantCoefficients determinant_coefficients(const GraphSpec& g, double x) {
  const int m = require_chord(g);
  const int n = g.size();
  const auto t = table_for(g, x);
  auto U = [&](int k) { return t.u(k); };
  const double p = (2.0 * x + 1.0) * U(m - 2) - U(m - 3);
  const double q = U(m - 4) - (2.0 * x + 1.0) * U(m - 3) - 1.0;
  DeterminantCoefficients c{};
  c.c1 = U(n - m) * p - U(n - m - 1) * U(m - 2);
  c.c2 = U(n - m) * q + U(n - m - 1) * U(m - 3) - 1.0;
  c.c3 = U(n - m - 1) * p - U(n - m - 2) * U(m - 2) + U(m - 2) + 1.0;
  c.c4 = U(n - m - 1) * q + U(n - m - 2) * U(m - 3) - U(m - 3) - (2.0 * x + 1.0);
  return c;
}

double determinant_value(const GraphSpec& g, double x) {
  const int m = require_chord(g);
  const int n = g.size();
  const auto t = table_for(g, x);
  return 1.0 + t.u(n - m) + t.u(m - 2) - t.u(n - 1) - t.t(n);
}

double theta_factor(const GraphSpec& g, double x) {
  const int m = require_chord(g);
  const int n = g.size();
  const auto t = table_for(g, x);
  const double um2 = t.u(m - 2), tn = t.t(n), un1 = t.u(n - 1);
  return 2.0 * um2 * um2 - 2.0 * (tn + un1 - 1.0) * um2 - (tn + 2.0 * un1 - 1.0);
}

double companion_factor(const GraphSpec& g, double x) {
  const int m = require_chord(g);
  const int n = g.size();
  const auto t = table_for(g, x);
  const double tn = t.t(n), un1 = t.u(n - 1);
  return un1 * t.t(m - 1) + t.u(m - 2) * (tn - 1.0) + tn + un1 - 1.0;
}

double determinant_scale(const GraphSpec& g, double x) {
  const int m = require_chord(g);
  const int n = g.size();
  const auto t = table_for(g, x);
  return std::max({1.0, std::abs(t.t(n)), std::abs(t.u(n - 1)), std::abs(t.u(n - m)), std::abs(t.u(m - 2))});
}

double largest_eigenvalue_asymptotic() { return 2.0 + 2.0 * std::numbers::sqrt2; }

int cycle_root_multiplicity(const GraphSpec& g, int n) {
  const int size = g.size();
  if (n < 0 || 2 * n > size) throw DomainError("cycle root index out of range");
  if (n == 0) return 1;
  if (2 * n == size) {
    if (!g.has_chord()) return 1;
    return g.chord_end() % 2 == 1 ? 1 : 0;
  }
  if (!g.has_chord()) return 2;
  return (static_cast<long long>(n) * (g.chord_end() - 1)) % size == 0 ? 2 : 1;
}

double largest_root(const GraphSpec& g) {
  require_chord(g);
  const int n = g.size();
  const int m = g.chord_end();
  // x = -cosh(s) on [-2, -1): F through closed forms, scaled by |z|^-N.
  auto f = [n, m](double s) {
    const ChebValue cv(-std::cosh(s));
    const double w = std::exp(-n * s);
    return w * (1.0 + cv.u(n - m) + cv.u(m - 2) - cv.u(n - 1) - cv.t(n));
  };
  constexpr int kSteps = 4000;
  const double s_max = std::acosh(2.0);
  std::vector<double> roots;
  double prev_s = s_max / kSteps;
  double prev_f = f(prev_s);
  for (int i = 2; i <= kSteps; ++i) {
    const double s = s_max * i / kSteps;
    const double fs = f(s);
    if ((fs >= 0.0) != (prev_f >= 0.0)) roots.push_back(bisect(f, prev_s, s));
    prev_s = s;
    prev_f = fs;
  }
  if (roots.size() != 1)
    throw RootCountError("expected one root below x = -1, found " + std::to_string(roots.size()));
  return -std::cosh(roots.front());
}

AnalyticEigenstate eigenstate_from_root_endpoints(const GraphSpec& g, double x, RootBranch branch) {
  const int m = require_chord(g);
  const int n = g.size();
  require_root(g, x);
  const auto t = table_for(g, x);
  auto U = [&](int k) { return t.u(k); };
  const double a = U(m - 2), b = U(n - m);
  const double den = U(n - 1) + a * b;
  if (std::abs(a) < 1e-9 * (m - 1) || std::abs(b) < 1e-9 * (n - m + 1) ||
      std::abs(den) < 1e-9 * std::max(std::abs(U(n - 1)), std::abs(a * b)))
    throw DegenerateBasisError("endpoint propagation is singular at this root");
  std::vector<double> v(static_cast<std::size_t>(n));
  const double xm = 1.0;
  const double x1 = (a + b + a * b) / den;
  v[0] = x1;
  v[m - 1] = xm;
  for (int i = 2; i < m; ++i) v[i - 1] = (xm * U(i - 2) + x1 * U(m - i - 1)) / a;
  for (int i = m + 1; i <= n; ++i) v[i - 1] = (x1 * U(i - m - 1) + xm * U(n - i)) / b;
  return finish(g, std::move(v), x, branch);
}

AnalyticEigenstate eigenstate_from_root(const GraphSpec& g, double x, RootBranch branch) {
  const int m = require_chord(g);
  const int n = g.size();
  if (x < -1.0) return eigenstate_from_root_endpoints(g, x, branch);
  require_root(g, x);
  const auto t = table_for(g, x);
  auto U = [&](int k) { return t.u(k); };
  const double c1 = U(n - 1) + U(n - m) * U(m - 2);
  const double c2 = -U(n - 2) - U(n - m) * U(m - 3) - U(n - m) - 1.0;
  const double c2p = U(n - m - 1) + U(n - m) * U(m - 1) + U(m - 1) + U(m - 2) - U(n - 1);
  const double scale = determinant_scale(g, x);
  if (std::abs(c1) < 1e-9 * std::max(scale, std::abs(U(n - m) * U(m - 2))))
    throw DegenerateBasisError("c1 vanishes at x = " + std::to_string(x));
  std::vector<double> v(static_cast<std::size_t>(n));
  v[m - 1] = 1.0;
  v[m - 2] = -c2 / c1;
  v[n - 1] = c2p / c1;
  for (int i = 1; i <= m - 2; ++i) v[i - 1] = U(m - i - 1) * v[m - 2] - U(m - i - 2) * v[m - 1];
  for (int i = m + 1; i <= n - 1; ++i) v[i - 1] = U(n - i) * v[n - 1] - U(n - i - 1) * v[0];
  return finish(g, std::move(v), x, branch);
}

AnalyticEigenstate largest_eigenstate(const GraphSpec& g) {
  return eigenstate_from_root(g, largest_root(g), RootBranch::Theta);
}

double localized_amplitude_prediction(const GraphSpec& g, double amplitude_m, int j) {
  const double z0 = 1.0 + std::numbers::sqrt2;
  return std::abs(amplitude_m) * std::pow(z0, -shortest_chord_distance(g, j));
}

namespace {

std::vector<double> theta_roots(const GraphSpec& g, int grid) {
  const int n = g.size();
  const int m = g.chord_end();
  auto q = [n, m](double th) { return theta_cofactor(n, m, th); };
  // Half-step offset keeps cycle points theta = 2 pi k / N off the grid.
  auto node = [grid](int i) { return kPi * (i + 0.5) / grid; };
  std::vector<double> out;
  double prev_th = node(0);
  double prev_q = q(prev_th);
  for (int i = 1; i < grid; ++i) {
    const double th = node(i);
    const double qth = q(th);
    if ((qth >= 0.0) != (prev_q >= 0.0)) {
      const double root = bisect(q, prev_th, th);
      // A zero of Q on a cycle point is the second member of an exact
      // degenerate pair, already supplied by the cycle branch.
      const double k = root * n / (2.0 * kPi);
      const bool on_cycle = std::abs(k - std::round(k)) * 2.0 * kPi / n < 1e-9;
      if (!on_cycle) out.push_back(std::cos(root));
    }
    prev_th = th;
    prev_q = qth;
  }
  return out;
}

}  // namespace

ChebyshevSpectrum solve_spectrum_chebyshev(const GraphSpec& g) {
  const int n = g.size();
  ChebyshevSpectrum out;
  std::vector<std::pair<SpectralRoot, std::vector<double>>> found;
  for (int k = 0; 2 * k <= n; ++k) {
    const int mult = cycle_root_multiplicity(g, k);
    const double x = std::cos(2.0 * kPi * k / n);
    for (int r = 0; r < mult; ++r)
      found.push_back({{x, 2.0 - 2.0 * x, RootBranch::Cycle, k}, standing_wave(g, k, r == 1)});
  }

  if (g.has_chord()) {
    const int expected = n - 1 - static_cast<int>(found.size());
    int grid = 20 * n;
    std::vector<double> xs = theta_roots(g, grid);
    while (static_cast<int>(xs.size()) != expected && out.refinements < 10) {
      grid *= 2;
      ++out.refinements;
      xs = theta_roots(g, grid);
    }
    out.grid_points = grid;
    if (static_cast<int>(xs.size()) != expected)
      throw RootCountError("theta branch has " + std::to_string(xs.size()) + " roots, expected " +
                           std::to_string(expected));
    xs.push_back(largest_root(g));

    std::optional<Spectrum> dense;
    for (double x : xs) {
      std::optional<AnalyticEigenstate> st;
      for (int form = 0; form < 2 && !st; ++form) {
        try {
          auto cand = form == 0 ? eigenstate_from_root(g, x, RootBranch::Theta)
                                : eigenstate_from_root_endpoints(g, x, RootBranch::Theta);
          if (cand.residual < 1e-8) st = std::move(cand);
        } catch (const DegenerateBasisError&) {
        }
      }
      std::vector<double> v;
      if (st) {
        v = std::move(st->components);
      } else {
        if (!dense) dense = eig_symmetric(laplacian(g));
        const double e = 2.0 - 2.0 * x;
        std::size_t best = 0;
        for (std::size_t k = 1; k < dense->size(); ++k)
          if (std::abs(dense->eigenvalues[k] - e) < std::abs(dense->eigenvalues[best] - e)) best = k;
        v = dense->eigenvectors.column(best);
        ++out.dense_fallbacks;
      }
      found.push_back({{x, 2.0 - 2.0 * x, RootBranch::Theta, -1}, std::move(v)});
    }
  }

  if (static_cast<int>(found.size()) != n)
    throw RootCountError("found " + std::to_string(found.size()) + " roots for N = " + std::to_string(n));
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& l, const auto& r) { return l.first.energy < r.first.energy; });
  out.spectrum.source = SpectrumSource::DeterminantEquation;
  out.spectrum.eigenvalues.resize(static_cast<std::size_t>(n));
  out.spectrum.eigenvectors = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < found.size(); ++k) {
    out.spectrum.eigenvalues[k] = found[k].first.energy;
    out.roots.push_back(found[k].first);
    for (std::size_t i = 0; i < found.size(); ++i) out.spectrum.eigenvectors(i, k) = found[k].second[i];
  }
  return out;
}

std::vector<double> PerturbativeSpectrum::sorted_energies() const {
  std::vector<double> e;
  e.reserve(modes.size());
  for (const auto& mode : modes) e.push_back(mode.energy());
  std::sort(e.begin(), e.end());
  return e;
}

PerturbativeSpectrum perturbative_spectrum(const GraphSpec& g) {
  const int m = require_chord(g);
  const int n = g.size();
  PerturbativeSpectrum out;
  out.n = n;
  out.m = m;
  out.lambda = g.parity_flag();
  out.modes.push_back({0, 0, 0.0, 0.0, 0.0});
  for (int k = 1; k <= n / 2 - out.lambda; ++k) {
    const double theta = 2.0 * kPi * k / n;
    const double zeroth = 2.0 - 2.0 * std::cos(theta);
    out.modes.push_back({k, +1, theta, zeroth, 0.0});
    out.modes.push_back({k, -1, theta, zeroth, 4.0 / n * (1.0 - std::cos((m - 1) * theta))});
  }
  if (out.lambda == 1) {
    const double first = 2.0 / n * (1.0 + (m % 2 == 0 ? 1.0 : -1.0));
    out.modes.push_back({n / 2, 0, kPi, 4.0, first});
  }
  return out;
}

std::vector<Complex> perturbative_state(const GraphSpec& g, const PerturbativeMode& mode) {
  const int m = require_chord(g);
  const int n = g.size();
  std::vector<Complex> v(static_cast<std::size_t>(n));
  if (mode.sign == 0) {
    for (int j = 1; j <= n; ++j) v[j - 1] = std::polar(1.0 / std::sqrt(n), -j * mode.theta);
    return v;
  }
  const double amp = 1.0 / std::sqrt(2.0 * n);
  for (int j = 1; j <= n; ++j)
    v[j - 1] = amp * (std::polar(1.0, j * mode.theta) +
                      static_cast<double>(mode.sign) * std::polar(1.0, -(j - m - 1) * mode.theta));
  return v;
}

double cycle_root_shift(const GraphSpec& g, int n) {
  const int m = require_chord(g);
  const double x0 = std::cos(2.0 * kPi * n / g.size());
  return (1.0 - cheb_t(m - 1, x0)) / g.size();
}

}  // namespace chordwalk
