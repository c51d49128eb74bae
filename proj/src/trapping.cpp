#include "chordwalk/trapping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "chordwalk/errors.hpp"
#include "chordwalk/spectral.hpp"

namespace chordwalk {

void validate(const TrapConfig& cfg) {
  const int n = cfg.graph.size();
  if (cfg.traps.empty()) throw DomainError("trap set is empty");
  std::set<int> seen;
  for (int t : cfg.traps) {
    if (!cfg.graph.contains(t)) throw DomainError("trap node " + std::to_string(t) + " out of range");
    if (!seen.insert(t).second) throw DomainError("duplicate trap node " + std::to_string(t));
  }
  if (static_cast<int>(cfg.traps.size()) >= n) throw DomainError("need fewer traps than nodes");
  if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) throw DomainError("trap strength must be >= 0");
}

ComplexMatrix effective_hamiltonian(const TrapConfig& cfg) {
  validate(cfg);
  ComplexMatrix h = to_complex(laplacian(cfg.graph));
  for (int t : cfg.traps) h(t - 1, t - 1) -= Complex{0.0, cfg.gamma};
  return h;
}

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<bool> trap_mask(const TrapConfig& cfg) {
  std::vector<bool> mask(static_cast<std::size_t>(cfg.graph.size()), false);
  for (int t : cfg.traps) mask[t - 1] = true;
  return mask;
}

// Columns are the non-trap start nodes.
ComplexMatrix start_block(const std::vector<bool>& mask) {
  const std::size_t n = mask.size();
  const std::size_t free = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), false));
  ComplexMatrix p(n, free);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (!mask[j]) p(j, col++) = 1.0;
  return p;
}

struct BlockStats {
  double survival;
  double mean_norm;
  std::vector<double> column_norms;
};

BlockStats block_stats(const ComplexMatrix& p, const std::vector<bool>& mask) {
  BlockStats s{0.0, 0.0, std::vector<double>(p.cols(), 0.0)};
  for (std::size_t k = 0; k < p.rows(); ++k) {
    const auto row = p.row(k);
    for (std::size_t c = 0; c < p.cols(); ++c) {
      const double w = std::norm(row[c]);
      s.column_norms[c] += w;
      if (!mask[k]) s.survival += w;
    }
  }
  const double cols = static_cast<double>(p.cols());
  s.survival /= cols;
  s.mean_norm = std::accumulate(s.column_norms.begin(), s.column_norms.end(), 0.0) / cols;
  return s;
}

double survival_of(const ComplexMatrix& u, const std::vector<bool>& mask) {
  double s = 0.0;
  std::size_t cols = 0;
  for (std::size_t j = 0; j < u.cols(); ++j) {
    if (mask[j]) continue;
    ++cols;
    for (std::size_t k = 0; k < u.rows(); ++k)
      if (!mask[k]) s += std::norm(u(k, j));
  }
  return s / static_cast<double>(cols);
}

}  // namespace

double spectral_norm(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  if (n == 0) return 0.0;
  std::vector<Complex> v(n, Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  std::vector<Complex> w(a.rows()), u(n);
  double sigma = 0.0;
  for (int it = 0; it < 500; ++it) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
      w[i] = acc;
    }
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t i = 0; i < a.rows(); ++i) acc += std::conj(a(i, j)) * w[i];
      u[j] = acc;
    }
    double norm = 0.0;
    for (const auto& x : u) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    const double next = std::sqrt(norm);
    for (std::size_t j = 0; j < n; ++j) v[j] = u[j] / norm;
    if (std::abs(next - sigma) < 1e-15 * next) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

TrapResult survival_probability(const TrapConfig& cfg, const TrapOptions& opts) {
  const ComplexMatrix h = effective_hamiltonian(cfg);
  const int n = cfg.graph.size();
  const double t_max = opts.t_max > 0.0 ? opts.t_max : 10.0 * n;
  if (!std::isfinite(t_max) || opts.t_max < 0.0) throw DomainError("t_max must be positive and finite");
  if (!(opts.sample_interval > 0.0) || !std::isfinite(opts.sample_interval))
    throw DomainError("sample interval must be positive");
  const double dt_req = opts.dt > 0.0 ? opts.dt : default_rk4_step(h);
  if (opts.dt < 0.0) throw DomainError("dt must be positive");
  check_rk4_step(h, dt_req);
  const int threads = resolve_threads(opts.threads);

  const auto per_sample = static_cast<unsigned long long>(std::ceil(opts.sample_interval / dt_req - 1e-9));
  TrapResult out;
  out.dt = opts.sample_interval / static_cast<double>(per_sample);
  const ComplexMatrix step = rk4_step_matrix(h, out.dt);
  out.step_norm_bound = spectral_norm(step);
  const ComplexMatrix sample = matrix_power(step, per_sample, threads);

  const auto mask = trap_mask(cfg);
  ComplexMatrix p = start_block(mask);
  const auto samples = static_cast<long long>(std::ceil(t_max / opts.sample_interval - 1e-9));
  auto stats = block_stats(p, mask);
  auto record = [&](double t) {
    out.times.push_back(t);
    out.survival.push_back(stats.survival);
    out.mean_norm.push_back(stats.mean_norm);
  };
  record(0.0);
  for (long long s = 1; s <= samples; ++s) {
    p = multiply(sample, p, threads);
    auto next = block_stats(p, mask);
    for (std::size_t c = 0; c < next.column_norms.size(); ++c)
      if (next.column_norms[c] > stats.column_norms[c] + 1e-8) out.norm_monotone = false;
    stats = std::move(next);
    record(static_cast<double>(s) * opts.sample_interval);
  }

  const double t_tail = 0.75 * out.times.back();
  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    if (out.times[i] < t_tail) continue;
    sum += out.survival[i];
    sum_sq += out.survival[i] * out.survival[i];
    ++count;
  }
  out.plateau = sum / static_cast<double>(count);
  out.plateau_stddev = std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - out.plateau * out.plateau));
  out.converged = out.plateau_stddev < 0.1 * out.plateau;

  const bool node_one = cfg.traps.size() == 1 && cfg.traps.front() == 1 && cfg.graph.has_chord();
  if (node_one) {
    out.predicted_plateau = plateau_prediction(cfg.graph);
    out.asymptotic_plateau = asymptotic_survival(cfg.graph);
    out.gammas = perturbative_gammas(cfg);
    out.zero_gamma_count = count_zero_gammas(out.gammas, cfg.gamma);
  }
  return out;
}

std::vector<double> survival_window(const TrapConfig& cfg, const std::vector<double>& times, double dt,
                                    int threads) {
  const ComplexMatrix h = effective_hamiltonian(cfg);
  const double step_dt = dt > 0.0 ? dt : 0.002;
  check_rk4_step(h, step_dt);
  const int workers = resolve_threads(threads);
  const ComplexMatrix step = rk4_step_matrix(h, step_dt);
  const auto mask = trap_mask(cfg);

  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  std::vector<double> out(times.size());
  ComplexMatrix u = ComplexMatrix::identity(h.rows());
  unsigned long long done = 0;
  for (std::size_t idx : order) {
    const double t = times[idx];
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("survival times must be finite and >= 0");
    const auto target = static_cast<unsigned long long>(std::llround(t / step_dt));
    if (target > done) {
      u = multiply(matrix_power(step, target - done, workers), u, workers);
      done = target;
    }
    out[idx] = survival_of(u, mask);
  }
  return out;
}

std::vector<double> perturbative_gammas(const TrapConfig& cfg) {
  validate(cfg);
  if (cfg.traps.size() != 1 || cfg.traps.front() != 1)
    throw DomainError("perturbative trap rates assume a single trap at node 1");
  const auto pert = perturbative_spectrum(cfg.graph);
  std::vector<double> gammas;
  gammas.reserve(pert.modes.size());
  for (const auto& mode : pert.modes) {
    const auto state = perturbative_state(cfg.graph, mode);
    gammas.push_back(cfg.gamma * std::norm(state.front()));
  }
  return gammas;
}

int count_zero_gammas(const std::vector<double>& gammas, double gamma) {
  const double tol = 1e-12 * std::max(gamma, 1.0);
  return static_cast<int>(std::count_if(gammas.begin(), gammas.end(), [tol](double g) { return std::abs(g) < tol; }));
}

double plateau_prediction(const GraphSpec& g) {
  const int n = g.size();
  const int m = g.chord_end();
  if (n % (2 * (m - 1)) != 0) return 0.0;
  return static_cast<double>(m - 1 - g.parity_flag()) / (n - 1);
}

int dark_state_count(const GraphSpec& g) {
  const int n = g.size();
  const long long m1 = g.chord_end() - 1;
  int count = 0;
  for (long long k = 1; 2 * k < n; ++k)
    if ((2 * k * m1) % n == 0) ++count;
  return count;
}

double asymptotic_survival(const GraphSpec& g) {
  return static_cast<double>(dark_state_count(g)) / (g.size() - 1);
}

std::vector<double> survival_approximation(const std::vector<double>& gammas, int n, int traps,
                                           const std::vector<double>& times) {
  if (traps < 1 || traps >= n) throw DomainError("need 1 <= M < N");
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    double s = 0.0;
    for (double g : gammas) s += std::exp(-2.0 * g * t);
    out.push_back(s / (n - traps));
  }
  return out;
}

}  // namespace chordwalk
