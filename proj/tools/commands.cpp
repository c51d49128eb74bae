#include "commands.hpp"

#include <chordwalk/chebyshev.hpp>
#include <chordwalk/dynamics.hpp>
#include <chordwalk/errors.hpp>
#include <chordwalk/spectral.hpp>
#include <chordwalk/trapping.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace cli {

using namespace chordwalk;

namespace {

constexpr double kSolverTolerance = 1e-6;

nlohmann::ordered_json echo(const RunRequest& req) {
  nlohmann::ordered_json r;
  r["command"] = req.command;
  r["n"] = req.n;
  if (req.m)
    r["m"] = *req.m;
  else
    r["m"] = "none";
  r["start"] = req.start;
  // Unset time parameters echo as null.
  r["t_max"] = req.t_max > 0.0 ? nlohmann::ordered_json(req.t_max) : nlohmann::ordered_json();
  r["dt"] = req.dt > 0.0 ? nlohmann::ordered_json(req.dt) : nlohmann::ordered_json();
  r["gamma"] = req.gamma;
  r["solver"] = solver_name(req.solver);
  r["format"] = req.format;
  return r;
}

Table with_meta(const RunRequest& req) {
  Table t;
  t.meta["request"] = echo(req);
  t.meta["energy_convention"] = "E = 2 - 2x, H = graph Laplacian";
  return t;
}

Spectrum spectrum_for(const RunRequest& req, Table& t) {
  const auto g = req.graph();
  Spectrum s = req.solver == Solver::Chebyshev ? solve_spectrum_chebyshev(g).spectrum : eig_symmetric(laplacian(g));
  t.meta["spectrum_source"] = std::string(source_name(s.source));
  return s;
}

std::vector<double> iota_column(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

}  // namespace

std::string solver_name(Solver s) {
  switch (s) {
    case Solver::Dense: return "dense";
    case Solver::Chebyshev: return "chebyshev";
    case Solver::Both: return "both";
  }
  return "dense";
}

GraphSpec RunRequest::graph() const { return m ? build_graph(n, *m) : GraphSpec::cycle(n); }

void validate(const RunRequest& req) {
  const auto g = req.graph();
  if (!g.contains(req.start)) throw DomainError("start node must lie in [1, " + std::to_string(req.n) + "]");
  if (req.t_max == 0.0 || (req.t_max < 0.0 && req.t_max != -1.0)) throw DomainError("t-max must be positive");
  if (req.dt == 0.0 || (req.dt < 0.0 && req.dt != -1.0)) throw DomainError("dt must be positive");
  if (req.gamma < 0.0) throw DomainError("gamma must be non-negative");
  if (req.format != "csv" && req.format != "json") throw DomainError("format must be csv or json");
  if (req.command == "eigenstate" && !req.m) throw DomainError("eigenstate needs a chord");
  if (req.command == "evolve" && req.dt > 0.0 && req.t_max > 0.0 && req.dt > req.t_max)
    throw DomainError("dt exceeds t-max");
  if (req.command == "trap") {
    TrapConfig cfg{g, {1}, req.gamma};
    chordwalk::validate(cfg);
    if (req.dt > 0.0) check_rk4_step(effective_hamiltonian(cfg), req.dt);
  }
}

Table cmd_spectrum(const RunRequest& req) {
  Table t = with_meta(req);
  const auto g = req.graph();
  t.add("index", iota_column(req.n));
  if (req.solver == Solver::Chebyshev) {
    const auto cheb = solve_spectrum_chebyshev(g);
    t.meta["spectrum_source"] = std::string(source_name(cheb.spectrum.source));
    t.meta["grid_points"] = cheb.grid_points;
    t.add("eigenvalue", cheb.spectrum.eigenvalues);
    return t;
  }
  const auto dense = eig_symmetric(laplacian(g));
  t.meta["spectrum_source"] = std::string(source_name(dense.source));
  t.add("eigenvalue", dense.eigenvalues);
  if (req.solver == Solver::Both) {
    const auto cheb = solve_spectrum_chebyshev(g).spectrum.eigenvalues;
    std::vector<double> delta(cheb.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < cheb.size(); ++i) {
      delta[i] = std::abs(cheb[i] - dense.eigenvalues[i]);
      worst = std::max(worst, delta[i]);
    }
    t.meta["spectrum_source"] = std::string(source_name(SpectrumSource::DenseSolver)) + "+" +
                            std::string(source_name(SpectrumSource::DeterminantEquation));
    t.meta["max_delta"] = worst;
    t.add("eigenvalue_chebyshev", cheb);
    t.add("abs_delta", delta);
    if (worst > kSolverTolerance) throw SolverDisagreement{t, worst};
  }
  return t;
}

Table cmd_eigenstate(const RunRequest& req) {
  Table t = with_meta(req);
  const auto g = req.graph();
  const auto st = largest_eigenstate(g);
  t.meta["spectrum_source"] = std::string(source_name(SpectrumSource::DeterminantEquation));
  t.meta["energy"] = st.energy;
  t.meta["x"] = st.x;
  t.meta["residual"] = st.residual;
  std::vector<double> comp, mag, dist, pred;
  const double amp_m = std::abs(st.component(*req.m));
  for (int j = 1; j <= req.n; ++j) {
    comp.push_back(st.component(j));
    mag.push_back(std::abs(st.component(j)));
    dist.push_back(shortest_chord_distance(g, j));
    pred.push_back(localized_amplitude_prediction(g, amp_m, j));
  }
  t.add("j", iota_column(req.n));
  t.add("component", comp);
  t.add("abs_component", mag);
  t.add("chord_distance", dist);
  t.add("prediction", pred);
  return t;
}

Table cmd_evolve(const RunRequest& req) {
  Table t = with_meta(req);
  const auto spec = spectrum_for(req, t);
  const double t_max = req.t_max > 0.0 ? req.t_max : 50.0;
  const double dt = req.dt > 0.0 ? req.dt : 0.1;
  const auto times = uniform_time_grid(0.0, t_max, dt);
  const auto series = transition_probabilities(spec, req.start, times);
  std::vector<double> ret, total;
  for (std::size_t i = 0; i < times.size(); ++i) {
    ret.push_back(series.probability(i, req.start));
    double s = 0.0;
    for (double p : series.probabilities[i]) s += p;
    total.push_back(s);
  }
  t.add("t", times);
  t.add("return_probability", ret);
  t.add("total_probability", total);
  return t;
}

Table cmd_limiting(const RunRequest& req) {
  Table t = with_meta(req);
  const auto g = req.graph();
  const auto spec = spectrum_for(req, t);
  const auto chi = limiting_distribution(spec, req.start);
  t.meta["degeneracy_tol"] = chi.degeneracy_tol;
  t.add("k", iota_column(req.n));
  t.add("chi", chi.chi);
  if (g.has_chord()) {
    const auto top = largest_eigenstate(g);
    std::vector<double> approx, bound;
    for (int k = 1; k <= req.n; ++k) {
      approx.push_back(limiting_approximation(g, req.start, k, top));
      bound.push_back(localization_lower_bound(g, req.start, k));
    }
    t.add("approximation", approx);
    t.add("lower_bound", bound);
  }
  return t;
}

Table cmd_trap(const RunRequest& req) {
  Table t = with_meta(req);
  const auto g = req.graph();
  TrapConfig cfg{g, {1}, req.gamma};
  TrapOptions opts;
  if (req.t_max > 0.0) opts.t_max = req.t_max;
  if (req.dt > 0.0) opts.dt = req.dt;
  const auto r = survival_probability(cfg, opts);
  t.meta["sign_convention"] = r.sign_convention;
  t.meta["propagator"] = "rk4";
  t.meta["dt"] = r.dt;
  t.meta["step_norm_bound"] = r.step_norm_bound;
  t.meta["norm_monotone"] = r.norm_monotone;
  t.meta["plateau"] = r.plateau;
  t.meta["plateau_stddev"] = r.plateau_stddev;
  t.meta["converged"] = r.converged;
  t.meta["predicted_plateau"] = r.predicted_plateau;
  t.meta["asymptotic_plateau"] = r.asymptotic_plateau;
  t.meta["zero_gamma_count"] = r.zero_gamma_count;
  t.add("t", r.times);
  t.add("survival", r.survival);
  t.add("mean_norm", r.mean_norm);
  if (!r.gammas.empty()) t.add("approximation", survival_approximation(r.gammas, req.n, 1, r.times));
  return t;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Verifier {
  int failures = 0;

  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
      std::tie(ok, detail) = body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%-22s %s  %s (%.2fs)\n", name.c_str(), ok ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double w = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace

int cmd_verify(bool quick) {
  Verifier v;

  v.check("oracle-equivalence", [quick] {
    double worst = 0.0;
    int graphs = 0;
    auto run = [&](int n, int m) {
      const auto g = build_graph(n, m);
      worst = std::max(worst, max_diff(solve_spectrum_chebyshev(g).spectrum.eigenvalues,
                                       eig_symmetric(laplacian(g)).eigenvalues));
      ++graphs;
    };
    if (quick) {
      for (auto [n, m] : {std::pair{12, 5}, {20, 7}, {31, 10}}) run(n, m);
    } else {
      for (int n : {10, 12, 15, 20, 31, 50, 100})
        for (int m : {3, n / 3, n / 2}) run(n, m);
      for (int n = 5; n <= 30; ++n)
        for (int m = 3; m < n; ++m) run(n, m);
    }
    return std::pair{worst < 1e-7, fmt("max |dE| %.3e over %d graphs", worst, graphs)};
  });

  v.check("chebyshev-identities", [quick] {
    const ChebIdentity ids[] = {ChebIdentity::A6,  ChebIdentity::A7,  ChebIdentity::A8,
                                ChebIdentity::A9,  ChebIdentity::A10, ChebIdentity::A11,
                                ChebIdentity::A12, ChebIdentity::A13, ChebIdentity::A14};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    std::uniform_int_distribution<int> orders(0, 40);
    double worst = 0.0;
    const int samples = quick ? 50 : 200;
    for (int i = 0; i < samples; ++i) {
      double x = xs(rng);
      if (std::abs(std::abs(x) - 1.0) < 1e-6) x = 0.5;
      const int n = orders(rng), m = orders(rng);
      for (auto id : ids) worst = std::max(worst, verify_identity(id, x, n, m).relative());
    }
    return std::pair{worst < 1e-8, fmt("worst relative residual %.3e", worst)};
  });

  v.check("chord-symmetry", [quick] {
    const int n = quick ? 40 : 100, m = quick ? 9 : 21;
    const auto g = build_graph(n, m);
    const auto spec = eig_symmetric(laplacian(g));
    double worst = 0.0;
    for (int j : {1, m / 2 + 1, m + 10}) {
      const auto chi = limiting_distribution(spec, j);
      for (int k = 1; k <= m; ++k) worst = std::max(worst, std::abs(chi.at(k) - chi.at(m + 1 - k)));
      for (int k = m + 1; k <= n; ++k) worst = std::max(worst, std::abs(chi.at(k) - chi.at(n + m + 1 - k)));
    }
    const auto st = largest_eigenstate(g);
    for (int j = 1; j <= m; ++j)
      worst = std::max(worst, std::abs(std::abs(st.component(j)) - std::abs(st.component(m + 1 - j))));
    return std::pair{worst < 1e-8, fmt("max asymmetry %.3e", worst)};
  });

  v.check("localization", [quick] {
    const auto g = build_graph(200, 100);
    const double e = largest_root(g);
    const double dev = std::abs(2.0 - 2.0 * e - largest_eigenvalue_asymptotic());
    const auto st = largest_eigenstate(g);
    const double amp = std::abs(std::abs(st.component(1)) - std::pow(2.0, -0.75));
    bool ok = dev < 1e-3 && amp < 2e-3;
    std::string detail = fmt("|E_max - 2-2sqrt2| %.2e, |x'_1 - 2^-3/4| %.2e", dev, amp);
    if (!quick) {
      const double chi = limiting_distribution(eig_symmetric(laplacian(build_graph(200, 50))), 1).at(1);
      ok = ok && chi >= 0.115 && chi <= 0.135;
      detail += fmt(", chi_11(200,50) %.5f", chi);
    }
    return std::pair{ok, detail};
  });

  v.check("trapping", [quick] {
    const int n = quick ? 30 : 100, m = quick ? 6 : 26;
    TrapConfig cfg{build_graph(n, m), {1}, 1.0};
    TrapOptions opts;
    opts.t_max = quick ? 60.0 : 200.0;
    const auto r = survival_probability(cfg, opts);
    bool ok = r.norm_monotone && r.step_norm_bound <= 1.0;
    for (std::size_t i = 1; i < r.survival.size(); ++i) ok = ok && r.survival[i] <= r.survival[i - 1] + 1e-12;
    const double agree = std::abs(survival_window(cfg, {opts.t_max}, r.dt)[0] - r.survival.back());
    // Long times need the finer default step; coarse RK4 leaks the dark states.
    const auto w = survival_window(cfg, {0.0, 1e8});
    double gsum = 0.0;
    for (double gam : r.gammas) gsum += gam;
    const double lim = std::abs(w[1] - asymptotic_survival(cfg.graph));
    ok = ok && agree < 1e-7 && std::abs(gsum - 1.0) < 1e-12 && lim < 1e-3 &&
         r.zero_gamma_count == dark_state_count(cfg.graph);
    return std::pair{ok, fmt("window vs stepper %.2e, |Pi(1e8) - dark fraction| %.2e", agree, lim)};
  });

  std::printf("%d check(s) failed\n", v.failures);
  return v.failures;
}

}  // namespace cli
