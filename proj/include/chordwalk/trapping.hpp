#pragma once

#include <string>
#include <vector>

#include "chordwalk/graph.hpp"
#include "chordwalk/linalg.hpp"

namespace chordwalk {

inline constexpr const char* kTrapSignConvention = "H_eff = H0 - i*Gamma*P_trap";

/// Absorbing traps on a graph. Gamma = 0 is accepted as the unitary control.
struct TrapConfig {
  GraphSpec graph;
  std::vector<int> traps{1};
  double gamma = 1.0;
};

/// Throws DomainError on empty, duplicate or out-of-range traps, M >= N or
/// negative Gamma.
void validate(const TrapConfig& cfg);

/// H0 - i Gamma sum_{t in traps} |t><t|.
ComplexMatrix effective_hamiltonian(const TrapConfig& cfg);

struct TrapOptions {
  double t_max = 0.0;            // 0 selects 10 N
  double dt = 0.0;               // 0 selects the RK4 default
  double sample_interval = 1.0;  // spacing of recorded times
  int threads = 0;               // 0 selects hardware concurrency
};

struct TrapResult {
  std::vector<double> times;
  std::vector<double> survival;   // Pi_M(t)
  std::vector<double> mean_norm;  // squared norm averaged over start nodes
  double plateau = 0.0;           // mean of Pi_M over the final quarter
  double plateau_stddev = 0.0;
  bool converged = false;         // stddev below 10% of the plateau
  double predicted_plateau = 0.0;
  double asymptotic_plateau = 0.0;
  std::vector<double> gammas;     // empty unless the trap set is {1}
  int zero_gamma_count = 0;
  double dt = 0.0;                // step actually used
  double step_norm_bound = 0.0;   // ||R(dt)||_2, <= 1 means every step contracts
  bool norm_monotone = true;      // per start node, checked at every sample
  std::string sign_convention = kTrapSignConvention;
};

/// Pi_M(t) = (1/(N-M)) sum_{j,k not traps} |<k|exp(-i t H_eff)|j>|^2 by RK4.
/// All start nodes are carried together; one sample interval is a fixed
/// power of the RK4 step map.
TrapResult survival_probability(const TrapConfig& cfg, const TrapOptions& opts = {});

/// Pi_M at arbitrary (possibly very long) times by binary powering of the
/// RK4 step map. dt = 0 selects 0.002.
std::vector<double> survival_window(const TrapConfig& cfg, const std::vector<double>& times, double dt = 0.0,
                                    int threads = 0);

/// Gamma |<1|Psi^(0)>|^2 for every zeroth-order state, in perturbative_spectrum
/// mode order. Throws DomainError unless the trap set is {1}.
std::vector<double> perturbative_gammas(const TrapConfig& cfg);

int count_zero_gammas(const std::vector<double>& gammas, double gamma);

/// (m-1-lambda)/(N-1) if N/(2(m-1)) is an integer, else 0.
double plateau_prediction(const GraphSpec& g);

/// Cycle modes vanishing at nodes 1 and m: #{1 <= n < N/2 : N | 2n(m-1)}.
int dark_state_count(const GraphSpec& g);

/// t -> infinity limit of Pi_M with the trap at node 1: dark states / (N-1).
double asymptotic_survival(const GraphSpec& g);

/// (1/(N-M)) sum_l exp(-2 gamma_l t).
std::vector<double> survival_approximation(const std::vector<double>& gammas, int n, int traps,
                                           const std::vector<double>& times);

/// Largest singular value by power iteration on A^H A.
double spectral_norm(const ComplexMatrix& a);

}  // namespace chordwalk
