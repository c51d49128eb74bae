#pragma once

#include <string_view>
#include <vector>

#include "chordwalk/matrix.hpp"

namespace chordwalk {

enum class SpectrumSource { DenseSolver, DeterminantEquation, Perturbative };

std::string_view source_name(SpectrumSource s);

/// Ascending eigenvalues with matching orthonormal eigenvector columns.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // column k pairs with eigenvalues[k]
  SpectrumSource source = SpectrumSource::DenseSolver;

  std::size_t size() const { return eigenvalues.size(); }
};

/// Cyclic Jacobi eigensolver for real symmetric matrices.
/// Throws DomainError for non-square or asymmetric input and
/// ConvergenceError if the sweep cap is reached.
Spectrum eig_symmetric(const Matrix& h);

double frobenius_norm(const Matrix& a);

/// Probabilities pi_{k,j}(t) for a fixed start node j (1-based).
struct EvolutionSeries {
  int start = 1;
  std::vector<double> times;
  std::vector<std::vector<double>> probabilities;  // [time][k-1]
  std::vector<double> norms;

  double probability(std::size_t time_index, int k) const {
    return probabilities[time_index][static_cast<std::size_t>(k - 1)];
  }
};

/// Exact alpha_{k,j}(t) = sum_n exp(-i t E_n) <k|n><n|j> from a spectrum.
EvolutionSeries evolve_hermitian(const Spectrum& spec, int start, const std::vector<double>& times);

struct ComplexState {
  std::vector<Complex> amplitudes;
  double time = 0.0;

  double norm_squared() const;
};

/// Compressed sparse row copy of a complex matrix, used by the RK4 stepper.
class SparseMatrix {
 public:
  explicit SparseMatrix(const ComplexMatrix& a);

  std::size_t size() const { return row_start_.size() - 1; }
  void multiply(std::span<const Complex> x, std::span<Complex> y) const;

 private:
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> col_;
  std::vector<Complex> val_;
};

/// Max absolute row sum, an upper bound on the spectral radius.
double spectral_radius_bound(const ComplexMatrix& h);

/// min(0.01, 0.05 / rho).
double default_rk4_step(const ComplexMatrix& h);

/// Throws DomainError unless 0 < dt <= 0.1 / rho.
void check_rk4_step(const ComplexMatrix& h, double dt);

/// Classic RK4 for i d(psi)/dt = H psi, starting from |start> (1-based).
/// Records every `record_every` steps plus the final state.
std::vector<ComplexState> evolve_rk4(const ComplexMatrix& h_eff, int start, double t_max, double dt,
                                     int record_every = 1);

ComplexMatrix to_complex(const Matrix& a);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, int threads = 1);

/// One RK4 step of i d(psi)/dt = H psi is the linear map
/// R = I + B + B^2/2 + B^3/6 + B^4/24 with B = -i dt H.
ComplexMatrix rk4_step_matrix(const ComplexMatrix& h, double dt);

/// a^k by binary powering.
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long k, int threads = 1);

}  // namespace chordwalk
