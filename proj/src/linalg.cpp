#include "chordwalk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "chordwalk/errors.hpp"

namespace chordwalk {

std::string_view source_name(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::DenseSolver: return "dense-solver";
    case SpectrumSource::DeterminantEquation: return "determinant-equation";
    case SpectrumSource::Perturbative: return "perturbative";
  }
  return "?";
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;

}  // namespace

Spectrum eig_symmetric(const Matrix& h) {
  if (!h.square()) throw DomainError("eig_symmetric needs a square matrix");
  const std::size_t n = h.rows();
  const double scale = frobenius_norm(h);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(h(i, j) - h(j, i)) > 1e-12 * std::max(1.0, scale))
        throw DomainError("eig_symmetric needs a symmetric matrix");

  Matrix a = h;
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * scale;
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps) throw ConvergenceError("Jacobi sweeps exhausted");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return a(l, l) < a(r, r); });
  Spectrum out;
  out.source = SpectrumSource::DenseSolver;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

EvolutionSeries evolve_hermitian(const Spectrum& spec, int start, const std::vector<double>& times) {
  const std::size_t n = spec.size();
  if (start < 1 || static_cast<std::size_t>(start) > n) throw DomainError("start node out of range");
  const std::size_t j = static_cast<std::size_t>(start - 1);
  EvolutionSeries out;
  out.start = start;
  out.times = times;
  out.probabilities.reserve(times.size());
  out.norms.reserve(times.size());
  std::vector<double> weight(n);
  for (std::size_t l = 0; l < n; ++l) weight[l] = spec.eigenvectors(j, l);
  std::vector<Complex> phase(n);
  std::vector<double> probs(n);
  for (double t : times) {
    for (std::size_t l = 0; l < n; ++l) phase[l] = std::polar(weight[l], -t * spec.eigenvalues[l]);
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex amp{0.0, 0.0};
      const auto vk = spec.eigenvectors.row(k);
      for (std::size_t l = 0; l < n; ++l) amp += vk[l] * phase[l];
      probs[k] = std::norm(amp);
      norm += probs[k];
    }
    out.probabilities.push_back(probs);
    out.norms.push_back(norm);
  }
  return out;
}

double ComplexState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

SparseMatrix::SparseMatrix(const ComplexMatrix& a) {
  row_start_.reserve(a.rows() + 1);
  row_start_.push_back(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != Complex{0.0, 0.0}) {
        col_.push_back(j);
        val_.push_back(a(i, j));
      }
    }
    row_start_.push_back(col_.size());
  }
}

void SparseMatrix::multiply(std::span<const Complex> x, std::span<Complex> y) const {
  for (std::size_t i = 0; i + 1 < row_start_.size(); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) acc += val_[p] * x[col_[p]];
    y[i] = acc;
  }
}

double spectral_radius_bound(const ComplexMatrix& h) {
  double rho = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    double s = 0.0;
    for (const auto& v : h.row(i)) s += std::abs(v);
    rho = std::max(rho, s);
  }
  return rho;
}

double default_rk4_step(const ComplexMatrix& h) {
  const double rho = spectral_radius_bound(h);
  return rho > 0.0 ? std::min(0.01, 0.05 / rho) : 0.01;
}

void check_rk4_step(const ComplexMatrix& h, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("RK4 step must be positive and finite");
  const double rho = spectral_radius_bound(h);
  if (rho > 0.0 && dt > 0.1 / rho)
    throw DomainError("RK4 step " + std::to_string(dt) + " exceeds stability bound 0.1/rho = " +
                      std::to_string(0.1 / rho));
}

std::vector<ComplexState> evolve_rk4(const ComplexMatrix& h_eff, int start, double t_max, double dt,
                                     int record_every) {
  if (!h_eff.square()) throw DomainError("evolve_rk4 needs a square matrix");
  const std::size_t n = h_eff.rows();
  if (start < 1 || static_cast<std::size_t>(start) > n) throw DomainError("start node out of range");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be finite and non-negative");
  if (record_every < 1) throw DomainError("record_every must be at least 1");
  check_rk4_step(h_eff, dt);

  const SparseMatrix h(h_eff);
  const Complex minus_i{0.0, -1.0};
  std::vector<Complex> psi(n, Complex{0.0, 0.0});
  psi[static_cast<std::size_t>(start - 1)] = 1.0;
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto deriv = [&](const std::vector<Complex>& x, std::vector<Complex>& out) {
    h.multiply(x, out);
    for (auto& v : out) v *= minus_i;
  };

  const auto steps = static_cast<long long>(std::ceil(t_max / dt - 1e-9));
  std::vector<ComplexState> out;
  out.push_back({psi, 0.0});
  for (long long s = 1; s <= steps; ++s) {
    deriv(psi, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    deriv(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    deriv(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + dt * k3[i];
    deriv(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (s % record_every == 0 || s == steps) out.push_back({psi, static_cast<double>(s) * dt});
  }
  return out;
}

ComplexMatrix to_complex(const Matrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

namespace {

// c[:, lo:hi] = a * b[:, lo:hi] on split real/imaginary planes.
void multiply_columns(std::size_t n, std::size_t inner, std::size_t cols, const std::vector<double>& ar,
                      const std::vector<double>& ai, const std::vector<double>& br, const std::vector<double>& bi,
                      std::vector<double>& cr, std::vector<double>& ci, std::size_t lo, std::size_t hi) {
  for (std::size_t i = 0; i < n; ++i) {
    double* crow_r = cr.data() + i * cols;
    double* crow_i = ci.data() + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double xr = ar[i * inner + k], xi = ai[i * inner + k];
      if (xr == 0.0 && xi == 0.0) continue;
      const double* brow_r = br.data() + k * cols;
      const double* brow_i = bi.data() + k * cols;
      for (std::size_t j = lo; j < hi; ++j) {
        crow_r[j] += xr * brow_r[j] - xi * brow_i[j];
        crow_i[j] += xr * brow_i[j] + xi * brow_r[j];
      }
    }
  }
}

}  // namespace

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, int threads) {
  if (a.cols() != b.rows()) throw DomainError("matrix shapes do not conform");
  const std::size_t n = a.rows(), inner = a.cols(), cols = b.cols();
  std::vector<double> ar(n * inner), ai(n * inner), br(inner * cols), bi(inner * cols);
  for (std::size_t p = 0; p < n * inner; ++p) {
    ar[p] = a.data()[p].real();
    ai[p] = a.data()[p].imag();
  }
  for (std::size_t p = 0; p < inner * cols; ++p) {
    br[p] = b.data()[p].real();
    bi[p] = b.data()[p].imag();
  }
  std::vector<double> cr(n * cols, 0.0), ci(n * cols, 0.0);
  const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(cols, 1))));
  if (workers == 1) {
    multiply_columns(n, inner, cols, ar, ai, br, bi, cr, ci, 0, cols);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cols + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk, hi = std::min(cols, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] { multiply_columns(n, inner, cols, ar, ai, br, bi, cr, ci, lo, hi); });
    }
  }
  ComplexMatrix c(n, cols);
  for (std::size_t p = 0; p < n * cols; ++p) c.data()[p] = {cr[p], ci[p]};
  return c;
}

ComplexMatrix rk4_step_matrix(const ComplexMatrix& h, double dt) {
  check_rk4_step(h, dt);
  const std::size_t n = h.rows();
  ComplexMatrix b(n, n);
  for (std::size_t p = 0; p < n * n; ++p) b.data()[p] = Complex{0.0, -dt} * h.data()[p];
  // Horner: I + B (I + B/2 (I + B/3 (I + B/4)))
  ComplexMatrix acc = ComplexMatrix::identity(n);
  for (int k = 4; k >= 1; --k) {
    ComplexMatrix next = multiply(b, acc);
    for (auto& v : next.data()) v /= static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += 1.0;
    acc = std::move(next);
  }
  return acc;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long k, int threads) {
  if (!a.square()) throw DomainError("matrix_power needs a square matrix");
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  ComplexMatrix base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1ULL) {
      result = first ? base : multiply(result, base, threads);
      first = false;
    }
    k >>= 1ULL;
    if (k > 0) base = multiply(base, base, threads);
  }
  return result;
}

}  // namespace chordwalk
