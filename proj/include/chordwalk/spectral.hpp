#pragma once

#include <optional>
#include <vector>

#include "chordwalk/graph.hpp"
#include "chordwalk/linalg.hpp"

namespace chordwalk {

/// Coefficients of the two linear conditions on (x_{m-1}, x_m), in their
/// unsimplified Chebyshev form.
struct DeterminantCoefficients {
  double c1, c2, c3, c4;
  double determinant() const { return c1 * c4 - c2 * c3; }
};

DeterminantCoefficients determinant_coefficients(const GraphSpec& g, double x);

/// F(x) = 1 + U_{N-m} + U_{m-2} - U_{N-1} - T_N. Roots give E = 2 - 2x.
double determinant_value(const GraphSpec& g, double x);

/// Theta(x) = 2U_{m-2}^2 - 2[T_N + U_{N-1} - 1]U_{m-2} - [T_N + 2U_{N-1} - 1],
/// so that (T_N - 1) Theta = F G with G the companion factor below.
double theta_factor(const GraphSpec& g, double x);

/// G(x) = U_{N-1}T_{m-1} + U_{m-2}(T_N - 1) + T_N + U_{N-1} - 1.
/// Roots of G are roots of Theta that are not eigenvalues.
double companion_factor(const GraphSpec& g, double x);

/// Q(theta) = sin(theta) sin(N theta/2) + 2 sin((N-m+1) theta/2) sin((m-1) theta/2).
/// On x = cos(theta): sin(theta) F = 2 sin(N theta/2) Q, and
/// sin(N theta/2) sin^2(theta) Theta = -Q sin(theta) G. Its zeros are the
/// Theta-branch eigenvalues, free of the companion roots.
double theta_cofactor(int n, int m, double theta);

/// Largest magnitude among the Chebyshev terms entering F at x; used to
/// scale residuals.
double determinant_scale(const GraphSpec& g, double x);

enum class RootBranch { Cycle, Theta };

struct SpectralRoot {
  double x;
  double energy;
  RootBranch branch;
  int cycle_index = -1;  // n for x = cos(2 pi n / N), -1 on the theta branch
};

struct ChebyshevSpectrum {
  Spectrum spectrum;               // source = DeterminantEquation
  std::vector<SpectralRoot> roots;  // aligned with spectrum.eigenvalues
  int grid_points = 0;             // theta grid size finally used
  int refinements = 0;             // grid doublings needed
  int dense_fallbacks = 0;         // eigenvectors taken from the dense solver
};

/// Full spectrum from the determinant equation: analytic cycle roots,
/// bracketed Theta-branch roots on (-1, 1) and the isolated root below -1.
/// Throws RootCountError if the roots do not number exactly N.
ChebyshevSpectrum solve_spectrum_chebyshev(const GraphSpec& g);

/// 2 + 2 sqrt(2).
double largest_eigenvalue_asymptotic();

/// The isolated root x < -1 of F (largest eigenvalue).
double largest_root(const GraphSpec& g);

/// Eigenvector assembled from a root of F.
struct AnalyticEigenstate {
  std::vector<double> components;  // normalized, index j-1
  double x = 0.0;
  double energy = 0.0;
  RootBranch branch = RootBranch::Theta;
  double residual = 0.0;  // max |H v - E v|

  double component(int j) const { return components[static_cast<std::size_t>(j - 1)]; }
};

/// Builds the eigenvector from x_m = 1, x_{m-1} = -c2/c1 and x_N = c2'/c1
/// by Chebyshev propagation along both arcs. Below x = -1 the propagation is
/// done from both arc endpoints instead, since forward growth is unstable.
/// Throws DomainError if x is not a root and DegenerateBasisError if c1 ~ 0.
AnalyticEigenstate eigenstate_from_root(const GraphSpec& g, double x, RootBranch branch);

/// Same as above, always using the two-endpoint propagation form.
AnalyticEigenstate eigenstate_from_root_endpoints(const GraphSpec& g, double x, RootBranch branch);

AnalyticEigenstate largest_eigenstate(const GraphSpec& g);

/// |x'_m| |z0|^{-d_j} with z0 = -1 - sqrt(2).
double localized_amplitude_prediction(const GraphSpec& g, double amplitude_m, int j);

struct PerturbativeMode {
  int n;          // Bloch index, 0 for the uniform state, N/2 for the alternating one
  int sign;       // +1, -1 for the two pair states, 0 for non-degenerate states
  double theta;   // 2 pi n / N
  double zeroth;  // 2 - 2 cos(theta)
  double first;   // first-order shift
  double energy() const { return zeroth + first; }
};

struct PerturbativeSpectrum {
  int n = 0;
  int m = 0;
  int lambda = 0;
  std::vector<PerturbativeMode> modes;

  std::vector<double> sorted_energies() const;
};

PerturbativeSpectrum perturbative_spectrum(const GraphSpec& g);

/// Zeroth-order state of a mode as complex amplitudes (index j-1).
std::vector<Complex> perturbative_state(const GraphSpec& g, const PerturbativeMode& mode);

/// Shift Delta of the cycle root x0 = cos(2 pi n / N): the perturbed root
/// sits at x0 - Delta, Delta = (1/N)[1 - T_{m-1}(x0)].
double cycle_root_shift(const GraphSpec& g, int n);

/// How many eigenvalues the cycle branch contributes at x = cos(2 pi n / N):
/// 2 when both standing waves survive the chord, 0 if none does.
int cycle_root_multiplicity(const GraphSpec& g, int n);

}  // namespace chordwalk
