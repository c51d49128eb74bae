#pragma once

#include <string_view>
#include <vector>

namespace chordwalk {

/// First-kind Chebyshev polynomial T_n(x), n >= 0, by forward recurrence.
double cheb_t(int n, double x);

/// Second-kind Chebyshev polynomial U_n(x) by forward recurrence.
/// U_{-1} = 0 and negative orders follow U_{-n-1} = -U_{n-1}.
double cheb_u(int n, double x);

/// Evaluation context for the substitution E = 2 - 2x and, for |x| >= 1,
/// z = x - sqrt(x^2 - 1). Closed forms are valid for every real x:
/// trigonometric inside [-1, 1], z-powers outside, limits at +-1.
class ChebValue {
 public:
  explicit ChebValue(double x);
  static ChebValue from_energy(double energy) { return ChebValue((2.0 - energy) / 2.0); }

  double x() const { return x_; }
  double energy() const { return 2.0 - 2.0 * x_; }
  /// z for |x| >= 1. Throws DomainError inside (-1, 1).
  double z() const;

  double t(int n) const;
  double u(int n) const;

 private:
  double x_;
  double z_ = 0.0;
  bool outside_;
};

struct ChebAsymptotic {
  double t;
  double u;
};

/// Large-order forms T_n ~ z^n/2 and U_n ~ -z^{n+1}/(z^{-1} - z) for x < -1.
/// Validated for n >= 20.
ChebAsymptotic cheb_asymptotic(int n, double x);

/// Cached T_0..T_max and U_{-1}..U_max at one argument. Orders beyond the
/// table (or negative U orders) are resolved through U_{-n-1} = -U_{n-1}.
class ChebyshevTable {
 public:
  ChebyshevTable(double x, int max_order);

  double x() const { return x_; }
  int max_order() const { return max_order_; }
  double t(int n) const;
  double u(int n) const;

 private:
  double x_;
  int max_order_;
  std::vector<double> t_;
  std::vector<double> u_;  // u_[k] = U_{k-1}
};

enum class ChebIdentity { A6, A7, A8, A9, A10, A11, A12, A13, A14 };

/// Parses "a6".."a14" (case-insensitive). Throws DomainError otherwise.
ChebIdentity parse_identity(std::string_view tag);
std::string_view identity_tag(ChebIdentity id);

struct IdentityCheck {
  double residual;   // |LHS - RHS|, maximum over the identity's sub-equations
  double magnitude;  // largest |term| involved, floored at 1
  double relative() const { return residual / magnitude; }
};

/// Evaluates both sides of a Chebyshev identity at x with orders (n, m).
/// Negative orders in the a6 check are evaluated by the closed form so the
/// check does not rely on the same convention it tests.
IdentityCheck verify_identity(ChebIdentity id, double x, int n, int m = 0);

}  // namespace chordwalk
