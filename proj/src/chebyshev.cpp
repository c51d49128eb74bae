#include "chordwalk/chebyshev.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <initializer_list>
#include <string>

#include "chordwalk/errors.hpp"

namespace chordwalk {

double cheb_t(int n, double x) {
  if (n < 0) n = -n;  // T_{-n} = T_n
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double cheb_u(int n, double x) {
  if (n == -1) return 0.0;
  if (n < -1) return -cheb_u(-n - 2, x);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChebValue::ChebValue(double x) : x_(x), outside_(std::abs(x) >= 1.0) {
  if (!std::isfinite(x)) throw DomainError("Chebyshev argument must be finite");
  if (outside_) z_ = x - std::sqrt(x * x - 1.0);
}

double ChebValue::z() const {
  if (!outside_) throw DomainError("z = x - sqrt(x^2-1) is real only for |x| >= 1");
  return z_;
}

double ChebValue::t(int n) const {
  if (!outside_) return std::cos(n * std::acos(x_));
  if (std::abs(x_) == 1.0) return (x_ > 0 || n % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * (std::pow(z_, n) + std::pow(z_, -n));
}

double ChebValue::u(int n) const {
  if (!outside_) {
    const double theta = std::acos(x_);
    const double s = std::sin(theta);
    if (s == 0.0) return static_cast<double>(n + 1);  // x == 1 after rounding
    return std::sin((n + 1) * theta) / s;
  }
  if (std::abs(x_) == 1.0) {
    const double mag = static_cast<double>(n + 1);
    return (x_ > 0 || (n % 2 == 0)) ? mag : -mag;
  }
  // z^{-1} - z > 0 for every |x| > 1, so the signed and absolute-value
  // denominators coincide.
  return (std::pow(z_, -(n + 1)) - std::pow(z_, n + 1)) / (1.0 / z_ - z_);
}

ChebAsymptotic cheb_asymptotic(int n, double x) {
  if (!(x < -1.0)) throw DomainError("asymptotic Chebyshev forms need x < -1");
  const double z = x - std::sqrt(x * x - 1.0);
  return {0.5 * std::pow(z, n), -std::pow(z, n + 1) / (1.0 / z - z)};
}

ChebyshevTable::ChebyshevTable(double x, int max_order)
    : x_(x), max_order_(std::max(max_order, 1)), t_(max_order_ + 1), u_(max_order_ + 2) {
  const bool closed = std::abs(x) > 1.0 && max_order_ > 60;
  if (closed) {
    const ChebValue cv(x);
    for (int k = 0; k <= max_order_; ++k) t_[k] = cv.t(k);
    u_[0] = 0.0;
    for (int k = 0; k <= max_order_; ++k) u_[k + 1] = cv.u(k);
    return;
  }
  t_[0] = 1.0;
  t_[1] = x;
  for (int k = 2; k <= max_order_; ++k) t_[k] = 2.0 * x * t_[k - 1] - t_[k - 2];
  u_[0] = 0.0;
  u_[1] = 1.0;
  for (int k = 1; k <= max_order_; ++k) u_[k + 1] = 2.0 * x * u_[k] - u_[k - 1];
}

double ChebyshevTable::t(int n) const {
  if (n < 0) n = -n;
  if (n > max_order_) return cheb_t(n, x_);
  return t_[n];
}

double ChebyshevTable::u(int n) const {
  if (n < -1) return -u(-n - 2);
  if (n > max_order_) return cheb_u(n, x_);
  return u_[n + 1];
}

ChebIdentity parse_identity(std::string_view tag) {
  std::string lower(tag);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static constexpr std::pair<std::string_view, ChebIdentity> table[] = {
      {"a6", ChebIdentity::A6},   {"a7", ChebIdentity::A7},   {"a8", ChebIdentity::A8},
      {"a9", ChebIdentity::A9},   {"a10", ChebIdentity::A10}, {"a11", ChebIdentity::A11},
      {"a12", ChebIdentity::A12}, {"a13", ChebIdentity::A13}, {"a14", ChebIdentity::A14},
  };
  for (const auto& [name, id] : table) {
    if (lower == name) return id;
  }
  throw DomainError("unknown Chebyshev identity tag '" + std::string(tag) + "'");
}

std::string_view identity_tag(ChebIdentity id) {
  switch (id) {
    case ChebIdentity::A6: return "a6";
    case ChebIdentity::A7: return "a7";
    case ChebIdentity::A8: return "a8";
    case ChebIdentity::A9: return "a9";
    case ChebIdentity::A10: return "a10";
    case ChebIdentity::A11: return "a11";
    case ChebIdentity::A12: return "a12";
    case ChebIdentity::A13: return "a13";
    case ChebIdentity::A14: return "a14";
  }
  return "?";
}

namespace {

struct Accumulator {
  double residual = 0.0;
  double magnitude = 1.0;

  void equate(double lhs, double rhs, std::initializer_list<double> terms) {
    residual = std::max(residual, std::abs(lhs - rhs));
    magnitude = std::max({magnitude, std::abs(lhs), std::abs(rhs)});
    for (double t : terms) magnitude = std::max(magnitude, std::abs(t));
  }
};

}  // namespace

IdentityCheck verify_identity(ChebIdentity id, double x, int n, int m) {
  if (!std::isfinite(x)) throw DomainError("identity check needs finite x");
  auto T = [x](int k) { return cheb_t(k, x); };
  auto U = [x](int k) { return cheb_u(k, x); };
  Accumulator acc;
  switch (id) {
    case ChebIdentity::A6: {
      const double a = U(n - 1);
      const double b = ChebValue(x).u(-n - 1);
      acc.equate(a + b, 0.0, {a, b});
      break;
    }
    case ChebIdentity::A7: {
      const double lhs = 2.0 * x * U(n);
      acc.equate(lhs, U(n - 1) + U(n + 1), {U(n - 1), U(n + 1)});
      break;
    }
    case ChebIdentity::A8: {
      const double t = T(n);
      acc.equate(t, U(n) - x * U(n - 1), {U(n), x * U(n - 1)});
      acc.equate(t, x * U(n - 1) - U(n - 2), {U(n - 2)});
      break;
    }
    case ChebIdentity::A9: {
      const double a = U(n) * U(m), b = U(n - 1) * U(m - 1);
      acc.equate(a - b, U(n + m), {a, b});
      break;
    }
    case ChebIdentity::A10: {
      const double a = U(n) * U(m), b = U(n + 1) * U(m - 1);
      acc.equate(a - b, U(n - m), {a, b});
      break;
    }
    case ChebIdentity::A11: {
      const double a = U(n) * T(m), b = U(m - 1) * T(n + 1);
      acc.equate(a + b, U(n + m), {a, b});
      break;
    }
    case ChebIdentity::A12: {
      const double a = U(n) * T(m), b = U(m - 1) * T(n + 1);
      acc.equate(a - b, U(n - m), {a, b});
      break;
    }
    case ChebIdentity::A13: {
      const double a = T(n) * T(n), b = (x * x - 1.0) * U(n - 1) * U(n - 1);
      acc.equate(a - b, 1.0, {a, b});
      break;
    }
    case ChebIdentity::A14: {
      const double tu = T(m) * U(n);
      acc.equate(tu, 0.5 * (U(m + n) + U(n - m)), {U(m + n), U(n - m)});
      const double tt = T(m) * T(n);
      acc.equate(tt, 0.5 * (T(m + n) + T(std::abs(m - n))), {T(m + n), T(m - n)});
      break;
    }
  }
  return {acc.residual, acc.magnitude};
}

}  // namespace chordwalk
