#pragma once

// Scalar policy shared by every templated routine: double for general
// exponents, GMP rationals when the exponents involved are integers.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include "unionbounds/errors.hpp"

namespace unionbounds {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Numerical slack used by floating-point checks. Exact scalars ignore it.
struct Tolerances {
  double inequality = 1e-9;    // relative, for bound-vs-truth assertions
  double reproduction = 1e-12; // relative, for algebraic identities
  double snap = 1e-9;          // absolute, integer snap of delta
};

inline bool is_integral(double e) { return std::isfinite(e) && std::floor(e) == e; }

/// Integer part of delta = q^(1/rho), together with delta when it is
/// representable in the scalar type.
template <typename Scalar>
struct RootFloor {
  std::int64_t whole = 0;
  std::optional<Scalar> delta;
};

/// x^n for a non-negative integer n.
inline Rational ipow(const Rational& x, unsigned long n) {
  BigInt num, den;
  mpz_pow_ui(num.backend().data(), numerator(x).backend().data(), n);
  mpz_pow_ui(den.backend().data(), denominator(x).backend().data(), n);
  return Rational(num, den);
}

template <typename Scalar>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;

  static double pow(double x, double e) { return std::pow(x, e); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }

  /// delta = q^(1/rho); values within tol.snap of an integer are snapped.
  static RootFloor<double> root_floor(double q, double rho, const Tolerances& tol) {
    double delta = rho == 1.0 ? q : std::pow(q, 1.0 / rho);
    const double nearest = std::round(delta);
    if (std::abs(delta - nearest) < tol.snap) delta = nearest;
    return {static_cast<std::int64_t>(std::floor(delta)), delta};
  }

  /// x < bound beyond the relative slack.
  static bool below(double x, double bound, double scale, double tol) {
    return x < bound - tol * std::abs(scale);
  }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;

  static Rational pow(const Rational& x, double e) {
    if (!is_integral(e))
      throw ArithmeticModeError("exact arithmetic needs integer exponents, got " +
                                std::to_string(e));
    const auto n = static_cast<long>(std::abs(e));
    Rational result = ipow(x, static_cast<unsigned long>(n));
    if (e < 0) {
      if (result == 0) throw DomainError("zero raised to a negative power");
      result = 1 / result;
    }
    return result;
  }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_double(double x) { return Rational(x); }

  static RootFloor<Rational> root_floor(const Rational& q, double rho, const Tolerances&) {
    if (!is_integral(rho) || rho < 1)
      throw ArithmeticModeError("exact root needs an integer rho >= 1");
    if (q < 0) throw DomainError("root of a negative ratio");
    const auto r = static_cast<long>(rho);
    if (r == 1) {
      BigInt w = numerator(q) / denominator(q);
      return {w.convert_to<std::int64_t>(), q};
    }
    // Estimate, then correct so that k^r <= q < (k+1)^r holds exactly.
    auto k = static_cast<std::int64_t>(std::floor(std::pow(q.convert_to<double>(), 1.0 / rho)));
    if (k < 0) k = 0;
    while (k > 0 && ipow(Rational(k), static_cast<unsigned long>(r)) > q) --k;
    while (ipow(Rational(k + 1), static_cast<unsigned long>(r)) <= q) ++k;
    RootFloor<Rational> out{k, std::nullopt};
    auto num_root = exact_root(numerator(q), static_cast<unsigned long>(r));
    auto den_root = exact_root(denominator(q), static_cast<unsigned long>(r));
    if (num_root && den_root) out.delta = Rational(*num_root) / Rational(*den_root);
    return out;
  }

  static std::optional<BigInt> exact_root(const BigInt& value, unsigned long r) {
    BigInt root;
    if (mpz_root(root.backend().data(), value.backend().data(), r) == 0) return std::nullopt;
    return root;
  }

  static bool below(const Rational& x, const Rational& bound, const Rational&, double) {
    return x < bound;
  }
};

template <typename Scalar>
double to_double(const Scalar& x) {
  return ScalarOps<Scalar>::to_double(x);
}

template <typename Scalar>
Scalar power(const Scalar& x, double e) {
  return ScalarOps<Scalar>::pow(x, e);
}

/// num/den with the 0/0 = 0 convention. A non-zero numerator over zero is a
/// domain error.
template <typename Scalar>
Scalar ratio_or_zero(const Scalar& num, const Scalar& den) {
  if (den == 0) {
    if (num == 0) return Scalar(0);
    throw DomainError("division of a non-zero quantity by zero");
  }
  return num / den;
}

/// Parses "p/q", an integer, or a decimal such as "0.125" or "-1.5e-3" into
/// an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
std::string format_rational(const Rational& value);

}  // namespace unionbounds
