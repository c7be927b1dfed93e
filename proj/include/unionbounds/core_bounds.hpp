#pragma once

// Closed-form lower/upper bounds for R = sum r_i given power moments
//
//     sbar_k = sum_{i=1}^N i^(a + (k-1) rho) r_i,   k = 1..ell,
//
// of an unknown non-negative vector r. Every routine is a template over the
// scalar type: double works for any positive a, rho; Rational is exact when
// a and rho are integers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "unionbounds/errors.hpp"
#include "unionbounds/scalar.hpp"

namespace unionbounds {

struct ExponentParams {
  double a = 1.0;
  double rho = 1.0;
  int ell = 2;
  int n_support = 1;

  /// Throws DomainError unless a > 0, rho > 0, ell >= 2 and N >= 1.
  void validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("exponent a must be positive");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("exponent step rho must be positive");
    if (ell < 2) throw DomainError("need at least two moments");
    if (n_support < 1) throw DomainError("support size N must be at least 1");
  }

  /// True when a, a + rho, a + 2 rho are all integers, i.e. rationals stay exact.
  bool integral() const { return is_integral(a) && is_integral(rho); }

  /// Exponent of i in the k-th moment, k = 1..ell.
  double exponent(int k) const { return a + (k - 1) * rho; }
};

template <typename Scalar>
struct MomentVector {
  Vector<Scalar> sbar;
  ExponentParams params;

  const Scalar& operator[](int k) const { return sbar(k - 1); }  // 1-based
};

/// delta = (s_hi / s_lo)^(1/rho), theta its fractional part and the
/// rho-interpolated fractional part theta_refined.
template <typename Scalar>
struct DeltaDecomposition {
  Scalar delta{0};
  Scalar theta{0};
  Scalar theta_refined{0};
  Scalar power{0};         // delta^rho = s_hi / s_lo, always exact
  std::int64_t whole = 0;  // floor(delta), after integer snapping
  bool delta_exact = true; // false when delta is irrational under Rational
};

enum class Direction { lower, upper };

enum class ThreeMomentVariant { refined, a_le_rho, a_ge_rho, rho_ge_1_simple };

enum class WindowPattern { lower_ell2, upper_ell2, lower_ell3, upper_ell3 };

inline std::string to_string(Direction d) { return d == Direction::lower ? "lower" : "upper"; }

namespace detail {

template <typename Scalar>
void require_non_negative(const Scalar& x, const char* what) {
  if (x < 0) throw DomainError(std::string(what) + " must be non-negative");
}

/// Clamps x to zero when it is negative only within tolerance; throws
/// InconsistentMoments naming `inequality` otherwise.
template <typename Scalar>
Scalar non_negative_or_throw(const Scalar& x, const Scalar& scale, double tol,
                             const std::string& inequality) {
  if (ScalarOps<Scalar>::below(x, Scalar(0), scale, tol))
    throw InconsistentMoments("inconsistent moments: " + inequality + " violated");
  return x < 0 ? Scalar(0) : x;
}

/// x <= tol * scale in floating point, x == 0 for exact scalars.
template <typename Scalar>
bool negligible(const Scalar& x, const Scalar& scale, double tol) {
  if constexpr (ScalarOps<Scalar>::exact) {
    return x == 0;
  } else {
    return x <= tol * std::abs(scale);
  }
}

template <typename Scalar>
const Scalar& require_delta(const DeltaDecomposition<Scalar>& dec) {
  if (!dec.delta_exact)
    throw ArithmeticModeError("this bound needs delta itself, which is irrational here; "
                              "use floating point");
  return dec.delta;
}

template <typename Scalar>
void check_moment_count(const MomentVector<Scalar>& m, int ell) {
  m.params.validate();
  if (m.sbar.size() != ell)
    throw DomainError("expected " + std::to_string(ell) + " moments, got " +
                      std::to_string(m.sbar.size()));
  for (Eigen::Index k = 0; k < m.sbar.size(); ++k) require_non_negative(m.sbar(k), "moment");
}

}  // namespace detail

/// Splits the moment ratio s_hi / s_lo into (delta, theta, theta_refined).
/// Follows 0/0 = 0: s_lo = s_hi = 0 gives the all-zero decomposition.
template <typename Scalar>
DeltaDecomposition<Scalar> delta_decomposition(const Scalar& s_lo, const Scalar& s_hi, double rho,
                                               const Tolerances& tol = {}) {
  detail::require_non_negative(s_lo, "s_lo");
  detail::require_non_negative(s_hi, "s_hi");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  DeltaDecomposition<Scalar> dec;
  if (s_lo == 0) {
    if (s_hi != 0)
      throw InconsistentMoments("inconsistent moments: lower moment is zero but upper is not");
    return dec;
  }
  dec.power = s_hi / s_lo;
  const auto root = ScalarOps<Scalar>::root_floor(dec.power, rho, tol);
  dec.whole = root.whole;
  const Scalar k(static_cast<long>(root.whole));
  if (root.delta) {
    dec.delta = *root.delta;
    dec.theta = dec.delta - k;
  } else {
    const double approx = std::pow(to_double(dec.power), 1.0 / rho);
    dec.delta = ScalarOps<Scalar>::from_double(approx);
    dec.theta = ScalarOps<Scalar>::from_double(approx - static_cast<double>(root.whole));
    dec.delta_exact = false;
  }
  if (dec.theta == 0) return dec;  // integer delta, theta_refined = 0
  const Scalar lo = power(k, rho);
  const Scalar hi = power(Scalar(k + 1), rho);
  dec.theta_refined = (dec.power - lo) / (hi - lo);
  if constexpr (!ScalarOps<Scalar>::exact) {
    dec.theta_refined = std::clamp(dec.theta_refined, 0.0, std::nextafter(1.0, 0.0));
  }
  return dec;
}

/// Lower bound from two moments, sharp on vectors supported on {m-1, m}.
template <typename Scalar>
Scalar lower_bound_two_moments(const MomentVector<Scalar>& m, const Tolerances& tol = {}) {
  detail::check_moment_count(m, 2);
  const auto& p = m.params;
  const Scalar& s1 = m[1];
  const Scalar& s2 = m[2];
  if (s1 == 0) {
    if (s2 != 0) throw InconsistentMoments("inconsistent moments: s1 = 0 but s2 > 0");
    return Scalar(0);
  }
  const Scalar n_rho = power(Scalar(p.n_support), p.rho);
  detail::non_negative_or_throw<Scalar>(s2 - s1, s2, tol.inequality, "s2 >= s1");
  detail::non_negative_or_throw<Scalar>(n_rho * s1 - s2, s2, tol.inequality, "s2 <= N^rho * s1");

  const auto dec = delta_decomposition(s1, s2, p.rho, tol);
  std::int64_t k = dec.whole;
  Scalar w = dec.theta_refined;
  if (k < 1) {  // rounding just below the cone edge
    k = 1;
    w = 0;
  }
  if (k >= p.n_support) {
    k = p.n_support;
    w = 0;
  }
  const Scalar low_index(static_cast<long>(k));
  Scalar value = (1 - w) * s1 / power(low_index, p.a);
  if (w != 0) value += w * s1 / power(Scalar(low_index + 1), p.a);
  return value;
}

/// Simplified two-moment lower bound: s1^((a+rho)/rho) / s2^(a/rho) for
/// rho >= 1, scaled by (1 - theta_refined)/(1 - theta) for rho < 1.
template <typename Scalar>
Scalar lower_bound_two_moments_simple(const MomentVector<Scalar>& m, const Tolerances& tol = {}) {
  detail::check_moment_count(m, 2);
  const auto& p = m.params;
  const Scalar& s1 = m[1];
  const Scalar& s2 = m[2];
  if (s1 == 0) {
    if (s2 != 0) throw InconsistentMoments("inconsistent moments: s1 = 0 but s2 > 0");
    return Scalar(0);
  }
  const Scalar n_rho = power(Scalar(p.n_support), p.rho);
  detail::non_negative_or_throw<Scalar>(s2 - s1, s2, tol.inequality, "s2 >= s1");
  detail::non_negative_or_throw<Scalar>(n_rho * s1 - s2, s2, tol.inequality, "s2 <= N^rho * s1");

  Scalar base;
  const double e = p.a / p.rho;
  if (ScalarOps<Scalar>::exact && is_integral(e)) {
    base = s1 * power(Scalar(s1 / s2), e);
  } else {
    const auto dec = delta_decomposition(s1, s2, p.rho, tol);
    base = s1 / power(detail::require_delta(dec), p.a);
  }
  if (p.rho >= 1.0) return base;
  const auto dec = delta_decomposition(s1, s2, p.rho, tol);
  if (dec.theta == 0) return base;
  return (1 - dec.theta_refined) / (1 - dec.theta) * base;
}

/// Two-moment upper bound, sharp on vectors supported on {1, N}. Not clamped.
template <typename Scalar>
Scalar upper_bound_two_moments(const MomentVector<Scalar>& m) {
  detail::check_moment_count(m, 2);
  const auto& p = m.params;
  if (p.n_support == 1) return m[1];
  const Scalar n(p.n_support);
  const Scalar n_a = power(n, p.a);
  const Scalar n_ar = power(n, p.a + p.rho);
  return ((n_ar - 1) * m[1] - (n_a - 1) * m[2]) / (n_ar - n_a);
}

/// Three-moment lower bound, sharp on vectors supported on {m-1, m, N}.
template <typename Scalar>
Scalar lower_bound_three_moments(const MomentVector<Scalar>& m,
                                 ThreeMomentVariant variant = ThreeMomentVariant::refined,
                                 const Tolerances& tol = {}) {
  detail::check_moment_count(m, 3);
  const auto& p = m.params;
  if (variant == ThreeMomentVariant::a_le_rho && p.a > p.rho)
    throw DomainError("variant a_le_rho requires a <= rho");
  if (variant == ThreeMomentVariant::a_ge_rho && p.a < p.rho)
    throw DomainError("variant a_ge_rho requires a >= rho");
  if (variant == ThreeMomentVariant::rho_ge_1_simple && p.rho < 1.0)
    throw DomainError("variant rho_ge_1_simple requires rho >= 1");

  const Scalar n(p.n_support);
  const Scalar n_a = power(n, p.a);
  const Scalar n_rho = power(n, p.rho);
  const Scalar& s1 = m[1];
  const Scalar& s2 = m[2];
  const Scalar& s3 = m[3];
  const Scalar scale1 = n_rho * s1;
  const Scalar scale2 = n_rho * s2;
  const Scalar d1 = detail::non_negative_or_throw<Scalar>(scale1 - s2, scale1, tol.inequality,
                                                          "N^rho * s1 - s2 >= 0");
  const Scalar d2 = detail::non_negative_or_throw<Scalar>(scale2 - s3, scale2, tol.inequality,
                                                          "N^rho * s2 - s3 >= 0");
  if (detail::negligible(d1, scale1, tol.inequality)) {
    if (!detail::negligible(d2, scale2, tol.inequality))
      throw InconsistentMoments("inconsistent moments: N^rho * s1 = s2 but N^rho * s2 > s3");
    return s1 / n_a;  // all mass at N
  }
  const Scalar n1_rho = power(Scalar(p.n_support - 1), p.rho);
  detail::non_negative_or_throw<Scalar>(d2 - d1, d2, tol.inequality,
                                        "N^rho s2 - s3 >= N^rho s1 - s2");
  detail::non_negative_or_throw<Scalar>(n1_rho * d1 - d2, d2, tol.inequality,
                                        "N^rho s2 - s3 <= (N-1)^rho (N^rho s1 - s2)");

  const auto dec = delta_decomposition(d1, d2, p.rho, tol);
  std::int64_t k = dec.whole;
  Scalar w = dec.theta_refined;
  if (k < 1) {  // rounding just below the cone edge
    k = 1;
    w = 0;
  }
  if (k >= p.n_support - 1) {
    k = p.n_support - 1;
    w = 0;
  }
  const Scalar lo(static_cast<long>(k));
  const Scalar hi = lo + 1;
  const Scalar tail = s1 / n_a;

  // d1 * weight * (N^a - x^a) / (N^a * j^a * (N^rho - y^rho)); a zero weight
  // contributes nothing even where the fraction degenerates.
  auto term = [&](const Scalar& weight, const Scalar& j, const Scalar& x_a, const Scalar& y_rho) {
    if (weight == 0) return Scalar(0);
    return d1 * weight * (n_a - x_a) / (n_a * power(j, p.a) * (n_rho - y_rho));
  };

  switch (variant) {
    case ThreeMomentVariant::refined:
      return term(1 - w, lo, power(lo, p.a), power(lo, p.rho)) +
             term(w, hi, power(hi, p.a), power(hi, p.rho)) + tail;
    case ThreeMomentVariant::a_le_rho: {
      const Scalar& delta = detail::require_delta(dec);
      const Scalar up = delta + 1;
      return term(1 - w, lo, power(delta, p.a), dec.power) +
             term(w, hi, power(up, p.a), power(up, p.rho)) + tail;
    }
    case ThreeMomentVariant::a_ge_rho: {
      const Scalar& delta = detail::require_delta(dec);
      const Scalar down = delta - 1;
      return term(1 - w, lo, power(down, p.a), power(down, p.rho)) +
             term(w, hi, power(delta, p.a), dec.power) + tail;
    }
    case ThreeMomentVariant::rho_ge_1_simple: {
      const Scalar& delta = detail::require_delta(dec);
      if (p.a < p.rho) return term(Scalar(1), delta, power(delta, p.a), dec.power) + tail;
      const Scalar down = delta - 1;
      return term(Scalar(1), delta, power(down, p.a), power(down, p.rho)) + tail;
    }
  }
  return tail;
}

/// Three-moment upper bound, sharp on vectors supported on {1, m-1, m}.
template <typename Scalar>
Scalar upper_bound_three_moments(const MomentVector<Scalar>& m,
                                 ThreeMomentVariant variant = ThreeMomentVariant::refined,
                                 const Tolerances& tol = {}) {
  detail::check_moment_count(m, 3);
  const auto& p = m.params;
  if (variant == ThreeMomentVariant::a_le_rho && p.a > p.rho)
    throw DomainError("variant a_le_rho requires a <= rho");
  if (variant == ThreeMomentVariant::a_ge_rho && p.a < p.rho)
    throw DomainError("variant a_ge_rho requires a >= rho");
  if (variant == ThreeMomentVariant::rho_ge_1_simple && p.rho < 1.0)
    throw DomainError("variant rho_ge_1_simple requires rho >= 1");

  const Scalar& s1 = m[1];
  const Scalar& s2 = m[2];
  const Scalar& s3 = m[3];
  const Scalar h1 = detail::non_negative_or_throw<Scalar>(s2 - s1, s2, tol.inequality, "s2 >= s1");
  const Scalar h2 = detail::non_negative_or_throw<Scalar>(s3 - s2, s3, tol.inequality, "s3 >= s2");
  if (detail::negligible(h1, s2, tol.inequality)) {
    if (!detail::negligible(h2, s3, tol.inequality))
      throw InconsistentMoments("inconsistent moments: s2 = s1 but s3 > s2");
    return s1;  // all mass at i = 1
  }
  const Scalar two_rho = power(Scalar(2), p.rho);
  const Scalar n_rho = power(Scalar(p.n_support), p.rho);
  detail::non_negative_or_throw<Scalar>(h2 - two_rho * h1, h2, tol.inequality,
                                        "s3 - s2 >= 2^rho (s2 - s1)");
  detail::non_negative_or_throw<Scalar>(n_rho * h1 - h2, h2, tol.inequality,
                                        "s3 - s2 <= N^rho (s2 - s1)");

  const auto dec = delta_decomposition(h1, h2, p.rho, tol);
  std::int64_t k = dec.whole;
  Scalar w = dec.theta_refined;
  if (k < 2) {  // rounding just below the cone edge
    k = 2;
    w = 0;
  }
  if (k >= p.n_support) {
    k = p.n_support;
    w = 0;
  }
  const Scalar lo(static_cast<long>(k));
  const Scalar hi = lo + 1;

  // h1 * weight * (x^a - 1) / (j^a * (y^rho - 1)), with 0/0 = 0.
  auto term = [&](const Scalar& weight, const Scalar& j, const Scalar& x_a, const Scalar& y_rho) {
    if (weight == 0) return Scalar(0);
    return h1 * weight * ratio_or_zero<Scalar>(x_a - 1, y_rho - 1) / power(j, p.a);
  };

  switch (variant) {
    case ThreeMomentVariant::refined:
      return s1 - term(1 - w, lo, power(lo, p.a), power(lo, p.rho)) -
             term(w, hi, power(hi, p.a), power(hi, p.rho));
    case ThreeMomentVariant::a_le_rho: {
      const Scalar& delta = detail::require_delta(dec);
      const Scalar up = delta + 1;
      return s1 - term(1 - w, lo, power(delta, p.a), dec.power) -
             term(w, hi, power(up, p.a), power(up, p.rho));
    }
    case ThreeMomentVariant::a_ge_rho: {
      const Scalar& delta = detail::require_delta(dec);
      const Scalar down = delta - 1;
      return s1 - term(1 - w, lo, power(down, p.a), power(down, p.rho)) -
             term(w, hi, power(delta, p.a), dec.power);
    }
    case ThreeMomentVariant::rho_ge_1_simple: {
      const Scalar& delta = detail::require_delta(dec);
      if (p.a < p.rho) return s1 - term(Scalar(1), delta, power(delta, p.a), dec.power);
      const Scalar down = delta - 1;
      return s1 - term(Scalar(1), delta, power(down, p.a), power(down, p.rho));
    }
  }
  return s1;
}

/// Index tuple (1-based) whose columns carry the extremal vector for the
/// given bound family. m follows delta < m <= 1 + delta, capped to fit N.
template <typename Scalar>
std::vector<int> select_index_window(const DeltaDecomposition<Scalar>& delta, WindowPattern pattern,
                                     int n_support) {
  const auto m_from = [&](std::int64_t cap, std::int64_t floor_m) {
    return static_cast<int>(std::clamp<std::int64_t>(std::min<std::int64_t>(1 + delta.whole, cap),
                                                     floor_m, cap));
  };
  switch (pattern) {
    case WindowPattern::lower_ell2: {
      if (n_support < 2) throw DomainError("window (m-1, m) needs N >= 2");
      const int m = m_from(n_support, 2);
      return {m - 1, m};
    }
    case WindowPattern::upper_ell2:
      if (n_support < 2) throw DomainError("window (1, N) needs N >= 2");
      return {1, n_support};
    case WindowPattern::lower_ell3: {
      if (n_support < 3) throw DomainError("window (m-1, m, N) needs N >= 3");
      const int m = m_from(n_support - 1, 2);
      return {m - 1, m, n_support};
    }
    case WindowPattern::upper_ell3: {
      if (n_support < 3) throw DomainError("window (1, m-1, m) needs N >= 3");
      const int m = m_from(n_support, 3);
      return {1, m - 1, m};
    }
  }
  return {};
}

/// ((E xi)^p / E xi^p)^(q/p) with 1/p + 1/q = 1.
inline double holder_lower_bound(double alpha1, double alphap, double p) {
  if (!(p > 1.0)) throw DomainError("Holder exponent p must exceed 1");
  if (alpha1 < 0.0 || alphap < 0.0) throw DomainError("moments must be non-negative");
  if (alpha1 == 0.0) return 0.0;
  if (alphap == 0.0) throw DomainError("E xi^p = 0 with E xi > 0");
  const double q = p / (p - 1.0);
  return std::pow(std::pow(alpha1, p) / alphap, q / p);
}

/// (1 - u^x) / (1 - v^x), evaluated through expm1 for accuracy near x = 0.
inline double decreasing_power_ratio(double u, double v, double x) {
  return std::expm1(x * std::log(u)) / std::expm1(x * std::log(v));
}

}  // namespace unionbounds
