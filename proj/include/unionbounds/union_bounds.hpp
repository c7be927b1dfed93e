#pragma once

// Bounds on P(A_1 u ... u A_N) built from the moment bounds: the classic
// Chung-Erdos, de Caen and Kuai-Alajaji-Takahara comparators, and the
// per-event bounds obtained by splitting P(U) = sum_k sum_i p_ik / i and
// bounding each R_k = sum_i p_ik / i separately.

#include <optional>
#include <string>
#include <vector>

#include "unionbounds/core_bounds.hpp"
#include "unionbounds/event_space.hpp"

namespace unionbounds {

/// alpha_1^2 / alpha_2 with 0/0 = 0.
template <typename Scalar>
Scalar chung_erdos(const EventSystem& sys) {
  const Rational a1 = power_moments(sys, 1);
  const Rational a2 = power_moments(sys, 2);
  if constexpr (ScalarOps<Scalar>::exact) {
    return ratio_or_zero<Scalar>(a1 * a1, a2);
  } else {
    return ratio_or_zero<Scalar>(to_double(Rational(a1 * a1)), to_double(a2));
  }
}

namespace detail {

template <typename Scalar>
PerEventMoments<Scalar> unit_moments(const EventSystem& sys, int ell) {
  return per_event_moments<Scalar>(sys, ExponentParams{1.0, 1.0, ell, 1});
}

}  // namespace detail

/// sum_k s_1(k)^2 / s_2(k).
template <typename Scalar>
Scalar de_caen(const EventSystem& sys) {
  const auto m = detail::unit_moments<Scalar>(sys, 2);
  Scalar total(0);
  for (Eigen::Index k = 0; k < m.sbar.cols(); ++k)
    total += ratio_or_zero<Scalar>(m.sbar(0, k) * m.sbar(0, k), m.sbar(1, k));
  return total;
}

/// theta s1^2 / (s2 + (1 - theta) s1) + (1 - theta) s1^2 / (s2 - theta s1).
template <typename Scalar>
Scalar kat_term(const Scalar& s1, const Scalar& s2, const Scalar& theta) {
  if (s1 == 0) return Scalar(0);
  Scalar value = (1 - theta) * s1 * s1 / (s2 - theta * s1);
  if (theta != 0) value += theta * s1 * s1 / (s2 + (1 - theta) * s1);
  return value;
}

/// Kuai-Alajaji-Takahara bound: kat_term per event with delta_k = s_2(k) /
/// s_1(k) and theta_k its fractional part. zero_theta forces theta_k = 0,
/// which reduces the sum to de Caen's.
template <typename Scalar>
Scalar kat_bound(const EventSystem& sys, bool zero_theta = false, const Tolerances& tol = {}) {
  const auto m = detail::unit_moments<Scalar>(sys, 2);
  Scalar total(0);
  for (Eigen::Index k = 0; k < m.sbar.cols(); ++k) {
    const Scalar& s1 = m.sbar(0, k);
    const Scalar& s2 = m.sbar(1, k);
    if (s1 == 0) continue;
    Scalar theta(0);
    if (!zero_theta) theta = delta_decomposition(s1, s2, 1.0, tol).theta;
    total += kat_term(s1, s2, theta);
  }
  return total;
}

/// sum_k of the two-moment lower bound applied to event k's moments.
template <typename Scalar>
Scalar frolov_lower_two(const EventSystem& sys, ExponentParams params, const Tolerances& tol = {}) {
  params.ell = 2;
  const auto m = per_event_moments<Scalar>(sys, params);
  Scalar total(0);
  for (int k = 1; k <= m.params.n_support; ++k) total += lower_bound_two_moments(m.event(k), tol);
  return total;
}

/// Three-moment per-event lower bound. Without an explicit variant,
/// a = rho = 1 uses (1/N) sum_k {dbar_1k^2 / dbar_2k + s_1(k)} and any other
/// (a, rho) the refined form.
template <typename Scalar>
Scalar frolov_lower_three(const EventSystem& sys, ExponentParams params,
                          std::optional<ThreeMomentVariant> variant = std::nullopt,
                          const Tolerances& tol = {}) {
  params.ell = 3;
  const auto m = per_event_moments<Scalar>(sys, params);
  const int n = m.params.n_support;
  Scalar total(0);
  if (!variant && params.a == 1.0 && params.rho == 1.0) {
    for (int k = 0; k < n; ++k)
      total += ratio_or_zero<Scalar>(m.delta_bar1(k) * m.delta_bar1(k), m.delta_bar2(k)) +
               m.sbar(0, k);
    return total / Scalar(n);
  }
  const auto v = variant.value_or(ThreeMomentVariant::refined);
  for (int k = 1; k <= n; ++k) total += lower_bound_three_moments(m.event(k), v, tol);
  return total;
}

/// Three-moment per-event upper bound. Without an explicit variant,
/// a = rho = 1 uses sum_k {s_1(k) - dhat_1k^2 / dhat_2k} and any other
/// (a, rho) the refined form.
template <typename Scalar>
Scalar frolov_upper_three(const EventSystem& sys, ExponentParams params,
                          std::optional<ThreeMomentVariant> variant = std::nullopt,
                          const Tolerances& tol = {}) {
  params.ell = 3;
  const auto m = per_event_moments<Scalar>(sys, params);
  const int n = m.params.n_support;
  Scalar total(0);
  if (!variant && params.a == 1.0 && params.rho == 1.0) {
    for (int k = 0; k < n; ++k)
      total += m.sbar(0, k) -
               ratio_or_zero<Scalar>(m.delta_hat1(k) * m.delta_hat1(k), m.delta_hat2(k));
    return total;
  }
  const auto v = variant.value_or(ThreeMomentVariant::refined);
  for (int k = 1; k <= n; ++k) total += upper_bound_three_moments(m.event(k), v, tol);
  return total;
}

/// Holder comparator ((E xi)^p / E xi^p)^(q/p) on the occupancy count.
double holder_union_bound(const EventSystem& sys, double p);

struct BoundEntry {
  std::string name;
  Direction kind = Direction::lower;
  double value = 0.0;
  double clamped = 0.0;                // value clamped into [0, 1]
  std::optional<Rational> exact_value; // set when computed in exact arithmetic
  bool pass = false;
  std::optional<std::string> error;    // computation failed; not a violation
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  Rational exact;  // oracle P(U)

  /// Entries that computed a value on the wrong side of P(U).
  std::size_t violations() const;
  std::size_t failures() const;
};

struct CompareConfig {
  std::vector<std::pair<double, double>> params{{1.0, 1.0}};  // (a, rho) pairs
  std::vector<double> holder_p;
  bool comparators = true;       // chung_erdos, de_caen, kat
  bool occupancy_bounds = true;  // two/three-moment bounds with r_i = p_i
  bool per_event_bounds = true;
  Tolerances tol;
};

/// lower <= P(U) (or upper >= P(U)); exact entries compare without slack,
/// floating entries with tol.inequality relative slack.
bool sandwich_holds(const BoundEntry& entry, const Rational& exact, const Tolerances& tol);

/// Evaluates every configured bound. Per-bound errors are recorded in the
/// entry and never abort the report.
BoundReport compare_bounds(const EventSystem& sys, const CompareConfig& config);

/// "[a=1,rho=0.5]"
std::string params_label(double a, double rho);

}  // namespace unionbounds
