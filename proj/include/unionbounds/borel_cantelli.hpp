#pragma once

// Finite-n Borel-Cantelli estimators. For a sequence A_1, A_2, ... with
// xi_n = I_{A_1} + ... + I_{A_n} and eta_n = n - xi_n:
//
//   lower(n)    = (1/n) sum_{k<=n} {P(A_k) + (E eta_n I_k)^2 / E eta_n xi_n I_k}
//   upper(m, n) = sum_{k=m..n} {P(A_k) - (E X I_k)^2 / E X^2 I_k},  X = xi_n - xi_{m-1}
//
// with 0/0 = 0 everywhere. Independent sequences use closed-form binomial
// moments; explicit sequences enumerate atoms.

#include <functional>
#include <optional>
#include <vector>

#include "unionbounds/event_space.hpp"

namespace unionbounds {

class EventSequenceModel {
 public:
  enum class Kind { explicit_system, independent };

  /// The events of sys in order; the horizon is the event count.
  static EventSequenceModel explicit_prefix(EventSystem sys);
  /// Independent events with P(A_k) = p(k), k = 1, 2, ...
  static EventSequenceModel independent(std::function<double(long)> p, long horizon);
  /// Independent events with a common probability.
  static EventSequenceModel identical(double p, long horizon);

  Kind kind() const { return kind_; }
  long horizon() const { return horizon_; }
  /// P(A_k), 1-based. Throws HorizonExceeded past the horizon.
  double probability(long k) const;
  /// Non-null for explicit models.
  const EventSystem* system() const { return system_ ? &*system_ : nullptr; }

 private:
  Kind kind_ = Kind::independent;
  long horizon_ = 0;
  std::function<double(long)> p_;
  std::optional<EventSystem> system_;
};

struct BCEstimate {
  long n = 0;
  long m = 1;
  double value = 0.0;
  double condition_value = 0.0;
  std::vector<double> per_k_terms;
  /// Upper estimate only: sum_{k=m..n} {P(A_k) - (E(X-1)I_k)^2 / E X(X-1) I_k},
  /// which bounds P(A_m u ... u A_n) from above.
  std::optional<double> window_union_upper;
};

struct BCExact {
  Rational value;
  Rational condition_value;
  std::optional<Rational> window_union_upper;
};

BCEstimate bc_lower_estimate(const EventSequenceModel& model, long n);
BCEstimate bc_upper_estimate(const EventSequenceModel& model, long m, long n);

/// alpha_2(n) / alpha_1(n)^2 with alpha_j = E xi_n^j. Throws DomainError when
/// alpha_1 = 0.
double kochen_stone_ratio(const EventSequenceModel& model, long n);

/// Exact counterparts over the first n events of an explicit system.
BCExact bc_lower_exact(const EventSystem& sys, long n);
BCExact bc_upper_exact(const EventSystem& sys, long m, long n);
Rational kochen_stone_exact(const EventSystem& sys, long n);

}  // namespace unionbounds
