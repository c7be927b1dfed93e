#include "unionbounds/borel_cantelli.hpp"

#include <cmath>
#include <string>

namespace unionbounds {

EventSequenceModel EventSequenceModel::explicit_prefix(EventSystem sys) {
  EventSequenceModel model;
  model.kind_ = Kind::explicit_system;
  model.horizon_ = static_cast<long>(sys.event_count());
  model.system_ = std::move(sys);
  return model;
}

EventSequenceModel EventSequenceModel::independent(std::function<double(long)> p, long horizon) {
  if (horizon < 1) throw ValidationError("horizon must be positive");
  EventSequenceModel model;
  model.kind_ = Kind::independent;
  model.horizon_ = horizon;
  model.p_ = std::move(p);
  return model;
}

EventSequenceModel EventSequenceModel::identical(double p, long horizon) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probability must lie in [0, 1]");
  return independent([p](long) { return p; }, horizon);
}

double EventSequenceModel::probability(long k) const {
  if (k < 1) throw DomainError("event index must be positive");
  if (k > horizon_)
    throw HorizonExceeded("event " + std::to_string(k) + " beyond horizon " +
                          std::to_string(horizon_));
  if (system_) return system_->probability(system_->event(k - 1)).convert_to<double>();
  const double p = p_(k);
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("P(A_" + std::to_string(k) + ") = " + std::to_string(p) +
                          " outside [0, 1]");
  return p;
}

namespace {

void check_range(const EventSequenceModel& model, long m, long n) {
  if (n < 1) throw DomainError("n must be positive");
  if (m < 1) throw DomainError("m must be positive");
  if (m > n) throw DomainError("m = " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  if (n > model.horizon())
    throw HorizonExceeded("n = " + std::to_string(n) + " beyond horizon " +
                          std::to_string(model.horizon()));
}

void check_range(const EventSystem& sys, long m, long n) {
  if (n < 1 || m < 1) throw DomainError("m and n must be positive");
  if (m > n) throw DomainError("m = " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  if (static_cast<std::size_t>(n) > sys.event_count())
    throw HorizonExceeded("n = " + std::to_string(n) + " beyond the " +
                          std::to_string(sys.event_count()) + " available events");
}

// Number of events among first..last (0-based, inclusive) containing each atom.
std::vector<long> window_counts(const EventSystem& sys, long first, long last) {
  std::vector<long> counts(sys.atom_count(), 0);
  for (long k = first; k <= last; ++k) {
    const auto& e = sys.event(static_cast<std::size_t>(k));
    for (auto a = e.find_first(); a != EventSystem::AtomSet::npos; a = e.find_next(a)) ++counts[a];
  }
  return counts;
}

struct WindowSums {
  std::vector<double> p;
  long double mu = 0;     // sum p
  long double sigma = 0;  // sum p(1 - p)
};

WindowSums independent_sums(const EventSequenceModel& model, long first, long last) {
  WindowSums s;
  s.p.reserve(static_cast<std::size_t>(last - first + 1));
  for (long k = first; k <= last; ++k) {
    const double p = model.probability(k);
    s.p.push_back(p);
    s.mu += p;
    s.sigma += static_cast<long double>(p) * (1.0L - p);
  }
  return s;
}

template <typename S>
S ratio(const S& num, const S& den) {
  return ratio_or_zero<S>(num, den);
}

}  // namespace

BCExact bc_lower_exact(const EventSystem& sys, long n) {
  check_range(sys, 1, n);
  const auto xi = window_counts(sys, 0, n - 1);
  Rational value(0);
  Rational condition(0);
  for (long k = 0; k < n; ++k) {
    const auto& e = sys.event(static_cast<std::size_t>(k));
    Rational pk(0), eta(0), eta_xi(0);
    for (auto a = e.find_first(); a != EventSystem::AtomSet::npos; a = e.find_next(a)) {
      const Rational& w = sys.weights()[a];
      pk += w;
      eta += (n - xi[a]) * w;
      eta_xi += (n - xi[a]) * xi[a] * w;
    }
    value += pk + ratio<Rational>(eta * eta, eta_xi);
    condition += ratio<Rational>(eta, eta_xi);
  }
  return {value / n, condition / n, std::nullopt};
}

BCExact bc_upper_exact(const EventSystem& sys, long m, long n) {
  check_range(sys, m, n);
  const auto x = window_counts(sys, m - 1, n - 1);
  Rational value(0);
  Rational condition(0);
  Rational window(0);
  for (long k = m - 1; k < n; ++k) {
    const auto& e = sys.event(static_cast<std::size_t>(k));
    Rational pk(0), x1(0), x2(0);
    for (auto a = e.find_first(); a != EventSystem::AtomSet::npos; a = e.find_next(a)) {
      const Rational& w = sys.weights()[a];
      pk += w;
      x1 += x[a] * w;
      x2 += x[a] * x[a] * w;
    }
    value += pk - ratio<Rational>(x1 * x1, x2);
    condition += ratio<Rational>(x1, x2);
    const Rational h1 = x1 - pk;  // E(X - 1) I_k
    const Rational h2 = x2 - x1;  // E X(X - 1) I_k
    window += pk - ratio<Rational>(h1 * h1, h2);
  }
  return {value, condition, window};
}

Rational kochen_stone_exact(const EventSystem& sys, long n) {
  check_range(sys, 1, n);
  const EventSystem prefix = sys.prefix(static_cast<std::size_t>(n));
  const Rational a1 = power_moments(prefix, 1);
  if (a1 == 0) throw DomainError("alpha_1 = 0: Kochen-Stone ratio undefined");
  return power_moments(prefix, 2) / (a1 * a1);
}

BCEstimate bc_lower_estimate(const EventSequenceModel& model, long n) {
  check_range(model, 1, n);
  BCEstimate out;
  out.n = n;
  out.m = 1;
  if (const EventSystem* sys = model.system()) {
    const BCExact exact = bc_lower_exact(*sys, n);
    out.value = exact.value.convert_to<double>();
    out.condition_value = exact.condition_value.convert_to<double>();
    return out;
  }
  // On A_k, xi_n = 1 + S with S the count of the other events.
  const WindowSums s = independent_sums(model, 1, n);
  long double value = 0;
  long double condition = 0;
  out.per_k_terms.reserve(s.p.size());
  for (const double p : s.p) {
    const long double mu = s.mu - p;
    const long double sigma = s.sigma - static_cast<long double>(p) * (1.0L - p);
    const long double eta = p * (n - 1 - mu);
    const long double eta_xi = p * ((n - 1) + (n - 2) * mu - sigma - mu * mu);
    const long double term = p + ratio<long double>(eta * eta, eta_xi);
    out.per_k_terms.push_back(static_cast<double>(term));
    value += term;
    condition += ratio<long double>(eta, eta_xi);
  }
  out.value = static_cast<double>(value / n);
  out.condition_value = static_cast<double>(condition / n);
  return out;
}

BCEstimate bc_upper_estimate(const EventSequenceModel& model, long m, long n) {
  check_range(model, m, n);
  BCEstimate out;
  out.n = n;
  out.m = m;
  if (const EventSystem* sys = model.system()) {
    const BCExact exact = bc_upper_exact(*sys, m, n);
    out.value = exact.value.convert_to<double>();
    out.condition_value = exact.condition_value.convert_to<double>();
    out.window_union_upper = exact.window_union_upper->convert_to<double>();
    return out;
  }
  // On A_k, X = 1 + S with S the count of the other window events.
  const WindowSums s = independent_sums(model, m, n);
  long double value = 0;
  long double condition = 0;
  long double window = 0;
  out.per_k_terms.reserve(s.p.size());
  for (const double p : s.p) {
    const long double mu = s.mu - p;
    const long double sigma = s.sigma - static_cast<long double>(p) * (1.0L - p);
    const long double x1 = p * (1 + mu);
    const long double x2 = p * (1 + 2 * mu + sigma + mu * mu);
    const long double term = p - ratio<long double>(x1 * x1, x2);
    out.per_k_terms.push_back(static_cast<double>(term));
    value += term;
    condition += ratio<long double>(x1, x2);
    const long double h1 = p * mu;
    const long double h2 = p * (mu + sigma + mu * mu);
    window += p - ratio<long double>(h1 * h1, h2);
  }
  out.value = static_cast<double>(value);
  out.condition_value = static_cast<double>(condition);
  out.window_union_upper = static_cast<double>(window);
  return out;
}

double kochen_stone_ratio(const EventSequenceModel& model, long n) {
  check_range(model, 1, n);
  if (const EventSystem* sys = model.system()) return kochen_stone_exact(*sys, n).convert_to<double>();
  const WindowSums s = independent_sums(model, 1, n);
  long double squares = 0;
  for (const double p : s.p) squares += static_cast<long double>(p) * p;
  if (s.mu == 0) throw DomainError("alpha_1 = 0: Kochen-Stone ratio undefined");
  const long double alpha2 = s.mu + s.mu * s.mu - squares;
  return static_cast<double>(alpha2 / (s.mu * s.mu));
}

}  // namespace unionbounds
