#pragma once

// Shared test fixtures: hand-rolled generators, the reference systems and
// literal transcriptions of the bound displays, written independently of the
// library's index-window evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unionbounds/event_space.hpp"

namespace testing {

using unionbounds::EventSystem;
using unionbounds::Rational;
template <typename S>
using Vector = unionbounds::Vector<S>;

inline Rational q(const char* text) { return unionbounds::parse_rational(text); }

inline double d(const Rational& x) { return x.convert_to<double>(); }

inline Vector<double> to_doubles(const Vector<Rational>& v) {
  return v.unaryExpr([](const Rational& x) { return x.convert_to<double>(); });
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return eng_() % n; }
  int between(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool coin(double p) { return unit() < p; }

  Rational rational(int max_num = 60, int max_den = 40) {
    return Rational(between(1, max_num), between(1, max_den));
  }

  /// Non-negative vector of length n with at least one positive entry.
  Vector<Rational> sparse_vector(int n, double density) {
    Vector<Rational> r = Vector<Rational>::Zero(n);
    for (int i = 0; i < n; ++i)
      if (coin(density)) r(i) = rational();
    if (r.isZero()) r(between(0, n - 1)) = rational();
    return r;
  }

  /// (a, rho) with integer entries when `integral`, otherwise a mix of
  /// fractional values on both sides of 1.
  std::pair<double, double> params(bool integral) {
    static constexpr double fractional[] = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0};
    if (integral) return {static_cast<double>(between(1, 3)), static_cast<double>(between(1, 3))};
    return {fractional[below(8)], fractional[below(8)]};
  }

  /// Random system built without random_system(): weights are random
  /// rationals normalised exactly, events random atom subsets.
  EventSystem system(int max_events, int max_atoms) {
    const int n_atoms = between(1, max_atoms);
    const int n_events = between(1, max_events);
    std::vector<Rational> weights(n_atoms);
    Rational total(0);
    for (auto& w : weights) {
      w = coin(0.1) ? Rational(0) : rational(20, 7);
      total += w;
    }
    if (total == 0) {
      weights[0] = 1;
      total = 1;
    }
    for (auto& w : weights) w /= total;
    const double density = uniform(0.05, 0.8);
    std::vector<std::vector<std::size_t>> events(n_events);
    for (auto& e : events)
      for (int a = 0; a < n_atoms; ++a)
        if (coin(density)) e.push_back(static_cast<std::size_t>(a));
    return EventSystem::build(std::move(weights), events);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// ---- reference systems --------------------------------------------------------

/// Two independent fair events.
inline EventSystem s2() {
  return EventSystem::build({q("1/4"), q("1/4"), q("1/4"), q("1/4")}, {{0, 1}, {0, 2}});
}

inline EventSystem s3() {
  return EventSystem::build({q("0.1"), q("0.2"), q("0.25"), q("0.15"), q("0.2"), q("0.1")},
                            {{0, 1, 2}, {1, 3}, {2, 3, 4}});
}

/// One event of probability p (p in (0, 1]).
inline EventSystem single(const Rational& p) {
  if (p == 1) return EventSystem::build({Rational(1)}, {{0}});
  return EventSystem::build({p, Rational(1 - p)}, {{0}});
}

/// n copies of one event of probability p.
inline EventSystem copies(const Rational& p, int n) {
  return EventSystem::build({p, Rational(1 - p)}, std::vector<std::vector<std::size_t>>(n, {0}));
}

/// Pairwise disjoint events with the given probabilities (sum <= 1).
inline EventSystem disjoint(const std::vector<Rational>& probs) {
  std::vector<Rational> weights = probs;
  Rational rest(1);
  for (const auto& p : probs) rest -= p;
  weights.push_back(rest);
  std::vector<std::vector<std::size_t>> events;
  for (std::size_t k = 0; k < probs.size(); ++k) events.push_back({k});
  return EventSystem::build(std::move(weights), events);
}

// ---- brute-force oracles ------------------------------------------------------

/// P(U) by scanning each event's atom list.
inline Rational union_by_scan(const EventSystem& sys) {
  std::vector<bool> covered(sys.atom_count(), false);
  for (std::size_t k = 0; k < sys.event_count(); ++k)
    for (auto a : sys.event_atoms(k)) covered[a] = true;
  Rational total(0);
  for (std::size_t a = 0; a < sys.atom_count(); ++a)
    if (covered[a]) total += sys.weights()[a];
  return total;
}

/// s_1(k) = P(A_k), s_2(k) = sum_i P(A_i A_k), s_3(k) = sum_ij P(A_i A_j A_k)
/// from intersections only.
struct IntersectionMoments {
  std::vector<Rational> s1, s2, s3;
};

inline IntersectionMoments intersection_moments(const EventSystem& sys) {
  const std::size_t n = sys.event_count();
  IntersectionMoments m{std::vector<Rational>(n), std::vector<Rational>(n), std::vector<Rational>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t one[] = {k};
    m.s1[k] = unionbounds::intersection_probability(sys, one);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t two[] = {i, k};
      m.s2[k] += unionbounds::intersection_probability(sys, two);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t three[] = {i, j, k};
        m.s3[k] += unionbounds::intersection_probability(sys, three);
      }
    }
  }
  return m;
}

// ---- literal displays (double) -----------------------------------------------

inline double div0(double num, double den) { return den == 0.0 && num == 0.0 ? 0.0 : num / den; }

/// delta, theta = delta - [delta], theta_bar; delta snapped to an integer
/// within 1e-9.
struct Split {
  double delta = 0, theta = 0, theta_bar = 0;
};

inline Split split(double lo, double hi, double rho) {
  Split s;
  if (lo == 0.0) return s;
  s.delta = std::pow(hi / lo, 1.0 / rho);
  if (std::abs(s.delta - std::round(s.delta)) < 1e-9) s.delta = std::round(s.delta);
  s.theta = s.delta - std::floor(s.delta);
  const double w = s.delta - s.theta;
  s.theta_bar = div0(std::pow(s.delta, rho) - std::pow(w, rho),
                     std::pow(w + 1, rho) - std::pow(w, rho));
  return s;
}

inline double display_60(double s1, double s2, double a, double rho) {
  if (s1 == 0.0) return 0.0;
  const auto [delta, theta, tb] = split(s1, s2, rho);
  (void)delta;
  const double top = std::pow(s1, (a + rho) / rho);
  const double u1 = std::pow(s1, 1.0 / rho);
  const double u2 = std::pow(s2, 1.0 / rho);
  return tb * top / std::pow(u2 + (1 - theta) * u1, a) + (1 - tb) * top / std::pow(u2 - theta * u1, a);
}

inline double display_80(double s1, double s2, double a, double rho) {
  return std::pow(s1, (a + rho) / rho) / std::pow(s2, a / rho);
}

inline double display_81(double s1, double s2, double a, double rho) {
  const auto sp = split(s1, s2, rho);
  const double factor = sp.theta == 0.0 ? 1.0 : (1 - sp.theta_bar) / (1 - sp.theta);
  return factor * display_80(s1, s2, a, rho);
}

inline double display_110(double s1, double s2, double a, double rho, int n) {
  const double na = std::pow(n, a);
  const double nar = std::pow(n, a + rho);
  return (nar - 1) / (nar - na) * s1 - (na - 1) / (nar - na) * s2;
}

enum class Form { refined, a_le_rho, a_ge_rho, simple_le, simple_ge };

/// Lower three-moment displays: refined, the two c5 forms and the two c6
/// forms (theta_bar = theta = 0).
inline double display_130(double s1, double s2, double s3, double a, double rho, int n,
                          Form form = Form::refined) {
  const double na = std::pow(n, a);
  const double nr = std::pow(n, rho);
  const double d1 = nr * s1 - s2;
  const double d2 = nr * s2 - s3;
  if (std::abs(d1) <= 1e-12 * nr * s1) return s1 / na;
  const auto [delta, theta, tb] = split(d1, d2, rho);
  const double lo = delta - theta;
  const double hi = lo + 1;
  const auto term = [&](double w, double x, double y, double j) {
    return w == 0.0 ? 0.0
                    : d1 * w * div0(na - std::pow(x, a), na * std::pow(j, a) * (nr - std::pow(y, rho)));
  };
  switch (form) {
    case Form::refined: return term(1 - tb, lo, lo, lo) + term(tb, hi, hi, hi) + s1 / na;
    case Form::a_le_rho:
      return term(1 - tb, delta, delta, lo) + term(tb, delta + 1, delta + 1, hi) + s1 / na;
    case Form::a_ge_rho:
      return term(1 - tb, delta - 1, delta - 1, lo) + term(tb, delta, delta, hi) + s1 / na;
    case Form::simple_le: return term(1, delta, delta, delta) + s1 / na;
    case Form::simple_ge: return term(1, delta - 1, delta - 1, delta) + s1 / na;
  }
  return 0.0;
}

/// Upper three-moment displays: refined, the two c7 forms and the two c8 forms.
inline double display_140(double s1, double s2, double s3, double a, double rho,
                          Form form = Form::refined) {
  const double h1 = s2 - s1;
  const double h2 = s3 - s2;
  if (std::abs(h1) <= 1e-12 * s2) return s1;
  const auto [delta, theta, tb] = split(h1, h2, rho);
  const double lo = delta - theta;
  const double hi = lo + 1;
  const auto term = [&](double w, double x, double y, double j) {
    return w == 0.0 ? 0.0 : h1 * w * div0(std::pow(x, a) - 1, std::pow(y, rho) - 1) / std::pow(j, a);
  };
  switch (form) {
    case Form::refined: return s1 - term(1 - tb, lo, lo, lo) - term(tb, hi, hi, hi);
    case Form::a_le_rho:
      return s1 - term(1 - tb, delta, delta, lo) - term(tb, delta + 1, delta + 1, hi);
    case Form::a_ge_rho:
      return s1 - term(1 - tb, delta - 1, delta - 1, lo) - term(tb, delta, delta, hi);
    case Form::simple_le: return s1 - term(1, delta, delta, delta);
    case Form::simple_ge: return s1 - term(1, delta - 1, delta - 1, delta);
  }
  return 0.0;
}

/// sum_k {theta s1^2/(s2 + (1-theta) s1) + (1-theta) s1^2/(s2 - theta s1)}.
inline double kat_display(const IntersectionMoments& m, bool zero_theta) {
  double total = 0;
  for (std::size_t k = 0; k < m.s1.size(); ++k) {
    const double s1 = d(m.s1[k]);
    const double s2 = d(m.s2[k]);
    if (s1 == 0.0) continue;
    double theta = 0.0;
    if (!zero_theta) theta = split(s1, s2, 1.0).theta;
    total += theta * s1 * s1 / (s2 + (1 - theta) * s1) + (1 - theta) * s1 * s1 / (s2 - theta * s1);
  }
  return total;
}

}  // namespace testing
