#pragma once

// Finite probability space with rational atom weights and events stored as
// atom bitsets. Every quantity here is exact; it is the oracle the bounds
// are checked against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "unionbounds/core_bounds.hpp"
#include "unionbounds/scalar.hpp"

namespace unionbounds {

class EventSystem {
 public:
  using AtomSet = boost::dynamic_bitset<>;

  /// Validates weights (non-negative, summing to exactly 1) and event atom
  /// indices; throws ValidationError otherwise.
  static EventSystem build(std::vector<Rational> weights,
                           const std::vector<std::vector<std::size_t>>& events);

  std::size_t atom_count() const { return weights_.size(); }
  std::size_t event_count() const { return events_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const AtomSet& event(std::size_t k) const { return events_.at(k); }
  std::vector<std::size_t> event_atoms(std::size_t k) const;

  /// Number of events containing each atom (the occupancy count xi).
  const std::vector<std::uint32_t>& occupancy_counts() const { return counts_; }

  /// Probability of an atom set.
  Rational probability(const AtomSet& atoms) const;

  /// The system restricted to its first n events (same atoms).
  EventSystem prefix(std::size_t n) const;

  /// Events first..last (0-based, inclusive) over the same atoms.
  EventSystem window(std::size_t first, std::size_t last) const;

 private:
  EventSystem(std::vector<Rational> weights, std::vector<AtomSet> events);

  std::vector<Rational> weights_;
  std::vector<AtomSet> events_;
  std::vector<std::uint32_t> counts_;
};

/// p_0..p_N: probability that exactly i events occur.
Vector<Rational> occupancy_profile(const EventSystem& sys);

/// p(i-1, k-1) = P(B_i A_k): exactly i events occur, A_k among them.
Matrix<Rational> joint_occupancy(const EventSystem& sys);

Rational exact_union_probability(const EventSystem& sys);

/// E xi^k = sum_i i^k p_i.
Rational power_moments(const EventSystem& sys, int k);

/// P(A_{e_1} ... A_{e_j}) computed from the atom bitsets.
Rational intersection_probability(const EventSystem& sys, std::span<const std::size_t> events);

/// sum_i sum_j P(A_i A_j), computed from the pairwise table rather than the
/// occupancy profile.
Rational pairwise_intersection_sum(const EventSystem& sys);

template <typename Scalar>
struct PerEventMoments {
  ExponentParams params;
  Matrix<Scalar> sbar;       // sbar(j-1, k-1) = sbar_j(k)
  Vector<Scalar> delta_bar1; // N^rho sbar_1(k) - sbar_2(k)
  Vector<Scalar> delta_bar2; // N^rho sbar_2(k) - sbar_3(k); empty when ell < 3
  Vector<Scalar> delta_hat1; // sbar_2(k) - sbar_1(k)
  Vector<Scalar> delta_hat2; // sbar_3(k) - sbar_2(k); empty when ell < 3

  /// Moment vector of event k (1-based) for the closed-form bounds.
  MomentVector<Scalar> event(int k) const {
    return {sbar.col(k - 1), params};
  }
};

/// sbar_j(k) = sum_i i^(a + (j-1) rho) p_ik / i. params.n_support is set to
/// the number of events.
template <typename Scalar>
PerEventMoments<Scalar> per_event_moments(const EventSystem& sys, ExponentParams params) {
  const auto n = static_cast<int>(sys.event_count());
  params.n_support = n;
  params.validate();
  const Matrix<Rational> joint = joint_occupancy(sys);

  PerEventMoments<Scalar> out;
  out.params = params;
  out.sbar = Matrix<Scalar>::Zero(params.ell, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= params.ell; ++j) {
      const Scalar weight = power(Scalar(i), params.exponent(j) - 1.0);
      for (int k = 1; k <= n; ++k) {
        const Rational& p = joint(i - 1, k - 1);
        if (p == 0) continue;
        if constexpr (ScalarOps<Scalar>::exact) {
          out.sbar(j - 1, k - 1) += weight * p;
        } else {
          out.sbar(j - 1, k - 1) += weight * p.convert_to<double>();
        }
      }
    }
  }
  const Scalar n_rho = power(Scalar(n), params.rho);
  out.delta_bar1 = n_rho * out.sbar.row(0).transpose() - out.sbar.row(1).transpose();
  out.delta_hat1 = out.sbar.row(1).transpose() - out.sbar.row(0).transpose();
  if (params.ell >= 3) {
    out.delta_bar2 = n_rho * out.sbar.row(1).transpose() - out.sbar.row(2).transpose();
    out.delta_hat2 = out.sbar.row(2).transpose() - out.sbar.row(1).transpose();
  }
  return out;
}

/// Moments of r_i = p_i (the occupancy profile itself) under params.
template <typename Scalar>
MomentVector<Scalar> occupancy_moments(const EventSystem& sys, ExponentParams params) {
  params.n_support = static_cast<int>(sys.event_count());
  params.validate();
  const Vector<Rational> p = occupancy_profile(sys);
  MomentVector<Scalar> m{Vector<Scalar>::Zero(params.ell), params};
  for (int i = 1; i <= params.n_support; ++i) {
    if (p(i) == 0) continue;
    for (int j = 1; j <= params.ell; ++j) {
      const Scalar weight = power(Scalar(i), params.exponent(j));
      if constexpr (ScalarOps<Scalar>::exact) {
        m.sbar(j - 1) += weight * p(i);
      } else {
        m.sbar(j - 1) += weight * p(i).convert_to<double>();
      }
    }
  }
  return m;
}

enum class SystemProfile { dense, sparse, disjointish };

SystemProfile parse_profile(const std::string& name);
std::string to_string(SystemProfile profile);

/// Seeded random system: integer weights in [1, 1000] normalised by their
/// sum; events drawn per profile. Deterministic for a fixed seed on every
/// platform (raw mt19937_64 output, no library distributions).
EventSystem random_system(std::uint64_t seed, std::size_t n_events, std::size_t n_atoms,
                          SystemProfile profile);

}  // namespace unionbounds
