#include "unionbounds/event_space.hpp"

#include <random>
#include <stdexcept>

namespace unionbounds {

EventSystem::EventSystem(std::vector<Rational> weights, std::vector<AtomSet> events)
    : weights_(std::move(weights)), events_(std::move(events)), counts_(weights_.size(), 0) {
  for (const auto& e : events_)
    for (auto a = e.find_first(); a != AtomSet::npos; a = e.find_next(a)) ++counts_[a];
}

EventSystem EventSystem::build(std::vector<Rational> weights,
                               const std::vector<std::vector<std::size_t>>& events) {
  if (weights.empty()) throw ValidationError("event system needs at least one atom");
  if (events.empty()) throw ValidationError("event system needs at least one event");
  Rational total(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0)
      throw ValidationError("weight " + std::to_string(i) + " is negative: " +
                            format_rational(weights[i]));
    total += weights[i];
  }
  if (total != 1) throw ValidationError("weights sum " + format_rational(total) + " ≠ 1");

  std::vector<AtomSet> sets;
  sets.reserve(events.size());
  for (std::size_t k = 0; k < events.size(); ++k) {
    AtomSet set(weights.size());
    for (auto atom : events[k]) {
      if (atom >= weights.size())
        throw ValidationError("event " + std::to_string(k) + " references atom " +
                              std::to_string(atom) + " but only " +
                              std::to_string(weights.size()) + " atoms exist");
      set.set(atom);
    }
    sets.push_back(std::move(set));
  }
  return EventSystem(std::move(weights), std::move(sets));
}

std::vector<std::size_t> EventSystem::event_atoms(std::size_t k) const {
  std::vector<std::size_t> atoms;
  const auto& e = events_.at(k);
  for (auto a = e.find_first(); a != AtomSet::npos; a = e.find_next(a)) atoms.push_back(a);
  return atoms;
}

Rational EventSystem::probability(const AtomSet& atoms) const {
  Rational total(0);
  for (auto a = atoms.find_first(); a != AtomSet::npos; a = atoms.find_next(a)) total += weights_[a];
  return total;
}

EventSystem EventSystem::prefix(std::size_t n) const {
  if (n == 0 || n > events_.size()) throw DomainError("prefix length out of range");
  return window(0, n - 1);
}

EventSystem EventSystem::window(std::size_t first, std::size_t last) const {
  if (first > last || last >= events_.size()) throw DomainError("event window out of range");
  return EventSystem(weights_, std::vector<AtomSet>(events_.begin() + first,
                                                    events_.begin() + last + 1));
}

Vector<Rational> occupancy_profile(const EventSystem& sys) {
  Vector<Rational> p = Vector<Rational>::Zero(sys.event_count() + 1);
  const auto& counts = sys.occupancy_counts();
  for (std::size_t a = 0; a < sys.atom_count(); ++a) p(counts[a]) += sys.weights()[a];
  return p;
}

Matrix<Rational> joint_occupancy(const EventSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.event_count());
  Matrix<Rational> joint = Matrix<Rational>::Zero(n, n);
  const auto& counts = sys.occupancy_counts();
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& e = sys.event(k);
    for (auto a = e.find_first(); a != EventSystem::AtomSet::npos; a = e.find_next(a))
      joint(counts[a] - 1, k) += sys.weights()[a];
  }
  return joint;
}

Rational exact_union_probability(const EventSystem& sys) {
  Rational total(0);
  const auto& counts = sys.occupancy_counts();
  for (std::size_t a = 0; a < sys.atom_count(); ++a)
    if (counts[a] > 0) total += sys.weights()[a];
  return total;
}

Rational power_moments(const EventSystem& sys, int k) {
  if (k < 1) throw DomainError("moment order must be positive");
  const Vector<Rational> p = occupancy_profile(sys);
  Rational total(0);
  for (Eigen::Index i = 1; i < p.size(); ++i)
    total += ipow(Rational(i), static_cast<unsigned long>(k)) * p(i);
  return total;
}

Rational intersection_probability(const EventSystem& sys, std::span<const std::size_t> events) {
  if (events.empty()) return Rational(1);
  EventSystem::AtomSet common = sys.event(events[0]);
  for (std::size_t j = 1; j < events.size(); ++j) common &= sys.event(events[j]);
  return sys.probability(common);
}

Rational pairwise_intersection_sum(const EventSystem& sys) {
  Rational total(0);
  const auto n = sys.event_count();
  for (std::size_t i = 0; i < n; ++i) {
    total += sys.probability(sys.event(i));
    for (std::size_t j = i + 1; j < n; ++j) total += 2 * sys.probability(sys.event(i) & sys.event(j));
  }
  return total;
}

SystemProfile parse_profile(const std::string& name) {
  if (name == "dense") return SystemProfile::dense;
  if (name == "sparse") return SystemProfile::sparse;
  if (name == "disjoint-ish" || name == "disjointish") return SystemProfile::disjointish;
  throw ValidationError("unknown profile '" + name + "' (dense, sparse, disjoint-ish)");
}

std::string to_string(SystemProfile profile) {
  switch (profile) {
    case SystemProfile::dense: return "dense";
    case SystemProfile::sparse: return "sparse";
    case SystemProfile::disjointish: return "disjoint-ish";
  }
  return "dense";
}

EventSystem random_system(std::uint64_t seed, std::size_t n_events, std::size_t n_atoms,
                          SystemProfile profile) {
  if (n_events < 1 || n_atoms < 1) throw DomainError("need at least one event and one atom");
  std::mt19937_64 gen(seed);
  // Percent chance per (atom, event) pair.
  const auto roll = [&](std::uint64_t percent) { return gen() % 100 < percent; };

  std::vector<std::uint64_t> raw(n_atoms);
  std::uint64_t sum = 0;
  for (auto& w : raw) {
    w = 1 + gen() % 1000;
    sum += w;
  }
  std::vector<Rational> weights;
  weights.reserve(n_atoms);
  for (auto w : raw) weights.emplace_back(Rational(w) / Rational(sum));

  std::vector<std::vector<std::size_t>> events(n_events);
  for (std::size_t a = 0; a < n_atoms; ++a) {
    switch (profile) {
      case SystemProfile::dense:
        for (auto& e : events)
          if (roll(50)) e.push_back(a);
        break;
      case SystemProfile::sparse:
        for (auto& e : events)
          if (roll(15)) e.push_back(a);
        break;
      case SystemProfile::disjointish: {
        // Each atom joins one event in three out of four cases; rare overlaps.
        if (roll(75)) events[gen() % n_events].push_back(a);
        for (auto& e : events)
          if (roll(3) && (e.empty() || e.back() != a)) e.push_back(a);
        break;
      }
    }
  }
  return EventSystem::build(std::move(weights), events);
}

}  // namespace unionbounds
