#include "unionbounds/union_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

namespace unionbounds {

double holder_union_bound(const EventSystem& sys, double p) {
  const Vector<Rational> occ = occupancy_profile(sys);
  double alpha1 = 0.0;
  double alphap = 0.0;
  for (Eigen::Index i = 1; i < occ.size(); ++i) {
    const double w = occ(i).convert_to<double>();
    alpha1 += static_cast<double>(i) * w;
    alphap += std::pow(static_cast<double>(i), p) * w;
  }
  return holder_lower_bound(alpha1, alphap, p);
}

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const BoundEntry& e) { return !e.error && !e.pass; }));
}

std::size_t BoundReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.error; }));
}

bool sandwich_holds(const BoundEntry& entry, const Rational& exact, const Tolerances& tol) {
  if (entry.error) return false;
  if (entry.exact_value) {
    return entry.kind == Direction::lower ? *entry.exact_value <= exact : *entry.exact_value >= exact;
  }
  const double truth = exact.convert_to<double>();
  const double slack = tol.inequality * std::max(std::abs(truth), std::abs(entry.value));
  return entry.kind == Direction::lower ? entry.value <= truth + slack
                                        : entry.value >= truth - slack;
}

std::string params_label(double a, double rho) {
  std::ostringstream os;
  os << "[a=" << a << ",rho=" << rho << "]";
  return os.str();
}

namespace {

template <typename Compute>
BoundEntry evaluate(std::string name, Direction kind, bool exact_mode, Compute&& compute,
                    const Rational& truth, const Tolerances& tol) {
  BoundEntry entry;
  entry.name = std::move(name);
  entry.kind = kind;
  try {
    if (exact_mode) {
      const Rational v = compute(Rational{});
      entry.exact_value = v;
      entry.value = v.convert_to<double>();
    } else {
      entry.value = compute(double{});
    }
    entry.clamped = std::clamp(entry.value, 0.0, 1.0);
    entry.pass = sandwich_holds(entry, truth, tol);
  } catch (const std::exception& ex) {
    entry.error = ex.what();
    entry.pass = false;
  }
  return entry;
}

}  // namespace

BoundReport compare_bounds(const EventSystem& sys, const CompareConfig& config) {
  BoundReport report;
  report.exact = exact_union_probability(sys);
  const auto& tol = config.tol;
  auto add = [&](std::string name, Direction kind, bool exact_mode, auto&& compute) {
    report.entries.push_back(evaluate(std::move(name), kind, exact_mode, compute, report.exact, tol));
  };

  if (config.comparators) {
    add("chung_erdos", Direction::lower, true,
        [&](auto tag) { return chung_erdos<decltype(tag)>(sys); });
    add("de_caen", Direction::lower, true, [&](auto tag) { return de_caen<decltype(tag)>(sys); });
    add("kat", Direction::lower, true,
        [&](auto tag) { return kat_bound<decltype(tag)>(sys, false, tol); });
  }
  for (double p : config.holder_p) {
    std::ostringstream name;
    name << "holder[p=" << p << "]";
    add(name.str(), Direction::lower, false, [&](auto) { return holder_union_bound(sys, p); });
  }

  for (const auto& [a, rho] : config.params) {
    const ExponentParams two{a, rho, 2, 1};
    const ExponentParams three{a, rho, 3, 1};
    const bool exact_mode = two.integral();
    const std::string label = params_label(a, rho);
    if (config.occupancy_bounds) {
      add("occupancy_lower_two" + label, Direction::lower, exact_mode, [&](auto tag) {
        return lower_bound_two_moments(occupancy_moments<decltype(tag)>(sys, two), tol);
      });
      add("occupancy_upper_two" + label, Direction::upper, exact_mode, [&](auto tag) {
        return upper_bound_two_moments(occupancy_moments<decltype(tag)>(sys, two));
      });
      add("occupancy_lower_three" + label, Direction::lower, exact_mode, [&](auto tag) {
        return lower_bound_three_moments(occupancy_moments<decltype(tag)>(sys, three),
                                         ThreeMomentVariant::refined, tol);
      });
      add("occupancy_upper_three" + label, Direction::upper, exact_mode, [&](auto tag) {
        return upper_bound_three_moments(occupancy_moments<decltype(tag)>(sys, three),
                                         ThreeMomentVariant::refined, tol);
      });
    }
    if (config.per_event_bounds) {
      add("per_event_lower_two" + label, Direction::lower, exact_mode,
          [&](auto tag) { return frolov_lower_two<decltype(tag)>(sys, two, tol); });
      add("per_event_lower_three" + label, Direction::lower, exact_mode, [&](auto tag) {
        return frolov_lower_three<decltype(tag)>(sys, three, std::nullopt, tol);
      });
      add("per_event_upper_three" + label, Direction::upper, exact_mode, [&](auto tag) {
        return frolov_upper_three<decltype(tag)>(sys, three, std::nullopt, tol);
      });
    }
  }
  return report;
}

}  // namespace unionbounds
