#include "unionbounds/harness.hpp"

#include <algorithm>
#include <sstream>

#include "unionbounds/general_bound.hpp"

namespace unionbounds {

namespace {

constexpr std::size_t kMaxMessages = 8;

void note(SuiteResult& result, const std::string& message) {
  ++result.failures;
  if (result.messages.size() < kMaxMessages) result.messages.push_back(message);
}

std::uint64_t uniform(std::mt19937_64& gen, std::uint64_t lo, std::uint64_t hi) {
  return lo + gen() % (hi - lo + 1);
}

}  // namespace

std::string to_string(WindowPattern pattern) {
  switch (pattern) {
    case WindowPattern::lower_ell2: return "lower_ell2";
    case WindowPattern::upper_ell2: return "upper_ell2";
    case WindowPattern::lower_ell3: return "lower_ell3";
    case WindowPattern::upper_ell3: return "upper_ell3";
  }
  return "?";
}

SuiteResult sandwich_suite(std::uint64_t seed, std::size_t systems,
                           const std::vector<std::pair<double, double>>& params,
                           const Tolerances& tol) {
  static constexpr SystemProfile profiles[] = {SystemProfile::dense, SystemProfile::sparse,
                                               SystemProfile::disjointish};
  std::mt19937_64 gen(seed);
  CompareConfig config;
  config.params = params;
  config.tol = tol;
  SuiteResult result;
  for (std::size_t s = 0; s < systems; ++s) {
    const auto sys_seed = gen();
    const auto n_events = uniform(gen, 1, 10);
    const auto n_atoms = uniform(gen, 1, 256);
    const auto profile = profiles[s % 3];
    const EventSystem sys = random_system(sys_seed, n_events, n_atoms, profile);
    const BoundReport report = compare_bounds(sys, config);
    for (const auto& e : report.entries) {
      ++result.cases;
      if (e.pass) continue;
      std::ostringstream os;
      os << "seed " << sys_seed << " (" << n_events << " events, " << n_atoms << " atoms, "
         << to_string(profile) << "): " << e.name << " = " << e.value << " vs exact "
         << report.exact;
      if (e.error) os << " [" << *e.error << "]";
      note(result, os.str());
    }
  }
  return result;
}

SharpnessCase random_sharpness_case(std::mt19937_64& gen) {
  SharpnessCase c;
  c.pattern = static_cast<WindowPattern>(gen() % 4);
  const bool three = c.pattern == WindowPattern::lower_ell3 || c.pattern == WindowPattern::upper_ell3;
  c.n_support = static_cast<int>(uniform(gen, three ? 3 : 2, 12));
  c.a = static_cast<double>(uniform(gen, 1, 3));
  c.rho = static_cast<double>(uniform(gen, 1, 2));

  std::vector<int> support;
  switch (c.pattern) {
    case WindowPattern::lower_ell2:
      c.m = static_cast<int>(uniform(gen, 2, c.n_support));
      support = {c.m - 1, c.m};
      break;
    case WindowPattern::upper_ell2:
      c.m = c.n_support;
      support = {1, c.n_support};
      break;
    case WindowPattern::lower_ell3:
      c.m = static_cast<int>(uniform(gen, 2, c.n_support - 1));
      support = {c.m - 1, c.m, c.n_support};
      break;
    case WindowPattern::upper_ell3:
      c.m = static_cast<int>(uniform(gen, 3, c.n_support));
      support = {1, c.m - 1, c.m};
      break;
  }
  c.r = Vector<Rational>::Zero(c.n_support);
  for (int i : support) c.r(i - 1) = Rational(uniform(gen, 1, 97), uniform(gen, 1, 89));
  return c;
}

std::string check_sharpness(const SharpnessCase& c) {
  const bool three = c.pattern == WindowPattern::lower_ell3 || c.pattern == WindowPattern::upper_ell3;
  const ExponentParams params{c.a, c.rho, three ? 3 : 2, c.n_support};
  const MomentVector<Rational> m = moments_of(c.r, params);
  const Rational total = c.r.sum();

  Rational bound;
  std::vector<int> window;
  const auto n = c.n_support;
  switch (c.pattern) {
    case WindowPattern::lower_ell2:
      bound = lower_bound_two_moments(m);
      window = select_index_window(delta_decomposition(m[1], m[2], c.rho), c.pattern, n);
      break;
    case WindowPattern::upper_ell2:
      bound = upper_bound_two_moments(m);
      window = select_index_window(DeltaDecomposition<Rational>{}, c.pattern, n);
      break;
    case WindowPattern::lower_ell3: {
      bound = lower_bound_three_moments(m, ThreeMomentVariant::refined);
      const Rational n_rho = power(Rational(n), c.rho);
      window = select_index_window(
          delta_decomposition(Rational(n_rho * m[1] - m[2]), Rational(n_rho * m[2] - m[3]), c.rho),
          c.pattern, n);
      break;
    }
    case WindowPattern::upper_ell3:
      bound = upper_bound_three_moments(m, ThreeMomentVariant::refined);
      window = select_index_window(delta_decomposition(Rational(m[2] - m[1]), Rational(m[3] - m[2]), c.rho),
                                   c.pattern, n);
      break;
  }

  std::ostringstream os;
  os << to_string(c.pattern) << " N=" << n << " m=" << c.m << " a=" << c.a << " rho=" << c.rho;
  if (bound != total) {
    os << ": bound " << bound << " != sum " << total;
    return os.str();
  }
  for (int i = 1; i <= n; ++i) {
    const bool in_window = std::find(window.begin(), window.end(), i) != window.end();
    if (c.r(i - 1) != 0 && !in_window) {
      os << ": support index " << i << " outside the selected window";
      return os.str();
    }
  }
  return {};
}

SuiteResult sharpness_suite(std::uint64_t seed, std::size_t configs) {
  std::mt19937_64 gen(seed);
  SuiteResult result;
  for (std::size_t i = 0; i < configs; ++i) {
    const SharpnessCase c = random_sharpness_case(gen);
    ++result.cases;
    try {
      if (auto message = check_sharpness(c); !message.empty()) note(result, message);
    } catch (const std::exception& e) {
      note(result, to_string(c.pattern) + ": " + e.what());
    }
  }
  return result;
}

}  // namespace unionbounds
