#pragma once

// Seeded self-check suites shared by the CLI selftest and the acceptance run.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "unionbounds/core_bounds.hpp"
#include "unionbounds/union_bounds.hpp"

namespace unionbounds {

struct SuiteResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  // first few failures
};

/// `systems` random systems (N <= 10 events, <= 256 atoms, profiles cycled);
/// every entry of compare_bounds under `params` is one case.
SuiteResult sandwich_suite(std::uint64_t seed, std::size_t systems,
                           const std::vector<std::pair<double, double>>& params,
                           const Tolerances& tol = {});

/// A vector supported on the extremal window of one closed-form bound.
struct SharpnessCase {
  WindowPattern pattern = WindowPattern::lower_ell2;
  int n_support = 2;
  int m = 2;
  double a = 1.0;
  double rho = 1.0;
  Vector<Rational> r;  // r(i - 1) = r_i
};

SharpnessCase random_sharpness_case(std::mt19937_64& gen);

/// The closed-form bound on the moments of c.r equals sum r exactly, and the
/// window chosen from the moments is the support of c.r. Returns an empty
/// string on success, a description otherwise.
std::string check_sharpness(const SharpnessCase& c);

SuiteResult sharpness_suite(std::uint64_t seed, std::size_t configs);

std::string to_string(WindowPattern pattern);

}  // namespace unionbounds
