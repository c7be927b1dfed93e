#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unionbounds {

/// Negative moments, p <= 1, m > n and similar argument-range violations.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Moments that no non-negative vector can produce. The message names the
/// violated cone inequality.
class InconsistentMoments : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Some residual c_i has the wrong sign for the requested direction.
class CertificateFailure : public std::runtime_error {
 public:
  CertificateFailure(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The moment-matching solution on the chosen indices has a negative entry.
class InfeasibleIndices : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact-arithmetic routine was asked for an irrational quantity
/// (non-integer exponent, irrational root).
class ArithmeticModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class HorizonExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace unionbounds
