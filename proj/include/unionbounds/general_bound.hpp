#pragma once

// Linear-system engine behind every closed form: given a feature matrix f
// (ell x N), moments sbar = f r and an index set i_1 < ... < i_ell, solve
//
//     sum_j a_j f(j, i_k) = 1            for the coefficients a,
//     c_i = 1 - sum_j a_j f(j, i)        for the sign certificate,
//     sum_j f(k, i_j) r_{i_j} = sbar_k   for the extremal vector r*.
//
// c >= 0 everywhere certifies R >= R* = sum r*, c <= 0 certifies R <= R*.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unionbounds/core_bounds.hpp"

namespace unionbounds {

template <typename Scalar>
struct GeneralBoundOutcome {
  Scalar bound_value{0};
  Direction direction = Direction::lower;
  Vector<Scalar> coefficients;                 // a_1..a_ell
  Vector<Scalar> sign_certificate;             // c_1..c_N
  std::vector<std::pair<int, Scalar>> solution;  // (i_k, r*_{i_k}), 1-based indices
};

/// f(k, i) = i^(a + k rho) for k = 0..ell-1, i = 1..N.
template <typename Scalar>
Matrix<Scalar> power_features(const ExponentParams& params) {
  params.validate();
  Matrix<Scalar> f(params.ell, params.n_support);
  for (int i = 1; i <= params.n_support; ++i)
    for (int k = 1; k <= params.ell; ++k) f(k - 1, i - 1) = power(Scalar(i), params.exponent(k));
  return f;
}

/// Moments of r under the power features; r(i-1) holds r_i.
template <typename Scalar>
MomentVector<Scalar> moments_of(const Vector<Scalar>& r, const ExponentParams& params) {
  if (r.size() != params.n_support) throw DomainError("vector length differs from N");
  return {power_features<Scalar>(params) * r, params};
}

template <typename Scalar>
GeneralBoundOutcome<Scalar> general_bound(const Matrix<Scalar>& f, const Vector<Scalar>& sbar,
                                          std::span<const int> indices, Direction direction,
                                          const Tolerances& tol = {}) {
  const auto ell = f.rows();
  const auto n = f.cols();
  if (sbar.size() != ell) throw DomainError("moment count differs from feature rows");
  if (static_cast<Eigen::Index>(indices.size()) != ell)
    throw DomainError("need exactly ell indices");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 1 || indices[k] > n) throw DomainError("index out of range 1..N");
    if (k > 0 && indices[k] <= indices[k - 1]) throw DomainError("indices must increase strictly");
  }

  Matrix<Scalar> chosen(ell, ell);
  for (Eigen::Index j = 0; j < ell; ++j) chosen.col(j) = f.col(indices[j] - 1);

  Eigen::FullPivLU<Matrix<Scalar>> lu(chosen);
  if (!lu.isInvertible()) throw SingularSystem("chosen index columns are linearly dependent");
  Eigen::FullPivLU<Matrix<Scalar>> lu_t(chosen.transpose());

  GeneralBoundOutcome<Scalar> out;
  out.direction = direction;
  out.coefficients = lu_t.solve(Vector<Scalar>::Ones(ell));
  const Vector<Scalar> fitted = f.transpose() * out.coefficients;
  out.sign_certificate = Vector<Scalar>::Ones(n) - fitted;

  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar& c = out.sign_certificate(i);
    const Scalar scale = fitted(i) < 0 ? Scalar(1 - fitted(i)) : Scalar(1 + fitted(i));
    const bool wrong = direction == Direction::lower
                           ? ScalarOps<Scalar>::below(c, Scalar(0), scale, tol.inequality)
                           : ScalarOps<Scalar>::below(Scalar(-c), Scalar(0), scale, tol.inequality);
    if (wrong)
      throw CertificateFailure(static_cast<std::size_t>(i + 1),
                               "sign certificate fails for a " + to_string(direction) +
                                   " bound at index " + std::to_string(i + 1) + " (c = " +
                                   std::to_string(to_double(c)) + ")");
  }

  const Vector<Scalar> r = lu.solve(sbar);
  Scalar scale(0);
  for (Eigen::Index j = 0; j < ell; ++j) scale += r(j) < 0 ? Scalar(-r(j)) : r(j);
  for (Eigen::Index j = 0; j < ell; ++j) {
    if (ScalarOps<Scalar>::below(r(j), Scalar(0), scale, tol.inequality))
      throw InfeasibleIndices("extremal vector is negative at index " +
                              std::to_string(indices[j]) + "; move m");
    out.solution.emplace_back(indices[j], r(j));
    out.bound_value += r(j);
  }
  return out;
}

/// Tries every ell-subset of 1..N and keeps the best certified bound
/// (largest lower, smallest upper). Exponential in N; meant for small N.
template <typename Scalar>
std::optional<GeneralBoundOutcome<Scalar>> exhaustive_general_bound(const Matrix<Scalar>& f,
                                                                    const Vector<Scalar>& sbar,
                                                                    Direction direction,
                                                                    const Tolerances& tol = {}) {
  const int ell = static_cast<int>(f.rows());
  const int n = static_cast<int>(f.cols());
  std::optional<GeneralBoundOutcome<Scalar>> best;
  std::vector<int> idx(ell);
  for (int k = 0; k < ell; ++k) idx[k] = k + 1;
  if (ell > n) return best;
  while (true) {
    try {
      auto out = general_bound<Scalar>(f, sbar, idx, direction, tol);
      const bool better = !best || (direction == Direction::lower
                                        ? out.bound_value > best->bound_value
                                        : out.bound_value < best->bound_value);
      if (better) best = std::move(out);
    } catch (const SingularSystem&) {
    } catch (const CertificateFailure&) {
    } catch (const InfeasibleIndices&) {
    }
    int k = ell - 1;
    while (k >= 0 && idx[k] == n - ell + k + 1) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < ell; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

}  // namespace unionbounds
