// Lower bidiagonal matrices as produced by Golub-Kahan bidiagonalization,
// and the Tikhonov-regularized normal-equation solve built on them.

#pragma once

#include <Eigen/Core>

#include "pit/precision.hpp"

namespace pit {

/// The (p+1) x p lower bidiagonal matrix B: B(i,i) = main(i),
/// B(i+1,i) = sub(i). Subdiagonal entries are strictly positive until a
/// bidiagonalization breakdown zeroes the trailing one.
struct BidiagonalMatrix {
  Eigen::VectorXd main_diagonal;  // p entries
  Eigen::VectorXd subdiagonal;    // p entries

  Eigen::Index cols() const { return main_diagonal.size(); }
  Eigen::Index rows() const { return main_diagonal.size() + 1; }

  Eigen::MatrixXd dense() const;

  /// B y, rounded per entry-update under ctx.
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& y,
                        const PrecisionContext& ctx) const;
  /// B^T r.
  Eigen::VectorXd apply_t(const Eigen::Ref<const Eigen::VectorXd>& r,
                          const PrecisionContext& ctx) const;

  /// Frobenius norm in binary64 (diagnostics only).
  double frobenius_norm() const;
};

/// Solves (B^T B + alpha^2 I) h = rhs through the symmetric positive
/// definite tridiagonal LDL^T factorization (B^T B is tridiagonal because B
/// is bidiagonal). All arithmetic runs under ctx; in KernelLevel mode the
/// solve runs in binary64 and only h is rounded.
///
/// alpha = 0 requires full column rank; a nonpositive pivot throws
/// NumericalError, alpha < 0 throws std::invalid_argument.
Eigen::VectorXd regularized_normal_solve(const BidiagonalMatrix& B, double alpha,
                                         const Eigen::Ref<const Eigen::VectorXd>& rhs,
                                         const PrecisionContext& ctx);

}  // namespace pit
