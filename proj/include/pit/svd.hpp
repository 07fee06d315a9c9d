// SVD of the small projected bidiagonal matrix, computed in the working
// precision by one-sided Jacobi rotations.

#pragma once

#include <Eigen/Core>

#include "pit/bidiagonal.hpp"
#include "pit/precision.hpp"

namespace pit {

/// B = U S V^T for the (p+1) x p bidiagonal B. U is (p+1) x (p+1) with the
/// last column spanning the left direction B cannot reach; singular values
/// are sorted nonincreasing.
struct SmallSvd {
  Eigen::MatrixXd left_vectors;      // (p+1) x (p+1)
  Eigen::VectorXd singular_values;   // p, nonincreasing, >= 0
  Eigen::MatrixXd right_vectors;     // p x p
};

/// How the factorization is produced. Binary64ThenRound exists as a
/// cross-check: factorize exactly, then round the three factors into the
/// working format.
enum class SvdMode { WorkingPrecision, Binary64ThenRound };

/// One-sided Jacobi SVD executed under ctx. Sweeps run until every
/// off-diagonal Gram entry satisfies |w_i . w_j| <= 4 u |w_i| |w_j|, until a
/// sweep makes no further progress (the attainable floor of the working
/// precision), or until the sweep cap of 30 is hit, which throws
/// NumericalError carrying the achieved off-diagonal level.
SmallSvd jacobi_svd(const BidiagonalMatrix& B, const PrecisionContext& ctx,
                    SvdMode mode = SvdMode::WorkingPrecision);

}  // namespace pit
