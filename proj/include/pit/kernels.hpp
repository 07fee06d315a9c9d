// Dense vector/matrix kernels executed under a PrecisionContext.
//
// Reductions accumulate strictly left-to-right so every result is a
// deterministic function of (inputs, format, granularity). In OpLevel mode
// each elementary product and partial sum is rounded; in KernelLevel mode the
// kernel runs in binary64 and rounds each output entry once.

#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "pit/precision.hpp"

namespace pit {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Inner product of two equally sized vectors. Throws on length mismatch.
double dot(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& v,
           const PrecisionContext& ctx);

/// Euclidean norm: sqrt(dot(v, v)) with the square root rounded in ctx.
double norm2(const Eigen::Ref<const VectorXd>& v, const PrecisionContext& ctx);

/// A x by row-wise inner products.
VectorXd gemv(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const VectorXd>& x,
              const PrecisionContext& ctx);

/// A^T y without materializing the transpose.
VectorXd gemv_t(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const VectorXd>& y,
                const PrecisionContext& ctx);

/// Matrix products; _nt is A B^T, _tn is A^T B.
MatrixXd gemm(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
              const PrecisionContext& ctx);
MatrixXd gemm_nt(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
                 const PrecisionContext& ctx);
MatrixXd gemm_tn(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
                 const PrecisionContext& ctx);

/// y + alpha x, elementwise (product then sum, each rounded in OpLevel).
VectorXd axpy(double alpha, const Eigen::Ref<const VectorXd>& x,
              const Eigen::Ref<const VectorXd>& y, const PrecisionContext& ctx);

/// u - v elementwise.
VectorXd sub(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& v,
             const PrecisionContext& ctx);

/// v / s elementwise.
VectorXd divide(const Eigen::Ref<const VectorXd>& v, double s, const PrecisionContext& ctx);

/// v * s elementwise.
VectorXd scale(const Eigen::Ref<const VectorXd>& v, double s, const PrecisionContext& ctx);

/// Solves M h = rhs for symmetric positive definite M by unpivoted LDL^T,
/// all arithmetic under ctx. Throws NumericalError on a nonpositive pivot.
VectorXd spd_solve(const Eigen::Ref<const MatrixXd>& M, const Eigen::Ref<const VectorXd>& rhs,
                   const PrecisionContext& ctx);

/// Raised when a kernel or solver breaks down numerically (nonpositive
/// pivot, vanished coefficient, non-converged iteration) in the working
/// precision.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pit
