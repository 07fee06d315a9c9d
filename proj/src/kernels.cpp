#include "pit/kernels.hpp"

#include <stdexcept>

namespace pit {
namespace {

struct OpRound {
  const FloatFormat& f;
  double operator()(double x) const { return round_scalar(x, f); }
};
struct NoRound {
  double operator()(double x) const { return x; }
};

template <class R>
double dot_strided(const double* u, Index su, const double* v, Index sv, Index n, R rnd) {
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) acc = rnd(acc + rnd(u[i * su] * v[i * sv]));
  return acc;
}

template <class R>
MatrixXd gemm_core(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
                   bool ta, bool tb, R rnd) {
  const Index m = ta ? A.cols() : A.rows();
  const Index n = tb ? B.rows() : B.cols();
  const Index k = ta ? A.rows() : A.cols();
  if ((tb ? B.cols() : B.rows()) != k) throw std::invalid_argument("gemm: shape mismatch");
  const Index lda = A.outerStride(), ldb = B.outerStride();
  const double* a = A.data();
  const double* b = B.data();
  const Index sa_row = ta ? lda : 1, sa_col = ta ? 1 : lda;
  const Index sb_row = tb ? ldb : 1, sb_col = tb ? 1 : ldb;
  MatrixXd C(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i)
      C(i, j) = dot_strided(a + i * sa_row, sa_col, b + j * sb_col, sb_row, k, rnd);
  return C;
}

}  // namespace

double dot(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& v,
           const PrecisionContext& ctx) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: length mismatch");
  if (ctx.op_level())
    return dot_strided(u.data(), 1, v.data(), 1, u.size(), OpRound{ctx.format});
  return ctx.rnd(dot_strided(u.data(), 1, v.data(), 1, u.size(), NoRound{}));
}

double norm2(const Eigen::Ref<const VectorXd>& v, const PrecisionContext& ctx) {
  return ctx.rnd(std::sqrt(dot(v, v, ctx)));
}

VectorXd gemv(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const VectorXd>& x,
              const PrecisionContext& ctx) {
  if (A.cols() != x.size()) throw std::invalid_argument("gemv: shape mismatch");
  VectorXd out(A.rows());
  const Index lda = A.outerStride();
  if (ctx.op_level()) {
    OpRound rnd{ctx.format};
    for (Index i = 0; i < A.rows(); ++i)
      out[i] = dot_strided(A.data() + i, lda, x.data(), 1, A.cols(), rnd);
  } else {
    for (Index i = 0; i < A.rows(); ++i)
      out[i] = ctx.rnd(dot_strided(A.data() + i, lda, x.data(), 1, A.cols(), NoRound{}));
  }
  return out;
}

VectorXd gemv_t(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const VectorXd>& y,
                const PrecisionContext& ctx) {
  if (A.rows() != y.size()) throw std::invalid_argument("gemv_t: shape mismatch");
  VectorXd out(A.cols());
  const Index lda = A.outerStride();
  if (ctx.op_level()) {
    OpRound rnd{ctx.format};
    for (Index j = 0; j < A.cols(); ++j)
      out[j] = dot_strided(A.data() + j * lda, 1, y.data(), 1, A.rows(), rnd);
  } else {
    for (Index j = 0; j < A.cols(); ++j)
      out[j] = ctx.rnd(dot_strided(A.data() + j * lda, 1, y.data(), 1, A.rows(), NoRound{}));
  }
  return out;
}

MatrixXd gemm(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
              const PrecisionContext& ctx) {
  if (ctx.op_level()) return gemm_core(A, B, false, false, OpRound{ctx.format});
  MatrixXd C = gemm_core(A, B, false, false, NoRound{});
  round_elementwise_inplace(C, ctx.format);
  return C;
}

MatrixXd gemm_nt(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
                 const PrecisionContext& ctx) {
  if (ctx.op_level()) return gemm_core(A, B, false, true, OpRound{ctx.format});
  MatrixXd C = gemm_core(A, B, false, true, NoRound{});
  round_elementwise_inplace(C, ctx.format);
  return C;
}

MatrixXd gemm_tn(const Eigen::Ref<const MatrixXd>& A, const Eigen::Ref<const MatrixXd>& B,
                 const PrecisionContext& ctx) {
  if (ctx.op_level()) return gemm_core(A, B, true, false, OpRound{ctx.format});
  MatrixXd C = gemm_core(A, B, true, false, NoRound{});
  round_elementwise_inplace(C, ctx.format);
  return C;
}

VectorXd axpy(double alpha, const Eigen::Ref<const VectorXd>& x,
              const Eigen::Ref<const VectorXd>& y, const PrecisionContext& ctx) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  VectorXd out(x.size());
  if (ctx.op_level()) {
    OpRound rnd{ctx.format};
    for (Index i = 0; i < x.size(); ++i) out[i] = rnd(y[i] + rnd(alpha * x[i]));
  } else {
    for (Index i = 0; i < x.size(); ++i) out[i] = ctx.rnd(y[i] + alpha * x[i]);
  }
  return out;
}

VectorXd sub(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& v,
             const PrecisionContext& ctx) {
  if (u.size() != v.size()) throw std::invalid_argument("sub: length mismatch");
  VectorXd out(u.size());
  for (Index i = 0; i < u.size(); ++i) out[i] = ctx.rnd(u[i] - v[i]);
  return out;
}

VectorXd divide(const Eigen::Ref<const VectorXd>& v, double s, const PrecisionContext& ctx) {
  VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = ctx.rnd(v[i] / s);
  return out;
}

VectorXd scale(const Eigen::Ref<const VectorXd>& v, double s, const PrecisionContext& ctx) {
  VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = ctx.rnd(v[i] * s);
  return out;
}

VectorXd spd_solve(const Eigen::Ref<const MatrixXd>& M, const Eigen::Ref<const VectorXd>& rhs,
                   const PrecisionContext& ctx) {
  const Index n = M.rows();
  if (M.cols() != n || rhs.size() != n) throw std::invalid_argument("spd_solve: shape mismatch");
  if (!ctx.op_level()) {
    // Binary64 factorization, outputs rounded once.
    Eigen::LDLT<MatrixXd> ldlt(M);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
      throw NumericalError("spd_solve: matrix not positive definite");
    VectorXd h = ldlt.solve(rhs);
    round_elementwise_inplace(h, ctx.format);
    return h;
  }
  OpRound rnd{ctx.format};
  MatrixXd L = MatrixXd::Zero(n, n);
  VectorXd d(n);
  for (Index j = 0; j < n; ++j) {
    double acc = M(j, j);
    for (Index k = 0; k < j; ++k) acc = rnd(acc - rnd(rnd(L(j, k) * L(j, k)) * d[k]));
    if (!(acc > 0.0)) throw NumericalError("spd_solve: nonpositive pivot at index " + std::to_string(j));
    d[j] = acc;
    for (Index i = j + 1; i < n; ++i) {
      double s = M(i, j);
      for (Index k = 0; k < j; ++k) s = rnd(s - rnd(rnd(L(i, k) * L(j, k)) * d[k]));
      L(i, j) = rnd(s / d[j]);
    }
  }
  VectorXd z = rhs;
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < i; ++k) z[i] = rnd(z[i] - rnd(L(i, k) * z[k]));
  for (Index i = 0; i < n; ++i) z[i] = rnd(z[i] / d[i]);
  for (Index i = n - 1; i >= 0; --i)
    for (Index k = i + 1; k < n; ++k) z[i] = rnd(z[i] - rnd(L(k, i) * z[k]));
  return z;
}

}  // namespace pit
