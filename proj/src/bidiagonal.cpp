#include "pit/bidiagonal.hpp"

#include <stdexcept>

#include "pit/kernels.hpp"

namespace pit {

Eigen::MatrixXd BidiagonalMatrix::dense() const {
  const Eigen::Index p = cols();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(p + 1, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    B(i, i) = main_diagonal[i];
    B(i + 1, i) = subdiagonal[i];
  }
  return B;
}

double BidiagonalMatrix::frobenius_norm() const {
  return std::sqrt(main_diagonal.squaredNorm() + subdiagonal.squaredNorm());
}

Eigen::VectorXd BidiagonalMatrix::apply(const Eigen::Ref<const Eigen::VectorXd>& y,
                                        const PrecisionContext& ctx) const {
  const Eigen::Index p = cols();
  if (y.size() != p) throw std::invalid_argument("BidiagonalMatrix::apply: length mismatch");
  Eigen::VectorXd out(p + 1);
  if (ctx.op_level()) {
    const FloatFormat& f = ctx.format;
    out[0] = round_scalar(main_diagonal[0] * y[0], f);
    for (Eigen::Index i = 1; i < p; ++i)
      out[i] = round_scalar(round_scalar(subdiagonal[i - 1] * y[i - 1], f) +
                                round_scalar(main_diagonal[i] * y[i], f),
                            f);
    out[p] = round_scalar(subdiagonal[p - 1] * y[p - 1], f);
  } else {
    out[0] = ctx.rnd(main_diagonal[0] * y[0]);
    for (Eigen::Index i = 1; i < p; ++i)
      out[i] = ctx.rnd(subdiagonal[i - 1] * y[i - 1] + main_diagonal[i] * y[i]);
    out[p] = ctx.rnd(subdiagonal[p - 1] * y[p - 1]);
  }
  return out;
}

Eigen::VectorXd BidiagonalMatrix::apply_t(const Eigen::Ref<const Eigen::VectorXd>& r,
                                          const PrecisionContext& ctx) const {
  const Eigen::Index p = cols();
  if (r.size() != p + 1) throw std::invalid_argument("BidiagonalMatrix::apply_t: length mismatch");
  Eigen::VectorXd out(p);
  if (ctx.op_level()) {
    const FloatFormat& f = ctx.format;
    for (Eigen::Index i = 0; i < p; ++i)
      out[i] = round_scalar(round_scalar(main_diagonal[i] * r[i], f) +
                                round_scalar(subdiagonal[i] * r[i + 1], f),
                            f);
  } else {
    for (Eigen::Index i = 0; i < p; ++i)
      out[i] = ctx.rnd(main_diagonal[i] * r[i] + subdiagonal[i] * r[i + 1]);
  }
  return out;
}

Eigen::VectorXd regularized_normal_solve(const BidiagonalMatrix& B, double alpha,
                                         const Eigen::Ref<const Eigen::VectorXd>& rhs,
                                         const PrecisionContext& ctx) {
  if (alpha < 0) throw std::invalid_argument("regularized_normal_solve: alpha < 0");
  const Eigen::Index p = B.cols();
  if (rhs.size() != p)
    throw std::invalid_argument("regularized_normal_solve: rhs length mismatch");

  const bool op = ctx.op_level();
  auto rnd = [&](double x) { return op ? ctx.rnd(x) : x; };

  // T = B^T B + alpha^2 I: diag(i) = main(i)^2 + sub(i)^2 + alpha^2,
  // off(i) = sub(i) * main(i+1).
  const double a2 = rnd(alpha * alpha);
  Eigen::VectorXd diag(p), off(p > 0 ? p - 1 : 0);
  for (Eigen::Index i = 0; i < p; ++i) {
    double m2 = rnd(B.main_diagonal[i] * B.main_diagonal[i]);
    double s2 = rnd(B.subdiagonal[i] * B.subdiagonal[i]);
    diag[i] = rnd(rnd(m2 + s2) + a2);
  }
  for (Eigen::Index i = 0; i + 1 < p; ++i) off[i] = rnd(B.subdiagonal[i] * B.main_diagonal[i + 1]);

  // LDL^T of the tridiagonal system followed by the two sweeps.
  Eigen::VectorXd d(p), l(p > 0 ? p - 1 : 0);
  d[0] = diag[0];
  if (!(d[0] > 0.0)) throw NumericalError("regularized_normal_solve: nonpositive pivot at 0");
  for (Eigen::Index i = 1; i < p; ++i) {
    l[i - 1] = rnd(off[i - 1] / d[i - 1]);
    d[i] = rnd(diag[i] - rnd(l[i - 1] * off[i - 1]));
    if (!(d[i] > 0.0))
      throw NumericalError("regularized_normal_solve: nonpositive pivot at " + std::to_string(i));
  }
  Eigen::VectorXd h = rhs;
  for (Eigen::Index i = 1; i < p; ++i) h[i] = rnd(h[i] - rnd(l[i - 1] * h[i - 1]));
  for (Eigen::Index i = 0; i < p; ++i) h[i] = rnd(h[i] / d[i]);
  for (Eigen::Index i = p - 2; i >= 0; --i) h[i] = rnd(h[i] - rnd(l[i] * h[i + 1]));

  if (!op) round_elementwise_inplace(h, ctx.format);
  return h;
}

}  // namespace pit
