#include "pit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "pit/kernels.hpp"

namespace pit {
namespace {

constexpr int kSweepCap = 30;

// Orthonormal completion of the columns of U(:, 0..filled-1) using
// coordinate candidates purified by two classical Gram-Schmidt passes.
void complete_basis(Eigen::MatrixXd& U, Eigen::Index filled, const PrecisionContext& ctx) {
  const Eigen::Index n = U.rows();
  Eigen::Index next_candidate = 0;
  for (Eigen::Index col = filled; col < U.cols(); ++col) {
    bool accepted = false;
    while (next_candidate < n && !accepted) {
      Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
      q[next_candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd coef(col);
        for (Eigen::Index j = 0; j < col; ++j) coef[j] = dot(U.col(j), q, ctx);
        for (Eigen::Index j = 0; j < col; ++j) q = axpy(-coef[j], U.col(j), q, ctx);
      }
      double nrm = norm2(q, ctx);
      if (nrm > 0.1) {
        U.col(col) = divide(q, nrm, ctx);
        accepted = true;
      }
    }
    if (!accepted) throw NumericalError("jacobi_svd: could not complete the left basis");
  }
}

}  // namespace

SmallSvd jacobi_svd(const BidiagonalMatrix& B, const PrecisionContext& ctx, SvdMode mode) {
  const Eigen::Index p = B.cols();
  if (p < 1) throw std::invalid_argument("jacobi_svd: p >= 1 required");

  if (mode == SvdMode::Binary64ThenRound) {
    SmallSvd exact = jacobi_svd(B, PrecisionContext(FloatFormat(), ctx.granularity));
    round_elementwise_inplace(exact.left_vectors, ctx.format);
    round_elementwise_inplace(exact.singular_values, ctx.format);
    round_elementwise_inplace(exact.right_vectors, ctx.format);
    return exact;
  }

  Eigen::MatrixXd W = B.dense();
  round_elementwise_inplace(W, ctx.format);
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(p, p);
  const double u = ctx.format.unit_roundoff();

  double prev_max_rel = std::numeric_limits<double>::infinity();
  double max_rel = 0.0;
  bool converged = false;
  for (int sweep = 0; sweep < kSweepCap && !converged; ++sweep) {
    max_rel = 0.0;
    int rotations = 0;
    for (Eigen::Index i = 0; i + 1 < p; ++i) {
      for (Eigen::Index j = i + 1; j < p; ++j) {
        double aii = dot(W.col(i), W.col(i), ctx);
        double ajj = dot(W.col(j), W.col(j), ctx);
        double aij = dot(W.col(i), W.col(j), ctx);
        if (aii == 0.0 || ajj == 0.0) continue;
        double scale = ctx.rnd(std::sqrt(ctx.rnd(aii * ajj)));
        double rel = scale > 0.0 ? std::abs(aij) / scale : 0.0;
        max_rel = std::max(max_rel, rel);
        if (!(rel > 4.0 * u)) continue;
        // Classic two-by-two diagonalization of the Gram block.
        double tau = ctx.rnd(ctx.rnd(ajj - aii) / ctx.rnd(2.0 * aij));
        double den = ctx.rnd(std::abs(tau) +
                             ctx.rnd(std::sqrt(ctx.rnd(1.0 + ctx.rnd(tau * tau)))));
        double t = ctx.rnd(std::copysign(1.0, tau) / den);
        double c = ctx.rnd(1.0 / ctx.rnd(std::sqrt(ctx.rnd(1.0 + ctx.rnd(t * t)))));
        double s = ctx.rnd(c * t);
        if (s == 0.0) continue;  // rotation indistinguishable from identity
        ++rotations;
        for (Eigen::Index r = 0; r < W.rows(); ++r) {
          double wi = W(r, i), wj = W(r, j);
          W(r, i) = ctx.rnd(ctx.rnd(c * wi) - ctx.rnd(s * wj));
          W(r, j) = ctx.rnd(ctx.rnd(s * wi) + ctx.rnd(c * wj));
        }
        for (Eigen::Index r = 0; r < p; ++r) {
          double vi = V(r, i), vj = V(r, j);
          V(r, i) = ctx.rnd(ctx.rnd(c * vi) - ctx.rnd(s * vj));
          V(r, j) = ctx.rnd(ctx.rnd(s * vi) + ctx.rnd(c * vj));
        }
      }
    }
    if (rotations == 0 || max_rel <= 4.0 * u) {
      converged = true;
    } else if (sweep >= 2 && max_rel > 0.25 * prev_max_rel) {
      converged = true;  // stalled at the precision floor
    }
    prev_max_rel = max_rel;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "jacobi_svd: no convergence in " << kSweepCap
        << " sweeps; achieved relative off-diagonal " << max_rel;
    throw NumericalError(msg.str());
  }

  // Column norms are the singular values; sort nonincreasing.
  std::vector<Eigen::Index> order(p);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd sigma(p);
  for (Eigen::Index i = 0; i < p; ++i) sigma[i] = norm2(W.col(i), ctx);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return sigma[a] > sigma[b]; });

  SmallSvd out;
  out.singular_values.resize(p);
  out.right_vectors.resize(p, p);
  out.left_vectors.resize(p + 1, p + 1);
  Eigen::Index filled = 0;
  for (Eigen::Index k = 0; k < p; ++k) {
    Eigen::Index src = order[k];
    out.singular_values[k] = sigma[src];
    out.right_vectors.col(k) = V.col(src);
    if (sigma[src] > 0.0)
      out.left_vectors.col(filled++) = divide(W.col(src), sigma[src], ctx);
  }
  complete_basis(out.left_vectors, filled, ctx);
  return out;
}

}  // namespace pit
