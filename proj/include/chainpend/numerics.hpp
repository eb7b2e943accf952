#pragma once

// Small dense linear algebra used by the dynamics and control layers.
// Everything here is sized for (3n+2) and 2(2n+2) systems, i.e. at most a few
// dozen unknowns, so plain dense factorizations are used throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "chainpend/error.hpp"

namespace chainpend {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

namespace tol {
inline constexpr double kSkew = 1e-12;           // vee: max |A + A^T|
inline constexpr double kPivot = 1e-13;          // solve_linear: pivot / max|A|
inline constexpr double kSymmetry = 1e-9;        // pencil inputs: max |G - G^T|
inline constexpr double kRank = 1e-9;            // relative singular value cut
inline constexpr int kQrSweepsPerDim = 100;      // eigs_real iteration budget
inline constexpr int kNewtonMaxSteps = 200;      // Newton-Kleinman budget
inline constexpr double kNewtonStep = 1e-12;     // relative change in P
inline constexpr double kCareResidual = 1e-8;    // residual / max|Q|
inline constexpr int kSeedShiftAttempts = 60;    // stabilizing-seed stages
}  // namespace tol

inline double max_abs(const Mat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Skew-symmetric matrix with hat(v) * w == v.cross(w).
inline Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

/// Inverse of hat. Throws NotSkew when max |A + A^T| exceeds `skew_tol`.
inline Vec3 vee(const Mat3& a, double skew_tol = tol::kSkew) {
  const double asym = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (asym > skew_tol) {
    std::ostringstream msg;
    msg << "vee: matrix is not skew-symmetric (max |A+A^T| = " << asym << ")";
    throw Error(ErrorKind::NotSkew, msg.str());
  }
  return Vec3(0.5 * (a(2, 1) - a(1, 2)), 0.5 * (a(0, 2) - a(2, 0)),
              0.5 * (a(1, 0) - a(0, 1)));
}

/// Solves A X = B by LU with partial pivoting.
inline Mat solve_linear(const Mat& a, const Mat& b,
                        double pivot_tol = tol::kPivot) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw Error(ErrorKind::InvalidArgument,
                "solve_linear: dimension mismatch");
  }
  const double scale = max_abs(a);
  Eigen::PartialPivLU<Mat> lu(a);
  const double min_pivot =
      a.rows() == 0 ? 0.0 : lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > pivot_tol * scale) || scale == 0.0) {
    std::ostringstream msg;
    msg << "solve_linear: matrix is singular (pivot " << min_pivot
        << ", max |A| " << scale << ")";
    throw Error(ErrorKind::Singular, msg.str());
  }
  return lu.solve(b);
}

struct PencilEigen {
  Vec values;   // ascending
  Mat vectors;  // columns, M-orthonormal
};

/// Symmetric-definite pencil G v = mu M v, reduced through the Cholesky factor
/// of M to an ordinary symmetric eigenproblem.
inline PencilEigen spd_pencil_eigs(const Mat& g, const Mat& m,
                                   double sym_tol = tol::kSymmetry) {
  if (g.rows() != g.cols() || m.rows() != m.cols() || g.rows() != m.rows()) {
    throw Error(ErrorKind::InvalidArgument,
                "spd_pencil_eigs: G and M must be square and equal size");
  }
  if (max_abs(g - g.transpose()) > sym_tol) {
    throw Error(ErrorKind::InvalidArgument,
                "spd_pencil_eigs: G is not symmetric");
  }
  if (max_abs(m - m.transpose()) > sym_tol) {
    throw Error(ErrorKind::NotSPD, "spd_pencil_eigs: M is not symmetric");
  }
  const Mat m_sym = 0.5 * (m + m.transpose());
  const Mat g_sym = 0.5 * (g + g.transpose());
  Eigen::LLT<Mat> llt(m_sym);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotSPD,
                "spd_pencil_eigs: M is not positive definite");
  }
  // C = L^-1 G L^-T, then v = L^-T y.
  const Mat linv_g = llt.matrixL().solve(g_sym);
  const Mat c = llt.matrixL().solve(linv_g.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (c + c.transpose()));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence,
                "spd_pencil_eigs: symmetric eigensolver failed");
  }
  PencilEigen out;
  out.values = es.eigenvalues();
  out.vectors = llt.matrixU().solve(es.eigenvectors());
  return out;
}

/// Eigenvalues of a general real matrix via Hessenberg reduction and shifted
/// QR. Sorted by real part, then imaginary part, so conjugate pairs are
/// adjacent.
inline std::vector<std::complex<double>> eigs_real(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::InvalidArgument, "eigs_real: matrix not square");
  }
  const auto n = a.rows();
  std::vector<std::complex<double>> out;
  if (n == 0) return out;
  Eigen::EigenSolver<Mat> es;
  es.setMaxIterations(static_cast<Eigen::Index>(tol::kQrSweepsPerDim * n));
  es.compute(a, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence,
                "eigs_real: QR iteration did not converge");
  }
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](auto lhs, auto rhs) {
    if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
    return lhs.imag() < rhs.imag();
  });
  return out;
}

inline double max_real_part(const std::vector<std::complex<double>>& eigs) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& e : eigs) m = std::max(m, e.real());
  return m;
}

struct RankReport {
  int rank = 0;
  /// Smallest retained singular value divided by the largest; 0 if rank 0.
  double margin = 0.0;
  Vec singular_values;
};

inline RankReport rank_report(const Mat& a, double rel_tol = tol::kRank) {
  if (!(rel_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "rank_tol: tolerance must be > 0");
  }
  RankReport out;
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<Mat> svd(a);
  out.singular_values = svd.singularValues();
  const double top = out.singular_values.size() ? out.singular_values(0) : 0.0;
  if (top == 0.0) return out;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    const double s = out.singular_values(i);
    if (s > rel_tol * top) {
      ++out.rank;
      out.margin = s / top;
    }
  }
  return out;
}

inline int rank_tol(const Mat& a, double rel_tol = tol::kRank) {
  return rank_report(a, rel_tol).rank;
}

/// Solves F X + X F^T = W by Kronecker vectorization.
inline Mat solve_lyapunov(const Mat& f, const Mat& w) {
  const Eigen::Index n = f.rows();
  const Eigen::Index nn = n * n;
  Mat kron = Mat::Zero(nn, nn);
  // vec(F X) = (I (x) F) vec X, vec(X F^T) = (F (x) I) vec X, column-major.
  for (Eigen::Index blk = 0; blk < n; ++blk) {
    kron.block(blk * n, blk * n, n, n) += f;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double fij = f(i, j);
      if (fij == 0.0) continue;
      for (Eigen::Index k = 0; k < n; ++k) {
        kron(i * n + k, j * n + k) += fij;
      }
    }
  }
  const Vec rhs = Eigen::Map<const Vec>(w.data(), nn);
  const Vec x = solve_linear(kron, rhs);
  return Eigen::Map<const Mat>(x.data(), n, n);
}

inline Mat care_residual(const Mat& a, const Mat& b, const Mat& q,
                         const Mat& r, const Mat& p) {
  const Mat rinv_bt = solve_linear(r, b.transpose());
  return a.transpose() * p + p * a - p * b * rinv_bt * p + q;
}

/// One Newton-Kleinman update: with K = R^-1 B^T P, solve
/// (A - B K)^T P' + P' (A - B K) = -(Q + K^T R K).
inline Mat newton_kleinman_step(const Mat& a, const Mat& b, const Mat& q,
                                const Mat& r, const Mat& k) {
  const Mat closed = a - b * k;
  const Mat w = q + k.transpose() * r * k;
  Mat p = solve_lyapunov(closed.transpose(), -w);
  return 0.5 * (p + p.transpose());
}

inline Mat lqr_gain_from(const Mat& b, const Mat& r, const Mat& p) {
  return solve_linear(r, b.transpose() * p);
}

/// Gain K0 with A - B K0 Hurwitz, found by shift continuation: for
/// sigma > max Re eig(A) the shifted plant A - sigma I is stable and K = 0
/// seeds a Newton-Kleinman step on it. The resulting gain keeps
/// A - sigma' I - B K stable for sigma' down to sigma - margin, so sigma is
/// walked toward zero, refreshing K with one Newton step at each stage.
inline Mat stabilizing_seed(const Mat& a, const Mat& b, const Mat& q,
                            const Mat& r) {
  const Eigen::Index n = a.rows();
  const double open_loop = max_real_part(eigs_real(a));
  if (open_loop < 0.0) return Mat::Zero(b.cols(), n);

  const Mat eye = Mat::Identity(n, n);
  double sigma = open_loop + std::max(1.0, 0.1 * open_loop);
  Mat k = Mat::Zero(b.cols(), n);
  for (int stage = 0; stage < tol::kSeedShiftAttempts; ++stage) {
    const Mat p = newton_kleinman_step(a - sigma * eye, b, q, r, k);
    k = lqr_gain_from(b, r, p);
    const double margin = -max_real_part(eigs_real(a - sigma * eye - b * k));
    // A margin lost in roundoff means sigma is pinned at an eigenvalue the
    // input cannot move.
    if (!(margin > tol::kRank * (1.0 + sigma))) break;
    if (margin > sigma) return k;
    sigma -= 0.5 * margin;
  }
  throw Error(ErrorKind::NoStabilizingSeed,
              "stabilizing_seed: shift continuation did not reach a "
              "stabilizing gain");
}

/// Stabilizing solution of A^T P + P A - P B R^-1 B^T P + Q = 0.
inline Mat solve_care(const Mat& a, const Mat& b, const Mat& q, const Mat& r,
                      int max_steps = tol::kNewtonMaxSteps,
                      double step_tol = tol::kNewtonStep) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n ||
      r.rows() != b.cols() || r.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidArgument, "solve_care: dimension mismatch");
  }
  Eigen::LLT<Mat> r_llt(0.5 * (r + r.transpose()));
  if (r_llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotSPD, "solve_care: R is not positive definite");
  }

  Mat k = stabilizing_seed(a, b, q, r);
  Mat p = newton_kleinman_step(a, b, q, r, k);
  double prev_change = std::numeric_limits<double>::infinity();
  const double q_scale = std::max(max_abs(q), 1e-300);
  for (int step = 1; step < max_steps; ++step) {
    k = lqr_gain_from(b, r, p);
    Mat next = newton_kleinman_step(a, b, q, r, k);
    const double change = max_abs(next - p) / std::max(max_abs(next), 1e-300);
    p = std::move(next);
    if (change <= step_tol) return p;
    // Past the roundoff floor the change stops shrinking; accept once the
    // residual is already at the target.
    if (change >= prev_change &&
        max_abs(care_residual(a, b, q, r, p)) <= tol::kCareResidual * q_scale) {
      return p;
    }
    prev_change = change;
  }
  throw Error(ErrorKind::NoConvergence,
              "solve_care: Newton-Kleinman did not converge");
}

}  // namespace chainpend
