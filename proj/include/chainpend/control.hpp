#pragma once

// Controllability of the linearized chain and LQR synthesis of the geometric
// PD law
//   u = -K_x x - K_xd xdot - sum_i ( K_qi C^T (s_i e3 x q_i) + K_wi C^T w_i ).

#include <optional>
#include <vector>

#include "chainpend/equilibria.hpp"

namespace chainpend {

struct ReducedSubsystem {
  Mat m_qq;
  Mat g_qq;
  Mat m_qx;
};

/// Chain-only dynamics M_qq xq'' + G_qq xq = M_qx u.
inline ReducedSubsystem reduced_subsystem(const LinearModel& model) {
  return ReducedSubsystem{model.m_qq(), model.g_qq(), model.m_qx()};
}

struct ControllabilityCertificate {
  bool controllable = true;
  /// Agreement flag of the reduced rank test and the full eigenvector test.
  bool routes_agree = true;
  bool eigenvector_route_controllable = true;
  std::vector<double> tested_eigenvalues;  // lambda^2 of the reduced pencil
  std::vector<int> rank_results;           // rank of [l2 M_qq + G_qq, M_qx]
  double rank_margin = 1.0;                // worst retained singular ratio
  std::optional<Vec> failing_eigenvector;  // full-system left eigenvector
};

namespace detail {

/// Groups ascending eigenvalues whose gaps fall below `rel_tol * scale`.
inline std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(
    const Vec& values, double rel_tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= values.size(); ++k) {
    if (k == values.size() || values(k) - values(k - 1) > rel_tol * scale) {
      out.emplace_back(start, k - start);
      start = k;
    }
  }
  return out;
}

/// Second-order PBH eigenvector test on (M, G, B): for every eigenspace V of
/// G v = mu M v, some combination V c is orthogonal to B iff rank(B^T V) <
/// dim V. Returns that combination when it exists.
inline std::optional<Vec> orthogonal_left_eigenvector(const Mat& m, const Mat& g,
                                                      const Mat& b,
                                                      double rank_tol_rel) {
  const PencilEigen pe = spd_pencil_eigs(g, m);
  for (auto [start, len] : clusters(pe.values, 1e-8)) {
    const Mat v = pe.vectors.middleCols(start, len);
    const Mat proj = b.transpose() * v;  // 2 x len
    // Scale-free test: compare B^T v against |B||v| column by column.
    const double ref = std::max(b.norm(), 1e-300) *
                       std::max(v.colwise().norm().maxCoeff(), 1e-300);
    Eigen::JacobiSVD<Mat> svd(proj, Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > rank_tol_rel * ref) ++r;
    }
    if (r < len) {
      Vec coeff = svd.matrixV().col(len - 1);
      Vec w = v * coeff;
      return w / w.norm();
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline ControllabilityCertificate controllability(const LinearModel& model,
                                                  double rel_tol = tol::kRank) {
  const ReducedSubsystem red = reduced_subsystem(model);
  const Eigen::Index nq = red.m_qq.rows();

  ControllabilityCertificate cert;
  const PencilEigen pe = spd_pencil_eigs(red.g_qq, red.m_qq);
  cert.rank_margin = 1.0;
  for (Eigen::Index k = 0; k < pe.values.size(); ++k) {
    const double l2 = -pe.values(k);
    Mat composite(nq, nq + red.m_qx.cols());
    composite << l2 * red.m_qq + red.g_qq, red.m_qx;
    const RankReport rr = rank_report(composite, rel_tol);
    cert.tested_eigenvalues.push_back(l2);
    cert.rank_results.push_back(rr.rank);
    cert.rank_margin = std::min(cert.rank_margin, rr.margin);
    if (rr.rank < nq) cert.controllable = false;
  }

  cert.failing_eigenvector =
      detail::orthogonal_left_eigenvector(model.M, model.G, model.B, rel_tol);
  cert.eigenvector_route_controllable = !cert.failing_eigenvector.has_value();
  cert.routes_agree = cert.eigenvector_route_controllable == cert.controllable;
  if (!cert.controllable && !cert.failing_eigenvector) {
    // The reduced test found a deficiency the full test missed; still report
    // the reduced null vector, lifted as [0; v_q].
    Mat composite(nq, nq + red.m_qx.cols());
    for (std::size_t k = 0; k < cert.rank_results.size(); ++k) {
      if (cert.rank_results[k] >= nq) continue;
      composite << cert.tested_eigenvalues[k] * red.m_qq + red.g_qq, red.m_qx;
      Eigen::JacobiSVD<Mat> svd(composite.transpose(), Eigen::ComputeFullV);
      Vec lifted = Vec::Zero(model.dof());
      lifted.tail(nq) = svd.matrixV().col(nq - 1);
      cert.failing_eigenvector = lifted;
      break;
    }
  }
  return cert;
}

struct FirstOrderModel {
  Mat A;  // [[0, I], [-M^-1 G, 0]]
  Mat B;  // [0; M^-1 B]
};

inline FirstOrderModel first_order_form(const LinearModel& model) {
  const Eigen::Index d = model.dof();
  FirstOrderModel f;
  f.A = Mat::Zero(2 * d, 2 * d);
  f.B = Mat::Zero(2 * d, model.B.cols());
  f.A.topRightCorner(d, d).setIdentity();
  f.A.bottomLeftCorner(d, d) = -solve_linear(model.M, model.G);
  f.B.bottomRows(d) = solve_linear(model.M, model.B);
  return f;
}

/// Gains of the geometric PD law, one 2x2 block per state group.
struct GainSet {
  Mat2 k_x = Mat2::Zero();
  Mat2 k_xdot = Mat2::Zero();
  std::vector<Mat2> k_q;
  std::vector<Mat2> k_omega;

  std::size_t links() const { return k_q.size(); }

  static GainSet zeros(std::size_t n) {
    GainSet g;
    g.k_q.assign(n, Mat2::Zero());
    g.k_omega.assign(n, Mat2::Zero());
    return g;
  }
};

/// K = [K_x, K_q1..K_qn, K_xd, K_w1..K_wn], matching the first-order state
/// (dx, C^T xi_1.., C^T xi_n, dxdot, C^T w_1.., C^T w_n).
inline Mat stack_gains(const GainSet& gains) {
  const auto n = static_cast<Eigen::Index>(gains.links());
  const Eigen::Index d = 2 + 2 * n;
  Mat k(2, 2 * d);
  k.block<2, 2>(0, 0) = gains.k_x;
  k.block<2, 2>(0, d) = gains.k_xdot;
  for (Eigen::Index i = 0; i < n; ++i) {
    k.block<2, 2>(0, 2 + 2 * i) = gains.k_q[static_cast<std::size_t>(i)];
    k.block<2, 2>(0, d + 2 + 2 * i) = gains.k_omega[static_cast<std::size_t>(i)];
  }
  return k;
}

inline GainSet unstack_gains(const Mat& k) {
  if (k.rows() != 2 || k.cols() < 8 || (k.cols() - 4) % 4 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "unstack_gains: expected a 2 x (4n+4) gain matrix");
  }
  const Eigen::Index d = k.cols() / 2;
  const std::size_t n = static_cast<std::size_t>((d - 2) / 2);
  GainSet g = GainSet::zeros(n);
  g.k_x = k.block<2, 2>(0, 0);
  g.k_xdot = k.block<2, 2>(0, d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto col = 2 + 2 * static_cast<Eigen::Index>(i);
    g.k_q[i] = k.block<2, 2>(0, col);
    g.k_omega[i] = k.block<2, 2>(0, d + col);
  }
  return g;
}

/// Default weights: 8 on the cart position and velocity, 1 on the links.
inline Mat default_state_weight(std::size_t n, double cart_weight = 8.0,
                                double link_weight = 1.0) {
  const auto d = 2 + 2 * static_cast<Eigen::Index>(n);
  Vec diag(2 * d);
  for (Eigen::Index k = 0; k < 2 * d; ++k) {
    const Eigen::Index within = k % d;
    diag(k) = within < 2 ? cart_weight : link_weight;
  }
  return diag.asDiagonal();
}

struct LqrDesign {
  GainSet gains;
  Mat K;
  Mat P;
  FirstOrderModel plant;
};

/// LQR on the first-order form. Refuses uncontrollable equilibria.
inline LqrDesign lqr_design(const LinearModel& model, const Mat& q, const Mat& r) {
  const auto d = model.dof();
  if (q.rows() != 2 * d || q.cols() != 2 * d || r.rows() != 2 || r.cols() != 2) {
    throw Error(ErrorKind::InvalidArgument,
                "lqr_gains: Q must be 2(2n+2) square and R 2x2");
  }
  const ControllabilityCertificate cert = controllability(model);
  if (!cert.controllable) {
    throw Error(ErrorKind::Uncontrollable,
                "lqr_gains: linearization is not controllable");
  }
  LqrDesign out;
  out.plant = first_order_form(model);
  out.P = solve_care(out.plant.A, out.plant.B, q, r);
  out.K = lqr_gain_from(out.plant.B, r, out.P);
  out.gains = unstack_gains(out.K);
  return out;
}

inline GainSet lqr_gains(const LinearModel& model, const Mat& q, const Mat& r) {
  return lqr_design(model, q, r).gains;
}

/// Geometric PD force, valid for any configuration of the chain.
inline Vec2 feedback_force(const GainSet& gains, const EquilibriumSpec& spec,
                           const State& state) {
  if (gains.links() != spec.links() || state.links() != spec.links()) {
    throw Error(ErrorKind::InvalidArgument,
                "feedback_force: gain, equilibrium and state sizes differ");
  }
  const Eigen::Matrix<double, 2, 3> ct = cart_embedding().transpose();
  Vec2 u = -gains.k_x * (state.x - spec.cart_position) - gains.k_xdot * state.xdot;
  for (std::size_t i = 0; i < spec.links(); ++i) {
    const Vec3 dir_err = (spec.s[i] * kE3).cross(state.q[i]);
    u -= gains.k_q[i] * (ct * dir_err) + gains.k_omega[i] * (ct * state.omega[i]);
  }
  return u;
}

inline Controller make_feedback_controller(GainSet gains, EquilibriumSpec spec) {
  return [gains = std::move(gains), spec = std::move(spec)](double, const State& s) {
    return feedback_force(gains, spec, s);
  };
}

inline std::vector<std::complex<double>> closed_loop_spectrum(
    const LinearModel& model, const GainSet& gains) {
  const FirstOrderModel f = first_order_form(model);
  return eigs_real(f.A - f.B * stack_gains(gains));
}

}  // namespace chainpend
