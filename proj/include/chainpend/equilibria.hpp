#pragma once

#include <string_view>
#include <vector>

#include "chainpend/dynamics.hpp"

namespace chainpend {

/// All 2^n sign tuples, lexicographic with +1 ordered before -1.
inline std::vector<EquilibriumSpec> enumerate_equilibria(std::size_t n) {
  if (n < 1 || n > 20) {
    throw Error(ErrorKind::InvalidArgument,
                "enumerate_equilibria: n must be in [1, 20]");
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<EquilibriumSpec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    EquilibriumSpec spec;
    spec.s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      spec.s[i] = ((k >> (n - 1 - i)) & 1U) ? -1 : 1;
    }
    out.push_back(std::move(spec));
  }
  return out;
}

enum class EquilibriumKind { Hanging, Inverted, Folded, Other };

inline std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::Hanging: return "hanging";
    case EquilibriumKind::Inverted: return "inverted";
    case EquilibriumKind::Folded: return "folded";
    case EquilibriumKind::Other: return "other";
  }
  return "other";
}

inline EquilibriumKind classify(const EquilibriumSpec& spec) {
  spec.validate();
  bool all_up = true;
  bool all_down = true;
  bool alternating = true;
  for (std::size_t i = 0; i < spec.s.size(); ++i) {
    all_down = all_down && spec.s[i] == 1;
    all_up = all_up && spec.s[i] == -1;
    if (i + 1 < spec.s.size()) alternating = alternating && spec.s[i + 1] == -spec.s[i];
  }
  if (all_down) return EquilibriumKind::Hanging;
  if (all_up) return EquilibriumKind::Inverted;
  if (alternating) return EquilibriumKind::Folded;
  return EquilibriumKind::Other;
}

inline State equilibrium_state(const EquilibriumSpec& spec) {
  spec.validate();
  State st;
  st.x = spec.cart_position;
  st.q.reserve(spec.links());
  for (int si : spec.s) st.q.push_back(static_cast<double>(si) * kE3);
  st.omega.assign(spec.links(), Vec3::Zero());
  return st;
}

/// Linearization M xdd + G x = B u about an equilibrium, in the coordinates
/// x = (dx, C^T xi_1, ..., C^T xi_n) where q_i = exp(hat(xi_i)) s_i e3.
struct LinearModel {
  EquilibriumSpec spec;
  Mat M;
  Mat G;
  Mat B;

  Eigen::Index links() const { return (M.rows() - 2) / 2; }
  Eigen::Index dof() const { return M.rows(); }

  Mat m_xx() const { return M.topLeftCorner(2, 2); }
  Mat m_xq() const { return M.topRightCorner(2, dof() - 2); }
  Mat m_qx() const { return M.bottomLeftCorner(dof() - 2, 2); }
  Mat m_qq() const { return M.bottomRightCorner(dof() - 2, dof() - 2); }
  Mat g_qq() const { return G.bottomRightCorner(dof() - 2, dof() - 2); }
};

inline LinearModel linearize(const InertiaModel& inertia,
                             const EquilibriumSpec& spec) {
  spec.validate();
  const std::size_t n = inertia.links();
  if (spec.links() != n) {
    throw Error(ErrorKind::InvalidArgument,
                "linearize: equilibrium and inertia link counts differ");
  }
  const Eigen::Index dim = 2 + 2 * static_cast<Eigen::Index>(n);
  const auto c = cart_embedding();
  const Mat3 e3hat = hat(kE3);

  LinearModel lin;
  lin.spec = spec;
  lin.M = Mat::Zero(dim, dim);
  lin.G = Mat::Zero(dim, dim);
  lin.B = Mat::Zero(dim, 2);
  lin.B.topRows(2).setIdentity();

  lin.M.topLeftCorner(2, 2) = inertia.m00 * Mat2::Identity();
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Index cj = 2 + 2 * static_cast<Eigen::Index>(j);
    const Mat2 m_xq = -spec.s[j] * inertia.m0i(j) * e3hat * c;
    lin.M.block<2, 2>(0, cj) = m_xq;
    lin.M.block<2, 2>(cj, 0) = m_xq.transpose();
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Index ri = 2 + 2 * static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::Index cj = 2 + 2 * static_cast<Eigen::Index>(j);
      const double sij = (i == j) ? 1.0 : spec.s[i] * spec.s[j];
      lin.M.block<2, 2>(ri, cj) =
          sij * inertia.mij(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(j)) *
          Mat2::Identity();
    }
    lin.G.block<2, 2>(ri, ri) =
        spec.s[i] * inertia.gravity_weight[i] * Mat2::Identity();
  }
  return lin;
}

enum class SpectralClass { HangingStable, Saddle, ZeroModesOnly };

inline std::string_view to_string(SpectralClass c) {
  switch (c) {
    case SpectralClass::HangingStable: return "hanging-stable";
    case SpectralClass::Saddle: return "saddle";
    case SpectralClass::ZeroModesOnly: return "zero-modes-only";
  }
  return "saddle";
}

struct SpectralReport {
  /// Roots of det(lambda^2 M + G) = 0, ascending.
  Vec lambda_squared;
  SpectralClass classification = SpectralClass::Saddle;
  int zero_mode_count = 0;
};

/// |lambda^2| below this fraction of max |lambda^2| counts as a zero mode.
inline constexpr double kZeroModeTol = 1e-9;

inline SpectralReport pencil_spectrum(const LinearModel& model,
                                      double zero_tol = kZeroModeTol) {
  const PencilEigen pe = spd_pencil_eigs(model.G, model.M);
  SpectralReport rep;
  rep.lambda_squared = -pe.values.reverse();
  const double scale = rep.lambda_squared.cwiseAbs().maxCoeff();
  const double cut = zero_tol * scale;
  bool any_positive = false;
  for (Eigen::Index k = 0; k < rep.lambda_squared.size(); ++k) {
    const double l2 = rep.lambda_squared(k);
    if (std::abs(l2) <= cut) {
      ++rep.zero_mode_count;
    } else if (l2 > 0.0) {
      any_positive = true;
    }
  }
  if (any_positive) {
    rep.classification = SpectralClass::Saddle;
  } else if (rep.zero_mode_count == rep.lambda_squared.size()) {
    rep.classification = SpectralClass::ZeroModesOnly;
  } else {
    rep.classification = SpectralClass::HangingStable;
  }
  return rep;
}

}  // namespace chainpend
