#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "chainpend/numerics.hpp"

namespace chainpend {

inline const Vec3 kE1 = Vec3::UnitX();
inline const Vec3 kE2 = Vec3::UnitY();
inline const Vec3 kE3 = Vec3::UnitZ();  // gravity direction

/// C = [e1, e2]: embeds the planar cart coordinates in R^3.
inline Eigen::Matrix<double, 3, 2> cart_embedding() {
  Eigen::Matrix<double, 3, 2> c = Eigen::Matrix<double, 3, 2>::Zero();
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  return c;
}

/// Physical parameters of the cart and its chain of point-mass links.
struct ChainParams {
  double cart_mass = 0.5;
  std::vector<double> link_masses;
  std::vector<double> link_lengths;
  double gravity = 9.81;

  std::size_t links() const { return link_masses.size(); }

  /// Throws ValidationError naming the first violated invariant.
  void validate() const {
    auto fail = [](const std::string& what) {
      throw Error(ErrorKind::Validation, "ChainParams: " + what);
    };
    if (link_masses.empty()) fail("at least one link is required");
    if (link_masses.size() != link_lengths.size()) {
      fail("link_masses and link_lengths differ in length");
    }
    if (!(cart_mass > 0.0) || !std::isfinite(cart_mass)) {
      fail("cart_mass must be > 0");
    }
    for (std::size_t i = 0; i < link_masses.size(); ++i) {
      if (!(link_masses[i] > 0.0) || !std::isfinite(link_masses[i])) {
        fail("link_masses[" + std::to_string(i + 1) + "] must be > 0");
      }
      if (!(link_lengths[i] > 0.0) || !std::isfinite(link_lengths[i])) {
        fail("link_lengths[" + std::to_string(i + 1) + "] must be > 0");
      }
    }
    if (!(gravity > 0.0) || !std::isfinite(gravity)) {
      fail("gravity must be > 0");
    }
  }
};

/// n identical links; the defaults are the five-link benchmark chain.
inline ChainParams uniform_chain(std::size_t n = 5, double cart_mass = 0.5,
                                 double link_mass = 0.1,
                                 double link_length = 0.1,
                                 double gravity = 9.81) {
  ChainParams p;
  p.cart_mass = cart_mass;
  p.link_masses.assign(n, link_mass);
  p.link_lengths.assign(n, link_length);
  p.gravity = gravity;
  return p;
}

/// Cart position and velocity plus one (direction, angular velocity) pair per
/// link. Link rates are always derived as qdot_i = omega_i x q_i.
struct State {
  Vec2 x = Vec2::Zero();
  Vec2 xdot = Vec2::Zero();
  std::vector<Vec3> q;
  std::vector<Vec3> omega;

  std::size_t links() const { return q.size(); }

  Vec3 qdot(std::size_t i) const { return omega[i].cross(q[i]); }
};

/// Vertical equilibrium: s_i = +1 hangs along gravity, -1 points against it.
struct EquilibriumSpec {
  std::vector<int> s;
  Vec2 cart_position = Vec2::Zero();

  std::size_t links() const { return s.size(); }

  void validate() const {
    if (s.empty()) {
      throw Error(ErrorKind::Validation, "EquilibriumSpec: empty sign tuple");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != 1 && s[i] != -1) {
        throw Error(ErrorKind::Validation,
                    "EquilibriumSpec: s[" + std::to_string(i + 1) +
                        "] must be +1 or -1");
      }
    }
  }
};

inline EquilibriumSpec hanging(std::size_t n) {
  return EquilibriumSpec{std::vector<int>(n, 1), Vec2::Zero()};
}

/// Constant coefficients of the kinetic energy
///   T = 1/2 M00 |xdot|^2 + xdot . sum M0i qdot_i + 1/2 sum Mij qdot_i . qdot_j
/// together with the gravity weights of V.
struct InertiaModel {
  double m00 = 0.0;
  /// M0i = cart_coupling[i] * C^T.
  std::vector<double> cart_coupling;
  /// Mij, symmetric.
  Mat mij;
  /// (sum_{a>=i} m_a) g l_i.
  std::vector<double> gravity_weight;

  std::size_t links() const { return cart_coupling.size(); }

  Eigen::Matrix<double, 2, 3> m0i(std::size_t i) const {
    return cart_coupling[i] * cart_embedding().transpose();
  }
};

inline InertiaModel build_inertia(const ChainParams& params) {
  params.validate();
  const std::size_t n = params.links();
  // tail[i] = sum_{a=i}^{n} m_a
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + params.link_masses[i];

  InertiaModel out;
  out.m00 = params.cart_mass + tail[0];
  out.cart_coupling.resize(n);
  out.gravity_weight.resize(n);
  out.mij = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out.cart_coupling[i] = tail[i] * params.link_lengths[i];
    out.gravity_weight[i] = tail[i] * params.gravity * params.link_lengths[i];
    for (std::size_t j = i; j < n; ++j) {
      const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
      out.mij(r, c) = tail[j] * params.link_lengths[i] * params.link_lengths[j];
      out.mij(c, r) = out.mij(r, c);
    }
  }
  return out;
}

struct Energies {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

inline Energies energies(const InertiaModel& inertia, const State& state) {
  const std::size_t n = inertia.links();
  std::vector<Vec3> qdot(n);
  for (std::size_t i = 0; i < n; ++i) qdot[i] = state.qdot(i);

  double t = 0.5 * inertia.m00 * state.xdot.squaredNorm();
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t += state.xdot.dot(inertia.m0i(i) * qdot[i]);
    for (std::size_t j = 0; j < n; ++j) {
      t += 0.5 * inertia.mij(static_cast<Eigen::Index>(i),
                             static_cast<Eigen::Index>(j)) *
           qdot[i].dot(qdot[j]);
    }
    v -= inertia.gravity_weight[i] * kE3.dot(state.q[i]);
  }
  return Energies{t, v, t + v};
}

inline Energies energies(const ChainParams& params, const State& state) {
  return energies(build_inertia(params), state);
}

/// Positions of the link-end masses, x_i = C x + sum_{a<=i} l_a q_a.
inline std::vector<Vec3> mass_positions(const ChainParams& params,
                                        const State& state) {
  std::vector<Vec3> out;
  out.reserve(state.links());
  Vec3 p = cart_embedding() * state.x;
  for (std::size_t i = 0; i < state.links(); ++i) {
    p += params.link_lengths[i] * state.q[i];
    out.push_back(p);
  }
  return out;
}

/// Restores |q_i| = 1 and q_i . omega_i = 0.
inline State project_state(State state) {
  for (std::size_t i = 0; i < state.links(); ++i) {
    const double norm = state.q[i].norm();
    if (!(norm >= 0.5 && norm <= 2.0)) {
      std::ostringstream msg;
      msg << "project_state: |q_" << i + 1 << "| = " << norm
          << " is outside [0.5, 2]";
      throw Error(ErrorKind::DegenerateDirection, msg.str());
    }
    state.q[i] /= norm;
    state.omega[i] -= state.q[i].dot(state.omega[i]) * state.q[i];
  }
  return state;
}

struct Violation {
  enum class Kind { Norm, Tangency };
  Kind kind;
  std::size_t link;  // 1-based
  double magnitude;
};

inline std::vector<Violation> validate_state(const State& state,
                                             double tolerance = 1e-9) {
  std::vector<Violation> out;
  if (state.q.size() != state.omega.size()) {
    throw Error(ErrorKind::Validation,
                "State: q and omega have different lengths");
  }
  for (std::size_t i = 0; i < state.links(); ++i) {
    const double norm_err = std::abs(state.q[i].norm() - 1.0);
    if (!(norm_err <= tolerance)) {
      out.push_back({Violation::Kind::Norm, i + 1, norm_err});
    }
    const double tan_err = std::abs(state.q[i].dot(state.omega[i]));
    if (!(tan_err <= tolerance)) {
      out.push_back({Violation::Kind::Tangency, i + 1, tan_err});
    }
  }
  return out;
}

/// Direction and angular-rate errors relative to an equilibrium:
/// e_q = sum |q_i - s_i e3|, e_w = sum |omega_i|.
struct TrackingError {
  double direction = 0.0;
  double angular_rate = 0.0;
};

inline TrackingError compute_errors(const State& state,
                                    const EquilibriumSpec& spec) {
  if (state.links() != spec.links()) {
    throw Error(ErrorKind::InvalidArgument,
                "compute_errors: state and equilibrium link counts differ");
  }
  TrackingError e;
  for (std::size_t i = 0; i < state.links(); ++i) {
    e.direction += (state.q[i] - spec.s[i] * kE3).norm();
    e.angular_rate += state.omega[i].norm();
  }
  return e;
}

/// Rotation exp(hat(axis_angle)) applied to v (Rodrigues).
inline Vec3 rotate(const Vec3& axis_angle, const Vec3& v) {
  const double angle = axis_angle.norm();
  if (angle == 0.0) return v;
  return Eigen::AngleAxisd(angle, axis_angle / angle) * v;
}

}  // namespace chainpend
