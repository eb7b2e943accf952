#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// rebuild quantities from point-mass kinematics instead of reusing the
// library's inertia model.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "chainpend/scenario.hpp"

namespace chainpend::testing {

inline constexpr double kDeg = std::numbers::pi / 180.0;

/// m = 0.5, m_i = 0.1, l_i = 0.1, g = 9.81, five links.
inline ChainParams benchmark_params(std::size_t n = 5) { return uniform_chain(n); }

/// Folded start: q_i = (-1)^i e3 for i < 5, q5 tilted 1 degree.
inline State folded_start() {
  State s;
  s.x = Vec2(0.2, 0.1);
  s.xdot = Vec2(0.0, -0.1);
  for (int i = 1; i <= 4; ++i) s.q.push_back((i % 2 ? -1.0 : 1.0) * kE3);
  s.q.push_back(Vec3(std::sin(kDeg), 0.0, -std::cos(kDeg)));
  s.omega.assign(5, Vec3::Zero());
  return s;
}

/// Initial condition near s = (-1,-1,-1,1,1), with q2 = q3 read as unit
/// 3-vectors.
inline State partially_folded_start() {
  const double s4 = std::sin(4 * kDeg), c4 = std::cos(4 * kDeg);
  const double s5 = std::sin(5 * kDeg), c5 = std::cos(5 * kDeg);
  State s;
  s.x = Vec2(0.2, 0.1);
  s.xdot = Vec2(0.0, -0.1);
  s.q = {-Vec3(std::sin(6 * kDeg), 0.0, std::cos(6 * kDeg)),
         -Vec3(0.0, s4, c4),
         -Vec3(0.0, s4, c4),
         Vec3(s5 * c4, -s5 * s4, c5),
         Vec3(-std::sin(35 * kDeg), 0.0, std::cos(35 * kDeg))};
  s.omega.assign(5, Vec3::Zero());
  return s;
}

inline EquilibriumSpec partially_folded() { return EquilibriumSpec{{-1, -1, -1, 1, 1}, Vec2::Zero()}; }

inline Mat diag_weight(std::size_t n, double cart, double link) {
  return default_state_weight(n, cart, link);
}

// ---------------------------------------------------------------------------
// Random generators

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Vec3 unit() {
    std::normal_distribution<double> nd;
    Vec3 v;
    do {
      v = Vec3(nd(rng_), nd(rng_), nd(rng_));
    } while (v.norm() < 1e-3);
    return v.normalized();
  }

  Vec3 vec3(double scale) { return Vec3(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)); }

  Mat matrix(Eigen::Index r, Eigen::Index c) {
    Mat m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(-1.0, 1.0);
    return m;
  }

  Mat spd(Eigen::Index n) {
    const Mat a = matrix(n, n);
    return a * a.transpose() + 0.5 * Mat::Identity(n, n);
  }

  ChainParams params(std::size_t n) {
    ChainParams p;
    p.cart_mass = uniform(0.2, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      p.link_masses.push_back(uniform(0.05, 0.5));
      p.link_lengths.push_back(uniform(0.05, 0.5));
    }
    p.gravity = 9.81;
    return p;
  }

  /// Unit q_i, omega_i tangent with |omega_i| <= max_rate.
  State state(std::size_t n, double max_rate) {
    State s;
    s.x = Vec2(uniform(-1, 1), uniform(-1, 1));
    s.xdot = Vec2(uniform(-1, 1), uniform(-1, 1));
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 q = unit();
      Vec3 w = vec3(1.0);
      w -= q.dot(w) * q;
      if (w.norm() > 0) w *= uniform(0.0, max_rate) / w.norm();
      s.q.push_back(q);
      s.omega.push_back(w);
    }
    return s;
  }

  EquilibriumSpec spec(std::size_t n) {
    EquilibriumSpec e;
    for (std::size_t i = 0; i < n; ++i) e.s.push_back(uniform(0, 1) < 0.5 ? 1 : -1);
    return e;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Point-mass oracles

inline double tail_mass(const ChainParams& p, std::size_t i) {
  double sum = 0.0;
  for (std::size_t a = i; a < p.links(); ++a) sum += p.link_masses[a];
  return sum;
}

/// T and V summed mass by mass: v_i = C xdot + sum_{a<=i} l_a qdot_a.
inline Energies point_mass_energy(const ChainParams& p, const State& s) {
  const Vec3 cart_v(s.xdot(0), s.xdot(1), 0.0);
  const Vec3 cart_p(s.x(0), s.x(1), 0.0);
  double t = 0.5 * p.cart_mass * cart_v.squaredNorm();
  double v = 0.0;
  Vec3 vel = cart_v;
  Vec3 pos = cart_p;
  for (std::size_t i = 0; i < p.links(); ++i) {
    vel += p.link_lengths[i] * s.omega[i].cross(s.q[i]);
    pos += p.link_lengths[i] * s.q[i];
    t += 0.5 * p.link_masses[i] * vel.squaredNorm();
    v -= p.link_masses[i] * p.gravity * pos.z();
  }
  return {t, v, t + v};
}

/// Residual of the direction-vector form of the equations of motion, with
/// qdd_i = -hat(q_i) omegadot_i - |omega_i|^2 q_i. Returned relative to the
/// largest individual term.
inline double direction_form_residual(const ChainParams& p, const State& s,
                                      const Vec2& u, const Vec2& xdd,
                                      const std::vector<Vec3>& omegadot) {
  const std::size_t n = p.links();
  const Vec3 xdd3(xdd(0), xdd(1), 0.0);
  std::vector<Vec3> qdd(n), qd(n);
  for (std::size_t i = 0; i < n; ++i) {
    qd[i] = s.omega[i].cross(s.q[i]);
    qdd[i] = -s.q[i].cross(omegadot[i]) - s.omega[i].squaredNorm() * s.q[i];
  }
  auto m_ij = [&](std::size_t i, std::size_t j) {
    return tail_mass(p, std::max(i, j)) * p.link_lengths[i] * p.link_lengths[j];
  };
  double scale = u.norm();
  double worst = 0.0;

  const double m00 = p.cart_mass + tail_mass(p, 0);
  Vec3 cart = m00 * xdd3;
  scale = std::max(scale, cart.norm());
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 term = tail_mass(p, i) * p.link_lengths[i] * qdd[i];
    cart += term;
    scale = std::max(scale, term.norm());
  }
  worst = std::max(worst, (cart.head<2>() - u).norm());

  for (std::size_t i = 0; i < n; ++i) {
    const Mat3 qh = hat(s.q[i]);
    const Mat3 qh2 = qh * qh;
    Vec3 coupling = tail_mass(p, i) * p.link_lengths[i] * xdd3;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) coupling += m_ij(i, j) * qdd[j];
    }
    const Vec3 lhs = m_ij(i, i) * qdd[i] - qh2 * coupling;
    const Vec3 rhs = -m_ij(i, i) * qd[i].squaredNorm() * s.q[i] -
                     tail_mass(p, i) * p.gravity * p.link_lengths[i] * (qh2 * kE3);
    scale = std::max({scale, (m_ij(i, i) * qdd[i]).norm(), (qh2 * coupling).norm(),
                      rhs.norm()});
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst / std::max(scale, 1e-300);
}

/// State on the chart q_i = exp(hat(C eta_i)) s_i e3, omega_i = C nu_i
/// projected onto the tangent plane at q_i.
inline State chart_state(const EquilibriumSpec& spec, const Vec& z) {
  const std::size_t n = spec.links();
  const Eigen::Index d = 2 + 2 * static_cast<Eigen::Index>(n);
  State s;
  s.x = spec.cart_position + z.segment<2>(0);
  s.xdot = z.segment<2>(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = 2 + 2 * static_cast<Eigen::Index>(i);
    const Vec3 eta(z(k), z(k + 1), 0.0);
    const Vec3 nu(z(d + k), z(d + k + 1), 0.0);
    const Vec3 q = rotate(eta, spec.s[i] * kE3);
    s.q.push_back(q);
    s.omega.push_back(nu - q.dot(nu) * q);
  }
  return s;
}

/// First-order field in chart coordinates: (xdot, C^T omega, xdd, C^T omegadot).
inline Vec chart_field(const InertiaModel& inertia, const EquilibriumSpec& spec,
                       const Vec& z, const Vec2& u = Vec2::Zero()) {
  const State s = chart_state(spec, z);
  const Derivative d = accelerations(inertia, s, u);
  const Eigen::Index half = z.size() / 2;
  Vec out(z.size());
  out.segment<2>(0) = s.xdot;
  out.segment<2>(half) = d.xddot;
  for (std::size_t i = 0; i < spec.links(); ++i) {
    const auto k = 2 + 2 * static_cast<Eigen::Index>(i);
    out.segment<2>(k) = s.omega[i].head<2>();
    out.segment<2>(half + k) = d.omegadot[i].head<2>();
  }
  return out;
}

/// Central-difference Jacobian of chart_field at the equilibrium.
inline Mat chart_jacobian(const InertiaModel& inertia, const EquilibriumSpec& spec,
                          double eps) {
  const Eigen::Index dim = 2 * (2 + 2 * static_cast<Eigen::Index>(spec.links()));
  Mat jac(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vec zp = Vec::Zero(dim), zm = Vec::Zero(dim);
    zp(c) = eps;
    zm(c) = -eps;
    jac.col(c) = (chart_field(inertia, spec, zp) - chart_field(inertia, spec, zm)) / (2 * eps);
  }
  return jac;
}

/// Mass matrix of the linearization assembled from point-mass velocity
/// Jacobians, and the potential Hessian by finite differences of the
/// point-mass potential over the chart.
struct ProceduralLinearization {
  Mat M;
  Mat G;
};

inline ProceduralLinearization procedural_linearization(const ChainParams& p,
                                                        const EquilibriumSpec& spec) {
  const std::size_t n = p.links();
  const Eigen::Index d = 2 + 2 * static_cast<Eigen::Index>(n);
  ProceduralLinearization out{Mat::Zero(d, d), Mat::Zero(d, d)};
  out.M.topLeftCorner(2, 2) = p.cart_mass * Mat2::Identity();

  // Velocity of mass i is J_i (xdot, nu): qdot_a = (C nu_a) x (s_a e3).
  Mat jac = Mat::Zero(3, d);
  jac.topLeftCorner(2, 2) = Mat2::Identity();
  for (std::size_t a = 0; a < n; ++a) {
    const auto k = 2 + 2 * static_cast<Eigen::Index>(a);
    for (int c = 0; c < 2; ++c) {
      Vec3 dir = Vec3::Zero();
      dir(c) = 1.0;
      jac.col(k + c) = p.link_lengths[a] * dir.cross(spec.s[a] * kE3);
    }
    out.M += p.link_masses[a] * jac.transpose() * jac;
  }

  auto potential = [&](const Vec& eta) {
    double v = 0.0, z = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const auto k = 2 * static_cast<Eigen::Index>(a);
      z += p.link_lengths[a] * rotate(Vec3(eta(k), eta(k + 1), 0.0), spec.s[a] * kE3).z();
      v -= p.link_masses[a] * p.gravity * z;
    }
    return v;
  };
  const Eigen::Index nq = 2 * static_cast<Eigen::Index>(n);
  const double h = 1e-4;
  for (Eigen::Index r = 0; r < nq; ++r) {
    for (Eigen::Index c = 0; c < nq; ++c) {
      Vec e = Vec::Zero(nq);
      auto at = [&](double dr, double dc) {
        Vec x = e;
        x(r) += dr;
        x(c) += dc;
        return potential(x);
      };
      out.G(2 + r, 2 + c) = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
    }
  }
  return out;
}

/// Lagrangian of one link on a free cart, planar, in (x, theta):
///   L = 1/2 (m + m1) xd^2 + m1 l xd thd cos(th) + 1/2 m1 l^2 thd^2 + m1 g l cos(th).
/// Linearized: (m + m1) xdd + m1 l thdd = 0, m1 l xdd + m1 l^2 thdd = -m1 g l th.
/// Eliminating xdd gives thdd = -g (m + m1) / (m l) th.
inline double free_cart_lambda_squared(double m, double m1, double l, double g) {
  return -g * (m + m1) / (m * l);
}

/// Maxima of `values` over consecutive windows of `window` samples.
inline std::vector<double> window_maxima(const std::vector<double>& values, std::size_t window) {
  std::vector<double> out;
  for (std::size_t k = 0; k < values.size(); k += window) {
    double m = 0.0;
    for (std::size_t j = k; j < std::min(values.size(), k + window); ++j) m = std::max(m, values[j]);
    out.push_back(m);
  }
  return out;
}

}  // namespace chainpend::testing
