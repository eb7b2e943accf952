#pragma once

// Euler-Lagrange equations of the chain on a cart in angular-velocity form.
// Unknowns are stacked as (xddot, omegadot_1, ..., omegadot_n), 3n+2 in all.

#include <functional>
#include <string_view>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "chainpend/model.hpp"

namespace chainpend {

/// Force on the cart as a function of time and state.
using Controller = std::function<Vec2(double, const State&)>;

inline Controller null_controller() {
  return [](double, const State&) { return Vec2::Zero().eval(); };
}

struct SystemMatrices {
  Mat lhs;  // (3n+2) x (3n+2)
  Vec rhs;  // 3n+2
};

struct Derivative {
  Vec2 xdot = Vec2::Zero();
  Vec2 xddot = Vec2::Zero();
  std::vector<Vec3> qdot;
  std::vector<Vec3> omegadot;
};

inline Eigen::Index link_row(std::size_t i) {
  return 2 + 3 * static_cast<Eigen::Index>(i);
}

inline SystemMatrices assemble_system(const InertiaModel& inertia,
                                      const State& state, const Vec2& u) {
  const std::size_t n = inertia.links();
  if (state.links() != n || state.omega.size() != n) {
    throw Error(ErrorKind::InvalidArgument,
                "assemble_system: state does not match the inertia model");
  }
  const Eigen::Index dim = 2 + 3 * static_cast<Eigen::Index>(n);

  std::vector<Mat3> qhat(n);
  std::vector<double> omega_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    qhat[i] = hat(state.q[i]);
    omega_sq[i] = state.omega[i].squaredNorm();
  }

  SystemMatrices sys{Mat::Zero(dim, dim), Vec::Zero(dim)};
  sys.lhs.topLeftCorner<2, 2>() = inertia.m00 * Mat2::Identity();
  Vec2 cart_rhs = u;
  for (std::size_t j = 0; j < n; ++j) {
    sys.lhs.block<2, 3>(0, link_row(j)) = -inertia.m0i(j) * qhat[j];
    cart_rhs += inertia.m0i(j) * (omega_sq[j] * state.q[j]);
  }
  sys.rhs.head<2>() = cart_rhs;

  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Index r = link_row(i);
    sys.lhs.block<3, 2>(r, 0) = qhat[i] * inertia.m0i(i).transpose();
    Vec3 link_rhs = inertia.gravity_weight[i] * (qhat[i] * kE3);
    for (std::size_t j = 0; j < n; ++j) {
      const double mij = inertia.mij(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(j));
      if (i == j) {
        sys.lhs.block<3, 3>(r, r) = mij * Mat3::Identity();
      } else {
        sys.lhs.block<3, 3>(r, link_row(j)) = -mij * qhat[i] * qhat[j];
      }
      // The j == i term is hat(q_i) q_i = 0.
      link_rhs += mij * omega_sq[j] * (qhat[i] * state.q[j]);
    }
    sys.rhs.segment<3>(r) = link_rhs;
  }
  return sys;
}

/// Solves the assembled system; omegadot_i is returned projected onto the
/// tangent plane at q_i.
inline Derivative accelerations(const InertiaModel& inertia, const State& state,
                                const Vec2& u) {
  const SystemMatrices sys = assemble_system(inertia, state, u);
  const Vec sol = solve_linear(sys.lhs, sys.rhs);
  const std::size_t n = inertia.links();
  Derivative d;
  d.xdot = state.xdot;
  d.xddot = sol.head<2>();
  d.qdot.resize(n);
  d.omegadot.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.qdot[i] = state.qdot(i);
    const Vec3 w = sol.segment<3>(link_row(i));
    const Vec3 qi = state.q[i].normalized();
    d.omegadot[i] = w - qi.dot(w) * qi;
  }
  return d;
}

inline Derivative vector_field(const InertiaModel& inertia, const State& state,
                               const Vec2& u) {
  return accelerations(inertia, state, u);
}

namespace detail {

inline State advance(const State& s, const Derivative& d, double h) {
  State out = s;
  out.x += h * d.xdot;
  out.xdot += h * d.xddot;
  for (std::size_t i = 0; i < s.links(); ++i) {
    out.q[i] += h * d.qdot[i];
    out.omega[i] += h * d.omegadot[i];
  }
  return out;
}

}  // namespace detail

/// Classical RK4 on (x, xdot, q_i, omega_i) in R^2 x R^2 x (R^3 x R^3)^n,
/// followed by projection back onto the constraint set.
inline State step_rk4(const InertiaModel& inertia, const State& state,
                      const Controller& controller, double t, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "step_rk4: dt must be > 0");
  }
  const double half = 0.5 * dt;
  const Derivative k1 = vector_field(inertia, state, controller(t, state));
  const State s2 = detail::advance(state, k1, half);
  const Derivative k2 = vector_field(inertia, s2, controller(t + half, s2));
  const State s3 = detail::advance(state, k2, half);
  const Derivative k3 = vector_field(inertia, s3, controller(t + half, s3));
  const State s4 = detail::advance(state, k3, dt);
  const Derivative k4 = vector_field(inertia, s4, controller(t + dt, s4));

  State out = state;
  const double w = dt / 6.0;
  out.x += w * (k1.xdot + 2.0 * k2.xdot + 2.0 * k3.xdot + k4.xdot);
  out.xdot += w * (k1.xddot + 2.0 * k2.xddot + 2.0 * k3.xddot + k4.xddot);
  for (std::size_t i = 0; i < state.links(); ++i) {
    out.q[i] += w * (k1.qdot[i] + 2.0 * k2.qdot[i] + 2.0 * k3.qdot[i] + k4.qdot[i]);
    out.omega[i] += w * (k1.omegadot[i] + 2.0 * k2.omegadot[i] +
                         2.0 * k3.omegadot[i] + k4.omegadot[i]);
  }
  return project_state(std::move(out));
}

/// Flat layout (x, xdot, q_1, omega_1, ..., q_n, omega_n) used by generic
/// ODE steppers.
using FlatState = std::vector<double>;

inline FlatState pack_state(const State& s) {
  FlatState f(4 + 6 * s.links());
  f[0] = s.x(0);
  f[1] = s.x(1);
  f[2] = s.xdot(0);
  f[3] = s.xdot(1);
  for (std::size_t i = 0; i < s.links(); ++i) {
    for (int k = 0; k < 3; ++k) {
      f[4 + 6 * i + k] = s.q[i](k);
      f[7 + 6 * i + k] = s.omega[i](k);
    }
  }
  return f;
}

inline State unpack_state(const FlatState& f) {
  const std::size_t n = (f.size() - 4) / 6;
  State s;
  s.x = Vec2(f[0], f[1]);
  s.xdot = Vec2(f[2], f[3]);
  s.q.reserve(n);
  s.omega.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.q.emplace_back(f[4 + 6 * i], f[5 + 6 * i], f[6 + 6 * i]);
    s.omega.emplace_back(f[7 + 6 * i], f[8 + 6 * i], f[9 + 6 * i]);
  }
  return s;
}

inline FlatState pack_derivative(const Derivative& d) {
  FlatState f(4 + 6 * d.qdot.size());
  f[0] = d.xdot(0);
  f[1] = d.xdot(1);
  f[2] = d.xddot(0);
  f[3] = d.xddot(1);
  for (std::size_t i = 0; i < d.qdot.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      f[4 + 6 * i + k] = d.qdot[i](k);
      f[7 + 6 * i + k] = d.omegadot[i](k);
    }
  }
  return f;
}

/// Fixed-step Runge-Kutta-Fehlberg 7(8) on the same ambient coordinates,
/// followed by projection. Eighth order; 13 field evaluations per step.
inline State step_rk78(const InertiaModel& inertia, const State& state,
                       const Controller& controller, double t, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "step_rk78: dt must be > 0");
  }
  auto field = [&](const FlatState& f, FlatState& df, double time) {
    const State s = unpack_state(f);
    df = pack_derivative(vector_field(inertia, s, controller(time, s)));
  };
  boost::numeric::odeint::runge_kutta_fehlberg78<FlatState> stepper;
  FlatState f = pack_state(state);
  stepper.do_step(field, f, t, dt);
  return project_state(unpack_state(f));
}

enum class Integrator { Rk4, Rk78 };

inline std::string_view to_string(Integrator m) {
  return m == Integrator::Rk4 ? "rk4" : "rk78";
}

inline State step(const InertiaModel& inertia, const State& state,
                  const Controller& controller, double t, double dt,
                  Integrator method) {
  return method == Integrator::Rk4
             ? step_rk4(inertia, state, controller, t, dt)
             : step_rk78(inertia, state, controller, t, dt);
}

struct Sample {
  double t = 0.0;
  State state;
  Vec2 u = Vec2::Zero();
  Energies energy;
  TrackingError error;
};

using Trajectory = std::vector<Sample>;

struct SimulationSettings {
  double duration = 10.0;
  double dt = 1e-3;
  std::size_t sample_every = 10;
  Integrator integrator = Integrator::Rk78;
};

/// Integrates from `initial`, recording every `sample_every` steps plus the
/// first and last. Tracking errors are measured against `reference`.
inline Trajectory simulate(const ChainParams& params, const State& initial,
                           const Controller& controller,
                           const SimulationSettings& settings,
                           const EquilibriumSpec& reference) {
  if (!(settings.duration > 0.0) || !(settings.dt > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "simulate: duration and dt must be > 0");
  }
  if (settings.sample_every == 0) {
    throw Error(ErrorKind::InvalidArgument, "simulate: sample_every must be >= 1");
  }
  const InertiaModel inertia = build_inertia(params);
  if (initial.links() != params.links() || reference.links() != params.links()) {
    throw Error(ErrorKind::InvalidArgument,
                "simulate: link count mismatch between params, state and reference");
  }
  const auto steps = static_cast<std::size_t>(
      std::llround(settings.duration / settings.dt));
  if (steps == 0) {
    throw Error(ErrorKind::InvalidArgument, "simulate: duration shorter than dt");
  }

  Trajectory out;
  out.reserve(steps / settings.sample_every + 2);
  auto record = [&](double t, const State& s) {
    out.push_back(Sample{t, s, controller(t, s), energies(inertia, s),
                         compute_errors(s, reference)});
  };

  State s = initial;
  record(0.0, s);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * settings.dt;
    s = step(inertia, s, controller, t, settings.dt, settings.integrator);
    const std::size_t done = k + 1;
    if (done % settings.sample_every == 0 || done == steps) {
      record(static_cast<double>(done) * settings.dt, s);
    }
  }
  return out;
}

}  // namespace chainpend
