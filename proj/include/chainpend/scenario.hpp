#pragma once

// Scenario configs (JSON in), trajectories (CSV out) and analysis reports
// (JSON out). This is the layer the chainpend CLI drives.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainpend/control.hpp"

namespace chainpend {

using nlohmann::json;

struct ControllerConfig {
  enum class Type { None, Pd, Lqr };
  Type type = Type::None;
  std::optional<EquilibriumSpec> target;
  GainSet gains;            // pd
  std::optional<Vec> q_diag;  // lqr, full length 4n+4
  Vec r_diag = Vec::Ones(2);
};

struct ScenarioConfig {
  std::string description;
  ChainParams params;
  State initial;
  /// Equilibrium used for error metrics and the analysis commands.
  EquilibriumSpec target;
  ControllerConfig controller;
  SimulationSettings sim;
  std::string output;
};

namespace detail {

[[noreturn]] inline void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Validation, field + ": " + what);
}

inline void reject_unknown(const json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) invalid(where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) invalid(where + "." + key, "unknown key");
  }
}

inline double number(const json& v, const std::string& field) {
  if (!v.is_number()) invalid(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(field, "must be finite");
  return d;
}

inline std::vector<double> numbers(const json& v, const std::string& field,
                                   std::optional<std::size_t> size = {}) {
  if (!v.is_array()) invalid(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  if (size && out.size() != *size) {
    invalid(field, "expected " + std::to_string(*size) + " entries");
  }
  return out;
}

inline Vec2 vec2(const json& v, const std::string& field) {
  const auto d = numbers(v, field, 2);
  return Vec2(d[0], d[1]);
}

inline Vec3 vec3(const json& v, const std::string& field) {
  const auto d = numbers(v, field, 3);
  return Vec3(d[0], d[1], d[2]);
}

inline Mat2 mat2(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) invalid(field, "expected a 2x2 array");
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    const auto row = numbers(v[static_cast<std::size_t>(r)],
                             field + "[" + std::to_string(r) + "]", 2);
    m(r, 0) = row[0];
    m(r, 1) = row[1];
  }
  return m;
}

inline EquilibriumSpec signs(const json& v, const std::string& field,
                             std::size_t n) {
  if (!v.is_array() || v.size() != n) {
    invalid(field, "expected " + std::to_string(n) + " signs");
  }
  EquilibriumSpec spec;
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_number_integer() || (v[i].get<int>() != 1 && v[i].get<int>() != -1)) {
      invalid(field + "[" + std::to_string(i) + "]", "must be 1 or -1");
    }
    spec.s.push_back(v[i].get<int>());
  }
  return spec;
}

inline ChainParams parse_params(const json& j) {
  reject_unknown(j, "params", {"cart_mass", "link_masses", "link_lengths",
                               "gravity", "links", "link_mass", "link_length"});
  ChainParams p;
  if (!j.contains("cart_mass")) invalid("params.cart_mass", "required");
  p.cart_mass = number(j["cart_mass"], "params.cart_mass");
  if (j.contains("gravity")) p.gravity = number(j["gravity"], "params.gravity");

  const bool uniform = j.contains("links");
  const bool listed = j.contains("link_masses") || j.contains("link_lengths");
  if (uniform == listed) {
    invalid("params", "give either links/link_mass/link_length or "
                      "link_masses/link_lengths");
  }
  if (uniform) {
    if (!j["links"].is_number_integer() || j["links"].get<int>() < 1) {
      invalid("params.links", "must be a positive integer");
    }
    if (!j.contains("link_mass") || !j.contains("link_length")) {
      invalid("params", "links requires link_mass and link_length");
    }
    const auto n = static_cast<std::size_t>(j["links"].get<int>());
    p.link_masses.assign(n, number(j["link_mass"], "params.link_mass"));
    p.link_lengths.assign(n, number(j["link_length"], "params.link_length"));
  } else {
    if (!j.contains("link_masses") || !j.contains("link_lengths")) {
      invalid("params", "link_masses and link_lengths are both required");
    }
    p.link_masses = numbers(j["link_masses"], "params.link_masses");
    p.link_lengths = numbers(j["link_lengths"], "params.link_lengths");
  }
  try {
    p.validate();
  } catch (const Error& e) {
    invalid("params", e.what());
  }
  return p;
}

inline State parse_initial(const json& j, std::size_t n) {
  reject_unknown(j, "initial", {"x", "xdot", "equilibrium", "perturbations",
                                "q", "omega", "normalize"});
  State s;
  if (j.contains("x")) s.x = vec2(j["x"], "initial.x");
  if (j.contains("xdot")) s.xdot = vec2(j["xdot"], "initial.xdot");

  const bool from_eq = j.contains("equilibrium");
  if (from_eq == j.contains("q")) {
    invalid("initial", "give exactly one of equilibrium or q");
  }
  if (from_eq) {
    const EquilibriumSpec base = signs(j["equilibrium"], "initial.equilibrium", n);
    for (int si : base.s) s.q.push_back(static_cast<double>(si) * kE3);
  } else {
    const json& qs = j["q"];
    if (!qs.is_array() || qs.size() != n) {
      invalid("initial.q", "expected " + std::to_string(n) + " vectors");
    }
    for (std::size_t i = 0; i < n; ++i) {
      s.q.push_back(vec3(qs[i], "initial.q[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("omega")) {
    const json& ws = j["omega"];
    if (!ws.is_array() || ws.size() != n) {
      invalid("initial.omega", "expected " + std::to_string(n) + " vectors");
    }
    for (std::size_t i = 0; i < n; ++i) {
      s.omega.push_back(vec3(ws[i], "initial.omega[" + std::to_string(i) + "]"));
    }
  } else {
    s.omega.assign(n, Vec3::Zero());
  }

  if (j.contains("perturbations")) {
    const json& ps = j["perturbations"];
    if (!ps.is_array()) invalid("initial.perturbations", "expected an array");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const std::string f = "initial.perturbations[" + std::to_string(k) + "]";
      reject_unknown(ps[k], f, {"link", "axis", "degrees"});
      if (!ps[k].contains("link") || !ps[k]["link"].is_number_integer()) {
        invalid(f + ".link", "required 1-based link index");
      }
      const int link = ps[k]["link"].get<int>();
      if (link < 1 || static_cast<std::size_t>(link) > n) {
        invalid(f + ".link", "out of range");
      }
      if (!ps[k].contains("axis") || !ps[k].contains("degrees")) {
        invalid(f, "axis and degrees are required");
      }
      const Vec3 axis = vec3(ps[k]["axis"], f + ".axis");
      if (axis.norm() == 0.0) invalid(f + ".axis", "must be nonzero");
      const double rad = number(ps[k]["degrees"], f + ".degrees") * std::numbers::pi / 180.0;
      auto& q = s.q[static_cast<std::size_t>(link - 1)];
      q = rotate(rad * axis.normalized(), q);
    }
  }

  bool normalize = false;
  if (j.contains("normalize")) {
    if (!j["normalize"].is_boolean()) invalid("initial.normalize", "expected a boolean");
    normalize = j["normalize"].get<bool>();
  }
  if (normalize) {
    try {
      s = project_state(std::move(s));
    } catch (const Error& e) {
      invalid("initial.q", e.what());
    }
  }
  const auto violations = validate_state(s, 1e-9);
  if (!violations.empty()) {
    const auto& v = violations.front();
    invalid("initial.q[" + std::to_string(v.link - 1) + "]",
            v.kind == Violation::Kind::Norm
                ? "not a unit vector (set normalize: true to rescale)"
                : "omega is not tangent to q");
  }
  return s;
}

inline Vec expand_q_blocks(const std::vector<double>& blocks, std::size_t n) {
  const auto d = 2 + 2 * static_cast<Eigen::Index>(n);
  Vec diag(2 * d);
  for (Eigen::Index k = 0; k < 2 * d; ++k) {
    const bool rate = k >= d;
    const bool cart = (k % d) < 2;
    diag(k) = blocks[(rate ? 2 : 0) + (cart ? 0 : 1)];
  }
  return diag;
}

inline ControllerConfig parse_controller(const json& j, std::size_t n) {
  reject_unknown(j, "controller", {"type", "target", "K_x", "K_xdot", "K_q",
                                   "K_omega", "Q_diag", "Q_blocks", "R_diag"});
  ControllerConfig c;
  if (!j.contains("type") || !j["type"].is_string()) {
    invalid("controller.type", "required: none, pd or lqr");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "none") {
    c.type = ControllerConfig::Type::None;
  } else if (type == "pd") {
    c.type = ControllerConfig::Type::Pd;
  } else if (type == "lqr") {
    c.type = ControllerConfig::Type::Lqr;
  } else {
    invalid("controller.type", "must be none, pd or lqr");
  }
  if (j.contains("target")) c.target = signs(j["target"], "controller.target", n);
  if (c.type != ControllerConfig::Type::None && !c.target) {
    invalid("controller.target", "required for pd and lqr");
  }

  c.gains = GainSet::zeros(n);
  if (c.type == ControllerConfig::Type::Pd) {
    if (j.contains("K_x")) c.gains.k_x = mat2(j["K_x"], "controller.K_x");
    if (j.contains("K_xdot")) c.gains.k_xdot = mat2(j["K_xdot"], "controller.K_xdot");
    for (const char* key : {"K_q", "K_omega"}) {
      if (!j.contains(key)) continue;
      const json& arr = j[key];
      const std::string f = std::string("controller.") + key;
      if (!arr.is_array() || arr.size() != n) {
        invalid(f, "expected " + std::to_string(n) + " 2x2 matrices");
      }
      auto& dst = std::string(key) == "K_q" ? c.gains.k_q : c.gains.k_omega;
      for (std::size_t i = 0; i < n; ++i) {
        dst[i] = mat2(arr[i], f + "[" + std::to_string(i) + "]");
      }
    }
  } else if (j.contains("K_x") || j.contains("K_xdot") || j.contains("K_q") ||
             j.contains("K_omega")) {
    invalid("controller", "explicit gains are only accepted for type pd");
  }

  if (j.contains("Q_diag") && j.contains("Q_blocks")) {
    invalid("controller", "give Q_diag or Q_blocks, not both");
  }
  if (j.contains("Q_diag")) {
    const auto d = numbers(j["Q_diag"], "controller.Q_diag", 4 * n + 4);
    c.q_diag = Eigen::Map<const Vec>(d.data(), static_cast<Eigen::Index>(d.size()));
  } else if (j.contains("Q_blocks")) {
    c.q_diag = expand_q_blocks(numbers(j["Q_blocks"], "controller.Q_blocks", 4), n);
  }
  if (c.q_diag && (c.q_diag->array() < 0.0).any()) {
    invalid("controller.Q", "weights must be >= 0");
  }
  if (j.contains("R_diag")) {
    const auto d = numbers(j["R_diag"], "controller.R_diag", 2);
    c.r_diag = Vec2(d[0], d[1]);
    if (!(d[0] > 0.0 && d[1] > 0.0)) invalid("controller.R_diag", "must be > 0");
  }
  return c;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace detail

inline ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(detail::line_of(text, e.byte)) +
                                      ": " + e.what());
  }
  detail::reject_unknown(j, "config", {"description", "params", "initial", "target",
                                       "controller", "duration", "dt",
                                       "sample_every", "integrator", "output"});
  ScenarioConfig cfg;
  if (j.contains("description")) {
    if (!j["description"].is_string()) detail::invalid("description", "expected a string");
    cfg.description = j["description"].get<std::string>();
  }
  if (!j.contains("params")) detail::invalid("params", "required");
  cfg.params = detail::parse_params(j["params"]);
  const std::size_t n = cfg.params.links();
  if (!j.contains("initial")) detail::invalid("initial", "required");
  cfg.initial = detail::parse_initial(j["initial"], n);

  if (j.contains("controller")) cfg.controller = detail::parse_controller(j["controller"], n);
  if (j.contains("target")) {
    cfg.target = detail::signs(j["target"], "target", n);
  } else if (cfg.controller.target) {
    cfg.target = *cfg.controller.target;
  } else if (j["initial"].contains("equilibrium")) {
    cfg.target = detail::signs(j["initial"]["equilibrium"], "initial.equilibrium", n);
  } else {
    cfg.target = hanging(n);
  }

  if (j.contains("duration")) cfg.sim.duration = detail::number(j["duration"], "duration");
  if (j.contains("dt")) cfg.sim.dt = detail::number(j["dt"], "dt");
  if (!(cfg.sim.duration > 0.0)) detail::invalid("duration", "must be > 0");
  if (!(cfg.sim.dt > 0.0)) detail::invalid("dt", "must be > 0");
  if (j.contains("sample_every")) {
    if (!j["sample_every"].is_number_integer() || j["sample_every"].get<long>() < 1) {
      detail::invalid("sample_every", "must be a positive integer");
    }
    cfg.sim.sample_every = j["sample_every"].get<std::size_t>();
  }
  if (j.contains("integrator")) {
    const json& m = j["integrator"];
    if (m == "rk4") {
      cfg.sim.integrator = Integrator::Rk4;
    } else if (m == "rk78") {
      cfg.sim.integrator = Integrator::Rk78;
    } else {
      detail::invalid("integrator", "must be rk4 or rk78");
    }
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) detail::invalid("output", "expected a string");
    cfg.output = j["output"].get<std::string>();
  }
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// ---------------------------------------------------------------------------
// CSV trajectories

inline std::string csv_header(std::size_t n) {
  std::string h = "t,x1,x2,xd1,xd2";
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string k = std::to_string(i);
    h += ",q" + k + "1,q" + k + "2,q" + k + "3,w" + k + "1,w" + k + "2,w" + k + "3";
  }
  h += ",u1,u2,T,V,E,eq,ew";
  return h;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trajectory_csv(const Trajectory& traj, std::size_t n) {
  std::string out = csv_header(n) + "\n";
  for (const Sample& s : traj) {
    std::vector<double> row{s.t, s.state.x(0), s.state.x(1), s.state.xdot(0),
                            s.state.xdot(1)};
    for (std::size_t i = 0; i < s.state.links(); ++i) {
      for (int k = 0; k < 3; ++k) row.push_back(s.state.q[i](k));
      for (int k = 0; k < 3; ++k) row.push_back(s.state.omega[i](k));
    }
    row.insert(row.end(), {s.u(0), s.u(1), s.energy.kinetic, s.energy.potential,
                           s.energy.total, s.error.direction, s.error.angular_rate});
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

inline void write_csv(const Trajectory& traj, std::size_t n, const std::string& path) {
  write_text(trajectory_csv(traj, n), path);
}

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream rs(line);
    std::string cell;
    while (std::getline(rs, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != t.columns.size()) {
      throw Error(ErrorKind::Parse, "csv row has " + std::to_string(row.size()) +
                                        " cells, header has " +
                                        std::to_string(t.columns.size()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// JSON reports

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v(k));
  return arr;
}

inline json spectral_json(const SpectralReport& rep) {
  return json{{"lambda_squared", to_json(rep.lambda_squared)},
              {"classification", std::string(to_string(rep.classification))},
              {"zero_mode_count", rep.zero_mode_count}};
}

inline json equilibria_report(const ChainParams& params) {
  const InertiaModel inertia = build_inertia(params);
  json rows = json::array();
  for (const auto& spec : enumerate_equilibria(params.links())) {
    rows.push_back({{"s", spec.s},
                    {"classification", std::string(to_string(classify(spec)))},
                    {"spectrum", spectral_json(pencil_spectrum(linearize(inertia, spec)))}});
  }
  return json{{"links", params.links()}, {"equilibria", std::move(rows)}};
}

inline json linear_model_json(const LinearModel& lin) {
  return json{{"s", lin.spec.s}, {"M", to_json(lin.M)}, {"G", to_json(lin.G)},
              {"B", to_json(lin.B)}};
}

inline json certificate_json(const EquilibriumSpec& spec,
                             const ControllabilityCertificate& cert) {
  json j{{"s", spec.s},
         {"controllable", cert.controllable},
         {"eigenvector_test_controllable", cert.eigenvector_route_controllable},
         {"routes_agree", cert.routes_agree},
         {"tested_lambda_squared", cert.tested_eigenvalues},
         {"rank_results", cert.rank_results},
         {"rank_margin", cert.rank_margin},
         {"failing_eigenvector", nullptr}};
  if (cert.failing_eigenvector) j["failing_eigenvector"] = to_json(*cert.failing_eigenvector);
  return j;
}

inline json gains_json(const GainSet& g) {
  json kq = json::array();
  json kw = json::array();
  for (std::size_t i = 0; i < g.links(); ++i) {
    kq.push_back(to_json(Mat(g.k_q[i])));
    kw.push_back(to_json(Mat(g.k_omega[i])));
  }
  return json{{"K_x", to_json(Mat(g.k_x))}, {"K_xdot", to_json(Mat(g.k_xdot))},
              {"K_q", std::move(kq)}, {"K_omega", std::move(kw)}};
}

inline Mat lqr_state_weight(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.params.links();
  if (cfg.controller.q_diag) return cfg.controller.q_diag->asDiagonal();
  return default_state_weight(n);
}

inline Mat lqr_input_weight(const ScenarioConfig& cfg) {
  return cfg.controller.r_diag.asDiagonal();
}

struct LqrReport {
  LinearModel model;
  ControllabilityCertificate certificate;
  LqrDesign design;
  double care_relative_residual = 0.0;
  double closed_loop_max_real = 0.0;
};

/// linearize -> controllability -> LQR. Stops with Uncontrollable before the
/// Riccati solve when the certificate is negative.
inline LqrReport lqr_pipeline(const ScenarioConfig& cfg, const EquilibriumSpec& target) {
  LqrReport rep;
  const InertiaModel inertia = build_inertia(cfg.params);
  rep.model = linearize(inertia, target);
  rep.certificate = controllability(rep.model);
  if (!rep.certificate.controllable) {
    throw Error(ErrorKind::Uncontrollable,
                "equilibrium is not controllable; refusing to design gains");
  }
  const Mat q = lqr_state_weight(cfg);
  const Mat r = lqr_input_weight(cfg);
  rep.design = lqr_design(rep.model, q, r);
  rep.care_relative_residual =
      max_abs(care_residual(rep.design.plant.A, rep.design.plant.B, q, r, rep.design.P)) /
      max_abs(q);
  rep.closed_loop_max_real = max_real_part(closed_loop_spectrum(rep.model, rep.design.gains));
  return rep;
}

inline EquilibriumSpec controller_target(const ScenarioConfig& cfg) {
  return cfg.controller.target ? *cfg.controller.target : cfg.target;
}

inline Controller build_controller(const ScenarioConfig& cfg) {
  switch (cfg.controller.type) {
    case ControllerConfig::Type::None:
      return null_controller();
    case ControllerConfig::Type::Pd:
      return make_feedback_controller(cfg.controller.gains, *cfg.controller.target);
    case ControllerConfig::Type::Lqr: {
      const EquilibriumSpec target = controller_target(cfg);
      return make_feedback_controller(lqr_pipeline(cfg, target).design.gains, target);
    }
  }
  return null_controller();
}

inline Trajectory run_simulation(const ScenarioConfig& cfg, const Controller& controller) {
  return simulate(cfg.params, cfg.initial, controller, cfg.sim, cfg.target);
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"simulate",        "equilibria", "linearize",
                                              "controllability", "lqr",        "stabilize"};
  return names;
}

/// Runs one command and returns its artifact (CSV for simulate/stabilize,
/// JSON otherwise).
inline std::string run_command(const std::string& command, const ScenarioConfig& cfg) {
  const std::size_t n = cfg.params.links();
  if (command == "simulate") {
    return trajectory_csv(run_simulation(cfg, build_controller(cfg)), n);
  }
  if (command == "equilibria") {
    return equilibria_report(cfg.params).dump(2) + "\n";
  }
  if (command == "linearize") {
    const LinearModel lin = linearize(build_inertia(cfg.params), cfg.target);
    json j = linear_model_json(lin);
    j["spectrum"] = spectral_json(pencil_spectrum(lin));
    return j.dump(2) + "\n";
  }
  if (command == "controllability") {
    const LinearModel lin = linearize(build_inertia(cfg.params), cfg.target);
    return certificate_json(cfg.target, controllability(lin)).dump(2) + "\n";
  }
  if (command == "lqr" || command == "stabilize") {
    const EquilibriumSpec target = controller_target(cfg);
    const LqrReport rep = lqr_pipeline(cfg, target);
    if (command == "lqr") {
      json j = gains_json(rep.design.gains);
      j["s"] = target.s;
      j["care_relative_residual"] = rep.care_relative_residual;
      j["closed_loop_max_real"] = rep.closed_loop_max_real;
      return j.dump(2) + "\n";
    }
    ScenarioConfig run = cfg;
    run.target = target;
    return trajectory_csv(
        run_simulation(run, make_feedback_controller(rep.design.gains, target)), n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
}

inline json error_json(const Error& e) {
  return json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
}

/// 0 success, 1 input/validation problems, 2 numerical failures.
inline int exit_code(const Error& e) { return e.is_input_error() ? 1 : 2; }

}  // namespace chainpend
