#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chainpend/scenario.hpp"

namespace {

int fail(const chainpend::Error& e) {
  std::cerr << chainpend::error_json(e).dump() << '\n';
  return chainpend::exit_code(e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and control design for a chain of links on a planar cart"};
  std::string command;
  std::string config_path;
  std::string output;
  double dt = 0.0;
  double duration = 0.0;
  app.add_option("command", command, "simulate | equilibria | linearize | "
                                     "controllability | lqr | stabilize")
      ->required()
      ->check(CLI::IsMember(chainpend::commands()));
  app.add_option("--config", config_path, "scenario config (JSON)")->required();
  app.add_option("--output", output, "artifact path; overrides the config, '-' for stdout");
  app.add_option("--dt", dt, "integration step [s]");
  app.add_option("--duration", duration, "simulated time [s]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(chainpend::Error(chainpend::ErrorKind::InvalidArgument, e.what()));
  }

  try {
    chainpend::ScenarioConfig cfg = chainpend::load_config(config_path);
    if (app.count("--dt")) {
      if (!(dt > 0.0)) throw chainpend::Error(chainpend::ErrorKind::Validation, "--dt must be > 0");
      cfg.sim.dt = dt;
    }
    if (app.count("--duration")) {
      if (!(duration > 0.0)) {
        throw chainpend::Error(chainpend::ErrorKind::Validation, "--duration must be > 0");
      }
      cfg.sim.duration = duration;
    }
    if (app.count("--output")) cfg.output = output;

    const std::string artifact = chainpend::run_command(command, cfg);
    if (cfg.output.empty() || cfg.output == "-") {
      std::cout << artifact;
    } else {
      chainpend::write_text(artifact, cfg.output);
    }
  } catch (const chainpend::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(chainpend::Error(chainpend::ErrorKind::NoConvergence, e.what()));
  }
  return 0;
}
