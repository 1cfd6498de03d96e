// backflow <experiment> --config <path> [--set k=v ...] --out <path> [--seed N]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "backflow/config.hpp"
#include "backflow/error.hpp"
#include "backflow/experiments.hpp"
#include "backflow/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw backflow::ConfigError("cannot open output file '" + path + "'");
  out << text;
  if (!out.flush()) throw backflow::Error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information backflow bounds: trajectories, bound slices and surfaces, verification"};
  std::string experiment;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path = "-";
  std::uint64_t seed = 1;
  std::size_t draws = 500;
  bool self_test = false;

  app.add_option("experiment", experiment, "trajectory | bound-slice | bound-surface | verify");
  app.add_option("--config", config_path, "flat key=value configuration file");
  app.add_option("--set", overrides, "override one key, key=value (repeatable)");
  app.add_option("--out", out_path, "output path, '-' for stdout")->capture_default_str();
  app.add_option("--seed", seed, "seed of the verification ensembles")->capture_default_str();
  app.add_option("--draws", draws, "draws per ensemble property (verify)")->capture_default_str();
  app.add_flag("--self-test", self_test,
               "verify with corrupted (non trace preserving) channels; contractivity must fail");
  CLI11_PARSE(app, argc, argv);

  backflow::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) backflow::apply_config_file(cfg, config_path);
    for (const std::string& assignment : overrides) backflow::apply_override(cfg, assignment);
    if (!experiment.empty()) cfg.experiment = backflow::parse_experiment(experiment);
    cfg.seed = seed;
    cfg.scenario();  // validate before any work
  } catch (const backflow::Error& e) {
    std::cerr << "backflow: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::ostringstream buffer;
    switch (cfg.experiment) {
      case backflow::Experiment::Trajectory:
        backflow::run_trajectory(cfg, buffer);
        break;
      case backflow::Experiment::BoundSlice:
        backflow::run_bound_slice(cfg, buffer);
        break;
      case backflow::Experiment::BoundSurface:
        backflow::run_bound_surface(cfg, buffer);
        break;
      case backflow::Experiment::Verify: {
        backflow::VerifyOptions options;
        options.seed = backflow::RngSeed{cfg.seed};
        options.draws = draws;
        options.grid = cfg.grid;
        options.corrupt_channels = self_test;
        const backflow::VerifyReport report = backflow::run_verify_suites(options);
        write_output(out_path, report.to_json());
        for (const auto& p : report.properties) {
          if (!p.passed) std::cerr << "backflow: property failed: " << p.name << '\n';
        }
        return report.all_passed() ? 0 : kExitVerifyFailed;
      }
    }
    write_output(out_path, buffer.str());
  } catch (const backflow::ConfigError& e) {
    std::cerr << "backflow: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "backflow: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
