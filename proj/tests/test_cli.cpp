#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "backflow/config.hpp"
#include "backflow/error.hpp"
#include "backflow/experiments.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace backflow;
namespace fs = std::filesystem;

namespace {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    REQUIRE(it != header.end());
    return static_cast<std::size_t>(it - header.begin());
  }
  double number(std::size_t row, const std::string& name) const {
    return std::stod(rows[row][column(name)]);
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  Csv csv;
  std::string line;
  std::getline(in, line);
  csv.header = split(line);
  while (std::getline(in, line)) csv.rows.push_back(split(line));
  return csv;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "backflow_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

int run(const std::string& args) {
  const std::string cmd = std::string(BACKFLOW_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
  ExperimentConfig cfg;
  apply_config_text(cfg,
                    "# comment line\n"
                    "model.kind = two-qubit   # trailing comment\n"
                    "\n"
                    "scenario.theta = pi/3\n"
                    "mu_list = exp(-1.5), 0.5,0.9\n"
                    "grid=64\n"
                    "model.pauli_convention=halved\n"
                    "experiment=bound-surface\n");
  CHECK(cfg.model_kind == ModelKind::TwoQubitExchange);
  CHECK(*cfg.theta == doctest::Approx(std::numbers::pi / 3));
  CHECK(cfg.mu_list == std::vector<double>{std::exp(-1.5), 0.5, 0.9});
  CHECK(cfg.grid == 64);
  CHECK(cfg.pauli_convention == PauliConvention::StandardHalved);
  CHECK(cfg.experiment == Experiment::BoundSurface);
  CHECK(cfg.scenario().grid_points == 64);
  CHECK(cfg.scenario().model.omega_s == 0.0);

  CHECK(parse_real("2*pi") == doctest::Approx(2 * std::numbers::pi));
  CHECK(parse_real(" 1e-3 ") == 0.001);
  CHECK_THROWS_AS(parse_real("1.5x"), ConfigError);

  ExperimentConfig other;
  CHECK_THROWS_AS(apply_override(other, "model.unknown=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(other, "grid"), ConfigError);
  CHECK_THROWS_AS(apply_override(other, "grid=-3"), ConfigError);
  CHECK_THROWS_AS(apply_override(other, "mu_list=0.5,1.0"), ConfigError);
  CHECK_THROWS_AS(apply_override(other, "model.kind=spin-boson"), ConfigError);
  CHECK_THROWS_AS(apply_override(other, "experiment=plot"), ConfigError);
  apply_override(other, "scenario.theta=1");  // jc model: rejected when the scenario is built
  CHECK_THROWS_AS(other.scenario(), ConfigError);

  for (const std::string& key : config_keys()) {
    ExperimentConfig probe;
    CHECK_THROWS_AS(apply_setting(probe, key, "not-a-value"), ConfigError);
  }
  CHECK(config_keys().size() == 14);
}

TEST_CASE("number format") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.5e-17) == "-2.4999999999999999e-17");
  CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("trajectory CSV") {
  const fs::path out = scratch("trajectory.csv");
  REQUIRE(run("trajectory --out " + out.string()) == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.header == std::vector<std::string>{
                          "time", "td_system", "td_env", "td_corr_rho", "td_corr_sigma", "tre_system",
                          "tre_env", "tre_corr_rho", "tre_corr_sigma", "sqrt_qjsd_system",
                          "sqrt_qjsd_env", "sqrt_qjsd_corr_rho", "sqrt_qjsd_corr_sigma"});
  CHECK(csv.rows.size() == 200);
  CHECK(csv.number(0, "td_system") == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  for (const std::string& q : {"td", "tre", "sqrt_qjsd"}) {
    for (const std::string& part : {"_env", "_corr_rho", "_corr_sigma"}) CHECK(csv.number(0, q + part) == 0.0);
  }
  for (const auto& row : csv.rows) {
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double v = std::stod(row[c]);
      CHECK(v >= -1e-12);
      CHECK(v <= 1 + 1e-10);
    }
  }
  CHECK(csv.number(199, "time") == doctest::Approx(8.9));
}

TEST_CASE("bound-slice CSV") {
  const fs::path out = scratch("slice.csv");
  REQUIRE(run("bound-slice --set grid=80 --set t_ref=6.0 --set 'mu_list=exp(-1.5),0.5' --out " +
              out.string()) == 0);
  const Csv csv = read_csv(out);
  const std::vector<std::string> labels{"td", "tre(0.22313)", "tre(0.5)", "tre_alt(0.22313)",
                                        "tre_alt(0.5)", "sqrt_qjsd"};
  CHECK(csv.header.size() == 1 + 6 * labels.size());
  // t_ref = 6.0 snaps to grid index round(6.0 / 8.9 * 79) = 53
  CHECK(csv.rows.size() == 54);
  const std::size_t last = csv.rows.size() - 1;
  double max_rhs = 0.0;
  for (const auto& label : labels) {
    CHECK(csv.number(last, label + "_lhs") == 0.0);
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
      CHECK(csv.number(r, label + "_slack") >= -1e-9);
      max_rhs = std::max(max_rhs, csv.number(r, label + "_rhs_total"));
    }
  }
  CHECK(max_rhs > 1.0);

  CHECK(run("bound-slice --set t_ref=9.5 --out " + scratch("bad.csv").string()) == 2);
  CHECK(run("bound-slice --set t_ref=-0.1 --out " + scratch("bad.csv").string()) == 2);
}

TEST_CASE("bound-surface CSV") {
  const fs::path out = scratch("surface.csv");
  REQUIRE(run("bound-surface --set model.kind=two-qubit --set grid=30 --out " + out.string()) == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.header == std::vector<std::string>{"s", "t", "quantifier", "lhs", "rhs_total", "slack"});
  std::map<std::string, std::size_t> counts;
  for (const auto& row : csv.rows) {
    ++counts[row[2]];
    if (row[0] == row[1]) CHECK(std::stod(row[3]) == 0.0);
    CHECK(std::stod(row[5]) >= -1e-9);
  }
  CHECK(counts.size() == 4);
  for (const auto& [label, count] : counts) CHECK(count == 30 * 31 / 2);
}

TEST_CASE("config file and errors") {
  const fs::path cfg = scratch("run.cfg");
  std::ofstream(cfg) << "# two-qubit, short grid\nmodel.kind=two-qubit\ngrid=20\n";
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.csv");
  REQUIRE(run("trajectory --config " + cfg.string() + " --out " + a.string()) == 0);
  REQUIRE(run("trajectory --config " + cfg.string() + " --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(read_csv(a).rows.size() == 20);

  CHECK(run("trajectory --set bogus=1 --out " + a.string()) == 2);
  CHECK(run("trajectory --config /nonexistent/file.cfg --out " + a.string()) == 2);
  CHECK(run("nonsense --out " + a.string()) == 2);
}

TEST_CASE("verify report and negative control") {
  const fs::path report = scratch("verify.json");
  CHECK(run("verify --draws 40 --set grid=24 --out " + report.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(report));
  CHECK(doc["passed"] == true);
  for (const auto& p : doc["properties"]) {
    CHECK(p.contains("name"));
    CHECK(p["count"].get<std::size_t>() > 0);
    CHECK(p["worst_slack"].is_number());
  }

  CHECK(run("verify --self-test --draws 40 --set grid=24 --out " + report.string()) == 1);
  const auto failed = nlohmann::json::parse(slurp(report));
  CHECK(failed["passed"] == false);
  bool contractivity_failed = false;
  for (const auto& p : failed["properties"]) {
    if (p["name"] == "data_processing_td" && p["passed"] == false) contractivity_failed = true;
  }
  CHECK(contractivity_failed);
}
