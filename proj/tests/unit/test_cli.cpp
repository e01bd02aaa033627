#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rumorgame/cli.hpp"
#include "rumorgame/report.hpp"

using namespace rumorgame;
using namespace rumorgame::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("rumorgame_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

RunConfig config(const fs::path& out, double r1 = 1.0, double r2 = 1.0) {
  RunConfig cfg;
  cfg.r1 = r1;
  cfg.r2 = r2;
  cfg.output_dir = out;
  return cfg;
}

std::string message_of(std::string_view text) {
  try {
    parse_run_config(text, "run.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

int run_exe(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + RUMORGAME_EXE + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config defaults and fields") {
  const RunConfig d = parse_run_config("{}", "run.json");
  CHECK(d.r1 == 1.0);
  CHECK(d.p0 == 0.5);
  CHECK(d.payoffs.alpha() == -3.0);
  CHECK(d.integrator.dt == 0.01);
  CHECK(d.integrator.horizon == 200.0);

  const RunConfig c = parse_run_config(R"({
    "r1": 1.6, "r2": 0.7, "p0": 0.4, "q0": 0.2,
    "dt": 0.005, "horizon": 50, "record_stride": 4,
    "payoffs": {"beta": 4},
    "output_dir": "out", "plots": true, "threads": 2,
    "event_levels": {"p": [0.59], "q": []}
  })",
                                       "run.json");
  CHECK(c.r1 == 1.6);
  CHECK(c.q0 == 0.2);
  CHECK(c.integrator.record_stride == 4);
  CHECK(c.payoffs.beta() == 4.0);
  CHECK(c.payoffs.ordering_checked());
  CHECK(c.output_dir == "out");
  CHECK(c.emit_plots);
  CHECK(c.threads == 2);
  CHECK(c.p_levels == std::vector<double>{0.59});
  CHECK(c.q_levels.empty());

  const RunConfig u =
      parse_run_config(R"({"payoffs": {"gamma": 0.7}, "unchecked_payoffs": true})", "run.json");
  CHECK_FALSE(u.payoffs.ordering_checked());
}

TEST_CASE("config errors name the line") {
  CHECK(message_of("{\n  \"r1\": 1,\n  \"p0\": 1.5\n}") == "run.json:3: p0 must lie in [0,1]");
  CHECK(message_of("{\n\n  \"speed\": 2\n}").rfind("run.json:3: unknown configuration key", 0) == 0);
  CHECK(message_of("{\n  \"r1\": 1,\n  \"r2\": \n}").rfind("run.json:4: invalid JSON", 0) == 0);
  CHECK(message_of("{\"r2\": -1}").rfind("run.json:1: r2 must be positive", 0) == 0);
  CHECK(message_of("{\n\"payoffs\": {\"gamma\": 0.7}}").rfind("run.json:2: payoffs must satisfy", 0) ==
        0);
  CHECK(message_of("{\"record_stride\": 1.5}").find("record_stride") != std::string::npos);
  CHECK(message_of("{\"dt\": 1, \"horizon\": 5}").find("horizon") != std::string::npos);
  CHECK(message_of("[1, 2]").find("JSON object") != std::string::npos);
  CHECK_THROWS_AS(load_run_config("/nonexistent/run.json"), ConfigError);
}

TEST_CASE("range specs") {
  const RangeSpec r = parse_range_spec("0.2:3.0:0.2");
  CHECK(r.start == 0.2);
  CHECK(r.stop == 3.0);
  CHECK(r.step == 0.2);
  const RangeSpec one = parse_range_spec("2");
  CHECK(one.start == 2.0);
  CHECK(one.stop == 2.0);
  for (const char* bad : {"", "1:2", "a:b:c", "1:2:0", "2:1:0.1", "-1:2:0.5", "1::0.1", "1:2:0.1:4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_range_spec(bad), ConfigError);
  }
}

TEST_CASE("simulate writes a summary that survives a round trip") {
  TempDir tmp;
  std::ostringstream log;
  RunConfig cfg = config(tmp.path, 1.0, 2.0);
  cfg.emit_plots = true;
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  const json s = load(tmp.path / "summary.json");
  CHECK(s["outcome"]["kind"] == "PureStable");
  CHECK(s["outcome"]["point"] == json::array({0.0, 1.0}));
  CHECK(s["payoff_ordering_checked"] == true);
  CHECK(s["convergence_time"].is_number());
  CHECK(s["events"]["q"][1]["level"] == 0.73);
  CHECK(fs::exists(tmp.path / "timeseries.svg"));
  CHECK(fs::exists(tmp.path / "phase.svg"));
  CHECK(slurp(tmp.path / "phase.svg").rfind("<svg", 0) == 0);

  std::ifstream csv(tmp.path / "trajectory.csv");
  const OutcomeClass again = classify_outcome(read_trajectory_csv(csv));
  CHECK(again == outcome_from_json(s["outcome"]));

  const std::string first = slurp(tmp.path / "summary.json");
  const std::string first_csv = slurp(tmp.path / "trajectory.csv");
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  CHECK(slurp(tmp.path / "summary.json") == first);
  CHECK(slurp(tmp.path / "trajectory.csv") == first_csv);
}

TEST_CASE("simulate outcomes and failures") {
  TempDir tmp;
  std::ostringstream log;
  REQUIRE(cmd_simulate(config(tmp.path), log) == kExitOk);
  CHECK(load(tmp.path / "summary.json")["outcome"]["kind"] == "Oscillation");
  CHECK(load(tmp.path / "summary.json")["convergence_time"].is_null());

  RunConfig bad = config(tmp.path / "never");
  bad.p0 = 1.5;
  CHECK(cmd_simulate(bad, log) == kExitConfig);
  CHECK_FALSE(fs::exists(tmp.path / "never"));

  RunConfig neg = config(tmp.path / "never");
  neg.r2 = 0.0;
  CHECK(cmd_simulate(neg, log) == kExitConfig);
  CHECK_FALSE(fs::exists(tmp.path / "never"));
  CHECK(log.str().find("p0 must lie in [0,1]") != std::string::npos);
}

TEST_CASE("equilibria command") {
  TempDir tmp;
  std::ostringstream log;
  REQUIRE(cmd_equilibria(config(tmp.path), log) == kExitOk);
  const json e = load(tmp.path / "equilibria.json");
  int corners = 0;
  bool interior = false;
  for (const auto& x : e["equilibria"]) {
    if (x["kind"] == "corner") ++corners;
    if (x["kind"] == "interior") {
      interior = std::abs(x["point"][0].get<double>() - 0.375) < 1e-6 &&
                 std::abs(x["point"][1].get<double>() - 5.0 / 12.0) < 1e-6;
      CHECK(x["jacobian"].size() == 4);
    }
  }
  CHECK(corners == 4);
  CHECK(interior);

  REQUIRE(cmd_equilibria(config(tmp.path, 0.6, 1.0), log) == kExitOk);
  bool near = false;
  const json optimistic = load(tmp.path / "equilibria.json");
  for (const auto& x : optimistic["equilibria"]) {
    if (x["kind"] != "interior") continue;
    near = near || (std::abs(x["point"][0].get<double>() - 0.24) < 0.05 &&
                    std::abs(x["point"][1].get<double>() - 0.29) < 0.05);
  }
  CHECK(near);
}

TEST_CASE("sweep command") {
  TempDir tmp;
  std::ostringstream log;
  RunConfig cfg = config(tmp.path);
  cfg.emit_plots = true;
  REQUIRE(cmd_sweep(cfg, "0.5", "2", log) == kExitOk);
  const json s = load(tmp.path / "sweep.json");
  REQUIRE(s["cells"].size() == 1);
  CHECK(s["cells"][0]["regime"]["label"] == "Ideal");
  const std::string csv = slurp(tmp.path / "sweep.csv");
  CHECK(csv.rfind("r1,r2,outcome,detail\n", 0) == 0);
  CHECK(fs::exists(tmp.path / "regimes.svg"));

  CHECK(cmd_sweep(config(tmp.path / "x"), "0.2:3.0", "1", log) == kExitConfig);
  CHECK_FALSE(fs::exists(tmp.path / "x"));

  // Every cell fails with too few samples to classify.
  RunConfig short_run = config(tmp.path);
  short_run.integrator = {0.01, 1.0, 10};
  CHECK(cmd_sweep(short_run, "1:2:1", "1", log) == kExitNumeric);
  CHECK(load(tmp.path / "sweep.json")["cells"][0]["error"].is_string());
}

TEST_CASE("threshold command") {
  TempDir tmp;
  std::ostringstream log;
  REQUIRE(cmd_threshold(config(tmp.path), Axis::R1, 1.0, 1.0, 2.0, 0.01, log) == kExitOk);
  const json t = load(tmp.path / "threshold.json");
  CHECK(t["threshold"].get<double>() >= 1.40);
  CHECK(t["threshold"].get<double>() <= 1.50);
  CHECK_FALSE(t["history"].empty());

  REQUIRE(cmd_threshold(config(tmp.path), Axis::R2, 1.6, 0.3, 1.0, 0.01, log) == kExitOk);
  CHECK(std::abs(load(tmp.path / "threshold.json")["threshold"].get<double>() - 0.7) < 0.1);

  REQUIRE(cmd_threshold(config(tmp.path), Axis::R1, 1.0, 1.5, 2.0, 0.01, log) == kExitOk);
  CHECK(load(tmp.path / "threshold.json")["threshold"].is_null());

  CHECK(cmd_threshold(config(tmp.path), Axis::R1, 1.0, 2.0, 1.0, 0.01, log) == kExitConfig);
}

TEST_CASE("executable exit codes") {
  TempDir tmp;
  const std::string out = " --out " + tmp.path.string();
  CHECK(run_exe("simulate --r1 1 --r2 2" + out) == 0);
  CHECK(run_exe("simulate --p0 1.5" + out) == 2);
  CHECK(run_exe("simulate --frobnicate" + out) == 2);
  CHECK(run_exe("") == 2);
  CHECK(run_exe("sweep --r1-range 1:x:1" + out) == 2);
  CHECK(run_exe("threshold --axis r3" + out) == 2);
  CHECK(run_exe("--help") == 0);

  const fs::path bad = tmp.path / "bad.json";
  std::ofstream(bad) << "{\n  \"p0\": 7\n}\n";
  CHECK(run_exe("simulate --config " + bad.string() + out) == 2);
  const fs::path good = tmp.path / "good.json";
  std::ofstream(good) << "{\"r1\": 1.0, \"r2\": 2.0}\n";
  CHECK(run_exe("equilibria --config " + good.string() + out) == 0);

  const fs::path log = tmp.path / "log.txt";
  CHECK(std::system(("NO_COLOR=1 " + std::string(RUMORGAME_EXE) + " simulate" + out + " > " +
               log.string())
                  .c_str()) == 0);
  CHECK(slurp(log).find('\033') == std::string::npos);
  CHECK(slurp(log).find("Oscillation") != std::string::npos);
}
