#include "rumorgame/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rumorgame/equilibria.hpp"
#include "rumorgame/errors.hpp"
#include "rumorgame/format.hpp"
#include "rumorgame/report.hpp"
#include "rumorgame/svg.hpp"

namespace rumorgame::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key" in the document, 1 if absent.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : line_at(text, pos);
}

class ConfigReader {
 public:
  ConfigReader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  [[noreturn]] void fail(std::string_view key, const std::string& message) const {
    throw ConfigError(std::string(source_) + ":" + std::to_string(line_of_key(text_, key)) + ": " +
                      message);
  }

  double number(const json& j, std::string_view key) const {
    if (!j.is_number()) fail(key, std::string(key) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(key, std::string(key) + " must be finite");
    return v;
  }

  double positive(const json& j, std::string_view key) const {
    const double v = number(j, key);
    if (!(v > 0.0)) fail(key, std::string(key) + " must be positive");
    return v;
  }

  double unit(const json& j, std::string_view key) const {
    const double v = number(j, key);
    if (!(v >= 0.0 && v <= 1.0)) fail(key, std::string(key) + " must lie in [0,1]");
    return v;
  }

  std::vector<double> levels(const json& j, std::string_view key) const {
    if (!j.is_array()) fail(key, std::string(key) + " levels must be an array");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(unit(x, key));
    return out;
  }

 private:
  std::string_view text_;
  std::string_view source_;
};

void status(std::ostream& log, bool ok, const std::string& text) {
  if (colour_enabled()) {
    log << (ok ? "\033[32m" : "\033[31m") << text << "\033[0m\n";
  } else {
    log << text << '\n';
  }
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw ConfigError("cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("output directory " + dir.string() + " is not writable");
  }
}

GameState initial_state(const RunConfig& cfg) { return {cfg.p0, cfg.q0}; }

json event_json(const Trajectory& traj, Coordinate c, const std::vector<double>& levels) {
  json out = json::array();
  for (double level : levels) {
    json crossings = json::array();
    for (const auto& x : event_scan(traj, c, level)) crossings.push_back(to_json(x));
    out.push_back({{"level", json_number(level)}, {"crossings", std::move(crossings)}});
  }
  return out;
}

// Runs `body` and maps the error taxonomy onto exit codes.
template <typename Body>
int guarded(std::ostream& log, const char* command, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    status(log, false, std::string(command) + ": " + e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    status(log, false, std::string(command) + ": configuration error: " + e.what());
    return kExitConfig;
  } catch (const NumericError& e) {
    status(log, false, std::string(command) + ": numeric failure: " + e.what());
    return kExitNumeric;
  }
}

int run_sweep(const RunConfig& cfg, const std::vector<double>& r1s, const std::vector<double>& r2s,
              std::ostream& log, bool tally) {
  prepare_output_dir(cfg.output_dir);
  SweepOptions opts;
  opts.threads = cfg.threads;
  const SweepGrid grid = sweep_grid(r1s, r2s, initial_state(cfg), cfg.payoffs, cfg.integrator, opts);

  std::ostringstream csv;
  write_sweep_csv(csv, grid);
  write_text(cfg.output_dir / "sweep.csv", csv.str());
  write_json(cfg.output_dir / "sweep.json",
             sweep_report(grid, initial_state(cfg), cfg.payoffs, cfg.integrator));
  if (cfg.emit_plots) {
    write_text(cfg.output_dir / "regimes.svg", svg::regime_heatmap(grid, "Regime map"));
  }

  std::size_t ok = 0;
  std::map<std::string, std::size_t> counts;
  for (const auto& cell : grid.cells) {
    if (!cell.outcome) continue;
    ++ok;
    ++counts[to_string(regime_label(cell.r1, cell.r2, *cell.outcome).label)];
  }
  const std::size_t total = grid.cells.size();
  if (tally) {
    for (const auto& [label, n] : counts) log << "  " << label << ": " << n << '\n';
  }
  const bool success = ok * 10 >= total * 9;
  status(log, success,
         "sweep: " + std::to_string(ok) + "/" + std::to_string(total) + " cells classified");
  return success ? kExitOk : kExitNumeric;
}

}  // namespace

bool colour_enabled() {
  const char* no_colour = std::getenv("NO_COLOR");
  if (no_colour != nullptr && no_colour[0] != '\0') return false;
  return ::isatty(STDOUT_FILENO) != 0;
}

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(source) + ":" + std::to_string(line_at(text, e.byte)) +
                      ": invalid JSON: " + e.what());
  }
  const ConfigReader reader(text, source);
  if (!doc.is_object()) reader.fail("", "configuration must be a JSON object");

  RunConfig cfg;
  PayoffValues payoffs;
  bool unchecked = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "payoffs") {
      if (!value.is_object()) reader.fail(key, "payoffs must be an object");
      const std::map<std::string, double*> fields{
          {"alpha", &payoffs.alpha},     {"beta", &payoffs.beta}, {"gamma", &payoffs.gamma},
          {"delta", &payoffs.delta},     {"epsilon", &payoffs.epsilon},
          {"zeta", &payoffs.zeta},       {"eta", &payoffs.eta},   {"theta", &payoffs.theta}};
      for (const auto& [name, v] : value.items()) {
        const auto it = fields.find(name);
        if (it == fields.end()) reader.fail(name, "unknown payoff " + name);
        *it->second = reader.number(v, name);
      }
    } else if (key == "unchecked_payoffs") {
      if (!value.is_boolean()) reader.fail(key, "unchecked_payoffs must be true or false");
      unchecked = value.get<bool>();
    } else if (key == "r1") {
      cfg.r1 = reader.positive(value, key);
    } else if (key == "r2") {
      cfg.r2 = reader.positive(value, key);
    } else if (key == "p0") {
      cfg.p0 = reader.unit(value, key);
    } else if (key == "q0") {
      cfg.q0 = reader.unit(value, key);
    } else if (key == "dt") {
      cfg.integrator.dt = reader.positive(value, key);
    } else if (key == "horizon") {
      cfg.integrator.horizon = reader.positive(value, key);
    } else if (key == "record_stride") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        reader.fail(key, "record_stride must be a positive integer");
      }
      cfg.integrator.record_stride = value.get<int>();
    } else if (key == "output_dir") {
      if (!value.is_string()) reader.fail(key, "output_dir must be a string");
      cfg.output_dir = value.get<std::string>();
    } else if (key == "plots") {
      if (!value.is_boolean()) reader.fail(key, "plots must be true or false");
      cfg.emit_plots = value.get<bool>();
    } else if (key == "threads") {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        reader.fail(key, "threads must be a non-negative integer");
      }
      cfg.threads = value.get<unsigned>();
    } else if (key == "event_levels") {
      if (!value.is_object()) reader.fail(key, "event_levels must be an object");
      for (const auto& [axis, levels] : value.items()) {
        if (axis == "p") {
          cfg.p_levels = reader.levels(levels, axis);
        } else if (axis == "q") {
          cfg.q_levels = reader.levels(levels, axis);
        } else {
          reader.fail(axis, "event_levels accepts only p and q");
        }
      }
    } else {
      reader.fail(key, "unknown configuration key " + key);
    }
  }

  if (unchecked) {
    cfg.payoffs = PayoffMatrix::make_unchecked(payoffs);
  } else if (!satisfies_ordering(payoffs)) {
    reader.fail("payoffs",
                "payoffs must satisfy beta > gamma = delta > alpha and epsilon > theta > eta > "
                "zeta (set unchecked_payoffs to override)");
  } else {
    cfg.payoffs = PayoffMatrix::make(payoffs);
  }
  if (!(cfg.integrator.horizon >= 10.0 * cfg.integrator.dt)) {
    reader.fail("horizon", "horizon must be at least 10 * dt");
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ":1: cannot open configuration file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), path.string());
}

void validate(const RunConfig& cfg) {
  const auto fail = [](const std::string& m) { throw ConfigError("command line: " + m); };
  if (!(cfg.r1 > 0.0) || !std::isfinite(cfg.r1)) fail("r1 must be positive");
  if (!(cfg.r2 > 0.0) || !std::isfinite(cfg.r2)) fail("r2 must be positive");
  if (!(cfg.p0 >= 0.0 && cfg.p0 <= 1.0)) fail("p0 must lie in [0,1]");
  if (!(cfg.q0 >= 0.0 && cfg.q0 <= 1.0)) fail("q0 must lie in [0,1]");
  try {
    validate(cfg.integrator);
  } catch (const DomainError& e) {
    fail(e.what());
  }
  for (const auto* levels : {&cfg.p_levels, &cfg.q_levels}) {
    for (double x : *levels) {
      if (!(x >= 0.0 && x <= 1.0)) fail("event levels must lie in [0,1]");
    }
  }
  if (cfg.output_dir.empty()) fail("output directory must not be empty");
}

RangeSpec parse_range_spec(std::string_view spec) {
  const auto bad = [&] {
    return ConfigError("command line: malformed range '" + std::string(spec) +
                       "', expected start:stop:step with positive values");
  };
  std::vector<double> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = spec.find(':', begin);
    const std::string_view token =
        spec.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) throw bad();
    parts.push_back(v);
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  RangeSpec r;
  if (parts.size() == 1) {
    r = {parts[0], parts[0], 1.0};
  } else if (parts.size() == 3) {
    r = {parts[0], parts[1], parts[2]};
  } else {
    throw bad();
  }
  if (!(r.start > 0.0) || !(r.stop >= r.start) || !(r.step > 0.0) || !std::isfinite(r.stop)) {
    throw bad();
  }
  return r;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, "simulate", [&] {
    validate(cfg);
    const EmotionProfile profile(cfg.r1, cfg.r2);
    // Classify what is written, so re-reading trajectory.csv reproduces the
    // summary exactly.
    const Trajectory traj =
        quantized(integrate(initial_state(cfg), profile, cfg.payoffs, cfg.integrator));
    const OutcomeClass outcome = classify_outcome(traj);

    json summary;
    summary["r1"] = json_number(cfg.r1);
    summary["r2"] = json_number(cfg.r2);
    summary["initial"] = {json_number(cfg.p0), json_number(cfg.q0)};
    summary["payoffs"] = to_json(cfg.payoffs);
    summary["payoff_ordering_checked"] = cfg.payoffs.ordering_checked();
    summary["integrator"] = to_json(cfg.integrator);
    summary["outcome"] = to_json(outcome);
    summary["regime"] = to_json(regime_label(cfg.r1, cfg.r2, outcome));
    const Sample& last = traj.samples.back();
    summary["final_state"] = {json_number(last.p), json_number(last.q)};
    summary["convergence_time"] =
        outcome.convergence_time ? json_number(*outcome.convergence_time) : json(nullptr);
    summary["events"] = {{"p", event_json(traj, Coordinate::P, cfg.p_levels)},
                         {"q", event_json(traj, Coordinate::Q, cfg.q_levels)}};

    prepare_output_dir(cfg.output_dir);
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    write_text(cfg.output_dir / "trajectory.csv", csv.str());
    write_json(cfg.output_dir / "summary.json", summary);
    if (cfg.emit_plots) {
      const std::string title = "r1=" + format_sig9(cfg.r1) + ", r2=" + format_sig9(cfg.r2);
      write_text(cfg.output_dir / "timeseries.svg", svg::timeseries(traj, title));
      write_text(cfg.output_dir / "phase.svg", svg::phase(traj, title));
    }
    status(log, true, std::string("simulate: ") + to_string(outcome.kind) + " " + describe(outcome));
    return kExitOk;
  });
}

int cmd_equilibria(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, "equilibria", [&] {
    validate(cfg);
    const EmotionProfile profile(cfg.r1, cfg.r2);
    const auto eqs = classify_all(profile, cfg.payoffs);
    prepare_output_dir(cfg.output_dir);
    write_json(cfg.output_dir / "equilibria.json", equilibria_report(profile, cfg.payoffs, eqs));
    for (const auto& e : eqs) {
      log << "  (" << format_sig9(e.point.p) << ", " << format_sig9(e.point.q)
          << "): " << to_string(e.stability) << '\n';
    }
    status(log, true, "equilibria: " + std::to_string(eqs.size()) + " points");
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& cfg, std::string_view r1_spec, std::string_view r2_spec,
              std::ostream& log) {
  return guarded(log, "sweep", [&] {
    validate(cfg);
    const RangeSpec a = parse_range_spec(r1_spec);
    const RangeSpec b = parse_range_spec(r2_spec);
    return run_sweep(cfg, range_values(a.start, a.stop, a.step),
                     range_values(b.start, b.stop, b.step), log, false);
  });
}

int cmd_regimes(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, "regimes", [&] {
    validate(cfg);
    const auto values = range_values(0.2, 3.0, 0.2);
    return run_sweep(cfg, values, values, log, true);
  });
}

int cmd_threshold(const RunConfig& cfg, Axis axis, double fixed_other, double lo, double hi,
                  double tol, std::ostream& log) {
  return guarded(log, "threshold", [&] {
    validate(cfg);
    if (!(fixed_other > 0.0)) throw ConfigError("command line: fixed index must be positive");
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("command line: bracket must satisfy 0 < lo < hi");
    if (!(tol > 0.0)) throw ConfigError("command line: tolerance must be positive");
    const ThresholdReport report =
        find_threshold(axis, fixed_other, lo, hi, initial_state(cfg), cfg.payoffs, cfg.integrator, tol);
    prepare_output_dir(cfg.output_dir);
    write_json(cfg.output_dir / "threshold.json",
               threshold_report(report, initial_state(cfg), cfg.payoffs, cfg.integrator));
    status(log, true,
           std::string("threshold: ") +
               (report.threshold ? to_string(axis) + std::string(" = ") + format_sig9(*report.threshold)
                                 : std::string("none (same outcome at both ends)")));
    return kExitOk;
  });
}

}  // namespace rumorgame::cli
