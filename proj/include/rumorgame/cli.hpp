#pragma once

// Subcommand implementations behind the rumorgame executable. Each returns a
// process exit status and writes its files into RunConfig::output_dir.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rumorgame/dynamics.hpp"
#include "rumorgame/sweep.hpp"

namespace rumorgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

// Message already carries its location, e.g. "run.json:7: p0 must lie in [0,1]".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  PayoffMatrix payoffs;
  double r1 = 1.0;
  double r2 = 1.0;
  double p0 = 0.5;
  double q0 = 0.5;
  IntegratorConfig integrator;
  std::filesystem::path output_dir = ".";
  bool emit_plots = false;
  std::vector<double> p_levels{0.38, 0.59};
  std::vector<double> q_levels{0.41, 0.73};
  unsigned threads = 0;
};

// Parses a JSON config document. Every field is optional; unknown keys and
// invalid values raise ConfigError naming `source` and the offending line.
RunConfig parse_run_config(std::string_view text, std::string_view source);
RunConfig load_run_config(const std::filesystem::path& path);

// Checks the assembled configuration (after command-line overrides).
void validate(const RunConfig& cfg);

struct RangeSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

// "start:stop:step" with positive values; a bare number is a one-value range.
RangeSpec parse_range_spec(std::string_view spec);

int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_equilibria(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::string_view r1_spec, std::string_view r2_spec,
              std::ostream& log);
int cmd_threshold(const RunConfig& cfg, Axis axis, double fixed_other, double lo, double hi,
                  double tol, std::ostream& log);
// The default 0.2..3.0 grid on both axes, with a regime tally on the log.
int cmd_regimes(const RunConfig& cfg, std::ostream& log);

// Colour escapes are suppressed when NO_COLOR is set or stdout is not a
// terminal.
bool colour_enabled();

}  // namespace rumorgame::cli
