#pragma once

// JSON and CSV renderings of results. Every floating-point value is rounded to
// 9 significant digits; non-finite values become null.

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "rumorgame/dynamics.hpp"
#include "rumorgame/equilibria.hpp"
#include "rumorgame/sweep.hpp"

namespace rumorgame {

nlohmann::json json_number(double x);

nlohmann::json to_json(const PayoffMatrix& m);
nlohmann::json to_json(const IntegratorConfig& cfg);
nlohmann::json to_json(const OutcomeClass& o);
nlohmann::json to_json(const Equilibrium& e);
nlohmann::json to_json(const RegimeLabel& r);
nlohmann::json to_json(const Crossing& c);

nlohmann::json equilibria_report(const EmotionProfile& profile, const PayoffMatrix& m,
                                 const std::vector<Equilibrium>& equilibria);

nlohmann::json sweep_report(const SweepGrid& grid, const GameState& initial,
                            const PayoffMatrix& m, const IntegratorConfig& cfg);

// Header r1,r2,outcome,detail. detail is double-quoted and carries the outcome description and the
// regime label, or the error message for failed cells.
void write_sweep_csv(std::ostream& out, const SweepGrid& grid);

nlohmann::json threshold_report(const ThresholdReport& report, const GameState& initial,
                                const PayoffMatrix& m, const IntegratorConfig& cfg);

// Parses an outcome object produced by to_json(OutcomeClass).
OutcomeClass outcome_from_json(const nlohmann::json& j);

}  // namespace rumorgame
