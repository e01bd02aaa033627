#include "rumorgame/report.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "rumorgame/format.hpp"

namespace rumorgame {

using nlohmann::json;

namespace {

json pair_json(double a, double b) { return json::array({json_number(a), json_number(b)}); }

json band_json(const Band& b) { return pair_json(b.lo, b.hi); }

json outcome_key_json(const OutcomeKey& k) { return to_string(k); }

}  // namespace

json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig9(x);
}

json to_json(const PayoffMatrix& m) {
  const PayoffValues& v = m.values();
  return {{"alpha", json_number(v.alpha)}, {"beta", json_number(v.beta)},
          {"gamma", json_number(v.gamma)}, {"delta", json_number(v.delta)},
          {"epsilon", json_number(v.epsilon)}, {"zeta", json_number(v.zeta)},
          {"eta", json_number(v.eta)}, {"theta", json_number(v.theta)}};
}

json to_json(const IntegratorConfig& cfg) {
  return {{"dt", json_number(cfg.dt)},
          {"horizon", json_number(cfg.horizon)},
          {"record_stride", cfg.record_stride}};
}

json to_json(const OutcomeClass& o) {
  json j;
  j["kind"] = to_string(o.kind);
  j["corner"] = o.kind == OutcomeKind::PureStable ? json(o.corner) : json(nullptr);
  const bool has_point = o.kind == OutcomeKind::PureStable || o.kind == OutcomeKind::HybridStable;
  j["point"] = has_point ? pair_json(o.point.p, o.point.q) : json(nullptr);
  const bool has_bands = o.kind == OutcomeKind::Oscillation;
  j["p_band"] = has_bands ? band_json(o.p_band) : json(nullptr);
  j["q_band"] = has_bands ? band_json(o.q_band) : json(nullptr);
  j["convergence_time"] = o.convergence_time ? json_number(*o.convergence_time) : json(nullptr);
  j["description"] = describe(o);
  return j;
}

OutcomeClass outcome_from_json(const json& j) {
  OutcomeClass o;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "PureStable") {
    o.kind = OutcomeKind::PureStable;
  } else if (kind == "HybridStable") {
    o.kind = OutcomeKind::HybridStable;
  } else if (kind == "Oscillation") {
    o.kind = OutcomeKind::Oscillation;
  } else {
    o.kind = OutcomeKind::NonConvergent;
  }
  if (!j.at("corner").is_null()) o.corner = j["corner"].get<int>();
  if (!j.at("point").is_null()) o.point = {j["point"][0].get<double>(), j["point"][1].get<double>()};
  if (!j.at("p_band").is_null()) o.p_band = {j["p_band"][0].get<double>(), j["p_band"][1].get<double>()};
  if (!j.at("q_band").is_null()) o.q_band = {j["q_band"][0].get<double>(), j["q_band"][1].get<double>()};
  if (!j.at("convergence_time").is_null()) o.convergence_time = j["convergence_time"].get<double>();
  return o;
}

json to_json(const Equilibrium& e) {
  json j;
  j["label"] = e.kind == EquilibriumKind::Corner ? "E" + std::to_string(e.corner) : "interior";
  j["kind"] = e.kind == EquilibriumKind::Corner ? "corner" : "interior";
  j["point"] = pair_json(e.point.p, e.point.q);
  j["jacobian"] = json::array({json_number(e.jacobian[0][0]), json_number(e.jacobian[0][1]),
                               json_number(e.jacobian[1][0]), json_number(e.jacobian[1][1])});
  j["det"] = json_number(e.det);
  j["trace"] = json_number(e.trace);
  j["stability"] = to_string(e.stability);
  j["note"] = e.note.empty() ? json(nullptr) : json(e.note);
  return j;
}

json to_json(const RegimeLabel& r) {
  return {{"label", to_string(r.label)},
          {"basis", r.basis},
          {"note", r.note.empty() ? json(nullptr) : json(r.note)}};
}

json to_json(const Crossing& c) {
  return {{"t", json_number(c.t)}, {"direction", to_string(c.direction)}, {"index", c.index}};
}

json equilibria_report(const EmotionProfile& profile, const PayoffMatrix& m,
                       const std::vector<Equilibrium>& equilibria) {
  json j;
  j["r1"] = json_number(profile.netizen.value());
  j["r2"] = json_number(profile.government.value());
  j["payoffs"] = to_json(m);
  j["payoff_ordering_checked"] = m.ordering_checked();
  j["equilibria"] = json::array();
  for (const auto& e : equilibria) j["equilibria"].push_back(to_json(e));
  return j;
}

json sweep_report(const SweepGrid& grid, const GameState& initial, const PayoffMatrix& m,
                  const IntegratorConfig& cfg) {
  json j;
  j["initial"] = pair_json(initial.p, initial.q);
  j["payoffs"] = to_json(m);
  j["payoff_ordering_checked"] = m.ordering_checked();
  j["integrator"] = to_json(cfg);
  j["r1_values"] = json::array();
  for (double r : grid.r1_values) j["r1_values"].push_back(json_number(r));
  j["r2_values"] = json::array();
  for (double r : grid.r2_values) j["r2_values"].push_back(json_number(r));
  j["cells"] = json::array();
  for (const auto& cell : grid.cells) {
    json c;
    c["r1"] = json_number(cell.r1);
    c["r2"] = json_number(cell.r2);
    if (cell.outcome) {
      c["outcome"] = to_json(*cell.outcome);
      c["regime"] = to_json(regime_label(cell.r1, cell.r2, *cell.outcome));
      c["error"] = nullptr;
    } else {
      c["outcome"] = nullptr;
      c["regime"] = nullptr;
      c["error"] = cell.error;
    }
    j["cells"].push_back(std::move(c));
  }
  return j;
}

void write_sweep_csv(std::ostream& out, const SweepGrid& grid) {
  out << "r1,r2,outcome,detail\n";
  for (const auto& cell : grid.cells) {
    out << format_sig9(cell.r1) << ',' << format_sig9(cell.r2) << ',';
    if (cell.outcome) {
      const RegimeLabel label = regime_label(cell.r1, cell.r2, *cell.outcome);
      out << to_string(cell.outcome->kind) << ",\"" << describe(*cell.outcome) << "; regime "
          << to_string(label.label) << "\"\n";
    } else {
      std::string msg = cell.error;
      for (char& ch : msg) {
        if (ch == '"' || ch == '\n') ch = '\'';
      }
      out << "Error,\"" << msg << "\"\n";
    }
  }
}

json threshold_report(const ThresholdReport& report, const GameState& initial,
                      const PayoffMatrix& m, const IntegratorConfig& cfg) {
  json j;
  j["axis"] = to_string(report.axis);
  j["fixed_other"] = json_number(report.fixed_other);
  j["bracket"] = pair_json(report.lo, report.hi);
  j["tol"] = json_number(report.tol);
  j["initial"] = pair_json(initial.p, initial.q);
  j["payoffs"] = to_json(m);
  j["payoff_ordering_checked"] = m.ordering_checked();
  j["integrator"] = to_json(cfg);
  j["outcome_at_lo"] = to_json(report.at_lo);
  j["outcome_at_hi"] = to_json(report.at_hi);
  j["threshold"] = report.threshold ? json_number(*report.threshold) : json(nullptr);
  j["history"] = json::array();
  for (const auto& step : report.history) {
    j["history"].push_back({{"lo", json_number(step.lo)},
                            {"hi", json_number(step.hi)},
                            {"mid", json_number(step.mid)},
                            {"mid_outcome", outcome_key_json(step.mid_key)}});
  }
  return j;
}

}  // namespace rumorgame
