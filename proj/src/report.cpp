#include "graphon_ldp/report.hpp"

#include <cmath>

#include "graphon_ldp/io.hpp"

namespace gldp {

using nlohmann::json;

json json_number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

json pair_json(const std::optional<std::pair<double, double>>& p) {
  if (!p) return nullptr;
  return json::array({json_number(p->first), json_number(p->second)});
}

json numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(json_number(x));
  return out;
}

}  // namespace

json to_json(const PsiProfile& profile) {
  return {{"p", profile.p()},
          {"d", profile.d()},
          {"p0", json_number(p_zero(profile.d()))},
          {"convexity", to_string(profile.convexity())},
          {"inflection", pair_json(profile.inflection())},
          {"window", pair_json(profile.window())},
          {"slope", profile.window() ? json_number(profile.slope()) : json(nullptr)},
          {"intercept", profile.window() ? json_number(profile.intercept()) : json(nullptr)},
          {"window_method", profile.window() ? json(profile.window_method()) : json(nullptr)}};
}

json to_json(const VariationalSolution& s) {
  return {{"optimizer", graphon_to_json(s.optimizer)},
          {"objective", json_number(s.objective)},
          {"target", json_number(s.target)},
          {"constraint", s.constraint},
          {"residual", json_number(s.residual)},
          {"regime", to_string(s.regime)},
          {"lower", json_number(s.lower)},
          {"upper", json_number(s.upper)},
          {"infeasible", s.infeasible},
          {"base_density", json_number(s.base_density)},
          {"max_density", json_number(s.max_density)},
          {"multiplier", json_number(s.multiplier)},
          {"restarts", s.restarts},
          {"restart_spread", json_number(s.restart_spread)}};
}

json to_json(const PhiBracket& b) {
  return {{"lower", json_number(b.lower)},
          {"upper", json_number(b.upper)},
          {"regime", to_string(b.regime)},
          {"witness_entropy", b.witness_entropy ? json_number(*b.witness_entropy) : json(nullptr)},
          {"symmetric", to_json(b.symmetric)}};
}

json to_json(const Witness& w) {
  json trials = json::array();
  for (const auto& t : w.trials)
    trials.push_back({{"epsilon", json_number(t.epsilon)},
                      {"constraint_gap", json_number(t.constraint_gap)},
                      {"entropy_gap", json_number(t.entropy_gap)},
                      {"standard_grid", t.standard_grid},
                      {"accepted", t.accepted}});
  json out{{"kind", to_string(w.kind)},
           {"valid", w.valid},
           {"graphon", graphon_to_json(w.graphon)},
           {"target_witness", json_number(w.target_witness)},
           {"target_symmetric", json_number(w.target_symmetric)},
           {"entropy_witness", json_number(w.entropy_witness)},
           {"entropy_symmetric", json_number(w.entropy_symmetric)},
           {"constraint_margin", json_number(w.constraint_margin)},
           {"entropy_margin", json_number(w.entropy_margin)}};
  if (w.kind == WitnessKind::GEps) {
    out["epsilon"] = json_number(w.epsilon);
    out["r"] = json_number(w.r);
    out["r1"] = json_number(w.r1);
    out["r2"] = json_number(w.r2);
    out["s"] = json_number(w.s);
    out["found_on_standard_grid"] = w.found_on_standard_grid;
    out["predicted_coefficient"] = json_number(w.predicted_coefficient);
    out["observed_coefficients"] = numbers(w.observed_coefficients);
    out["trials"] = std::move(trials);
  } else {
    out["limit_ratio_witness"] = json_number(w.limit_ratio_witness);
    out["limit_ratio_symmetric"] = json_number(w.limit_ratio_symmetric);
  }
  return out;
}

json to_json(const TailEstimate& e) {
  return {{"target", json_number(e.target)},
          {"kn", e.kn},
          {"samples", e.samples},
          {"p_hat", json_number(e.p_hat)},
          {"wilson_interval", json::array({json_number(e.wilson_lower), json_number(e.wilson_upper)})},
          {"sigma", json_number(e.sigma)},
          {"rate", json_number(e.rate)},
          {"rate_lower_bound", json_number(e.rate_lower)},
          {"mode", to_string(e.mode)}};
}

json to_json(const ConcentrationSummary& c) {
  return {{"target", json_number(c.target)},
          {"kn", c.kn},
          {"samples", c.samples},
          {"accepted", c.accepted},
          {"acceptance_rate", json_number(c.acceptance_rate)},
          {"mean", json_number(c.mean)},
          {"median", json_number(c.median)},
          {"q10", json_number(c.q10)},
          {"q90", json_number(c.q90)},
          {"min", json_number(c.min)},
          {"max", json_number(c.max)}};
}

json to_json(const RelevantSet& r) {
  json pairs = json::array();
  for (auto [a, b] : r.pairs) pairs.push_back(json::array({a + 1, b + 1}));
  return {{"blocks", r.m}, {"relevant", std::move(pairs)}};
}

}  // namespace gldp
