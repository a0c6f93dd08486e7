#pragma once

#include <json.hpp>

#include "entwit/bosegas.hpp"
#include "entwit/oracle.hpp"
#include "entwit/order.hpp"
#include "entwit/witnesses.hpp"

// JSON bindings for the record types the CLI emits. Keys are
// lower_snake_case; every to_json/from_json pair round-trips losslessly.

namespace entwit {

NLOHMANN_JSON_SERIALIZE_ENUM(WitnessId, {{WitnessId::energy, "energy"},
                                         {WitnessId::susceptibility, "susceptibility"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {{Verdict::entangled, "entangled"},
                                       {Verdict::unknown, "unknown"}})
NLOHMANN_JSON_SERIALIZE_ENUM(DecayClass, {{DecayClass::lro, "lro"},
                                          {DecayClass::power_law, "power_law"},
                                          {DecayClass::exponential, "exponential"},
                                          {DecayClass::inconclusive, "inconclusive"}})

inline void to_json(nlohmann::json& j, const ThermoPoint& p) {
    j = {{"temperature", p.temperature}, {"field_b", p.field_b}, {"u", p.u},
         {"m", p.m},                     {"chi", p.chi},         {"c", p.c}};
}
inline void from_json(const nlohmann::json& j, ThermoPoint& p) {
    j.at("temperature").get_to(p.temperature);
    j.at("field_b").get_to(p.field_b);
    j.at("u").get_to(p.u);
    j.at("m").get_to(p.m);
    j.at("chi").get_to(p.chi);
    j.at("c").get_to(p.c);
}

inline void to_json(nlohmann::json& j, const WitnessVerdict& v) {
    j = {{"witness_id", v.witness_id},
         {"value", v.value},
         {"bound", v.bound},
         {"margin", v.margin},
         {"verdict", v.verdict}};
}
inline void from_json(const nlohmann::json& j, WitnessVerdict& v) {
    j.at("witness_id").get_to(v.witness_id);
    j.at("value").get_to(v.value);
    j.at("bound").get_to(v.bound);
    j.at("margin").get_to(v.margin);
    j.at("verdict").get_to(v.verdict);
}

inline void to_json(nlohmann::json& j, const PhaseCell& c) {
    j = {{"point", c.point}, {"energy", c.energy}, {"chi", c.chi}};
}
inline void from_json(const nlohmann::json& j, PhaseCell& c) {
    j.at("point").get_to(c.point);
    j.at("energy").get_to(c.energy);
    j.at("chi").get_to(c.chi);
}

inline void to_json(nlohmann::json& j, const PhaseDiagram& d) {
    j = {{"t_axis", d.t_axis}, {"b_axis", d.b_axis}, {"cells", d.cells}};
}
inline void from_json(const nlohmann::json& j, PhaseDiagram& d) {
    j.at("t_axis").get_to(d.t_axis);
    j.at("b_axis").get_to(d.b_axis);
    j.at("cells").get_to(d.cells);
}

inline void to_json(nlohmann::json& j, const OracleReport& r) {
    j = {{"best_value", r.best_value},
         {"bound", r.bound},
         {"gap", r.gap},
         {"restarts_used", r.restarts_used},
         {"seed", r.seed},
         {"unconverged_restarts", r.unconverged_restarts}};
}
inline void from_json(const nlohmann::json& j, OracleReport& r) {
    j.at("best_value").get_to(r.best_value);
    j.at("bound").get_to(r.bound);
    j.at("gap").get_to(r.gap);
    j.at("restarts_used").get_to(r.restarts_used);
    j.at("seed").get_to(r.seed);
    j.at("unconverged_restarts").get_to(r.unconverged_restarts);
}

inline void to_json(nlohmann::json& j, const CorrelationSeries& s) {
    j = {{"separations", s.separations}, {"values", s.values}, {"connected", s.connected}};
}
inline void from_json(const nlohmann::json& j, CorrelationSeries& s) {
    j.at("separations").get_to(s.separations);
    j.at("values").get_to(s.values);
    j.at("connected").get_to(s.connected);
}

inline void to_json(nlohmann::json& j, const DecayClassification& c) {
    j = {{"decay_class", c.decay_class},
         {"fit_quality", c.fit_quality},
         {"dropped_zero_values", c.dropped_zero_values},
         {"alternating_sign", c.alternating_sign}};
    if (c.eta) j["eta"] = *c.eta;
    if (c.xi) j["xi"] = *c.xi;
}
inline void from_json(const nlohmann::json& j, DecayClassification& c) {
    j.at("decay_class").get_to(c.decay_class);
    j.at("fit_quality").get_to(c.fit_quality);
    j.at("dropped_zero_values").get_to(c.dropped_zero_values);
    j.at("alternating_sign").get_to(c.alternating_sign);
    c.eta.reset();
    c.xi.reset();
    if (j.contains("eta")) c.eta = j.at("eta").get<double>();
    if (j.contains("xi")) c.xi = j.at("xi").get<double>();
}

namespace bosegas {

inline void to_json(nlohmann::json& j, const TransitionReport& r) {
    j = {{"t_trans", r.t_trans},
         {"t_crit", r.t_crit},
         {"t_bec", r.t_bec},
         {"ratio_crit_over_bec", r.ratio_crit_over_bec},
         {"ratio_infinite", r.ratio_infinite}};
}
inline void from_json(const nlohmann::json& j, TransitionReport& r) {
    j.at("t_trans").get_to(r.t_trans);
    j.at("t_crit").get_to(r.t_crit);
    j.at("t_bec").get_to(r.t_bec);
    j.at("ratio_crit_over_bec").get_to(r.ratio_crit_over_bec);
    j.at("ratio_infinite").get_to(r.ratio_infinite);
}

NLOHMANN_JSON_SERIALIZE_ENUM(DivergenceClass, {{DivergenceClass::power, "power"},
                                               {DivergenceClass::logarithmic, "logarithmic"},
                                               {DivergenceClass::convergent, "convergent"}})

inline void to_json(nlohmann::json& j, const DivergenceProbe& p) {
    j = {{"integral_value", p.integral_value},
         {"divergence_class", p.divergence_class},
         {"fit_correlation", p.fit_correlation}};
    if (p.power_exponent) j["power_exponent"] = *p.power_exponent;
}
inline void from_json(const nlohmann::json& j, DivergenceProbe& p) {
    j.at("integral_value").get_to(p.integral_value);
    j.at("divergence_class").get_to(p.divergence_class);
    j.at("fit_correlation").get_to(p.fit_correlation);
    p.power_exponent.reset();
    if (j.contains("power_exponent")) p.power_exponent = j.at("power_exponent").get<double>();
}

}  // namespace bosegas

}  // namespace entwit
