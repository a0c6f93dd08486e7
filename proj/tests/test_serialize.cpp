#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entwit/serialize.hpp"

using namespace entwit;
using nlohmann::json;

TEST_CASE("thermo point round-trips") {
    const ThermoPoint p{1.5, 0.25, -3.75, 0.5, 0.125, 0.875};
    const ThermoPoint q = json(p).get<ThermoPoint>();
    CHECK(q.temperature == p.temperature);
    CHECK(q.field_b == p.field_b);
    CHECK(q.u == p.u);
    CHECK(q.m == p.m);
    CHECK(q.chi == p.chi);
    CHECK(q.c == p.c);
}

TEST_CASE("witness verdict round-trips with readable enum strings") {
    WitnessVerdict v;
    v.witness_id = WitnessId::susceptibility;
    v.value = 0.25;
    v.bound = 0.5;
    v.margin = 0.25;
    v.verdict = Verdict::entangled;
    const json j = v;
    CHECK(j["witness_id"] == "susceptibility");
    CHECK(j["verdict"] == "entangled");
    const WitnessVerdict w = j.get<WitnessVerdict>();
    CHECK(w.witness_id == v.witness_id);
    CHECK(w.margin == v.margin);
    CHECK(w.verdict == v.verdict);
}

TEST_CASE("phase diagram round-trips cell by cell") {
    PhaseDiagram d;
    d.t_axis = {0.5, 1.0};
    d.b_axis = {0.0};
    d.cells.resize(2);
    d.cells[0].point = ThermoPoint{0.5, 0.0, -3.0, 0.0, 0.1, 0.2};
    d.cells[0].energy = WitnessVerdict{WitnessId::energy, 3.0, 2.0, 1.0, Verdict::entangled};
    d.cells[0].chi = WitnessVerdict{WitnessId::susceptibility, 0.1, 2.6, 2.5, Verdict::entangled};
    d.cells[1] = d.cells[0];
    d.cells[1].point.temperature = 1.0;
    const PhaseDiagram e = json(d).get<PhaseDiagram>();
    CHECK(e.t_axis == d.t_axis);
    CHECK(e.b_axis == d.b_axis);
    REQUIRE(e.cells.size() == 2);
    CHECK(e.cells[1].point.temperature == 1.0);
    CHECK(e.cells[0].energy.margin == 1.0);
}

TEST_CASE("oracle report round-trips") {
    const OracleReport r{3.9999999, 4.0, 1e-7, 1000, 42, 0};
    const OracleReport s = json(r).get<OracleReport>();
    CHECK(s.best_value == r.best_value);
    CHECK(s.bound == r.bound);
    CHECK(s.gap == r.gap);
    CHECK(s.restarts_used == r.restarts_used);
    CHECK(s.seed == r.seed);
}

TEST_CASE("transition report round-trips") {
    bosegas::TransitionReport r;
    r.t_trans = 2.5;
    r.t_crit = 7.5;
    r.t_bec = 0.0;
    r.ratio_infinite = true;
    const bosegas::TransitionReport s = json(r).get<bosegas::TransitionReport>();
    CHECK(s.t_trans == r.t_trans);
    CHECK(s.t_crit == r.t_crit);
    CHECK(s.t_bec == 0.0);
    CHECK(s.ratio_infinite);
}

TEST_CASE("decay classification keeps optional fields straight") {
    DecayClassification c;
    c.decay_class = DecayClass::power_law;
    c.eta = 0.5;
    c.fit_quality = 0.99;
    c.alternating_sign = true;
    const json j = c;
    CHECK(j["decay_class"] == "power_law");
    CHECK_FALSE(j.contains("xi"));
    const DecayClassification d = j.get<DecayClassification>();
    REQUIRE(d.eta.has_value());
    CHECK(*d.eta == 0.5);
    CHECK_FALSE(d.xi.has_value());
    CHECK(d.alternating_sign);

    DecayClassification e;
    e.decay_class = DecayClass::exponential;
    e.xi = 2.0;
    const DecayClassification f = json(e).get<DecayClassification>();
    REQUIRE(f.xi.has_value());
    CHECK_FALSE(f.eta.has_value());
}

TEST_CASE("divergence probe round-trips") {
    bosegas::DivergenceProbe p;
    p.integral_value = 12.5;
    p.divergence_class = bosegas::DivergenceClass::power;
    p.power_exponent = -1.0;
    p.fit_correlation = 0.9999;
    const json j = p;
    CHECK(j["divergence_class"] == "power");
    const bosegas::DivergenceProbe q = j.get<bosegas::DivergenceProbe>();
    REQUIRE(q.power_exponent.has_value());
    CHECK(*q.power_exponent == -1.0);
    CHECK(q.integral_value == p.integral_value);
}
