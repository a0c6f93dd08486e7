#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entwit/order.hpp"
#include "helpers.hpp"

using namespace entwit;
using namespace entwit::testing;

namespace {

CorrelationSeries synthetic(const std::vector<int>& rs, double (*f)(int)) {
    CorrelationSeries s;
    s.separations = rs;
    for (int r : rs) s.values.push_back(f(r));
    return s;
}

const std::vector<int> r_1_to_10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

}  // namespace

TEST_CASE("correlator values") {
    SUBCASE("dimer full-dot matches the closed-form Gibbs average at k_B T = 1") {
        const auto ops = build(ChainSpec{2, ChainModel::xxx, 1.0, 0, 0, 0.0, Boundary::open});
        const double expected = (-3.0 * std::exp(3.0) + 3.0 * std::exp(-1.0)) /
                                (std::exp(3.0) + 3.0 * std::exp(-1.0));
        CHECK(correlator(ops, 1.0, CorrelatorKind::full_dot, 0, 1, false) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("connected correlations vanish in the maximally mixed regime") {
        const auto ops = build(ChainSpec{4, ChainModel::xxx, 1.0, 0, 0, 0.0, Boundary::open});
        CHECK(std::abs(correlator(ops, 1e9, CorrelatorKind::zz, 0, 2, true)) < 1e-9);
    }
    SUBCASE("polarized ground state has zz = +1 between any sites") {
        // huge field: the thermal state is |00...0>
        const auto ops = build(ChainSpec{4, ChainModel::xxx, 1.0, 0, 0, 50.0, Boundary::open});
        CHECK(correlator(ops, 0.1, CorrelatorKind::zz, 0, 3, false) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("Neel neighbors anticorrelate exactly") {
        cvector zero = cvector::Zero(2), one = cvector::Zero(2);
        zero(0) = 1.0;
        one(1) = 1.0;
        const cvector neel = kron_vec(kron_vec(zero, one), kron_vec(zero, one));
        const auto rho = pure_state(neel);
        const cmatrix zz = embed_local(HermitianOperator{pauli_z()}, 0, 4).matrix() *
                           embed_local(HermitianOperator{pauli_z()}, 1, 4).matrix();
        CHECK(expectation(rho, HermitianOperator{zz}) == doctest::Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("agrees with the dense density-matrix route") {
        const auto ops = build(ChainSpec{5, ChainModel::xx, 0.9, 0, 0, 0.4, Boundary::periodic});
        const auto rho = thermal_state(eigh(ops.h_total), 0.9);
        const int n = 5;
        for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {1, 4}, {2, 3}}) {
            const cmatrix zz = embed_local(HermitianOperator{pauli_z()}, i, n).matrix() *
                               embed_local(HermitianOperator{pauli_z()}, j, n).matrix();
            const double dense = expectation(rho, HermitianOperator{zz});
            CHECK(correlator(ops, 0.9, CorrelatorKind::zz, i, j, false) ==
                  doctest::Approx(dense).epsilon(1e-10));
            cmatrix dot = cmatrix::Zero(32, 32);
            for (const cmatrix& p : {pauli_x(), pauli_y(), pauli_z()})
                dot += embed_local(HermitianOperator{p}, i, n).matrix() *
                       embed_local(HermitianOperator{p}, j, n).matrix();
            const double dense_dot = expectation(rho, HermitianOperator{dot});
            CHECK(correlator(ops, 0.9, CorrelatorKind::full_dot, i, j, false) ==
                  doctest::Approx(dense_dot).epsilon(1e-10));
        }
    }
    SUBCASE("site order does not matter") {
        const auto ops = build(ChainSpec{4, ChainModel::xxx, 1.0, 0, 0, 0.3, Boundary::open});
        CHECK(correlator(ops, 0.7, CorrelatorKind::full_dot, 0, 2, false) ==
              correlator(ops, 0.7, CorrelatorKind::full_dot, 2, 0, false));
    }
    SUBCASE("ring correlations depend on the separation only") {
        const int n = 6;
        const auto ops = build(ChainSpec{n, ChainModel::xxx, 1.0, 0, 0, 0.0, Boundary::periodic});
        const GibbsEvaluator ev(ops);
        for (int r : {1, 2, 3}) {
            const double ref = correlator(ops, 1.0, CorrelatorKind::zz, 0, r, false);
            for (int i = 1; i < n; ++i) {
                const double c = correlator(ops, 1.0, CorrelatorKind::zz, i, (i + r) % n, false);
                CHECK(c == doctest::Approx(ref).epsilon(1e-9));
            }
        }
    }
    SUBCASE("zz correlations never exceed 1 in magnitude") {
        const auto ops = build(ChainSpec{4, ChainModel::xx, 1.3, 0, 0, 0.8, Boundary::periodic});
        for (double t : {0.2, 1.0, 9.0})
            for (int j = 1; j < 4; ++j)
                CHECK(std::abs(correlator(ops, t, CorrelatorKind::zz, 0, j, false)) <= 1.0 + 1e-12);
    }
    SUBCASE("bad arguments") {
        const auto ops = build(ChainSpec{4, ChainModel::xxx, 1.0});
        CHECK_THROWS_AS(correlator(ops, 1.0, CorrelatorKind::zz, 2, 2, false),
                        std::invalid_argument);
        CHECK_THROWS_AS(correlator(ops, 1.0, CorrelatorKind::full_dot, 0, 1, true),
                        std::invalid_argument);
        CHECK_THROWS_AS(correlator(ops, 1.0, CorrelatorKind::zz, 0, 7, false),
                        std::invalid_argument);
    }
}

TEST_CASE("classify_decay on planted series") {
    SUBCASE("constant series is long-range order") {
        const auto c = classify_decay(synthetic(r_1_to_10, [](int) { return 0.7; }));
        CHECK(c.decay_class == DecayClass::lro);
        CHECK_FALSE(c.eta.has_value());
        CHECK_FALSE(c.xi.has_value());
        CHECK(c.fit_quality > 0.99);
    }
    SUBCASE("r^-0.5 is quasi order with eta = 0.5") {
        const auto c = classify_decay(
            synthetic(r_1_to_10, [](int r) { return std::pow(r, -0.5); }));
        CHECK(c.decay_class == DecayClass::power_law);
        REQUIRE(c.eta.has_value());
        CHECK(std::abs(*c.eta - 0.5) < 0.01);
    }
    SUBCASE("e^{-r/2} is exponential with xi = 2") {
        const auto c = classify_decay(
            synthetic(r_1_to_10, [](int r) { return std::exp(-r / 2.0); }));
        CHECK(c.decay_class == DecayClass::exponential);
        REQUIRE(c.xi.has_value());
        CHECK(std::abs(*c.xi - 2.0) < 0.04);
    }
    SUBCASE("a Neel sign pattern is factored out and recorded") {
        const auto c = classify_decay(synthetic(
            r_1_to_10, [](int r) { return (r % 2 ? -1.0 : 1.0) * std::pow(r, -0.5); }));
        CHECK(c.decay_class == DecayClass::power_law);
        CHECK(c.alternating_sign);
        CHECK(std::abs(*c.eta - 0.5) < 0.01);
    }
    SUBCASE("zeros are dropped and reported") {
        CorrelationSeries s = synthetic(r_1_to_10, [](int r) { return std::exp(-r / 2.0); });
        s.values[3] = 0.0;
        const auto c = classify_decay(s);
        CHECK(c.dropped_zero_values == 1);
        CHECK(c.decay_class == DecayClass::exponential);
    }
    SUBCASE("a clean power law is resolved even on a narrow far window") {
        CorrelationSeries s;
        for (int r = 100; r <= 104; ++r) {
            s.separations.push_back(r);
            s.values.push_back(std::pow(r, -1.0));
        }
        CHECK(classify_decay(s).decay_class == DecayClass::power_law);
    }
    SUBCASE("scatter that dominates both decay fits is inconclusive") {
        // 1% alternating perturbation on a narrow window: power and
        // exponential residuals tie, so neither may be claimed
        CorrelationSeries s;
        for (int r = 100; r <= 104; ++r) {
            s.separations.push_back(r);
            s.values.push_back((1.0 + 0.01 * (r % 2 ? 1.0 : -1.0)) / r);
        }
        CHECK(classify_decay(s).decay_class == DecayClass::inconclusive);
    }
    SUBCASE("input validation") {
        CorrelationSeries s = synthetic({1, 2, 3, 4}, [](int r) { return 1.0 / r; });
        CHECK_THROWS_AS(classify_decay(s), std::invalid_argument);
        CorrelationSeries zeros = synthetic(r_1_to_10, [](int) { return 0.0; });
        CHECK_THROWS_AS(classify_decay(zeros), std::invalid_argument);
    }
}

TEST_CASE("hot XXX ring of 12: short-range exponential disorder") {
    const auto ops = build(ChainSpec{12, ChainModel::xxx, 1.0, 0, 0, 0.0, Boundary::periodic});
    const auto series =
        correlation_series(ops, 10.0, CorrelatorKind::zz, {1, 2, 3, 4, 5, 6}, true);
    const auto c = classify_decay(series);
    CHECK(c.decay_class == DecayClass::exponential);
    REQUIRE(c.xi.has_value());
    CHECK(*c.xi < 1.0);
    CHECK(c.alternating_sign);
}
