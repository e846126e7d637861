#include <vector>

#include "doctest.h"
#include "realopt/dcf.hpp"
#include "realopt/reference_oracle.hpp"
#include "support/fixtures.hpp"

using namespace realopt;
using namespace realopt::testing;

// Switching-option V0 from an independent spreadsheet-style recursion of the
// rollback equations (Python, full double precision).
constexpr double kSwitchingV0 = 5673.900462962964;

TEST_CASE("present_value") {
    const std::vector<double> flows{2000, 2400, 2600, 3500};
    // 2000/1.2 + 2400/1.44 + 2600/1.728 + 3500/2.0736
    CHECK(std::abs(present_value(flows, 0.20) - 6525.85) <= 0.01);
    CHECK(std::abs(present_value(flows, 0.20) - 6525.8487654321) < 1e-9);
    CHECK(present_value(std::vector<double>{0, 0, 0}, 0.2) == 0.0);
    CHECK(present_value(std::vector<double>{1200}, 0.2) == doctest::Approx(1000));
    CHECK(present_value(std::vector<double>{}, 0.2) == 0.0);
    CHECK_THROWS_AS(present_value(flows, -1.0), Error);
}

TEST_CASE("two_scenario_value") {
    const auto r = two_scenario_value(base_project());
    CHECK(std::abs(r.v0 - 4955) <= 1);
    CHECK(std::abs(r.npv - -45) <= 1);
    CHECK(r.npv == r.v0 - 5000);
    CHECK(std::abs(r.time1_values[0] - 7831) <= 1);
    CHECK(std::abs(r.time1_values[1] - 4060) <= 1);

    SUBCASE("time-1 form agrees with the direct expectation") {
        auto p = base_project();
        double v0 = 0;
        for (int i = 0; i < 2; ++i) {
            const auto& f = p.scenarios[i].flows;
            const double v1 = present_value(std::vector<double>(f.begin() + 1, f.end()), p.rate);
            v0 += p.scenarios[i].p * (v1 + f[0]);
        }
        CHECK(v0 / 1.2 == doctest::Approx(r.v0).epsilon(1e-12));
    }
    SUBCASE("identical scenarios ignore p") {
        auto p = base_project();
        p.scenarios[1].flows = p.scenarios[0].flows;
        p.scenarios[0].p = 0.9;
        p.scenarios[1].p = 0.1;
        CHECK(two_scenario_value(p).v0 == doctest::Approx(present_value(p.scenarios[0].flows, 0.2)));
    }
    SUBCASE("p = 1 takes scenario 1") {
        auto p = base_project();
        p.scenarios[0].p = 1.0;
        p.scenarios[1].p = 0.0;
        CHECK(two_scenario_value(p).v0 == doctest::Approx(present_value(p.scenarios[0].flows, 0.2)));
    }
}

TEST_CASE("rollback worked examples") {
    SUBCASE("reduction option") {
        const auto r = rollback(reduction_tree());
        CHECK(std::abs(r.v0 - 5168) <= 1);
        CHECK(std::abs(r.npv - 168) <= 1);
        CHECK(std::abs(r.v1[0] - 7831) <= 1);
        CHECK(std::abs(r.v1[1] - 4572) <= 1);
        CHECK(r.npv == r.v0 - 5000);
    }
    SUBCASE("switching option") {
        const auto r = rollback(switching_tree());
        CHECK(r.v0 == doctest::Approx(kSwitchingV0).epsilon(1e-12));
        CHECK(std::abs(r.continuation(1, 0, 0) - 5583) <= 1);
        CHECK(std::abs(r.continuation(1, 1, 0) - 4264) <= 1);
        CHECK(r.v3[1][0][0] == doctest::Approx(6700));
        CHECK(r.v3[1][1][0] == doctest::Approx(5116.6666666667));
    }
    SUBCASE("all-zero tree") {
        auto t = reduction_tree();
        for (auto& b1 : t.stage1) {
            b1.flow = 0.0;
            b1.control.delta = 0.0;
            for (auto& b2 : b1.outcomes) {
                b2.flow = 0.0;
                b2.control.delta = 0.0;
                for (auto& b3 : b2.outcomes)
                    for (auto& f : b3.flows) f = 0.0;
            }
        }
        CHECK(rollback(t).v0 == 0.0);
        CHECK(closed_form_value(t) == 0.0);
    }
    SUBCASE("random distributions need an explicit projection") {
        auto t = reduction_tree();
        t.stage1[0].flow = CashFlowDist::gaussian(2000, 200);
        CHECK_THROWS_AS(rollback(t), Error);
        CHECK_THROWS_AS(closed_form_value(t), Error);
        CHECK(rollback(t, Projection::means).v0 == doctest::Approx(rollback(reduction_tree()).v0));
        t.stage1[0].flow = CashFlowDist::gaussian(2000, 0);
        CHECK_NOTHROW(rollback(t));
    }
    SUBCASE("invalid tree rejected") {
        auto t = reduction_tree();
        t.horizon = 5;
        CHECK_THROWS_AS(rollback(t), InvalidModel);
    }
}

TEST_CASE("closed form") {
    CHECK(std::abs(closed_form_value(reduction_tree()) - 5168) <= 1);
    CHECK(closed_form_value(switching_tree()) == doctest::Approx(kSwitchingV0).epsilon(1e-12));
}

TEST_CASE("option_value") {
    CHECK(option_value(168, -45) == 213);
    CHECK(option_value(364, -45) == 409);
    CHECK(option_value(12.5, 12.5) == 0);
    const double with = rollback(reduction_tree()).npv;
    const double without = two_scenario_value(base_project()).npv;
    CHECK(std::abs(option_value(with, without) - 213) <= 2);
}

TEST_CASE("closed form, rollback and enumeration agree on random trees") {
    RandomTrees gen(1);
    for (int n = 0; n < 1000; ++n) {
        const auto t = gen.next();
        const double roll = rollback(t).v0;
        const double closed = closed_form_value(t);
        const double enumerated = enumerate_value(t);
        REQUIRE(close_rel(roll, closed, 1e-9));
        REQUIRE(close_rel(roll, enumerated, 1e-9));
    }
}

TEST_CASE("monotone in any single flow on a reachable path") {
    RandomTrees gen(3);
    for (int n = 0; n < 200; ++n) {
        const auto t = gen.next();
        const double before = rollback(t).v0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) {
                    if (t.branch(i).control.p * t.branch(i, j).control.p * t.branch(i, j, l).p <= 0) continue;
                    auto bumped = t;
                    auto& flows = bumped.stage1[i].outcomes[j].outcomes[l].flows;
                    flows.back() = CashFlowDist(flows.back().mean() + 100.0);
                    CHECK(rollback(bumped).v0 >= before);
                }
        auto bumped = t;
        bumped.stage1[0].flow = CashFlowDist(bumped.stage1[0].flow.mean() + 100.0);
        CHECK(rollback(bumped).v0 >= before);
    }
}

TEST_CASE("rollback of an embedded two-scenario project matches the DCF expectation") {
    auto p = base_project();
    CHECK(rollback(as_option_tree(p)).v0 == doctest::Approx(two_scenario_value(p).v0).epsilon(1e-12));
    p.scenarios[0].p = 0.3;
    p.scenarios[1].p = 0.7;
    p.rate = 0.07;
    CHECK(rollback(as_option_tree(p)).v0 == doctest::Approx(two_scenario_value(p).v0).epsilon(1e-12));
}

TEST_CASE("rollback is linear in flows for a shared structure") {
    RandomTrees gen(11);
    for (int n = 0; n < 100; ++n) {
        const auto a = gen.next();
        auto b = gen.next();
        // Give b the structure (probabilities, rate, horizon) of a.
        b.rate = a.rate;
        b.horizon = a.horizon;
        for (int i = 0; i < 2; ++i) {
            b.stage1[i].control.p = a.stage1[i].control.p;
            for (int j = 0; j < 2; ++j) {
                b.stage1[i].outcomes[j].control.p = a.stage1[i].outcomes[j].control.p;
                for (int l = 0; l < 2; ++l) {
                    auto& term = b.stage1[i].outcomes[j].outcomes[l];
                    term.p = a.branch(i, j, l).p;
                    term.flows.resize(a.branch(i, j, l).flows.size(), 0.0);
                }
            }
        }
        const double ca = 1.7;
        const double cb = -0.4;
        auto combo = a;
        auto mix = [&](const CashFlowDist& x, const CashFlowDist& y) { return CashFlowDist(ca * x.mean() + cb * y.mean()); };
        for (int i = 0; i < 2; ++i) {
            combo.stage1[i].flow = mix(a.stage1[i].flow, b.stage1[i].flow);
            combo.stage1[i].control.delta = mix(a.stage1[i].control.delta, b.stage1[i].control.delta);
            for (int j = 0; j < 2; ++j) {
                auto& c2 = combo.stage1[i].outcomes[j];
                c2.flow = mix(a.branch(i, j).flow, b.branch(i, j).flow);
                c2.control.delta = mix(a.branch(i, j).control.delta, b.branch(i, j).control.delta);
                for (int l = 0; l < 2; ++l)
                    for (std::size_t k = 0; k < c2.outcomes[l].flows.size(); ++k)
                        c2.outcomes[l].flows[k] = mix(a.branch(i, j, l).flows[k], b.branch(i, j, l).flows[k]);
            }
        }
        const double expected = ca * rollback(a).v0 + cb * rollback(b).v0;
        CHECK(close_rel(rollback(combo).v0, expected, 1e-9));
    }
}
