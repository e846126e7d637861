#include "doctest.h"
#include "realopt/dcf.hpp"
#include "realopt/reference_oracle.hpp"
#include "support/fixtures.hpp"

using namespace realopt;
using namespace realopt::testing;

TEST_CASE("enumerate_value") {
    CHECK(std::abs(enumerate_value(reduction_tree()) - 5168) <= 1);

    SUBCASE("switching tree, hand-checked path") {
        // Path (2,1,1): probability 0.25, flows 1000-100, 1440-500, 3200, 4200.
        const double path = 900 / 1.2 + 940 / 1.44 + 3200 / 1.728 + 4200 / 2.0736;
        CHECK(path == doctest::Approx(5280.092592592592));
        CHECK(enumerate_value(switching_tree()) == doctest::Approx(5673.900462962964).epsilon(1e-12));
    }
    SUBCASE("a certain path reduces to its own present value") {
        auto t = reduction_tree();
        t.stage1[0].control.p = 0.0;
        t.stage1[1].control.p = 1.0;
        const std::vector<double> flows{900, 1440, 1560, 2400};
        CHECK(enumerate_value(t) == doctest::Approx(present_value(flows, 0.2)));
    }
    SUBCASE("random trees are rejected") {
        auto t = reduction_tree();
        t.stage1[1].flow = CashFlowDist::uniform(900, 1100);
        CHECK_THROWS_AS(enumerate_value(t), Error);
        t = reduction_tree();
        t.stage1[1].control.p = 0.9;
        CHECK_THROWS_AS(enumerate_value(t), InvalidModel);
    }
}
