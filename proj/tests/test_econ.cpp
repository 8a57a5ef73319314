#include <doctest.h>

#include <cmath>
#include <limits>

#include "vre/econ.hpp"
#include "vre/errors.hpp"

using namespace vre;

TEST_CASE("annuity factor: 8% over 20 years, edge cases") {
    CHECK(annuity_factor(0.08, 20) == doctest::Approx(9.8181).epsilon(1e-4));
    CHECK(annuity_factor(0.0, 1) == doctest::Approx(1.0));
    CHECK(annuity_factor(0.0, 20) == doctest::Approx(20.0));
    // higher interest discounts the stream harder
    CHECK(annuity_factor(0.12, 20) < annuity_factor(0.08, 20));
    CHECK(annuity_factor(0.08, 25) > annuity_factor(0.08, 20));
}

TEST_CASE("lcoe anchors: ground PV near 6 p/kWh, wind near 6.3 p/kWh") {
    // 500/(9.81815*982) + 8/982
    CHECK(lcoe(ground_pv_econ(), 982.0) == doctest::Approx(0.0600).epsilon(1e-3));
    // 1050/(9.81815*2500) + 0.02
    CHECK(lcoe(wind_econ(), 2500.0) == doctest::Approx(0.0628).epsilon(1e-3));
    // rooftop is dearer than ground at equal yield
    CHECK(lcoe(rooftop_pv_econ(), 982.0) > lcoe(ground_pv_econ(), 982.0));
}

TEST_CASE("lcoe at zero interest collapses to undiscounted cost over energy") {
    EconParams p;
    p.investment_gbp_per_kw = 1000.0;
    p.om_cost = 12.0;
    p.om_mode = OmMode::PerKwYear;
    p.lifetime_years = 25;
    p.interest = 0.0;
    const double flh = 900.0;
    CHECK(lcoe(p, flh) ==
          doctest::Approx(1000.0 / (25.0 * flh) + 12.0 / flh).epsilon(1e-12));

    p.om_mode = OmMode::PerKwh;
    p.om_cost = 0.015;
    CHECK(lcoe(p, flh) == doctest::Approx(1000.0 / (25.0 * flh) + 0.015).epsilon(1e-12));
}

TEST_CASE("lcoe monotonicity and currency scaling") {
    EconParams p = ground_pv_econ();
    // more yield, cheaper energy
    CHECK(lcoe(p, 1100.0) < lcoe(p, 900.0));
    // doubling all money doubles the price per kWh
    EconParams d = p;
    d.investment_gbp_per_kw *= 2.0;
    d.om_cost *= 2.0;
    CHECK(lcoe(d, 950.0) == doctest::Approx(2.0 * lcoe(p, 950.0)).epsilon(1e-12));
    // per-kWh O&M enters additively
    EconParams w = wind_econ();
    EconParams w0 = w;
    w0.om_cost = 0.0;
    CHECK(lcoe(w, 2200.0) == doctest::Approx(lcoe(w0, 2200.0) + 0.02).epsilon(1e-12));
}

TEST_CASE("lcoe and EconParams guards") {
    CHECK_THROWS_AS(lcoe(ground_pv_econ(), 0.0), InvalidInputError);
    CHECK_THROWS_AS(lcoe(ground_pv_econ(), -10.0), InvalidInputError);
    EconParams p = ground_pv_econ();
    p.lifetime_years = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = ground_pv_econ();
    p.interest = -0.01;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = ground_pv_econ();
    p.investment_gbp_per_kw = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("cost_curve: ascending price, cumulative energy, stable ties") {
    std::vector<CostCurveInput> sites = {
        {2.0, 0.07, 10},
        {1.0, 0.05, 11},
        {3.0, 0.07, 9},
        {0.5, 0.06, 12},
    };
    const auto curve = cost_curve(sites);
    REQUIRE(curve.size() == 4);
    CHECK(curve[0].site_id == 11);
    CHECK(curve[1].site_id == 12);
    CHECK(curve[2].site_id == 9);   // tie on 0.07 broken by site id
    CHECK(curve[3].site_id == 10);
    CHECK(curve[0].cumulative_twh == doctest::Approx(1.0));
    CHECK(curve[1].cumulative_twh == doctest::Approx(1.5));
    CHECK(curve[3].cumulative_twh == doctest::Approx(6.5));
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].marginal_lcoe >= curve[i - 1].marginal_lcoe);
        CHECK(curve[i].cumulative_twh >= curve[i - 1].cumulative_twh);
    }
}

TEST_CASE("cost_curve: empty input and non-finite prices") {
    CHECK(cost_curve({}).empty());
    std::vector<CostCurveInput> bad = {{1.0, std::numeric_limits<double>::infinity(), 1}};
    CHECK_THROWS_AS(cost_curve(std::move(bad)), InvalidInputError);
    std::vector<CostCurveInput> nan = {{1.0, std::numeric_limits<double>::quiet_NaN(), 2}};
    CHECK_THROWS_AS(cost_curve(std::move(nan)), InvalidInputError);
}
