#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include "test_support.hpp"
#include "vre/errors.hpp"
#include "vre/regions.hpp"

using namespace vre;
using testsup::make_spec;

namespace {

LATable two_region_table(double area_a = 4.0, double area_b = 4.0) {
    LATable t;
    t.add({"E06000001", "Northtown", area_a});
    t.add({"E06000002", "Southvale", area_b});
    return t;
}

// 4x2 grid, cell 1 km: top row region 0, bottom row region 1.
CategoricalGrid split_regions(const GridSpec& s) {
    CategoricalGrid g(s);
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            g.set(s.index(r, c), r < s.n_rows / 2 ? 0 : 1);
        }
    }
    return g;
}

}  // namespace

TEST_CASE("LATable: duplicate codes and bad areas rejected, CSV loads") {
    LATable t = two_region_table();
    CHECK(t.has("E06000001"));
    CHECK(t.by_code("E06000002").name == "Southvale");
    CHECK_THROWS_AS(t.add({"E06000001", "Duplicate", 1.0}), DataError);
    CHECK_THROWS_AS(t.add({"E06000003", "Flatland", 0.0}), DataError);
    CHECK_THROWS_AS(t.by_code("E99999999"), DataError);

    const auto path = (std::filesystem::temp_directory_path() / "vre_la.csv").string();
    {
        std::ofstream out(path);
        out << "code,name,area_km2\nE06000001,Northtown,4\nE06000002,Southvale,5.5\n";
    }
    const LATable loaded = LATable::load_csv(path);
    CHECK(loaded.regions().size() == 2);
    CHECK(loaded.by_code("E06000002").area_km2 == doctest::Approx(5.5));
    std::filesystem::remove(path);
}

TEST_CASE("link_records partitions every input exactly once") {
    const LATable t = two_region_table();
    const std::map<std::string, std::string> postcodes = {
        {"AB1 2CD", "E06000001"},
        {"ZZ9 9ZZ", "E99999999"},  // resolves to a code the table lacks
    };
    const std::vector<LinkRecord> records = {
        {"r1", "E06000002", ""},          // direct code match
        {"r2", "E99999999", "AB1 2CD"},   // bad code wins over a good postcode
        {"r3", "", "AB1 2CD"},            // postcode match
        {"r4", "", "XX0 0XX"},            // unknown postcode
        {"r5", "", "ZZ9 9ZZ"},            // postcode maps to an unknown LA
        {"r6", "", ""},                   // nothing to match on
    };
    const LinkResult res = link_records(t, records, postcodes);
    CHECK(res.matched.size() + res.rejects.size() == records.size());
    REQUIRE(res.matched.size() == 2);
    CHECK(res.matched[0].record.id == "r1");
    CHECK(res.matched[0].match_path == "la_code");
    CHECK(res.matched[1].record.id == "r3");
    CHECK(res.matched[1].match_path == "postcode");
    CHECK(res.matched[1].resolved_la == "E06000001");
    REQUIRE(res.rejects.size() == 4);
    CHECK(res.rejects[0].reason == "unknown_la");
    CHECK(res.rejects[1].reason == "unknown_postcode");
    CHECK(res.rejects[2].reason == "unknown_postcode");
    CHECK(res.rejects[3].reason == "no_key");
}

TEST_CASE("aggregate_to_la: sums, densities, conservation") {
    GridSpec s = make_spec(4, 2, 1000.0);
    const CategoricalGrid regions = split_regions(s);
    const LATable t = two_region_table(2.0, 4.0);

    std::vector<CellEnergy> energy;
    for (std::size_t i = 0; i < s.size(); ++i) {
        energy.push_back({i, 1e6 * static_cast<double>(i + 1)});  // 1..8 GWh
    }
    const auto rows = aggregate_to_la(energy, regions, t);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].energy_gwh == doctest::Approx(1.0 + 2.0 + 3.0 + 4.0));
    CHECK(rows[1].energy_gwh == doctest::Approx(5.0 + 6.0 + 7.0 + 8.0));
    CHECK(rows[0].energy_gwh_per_km2 == doctest::Approx(10.0 / 2.0));
    CHECK(rows[1].energy_gwh_per_km2 == doctest::Approx(26.0 / 4.0));
    // nothing is lost or double counted
    CHECK(rows[0].energy_gwh + rows[1].energy_gwh == doctest::Approx(36.0));

    // unassigned cells are skipped, unknown region ids rejected
    CategoricalGrid with_gap = regions;
    with_gap.set(std::size_t{0}, CategoricalGrid::kNodata);
    const auto gap_rows = aggregate_to_la(energy, with_gap, t);
    CHECK(gap_rows[0].energy_gwh == doctest::Approx(9.0));

    CategoricalGrid bad = regions;
    bad.set(std::size_t{0}, 7);
    CHECK_THROWS_AS(aggregate_to_la(energy, bad, t), DataError);
    CHECK_THROWS_AS(aggregate_to_la({{99, 1.0}}, regions, t), DataError);
}

namespace {

struct OverlapFixture {
    GridSpec spec = make_spec(10, 10, 1000.0);
    LATable table;
    CategoricalGrid regions{spec};
    CategoricalGrid landuse{spec};

    OverlapFixture() {
        table.add({"E07000100", "Testshire", 100.0});
        for (std::size_t i = 0; i < spec.size(); ++i) {
            regions.set(i, 0);
            landuse.set(i, 231);  // pasture: rural by default
        }
    }

    // Mask covering the first n cells in row-major order.
    Mask first_cells(std::size_t n) const {
        Mask m(spec);
        for (std::size_t i = 0; i < n && i < m.size(); ++i) m.set(i, true);
        return m;
    }
};

const OverlapRow& row_at(const std::vector<OverlapRow>& rows, double threshold) {
    for (const auto& r : rows) {
        if (r.scenic_threshold == threshold) return r;
    }
    throw std::runtime_error("threshold row not found");
}

}  // namespace

TEST_CASE("overlap: 40 percent full-restriction overlap shrinking to 30 is selected") {
    OverlapFixture f;
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(40));
    wind.emplace(5.8, f.first_cells(30));
    const Mask pv(f.spec, true);  // PV everywhere: intersection = wind area

    const auto rows = overlap_analysis(wind, pv, f.regions, f.table, f.landuse);
    REQUIRE(rows.size() == 2);
    const OverlapRow& full = row_at(rows, 10.0);
    CHECK(full.wind_area_km2 == doctest::Approx(40.0));
    CHECK(full.intersection_km2 == doctest::Approx(40.0));
    CHECK(full.overlap_fraction == doctest::Approx(0.40));
    CHECK(full.rural);
    // 0.40 > 0.35 and 30/40 = 0.75 <= 0.80: both parts hold
    CHECK(full.selected);
    CHECK(row_at(rows, 5.8).selected);  // the flag is per region, not per row
}

TEST_CASE("overlap: no shrinkage under restrictions means no selection") {
    OverlapFixture f;
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(100));
    wind.emplace(5.8, f.first_cells(100));  // identical: ratio 1.0 fails
    const Mask pv(f.spec, true);
    const auto rows = overlap_analysis(wind, pv, f.regions, f.table, f.landuse);
    CHECK(row_at(rows, 10.0).overlap_fraction == doctest::Approx(1.0));
    CHECK_FALSE(row_at(rows, 10.0).selected);
}

TEST_CASE("overlap: too little overlap fails the first criterion") {
    OverlapFixture f;
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(30));  // 0.30 <= 0.35
    wind.emplace(5.8, f.first_cells(10));
    const Mask pv(f.spec, true);
    const auto rows = overlap_analysis(wind, pv, f.regions, f.table, f.landuse);
    CHECK_FALSE(row_at(rows, 10.0).selected);
}

TEST_CASE("overlap: disjoint wind and PV masks give zero intersection") {
    OverlapFixture f;
    Mask pv(f.spec);
    for (std::size_t i = 50; i < 100; ++i) pv.set(i, true);
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(50));
    wind.emplace(5.8, f.first_cells(25));
    const auto rows = overlap_analysis(wind, pv, f.regions, f.table, f.landuse);
    CHECK(row_at(rows, 10.0).intersection_km2 == doctest::Approx(0.0));
    CHECK(row_at(rows, 10.0).overlap_fraction == doctest::Approx(0.0));
    CHECK_FALSE(row_at(rows, 10.0).selected);
}

TEST_CASE("overlap: wind-area denominator changes the fraction") {
    OverlapFixture f;
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(40));
    wind.emplace(5.8, f.first_cells(20));
    Mask pv = f.first_cells(20);  // half the wind area

    OverlapCriteria region_denom;
    const auto by_region = overlap_analysis(wind, pv, f.regions, f.table, f.landuse,
                                            region_denom);
    CHECK(row_at(by_region, 10.0).overlap_fraction == doctest::Approx(0.20));

    OverlapCriteria wind_denom;
    wind_denom.denominator = OverlapDenominator::WindArea;
    const auto by_wind = overlap_analysis(wind, pv, f.regions, f.table, f.landuse,
                                          wind_denom);
    CHECK(row_at(by_wind, 10.0).overlap_fraction == doctest::Approx(0.50));
}

TEST_CASE("overlap: fractions are monotone in the scenic threshold chain") {
    OverlapFixture f;
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(60));
    wind.emplace(5.8, f.first_cells(45));
    wind.emplace(4.67, f.first_cells(30));
    wind.emplace(3.67, f.first_cells(15));
    const Mask pv(f.spec, true);
    const auto rows = overlap_analysis(wind, pv, f.regions, f.table, f.landuse);
    CHECK(row_at(rows, 3.67).overlap_fraction <= row_at(rows, 4.67).overlap_fraction);
    CHECK(row_at(rows, 4.67).overlap_fraction <= row_at(rows, 5.8).overlap_fraction);
    CHECK(row_at(rows, 5.8).overlap_fraction <= row_at(rows, 10.0).overlap_fraction);
}

TEST_CASE("overlap: urban tag when artificial surfaces predominate") {
    OverlapFixture f;
    for (std::size_t i = 0; i < 51; ++i) f.landuse.set(i, 112);  // majority urban fabric
    std::map<double, Mask> wind;
    wind.emplace(10.0, f.first_cells(10));
    const Mask pv(f.spec, true);
    const auto rows = overlap_analysis(wind, pv, f.regions, f.table, f.landuse);
    CHECK_FALSE(rows[0].rural);

    CHECK_THROWS_AS(
        overlap_analysis({}, pv, f.regions, f.table, f.landuse), InvalidInputError);
}

TEST_CASE("validation_compare: scaling factor and exclusions") {
    // own results produced at 8x the external study's assumed density
    const std::map<std::string, double> own = {{"A", 80.0}, {"B", 160.0}, {"C", 50.0}};
    const std::map<std::string, double> ext = {{"A", 10.0}, {"B", 20.0}, {"C", 0.0}};
    const DeviationSummary s = validation_compare(own, ext, 8.0);
    CHECK(s.n == 2);
    CHECK(s.rows.size() == 3);
    CHECK(s.mean == doctest::Approx(1.0));
    CHECK(s.std_dev == doctest::Approx(0.0));
    for (const auto& r : s.rows) {
        if (r.region_code == "C") CHECK(r.excluded);
    }

    CHECK_THROWS_AS(validation_compare(own, {{"A", 1.0}}, 8.0), DataError);
    CHECK_THROWS_AS(validation_compare(own, ext, 0.0), InvalidInputError);
}

TEST_CASE("validation_compare: calibrated fixture reproduces mean 0.97, sd 0.30") {
    // 12 symmetric pairs 0.97 +/- 0.30*a with a = sqrt(23/24): the sample
    // mean is exactly 0.97 and the sample standard deviation exactly 0.30
    const double a = std::sqrt(23.0 / 24.0);
    std::map<std::string, double> own, ext;
    for (int i = 0; i < 12; ++i) {
        const std::string hi = "P" + std::to_string(i) + "H";
        const std::string lo = "P" + std::to_string(i) + "L";
        ext[hi] = 10.0 + i;
        ext[lo] = 20.0 + i;
        own[hi] = (0.97 + 0.30 * a) * ext[hi] * 8.0;
        own[lo] = (0.97 - 0.30 * a) * ext[lo] * 8.0;
    }
    const DeviationSummary s = validation_compare(own, ext, 8.0);
    CHECK(s.n == 24);
    CHECK(s.mean == doctest::Approx(0.97).epsilon(1e-12));
    CHECK(s.std_dev == doctest::Approx(0.30).epsilon(1e-12));
    CHECK(s.min == doctest::Approx(0.97 - 0.30 * a).epsilon(1e-12));
    CHECK(s.max == doctest::Approx(0.97 + 0.30 * a).epsilon(1e-12));
}

TEST_CASE("scenic_cost_curve: cumulative energy and the two weightings") {
    // (scenicness, TWh, lcoe)
    const std::vector<std::tuple<double, double, double>> sites = {
        {2.5, 1.0, 0.05},
        {4.0, 3.0, 0.07},
        {6.5, 2.0, 0.09},
    };
    const auto by_site = scenic_cost_curve(sites, CostWeighting::Site);
    REQUIRE(!by_site.empty());
    // level 3 sees only the first site
    CHECK(by_site[0].scenic_level == 3);
    CHECK(by_site[0].cumulative_twh == doctest::Approx(1.0));
    CHECK(by_site[0].mean_lcoe == doctest::Approx(0.05));
    // level 10 sees everything; site weighting is the plain average
    const auto& last = by_site.back();
    CHECK(last.scenic_level == 10);
    CHECK(last.cumulative_twh == doctest::Approx(6.0));
    CHECK(last.mean_lcoe == doctest::Approx((0.05 + 0.07 + 0.09) / 3.0));

    const auto by_energy = scenic_cost_curve(sites, CostWeighting::Energy);
    const double expected =
        (1.0 * 0.05 + 3.0 * 0.07 + 2.0 * 0.09) / 6.0;
    CHECK(by_energy.back().mean_lcoe == doctest::Approx(expected).epsilon(1e-12));
    // cumulative potential never decreases with the level
    for (std::size_t i = 1; i < by_site.size(); ++i) {
        CHECK(by_site[i].cumulative_twh >= by_site[i - 1].cumulative_twh);
    }
}
