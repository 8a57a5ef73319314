#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "vre/csv.hpp"
#include "vre/errors.hpp"
#include "vre/pipeline.hpp"
#include "vre/plot.hpp"

using namespace vre;
using testsup::make_spec;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("RunConfig::load: keys, defaults, scenario list") {
    const fs::path dir = scratch_dir("vre_cfg_test");
    const fs::path cfg_path = dir / "run.cfg";
    write_file(cfg_path,
               "# comment line\n"
               "rows=40\n"
               "cols=30\n"
               "cell_size=500\n"
               "origin_x=1000\n"
               "origin_y=2000\n"
               "seed=7\n"
               "scenarios=1;3;5\n"
               "technologies=wind,pv_ground\n"
               "out_dir=outdir\n");
    const RunConfig cfg = RunConfig::load(cfg_path.string());
    CHECK(cfg.master.n_rows == 40);
    CHECK(cfg.master.n_cols == 30);
    CHECK(cfg.master.cell_size == doctest::Approx(500.0));
    CHECK(cfg.master.origin_x == doctest::Approx(1000.0));
    CHECK(cfg.seed == 7);
    CHECK(cfg.scenario_ids == std::vector<int>{1, 3, 5});
    CHECK(cfg.run_wind);
    CHECK(cfg.run_pv_ground);
    CHECK_FALSE(cfg.run_pv_roof);
    CHECK(cfg.output_dir == "outdir");

    // defaults when keys are absent
    write_file(cfg_path, "rows=10\ncols=10\n");
    const RunConfig d = RunConfig::load(cfg_path.string());
    CHECK(d.scenario_ids.size() == 8);
    CHECK(d.seed == 42);
    CHECK(d.run_pv_roof);
    fs::remove_all(dir);
}

TEST_CASE("RunConfig::load: config and data errors") {
    const fs::path dir = scratch_dir("vre_cfg_err");
    const fs::path cfg_path = dir / "run.cfg";
    CHECK_THROWS_AS(RunConfig::load((dir / "missing.cfg").string()), ConfigError);

    write_file(cfg_path, "rows=10\nnot a pair\n");
    CHECK_THROWS_AS(RunConfig::load(cfg_path.string()), ConfigError);
    write_file(cfg_path, "frobnicate=1\n");
    CHECK_THROWS_AS(RunConfig::load(cfg_path.string()), ConfigError);
    write_file(cfg_path, "rows=ten\n");
    CHECK_THROWS_AS(RunConfig::load(cfg_path.string()), ConfigError);
    write_file(cfg_path, "rows=0\n");
    CHECK_THROWS_AS(RunConfig::load(cfg_path.string()), InvalidInputError);

    // a named layer whose file does not exist is a data problem, not config
    write_file(cfg_path, "rows=10\ncols=10\nlayer.dem=/nonexistent/dem.asc\n");
    CHECK_THROWS_WITH_AS(RunConfig::load(cfg_path.string()),
                         doctest::Contains("dem"), DataError);
    fs::remove_all(dir);
}

TEST_CASE("synthetic fixture generation is deterministic in (spec, seed)") {
    GridSpec s = make_spec(30, 30, 1000.0);
    const SyntheticFixture a = generate_fixture(s, 42);
    const SyntheticFixture b = generate_fixture(s, 42);
    for (std::size_t i = 0; i < a.dem.size(); ++i) {
        CHECK(a.dem[i] == b.dem[i]);
        CHECK(a.v10_ms[i] == b.v10_ms[i]);
        CHECK(a.scenicness[i] == b.scenicness[i]);
        CHECK(a.landuse.get(i) == b.landuse.get(i));
    }
    const SyntheticFixture c = generate_fixture(s, 43);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.dem.size() && !any_diff; ++i) {
        any_diff = a.dem[i] != c.dem[i];
    }
    CHECK(any_diff);

    // the value-noise building block stays in [0,1] and is reproducible
    const NumericGrid n1 = value_noise(s, 7, 8);
    const NumericGrid n2 = value_noise(s, 7, 8);
    for (std::size_t i = 0; i < n1.size(); ++i) {
        CHECK(n1[i] == n2[i]);
        CHECK(n1[i] >= 0.0);
        CHECK(n1[i] <= 1.0);
    }
}

TEST_CASE("potentials: restriction ordering across the scenario ladder") {
    GridSpec s = make_spec(40, 40, 1000.0);
    const SyntheticFixture fx = generate_fixture(s, 42);
    RunConfig cfg;
    cfg.master = s;
    const PipelinePotentials pot = compute_potentials(fx, {1, 2, 3, 4, 5, 8}, cfg);

    // tighter scenic thresholds can only remove wind cells
    CHECK(pot.wind_mask_by_scenario.at(2).subset_of(pot.wind_mask_by_scenario.at(1)));
    CHECK(pot.wind_mask_by_scenario.at(3).subset_of(pot.wind_mask_by_scenario.at(2)));
    CHECK(pot.wind_mask_by_scenario.at(4).subset_of(pot.wind_mask_by_scenario.at(3)));
    CHECK(pot.wind_twh_by_scenario.at(4) <= pot.wind_twh_by_scenario.at(3));
    CHECK(pot.wind_twh_by_scenario.at(3) <= pot.wind_twh_by_scenario.at(2));
    CHECK(pot.wind_twh_by_scenario.at(2) <= pot.wind_twh_by_scenario.at(1));

    // scenarios 1 and 5 share the scenic threshold; 5 spares grade-3 land
    CHECK(pot.pv_mask_by_scenario.at(1).subset_of(pot.pv_mask_by_scenario.at(5)));
    CHECK(pot.pv_ground_twh_by_scenario.at(1) <= pot.pv_ground_twh_by_scenario.at(5));

    // scenic restrictions leave ground PV untouched (grade set fixed): 5 vs 8
    CHECK(pot.pv_ground_twh_by_scenario.at(5) ==
          doctest::Approx(pot.pv_ground_twh_by_scenario.at(8)).epsilon(1e-12));

    // rooftop is scenario independent and present
    CHECK(pot.roof_twh > 0.0);
    CHECK(pot.roof_area_km2 > 0.0);
}

TEST_CASE("run_scenario: outputs exist, are re-ingestible and bit-stable") {
    RunConfig cfg;
    cfg.master = make_spec(30, 30, 1000.0);
    cfg.seed = 42;
    cfg.scenario_ids = {1, 4, 5};

    const fs::path dir1 = scratch_dir("vre_run_a");
    const fs::path dir2 = scratch_dir("vre_run_b");
    cfg.output_dir = dir1.string();
    const ScenarioRunResult r1 = run_scenario(cfg);
    cfg.output_dir = dir2.string();
    const ScenarioRunResult r2 = run_scenario(cfg);

    REQUIRE(r1.totals.size() == 3);
    CHECK(r1.totals[0].scenario_id == 1);
    CHECK(r1.totals[1].wind_twh <= r1.totals[0].wind_twh);  // scenario 4 vs 1

    // every advertised file exists; the two runs agree byte for byte
    REQUIRE(r1.written_files.size() == r2.written_files.size());
    for (std::size_t i = 0; i < r1.written_files.size(); ++i) {
        CHECK(fs::exists(r1.written_files[i]));
        CHECK(slurp(r1.written_files[i]) == slurp(r2.written_files[i]));
    }

    // the totals table parses back with our own reader and matches
    const csv::Table totals = csv::read_file((dir1 / "scenario_totals.csv").string());
    REQUIRE(totals.rows.size() == 3);
    const std::size_t c_wind = totals.column("wind_TWh");
    const double wind_s1 = csv::to_double(totals.rows[0].at(c_wind), "totals");
    CHECK(wind_s1 == doctest::Approx(r1.totals[0].wind_twh).epsilon(1e-4));

    // cost curves are monotone, which also means emit_plot accepts them
    const fs::path curve_csv = dir1 / "cost_curve_wind.csv";
    REQUIRE(fs::exists(curve_csv));
    const fs::path svg1 = dir1 / "replot.svg";
    emit_plot(curve_csv.string(), svg1.string());
    CHECK(slurp(svg1).find("<polyline") != std::string::npos);

    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("plot: identical bytes, placeholder, monotonicity guard") {
    std::vector<CostCurvePoint> curve = {{1.0, 0.05, 1}, {2.5, 0.06, 2}, {4.0, 0.09, 3}};
    const std::string svg_a = render_cost_curve_svg(curve, "t");
    const std::string svg_b = render_cost_curve_svg(curve, "t");
    CHECK(svg_a == svg_b);
    // one polyline with three vertices
    CHECK(svg_a.find("<polyline") != std::string::npos);
    const std::size_t points_at = svg_a.find("points=\"");
    REQUIRE(points_at != std::string::npos);
    const std::string pts = svg_a.substr(points_at + 8, svg_a.find('"', points_at + 8) -
                                                            points_at - 8);
    CHECK(std::count(pts.begin(), pts.end(), ',') == 3);

    CHECK(render_cost_curve_svg({}).find("(empty curve)") != std::string::npos);

    const fs::path dir = scratch_dir("vre_plot_test");
    const fs::path csv_path = dir / "curve.csv";
    write_file(csv_path,
               "cumulative_TWh,lcoe_GBP_per_kWh,site_id\n1,0.05,1\n0.5,0.06,2\n");
    CHECK_THROWS_AS(emit_plot(csv_path.string(), (dir / "x.svg").string()), DataError);

    write_file(csv_path, "cumulative_TWh,lcoe_GBP_per_kWh,site_id\n");
    emit_plot(csv_path.string(), (dir / "empty.svg").string());
    CHECK(slurp(dir / "empty.svg").find("(empty curve)") != std::string::npos);
    fs::remove_all(dir);
}
