// vre-atlas: command-line front end for the assessment library. One
// subcommand per pipeline stage so runs stay scriptable.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vre/csv.hpp"
#include "vre/econ.hpp"
#include "vre/errors.hpp"
#include "vre/exclusion.hpp"
#include "vre/fixture.hpp"
#include "vre/grid_io.hpp"
#include "vre/pipeline.hpp"
#include "vre/plot.hpp"
#include "vre/regions.hpp"
#include "vre/solar_ground.hpp"
#include "vre/solar_rooftop.hpp"
#include "vre/stats.hpp"
#include "vre/wind.hpp"

namespace {

using nlohmann::json;

int thread_cap() {
    const char* env = std::getenv("VRE_ATLAS_THREADS");
    if (!env || !*env) return 0;  // unlimited
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
        throw vre::ConfigError("VRE_ATLAS_THREADS must be a positive integer");
    }
    return static_cast<int>(v);
}

struct FixtureOpts {
    std::size_t rows = 100;
    std::size_t cols = 100;
    double cell_size = 1000.0;
    std::uint64_t seed = 42;
};

void add_fixture_opts(CLI::App* cmd, FixtureOpts& opts) {
    cmd->add_option("--rows", opts.rows, "fixture grid rows");
    cmd->add_option("--cols", opts.cols, "fixture grid columns");
    cmd->add_option("--cell-size", opts.cell_size, "cell size in metres");
    cmd->add_option("--seed", opts.seed, "fixture generation seed");
}

vre::SyntheticFixture make_fixture(const FixtureOpts& opts) {
    vre::GridSpec spec;
    spec.n_rows = opts.rows;
    spec.n_cols = opts.cols;
    spec.cell_size = opts.cell_size;
    return vre::generate_fixture(spec, opts.seed);
}

void write_mask(const vre::Mask& m, const std::string& path) {
    vre::NumericGrid g(m.spec());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = m.get(i) ? 1.0 : 0.0;
    vre::write_ascii_grid(g, path);
}

// --- ingest: point CSV -> raster, or grid resample -------------------------

int cmd_ingest(const std::string& points_csv, const std::string& grid_in,
               const std::string& out_path, const std::string& votes_out,
               const FixtureOpts& opts, double origin_x, double origin_y,
               bool annual_kwh) {
    vre::GridSpec spec;
    spec.n_rows = opts.rows;
    spec.n_cols = opts.cols;
    spec.cell_size = opts.cell_size;
    spec.origin_x = origin_x;
    spec.origin_y = origin_y;

    if (!points_csv.empty()) {
        const auto pts = vre::read_point_csv(points_csv);
        vre::NumericGrid votes;
        vre::NumericGrid g = vre::rasterize_points(pts, spec, &votes);
        vre::write_ascii_grid(g, out_path);
        if (!votes_out.empty()) vre::write_ascii_grid(votes, votes_out);
        std::cout << "rasterized " << pts.size() << " points onto " << spec.n_rows << "x"
                  << spec.n_cols << " grid\n";
        return 0;
    }

    vre::NumericGrid g = vre::read_ascii_grid(grid_in);
    if (annual_kwh) {
        // annual kWh/m2 -> mean power density W/m2
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!g.is_nodata(i)) g[i] = g[i] * 1000.0 / 8760.0;
        }
    }
    vre::write_ascii_grid(vre::resample_nearest(g, spec), out_path);
    std::cout << "resampled " << grid_in << " to " << spec.n_rows << "x" << spec.n_cols
              << "\n";
    return 0;
}

// --- exclude: fixture geographic potential ---------------------------------

int cmd_exclude(const FixtureOpts& opts, double buffer_m, double slope_limit,
                const std::string& out_path) {
    const vre::SyntheticFixture fx = make_fixture(opts);
    const vre::NumericGrid slope = vre::compute_slope(fx.dem);
    const vre::Mask suitable =
        vre::compose_precedence(fx.osm_positive, fx.osm_negative, fx.clc_positive);
    std::vector<vre::BufferedNegative> negatives = {
        {fx.protected_areas, 0.0},
        {fx.osm_negative, buffer_m},
    };
    const vre::Mask geo = vre::geographic_potential(suitable, negatives, slope, slope_limit);
    write_mask(geo, out_path);
    std::cout << "eligible cells: " << geo.count() << " of " << geo.size() << "\n";
    return 0;
}

// --- potential -------------------------------------------------------------

vre::RunConfig fixture_run_config(const FixtureOpts& opts, const std::vector<int>& ids) {
    vre::RunConfig cfg;
    cfg.master.n_rows = opts.rows;
    cfg.master.n_cols = opts.cols;
    cfg.master.cell_size = opts.cell_size;
    cfg.seed = opts.seed;
    cfg.scenario_ids = ids;
    return cfg;
}

int cmd_potential_pv_ground(const FixtureOpts& opts, int scenario_id,
                            const std::string& out_path) {
    const vre::SyntheticFixture fx = make_fixture(opts);
    vre::RunConfig cfg = fixture_run_config(opts, {scenario_id});
    cfg.run_wind = false;
    cfg.run_pv_roof = false;
    const auto pot = vre::compute_potentials(fx, cfg.scenario_ids, cfg);
    const auto& result = pot.pv_results.at(scenario_id);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << "cell_index,x,y,area_m2,irradiance_Wm2,annual_kWh\n";
        for (const auto& c : result.cells) {
            out << c.cell_index << ',' << vre::csv::format_number(c.x) << ','
                << vre::csv::format_number(c.y) << ',' << vre::csv::format_number(c.area_m2)
                << ',' << vre::csv::format_number(c.irradiance_wm2) << ','
                << vre::csv::format_number(c.annual_energy_kwh) << "\n";
        }
    }
    std::cout << "pv-ground scenario " << scenario_id << ": "
              << vre::csv::format_number(result.total_kwh / 1e9) << " TWh over "
              << vre::csv::format_number(pot.pv_area_km2.at(scenario_id)) << " km2\n";
    return 0;
}

int cmd_potential_pv_roof(const FixtureOpts& opts, const std::string& model_csv,
                          const std::string& ratios_csv) {
    const vre::SyntheticFixture fx = make_fixture(opts);
    vre::RunConfig cfg = fixture_run_config(opts, {});
    cfg.run_wind = false;
    cfg.run_pv_ground = false;
    // only the default model/ratios participate in the orchestrated run;
    // external tables are exercised standalone here
    if (!model_csv.empty()) (void)vre::RoofClassModel::load_csv(model_csv);
    if (!ratios_csv.empty()) (void)vre::FootprintRatioTable::load_csv(ratios_csv);
    const auto pot = vre::compute_potentials(fx, cfg.scenario_ids, cfg);
    std::cout << "pv-roof: " << vre::csv::format_number(pot.roof_twh) << " TWh over "
              << vre::csv::format_number(pot.roof_area_km2) << " km2 of roof\n";
    return 0;
}

int cmd_potential_wind(const FixtureOpts& opts, int scenario_id, const std::string& out_path) {
    const vre::SyntheticFixture fx = make_fixture(opts);
    vre::RunConfig cfg = fixture_run_config(opts, {scenario_id});
    cfg.run_pv_ground = false;
    cfg.run_pv_roof = false;
    const auto pot = vre::compute_potentials(fx, cfg.scenario_ids, cfg);
    const auto& result = pot.wind_results.at(scenario_id);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << "cell_index,x,y,v10_ms,z0_m,turbine,hub_m,turbine_count,annual_kWh,"
               "lcoe_GBP_per_kWh,capacity_MW\n";
        for (const auto& s : result.sites) {
            out << s.cell_index << ',' << vre::csv::format_number(s.x) << ','
                << vre::csv::format_number(s.y) << ',' << vre::csv::format_number(s.v10_ms)
                << ',' << vre::csv::format_number(s.roughness_m) << ',' << s.turbine_name
                << ',' << vre::csv::format_number(s.hub_m) << ',' << s.turbine_count << ','
                << vre::csv::format_number(s.annual_energy_kwh) << ','
                << vre::csv::format_number(s.lcoe) << ','
                << vre::csv::format_number(s.capacity_mw) << "\n";
        }
    }
    std::cout << "wind scenario " << scenario_id << ": "
              << vre::csv::format_number(result.total_twh) << " TWh over "
              << vre::csv::format_number(pot.wind_area_km2.at(scenario_id)) << " km2 ("
              << result.infeasible_cells << " infeasible cells)\n";
    return 0;
}

// --- lcoe ------------------------------------------------------------------

int cmd_lcoe(const std::string& tech, double flh, double investment, double om,
             const std::string& om_mode, int lifetime, double interest,
             const std::string& sites_csv, const std::string& out_path) {
    if (!sites_csv.empty()) {
        const auto table = vre::csv::read_file(sites_csv);
        const std::size_t ct = table.column("annual_TWh");
        const std::size_t cl = table.column("lcoe_GBP_per_kWh");
        const std::size_t cid = table.column_or_npos("site_id");
        std::vector<vre::CostCurveInput> sites;
        for (const auto& row : table.rows) {
            vre::CostCurveInput s;
            s.annual_twh = vre::csv::to_double(row[ct], "annual_TWh");
            s.lcoe = vre::csv::to_double(row[cl], "lcoe_GBP_per_kWh");
            if (cid != vre::csv::Table::npos) s.site_id = vre::csv::to_long(row[cid], "site_id");
            sites.push_back(s);
        }
        const auto curve = vre::cost_curve(sites);
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);
            out = &file;
        }
        *out << "cumulative_TWh,lcoe_GBP_per_kWh,site_id\n";
        for (const auto& p : curve) {
            *out << vre::csv::format_number(p.cumulative_twh) << ','
                 << vre::csv::format_number(p.marginal_lcoe) << ',' << p.site_id << "\n";
        }
        return 0;
    }

    vre::EconParams params;
    if (tech == "pv-ground") params = vre::ground_pv_econ();
    else if (tech == "pv-roof") params = vre::rooftop_pv_econ();
    else if (tech == "wind") params = vre::wind_econ();
    else if (!tech.empty()) throw vre::ConfigError("unknown technology '" + tech + "'");
    if (investment > 0.0) params.investment_gbp_per_kw = investment;
    if (om >= 0.0) params.om_cost = om;
    if (om_mode == "per-kw-year") params.om_mode = vre::OmMode::PerKwYear;
    else if (om_mode == "per-kwh") params.om_mode = vre::OmMode::PerKwh;
    else if (!om_mode.empty()) throw vre::ConfigError("om mode must be per-kw-year or per-kwh");
    if (lifetime > 0) params.lifetime_years = lifetime;
    if (interest > 0.0) params.interest = interest;

    std::cout << "annuity factor: "
              << vre::csv::format_number(vre::annuity_factor(params.interest, params.lifetime_years))
              << "\nlcoe: " << vre::csv::format_number(vre::lcoe(params, flh))
              << " GBP/kWh at " << vre::csv::format_number(flh) << " kWh/kW.yr\n";
    return 0;
}

// --- fit -------------------------------------------------------------------

int cmd_fit_binary(const std::string& data_csv, int model, bool probit,
                   bool include_turbines) {
    const auto records = vre::load_planning_csv(data_csv);
    vre::ModelSpec spec;
    spec.model = model;
    spec.include_turbine_count = include_turbines;
    const vre::FitResult fit =
        probit ? vre::fit_probit(records, spec) : vre::fit_logit(records, spec);
    std::cout << vre::format_fit_report(fit, probit ? "probit" : "logit");
    return 0;
}

int cmd_fit_ols(const std::string& data_csv, const std::string& response,
                const std::vector<std::string>& covariates) {
    const auto table = vre::csv::read_file(data_csv);
    const std::size_t cy = table.column(response);
    std::vector<std::size_t> cx;
    for (const auto& name : covariates) cx.push_back(table.column(name));

    std::vector<double> y;
    std::vector<std::vector<double>> design;
    std::vector<std::string> names = {"const"};
    names.insert(names.end(), covariates.begin(), covariates.end());
    for (const auto& row : table.rows) {
        y.push_back(vre::csv::to_double(row[cy], response));
        std::vector<double> x = {1.0};
        for (std::size_t j = 0; j < cx.size(); ++j) {
            x.push_back(vre::csv::to_double(row[cx[j]], covariates[j]));
        }
        design.push_back(std::move(x));
    }
    const vre::OlsResult fit = vre::fit_ols(y, design, names);
    std::cout << "ols on " << fit.n_obs << " observations, R2 "
              << vre::csv::format_number(fit.r_squared) << "\n";
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
        std::cout << fit.names[j] << ": " << vre::csv::format_number(fit.coefficients[j])
                  << " (SE " << vre::csv::format_number(fit.std_errors[j]) << ")\n";
    }
    return 0;
}

// --- link-la ---------------------------------------------------------------

int cmd_link_la(const std::string& la_csv, const std::string& records_csv,
                const std::string& postcode_csv, const std::string& matched_out,
                const std::string& rejects_out) {
    const vre::LATable la = vre::LATable::load_csv(la_csv);

    const auto rec_table = vre::csv::read_file(records_csv);
    const std::size_t cid = rec_table.column("id");
    const std::size_t cla = rec_table.column_or_npos("la_code");
    const std::size_t cpc = rec_table.column_or_npos("postcode");
    std::vector<vre::LinkRecord> records;
    for (const auto& row : rec_table.rows) {
        vre::LinkRecord r;
        r.id = row[cid];
        if (cla != vre::csv::Table::npos) r.la_code = row[cla];
        if (cpc != vre::csv::Table::npos) r.postcode = row[cpc];
        records.push_back(std::move(r));
    }

    std::map<std::string, std::string> postcodes;
    if (!postcode_csv.empty()) {
        const auto pc_table = vre::csv::read_file(postcode_csv);
        const std::size_t cp = pc_table.column("postcode");
        const std::size_t cl = pc_table.column("la_code");
        for (const auto& row : pc_table.rows) postcodes[row[cp]] = row[cl];
    }

    const vre::LinkResult result = vre::link_records(la, records, postcodes);
    {
        std::ofstream out(matched_out, std::ios::binary);
        out << "id,la_code,match_path\n";
        for (const auto& m : result.matched) {
            out << m.record.id << ',' << m.resolved_la << ',' << m.match_path << "\n";
        }
    }
    {
        std::ofstream out(rejects_out, std::ios::binary);
        out << "id,reason\n";
        for (const auto& r : result.rejects) out << r.record.id << ',' << r.reason << "\n";
    }
    std::cout << result.matched.size() << " matched, " << result.rejects.size()
              << " rejected\n";
    return 0;
}

// --- validate --------------------------------------------------------------

std::map<std::string, double> read_region_values(const std::string& path) {
    const auto table = vre::csv::read_file(path);
    const std::size_t cc = table.column("code");
    const std::size_t cv = table.column("energy_GWh");
    std::map<std::string, double> values;
    for (const auto& row : table.rows) {
        values[row[cc]] = vre::csv::to_double(row[cv], "energy_GWh");
    }
    return values;
}

int cmd_validate(const std::string& own_csv, const std::string& external_csv, double factor,
                 const std::string& out_path) {
    const auto own = read_region_values(own_csv);
    const auto external = read_region_values(external_csv);
    const vre::DeviationSummary summary = vre::validation_compare(own, external, factor);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << "code,own_GWh,external_GWh,deviation,excluded\n";
        for (const auto& r : summary.rows) {
            out << r.region_code << ',' << vre::csv::format_number(r.own_gwh) << ','
                << vre::csv::format_number(r.external_gwh) << ','
                << vre::csv::format_number(r.deviation) << ',' << (r.excluded ? 1 : 0)
                << "\n";
        }
    }
    std::cout << "deviation over " << summary.n
              << " regions: mean " << vre::csv::format_number(summary.mean) << ", sd "
              << vre::csv::format_number(summary.std_dev) << ", min "
              << vre::csv::format_number(summary.min) << ", max "
              << vre::csv::format_number(summary.max) << "\n";
    return 0;
}

// --- overlap ---------------------------------------------------------------

int cmd_overlap(const FixtureOpts& opts, const std::string& out_path, bool wind_denominator) {
    const vre::SyntheticFixture fx = make_fixture(opts);
    vre::RunConfig cfg = fixture_run_config(opts, {1, 2, 3, 4, 5});
    cfg.run_pv_roof = false;
    const auto pot = vre::compute_potentials(fx, cfg.scenario_ids, cfg);

    std::map<double, vre::Mask> wind_by_threshold;
    for (int id : {1, 2, 3, 4}) {
        wind_by_threshold.emplace(vre::scenario_by_id(id).scenic_threshold,
                                  pot.wind_mask_by_scenario.at(id));
    }
    vre::OverlapCriteria criteria;
    if (wind_denominator) criteria.denominator = vre::OverlapDenominator::WindArea;
    const auto rows =
        vre::overlap_analysis(wind_by_threshold, pot.pv_mask_by_scenario.at(5),
                              fx.region_grid, fx.la_table, fx.landuse, criteria);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        out = &file;
    }
    *out << "code,scenic_threshold,wind_area_km2,pv_area_km2,intersection_km2,"
            "overlap_fraction,rural,selected\n";
    long selected = 0;
    for (const auto& r : rows) {
        *out << r.region_code << ',' << vre::csv::format_number(r.scenic_threshold) << ','
             << vre::csv::format_number(r.wind_area_km2) << ','
             << vre::csv::format_number(r.pv_area_km2) << ','
             << vre::csv::format_number(r.intersection_km2) << ','
             << vre::csv::format_number(r.overlap_fraction) << ',' << (r.rural ? 1 : 0)
             << ',' << (r.selected ? 1 : 0) << "\n";
        if (r.selected) ++selected;
    }
    if (out != &std::cout) std::cout << selected << " selected region rows\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vre-atlas: regional VRE resource assessment"};
    app.require_subcommand(1);

    FixtureOpts fx_opts;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "rasterize point CSVs or resample grids");
    std::string in_points, in_grid, in_out, in_votes;
    double in_ox = 0.0, in_oy = 0.0;
    bool in_annual = false;
    ingest->add_option("--points", in_points, "point CSV x,y,value[,votes]");
    ingest->add_option("--grid", in_grid, "ESRI ASCII grid to resample");
    ingest->add_option("--out", in_out, "output grid path")->required();
    ingest->add_option("--votes-out", in_votes, "vote-count grid output");
    ingest->add_option("--origin-x", in_ox);
    ingest->add_option("--origin-y", in_oy);
    ingest->add_flag("--annual-kwh", in_annual, "input is annual kWh/m2, convert to W/m2");
    add_fixture_opts(ingest, fx_opts);

    // exclude
    auto* exclude = app.add_subcommand("exclude", "fixture geographic potential mask");
    double ex_buffer = 500.0, ex_slope = 20.0;
    std::string ex_out;
    exclude->add_option("--buffer", ex_buffer, "settlement buffer in metres");
    exclude->add_option("--slope-limit", ex_slope, "slope exclusion threshold in degrees");
    exclude->add_option("--out", ex_out, "output mask grid")->required();
    add_fixture_opts(exclude, fx_opts);

    // potential
    auto* potential = app.add_subcommand("potential", "technical potential per technology");
    potential->require_subcommand(1);
    int pot_scenario = 1;
    std::string pot_out, roof_model, roof_ratios;
    auto* pot_pv = potential->add_subcommand("pv-ground");
    pot_pv->add_option("--scenario", pot_scenario, "scenario id 1..8");
    pot_pv->add_option("--out", pot_out, "per-cell yield CSV");
    add_fixture_opts(pot_pv, fx_opts);
    auto* pot_roof = potential->add_subcommand("pv-roof");
    pot_roof->add_option("--model", roof_model, "roof class model CSV");
    pot_roof->add_option("--ratios", roof_ratios, "footprint ratio CSV");
    add_fixture_opts(pot_roof, fx_opts);
    auto* pot_wind = potential->add_subcommand("wind");
    pot_wind->add_option("--scenario", pot_scenario, "scenario id 1..8");
    pot_wind->add_option("--out", pot_out, "per-site CSV");
    add_fixture_opts(pot_wind, fx_opts);

    // lcoe
    auto* lcoe_cmd = app.add_subcommand("lcoe", "LCOE and supply curves");
    std::string lc_tech, lc_om_mode, lc_sites, lc_out;
    double lc_flh = 982.0, lc_invest = -1.0, lc_om = -1.0, lc_interest = -1.0;
    int lc_lifetime = -1;
    lcoe_cmd->add_option("--tech", lc_tech, "pv-ground, pv-roof or wind");
    lcoe_cmd->add_option("--flh", lc_flh, "full-load hours, kWh/kW.yr");
    lcoe_cmd->add_option("--investment", lc_invest, "GBP per kW");
    lcoe_cmd->add_option("--om", lc_om, "O&M cost");
    lcoe_cmd->add_option("--om-mode", lc_om_mode, "per-kw-year or per-kwh");
    lcoe_cmd->add_option("--lifetime", lc_lifetime, "years");
    lcoe_cmd->add_option("--interest", lc_interest, "rate, e.g. 0.08");
    lcoe_cmd->add_option("--sites", lc_sites, "site CSV annual_TWh,lcoe_GBP_per_kWh[,site_id]");
    lcoe_cmd->add_option("--out", lc_out, "curve CSV output");

    // scenario
    auto* scenario = app.add_subcommand("scenario", "full orchestrated run");
    std::string sc_config, sc_out_dir = ".";
    std::vector<int> sc_ids;
    scenario->add_option("--config", sc_config, "key=value run config file");
    scenario->add_option("--out-dir", sc_out_dir, "output directory");
    scenario->add_option("--scenarios", sc_ids, "scenario ids (default 1..8)");
    add_fixture_opts(scenario, fx_opts);

    // overlap
    auto* overlap = app.add_subcommand("overlap", "wind/PV land competition per region");
    std::string ov_out;
    bool ov_wind_denom = false;
    overlap->add_option("--out", ov_out, "overlap table CSV");
    overlap->add_flag("--wind-denominator", ov_wind_denom,
                      "divide by wind-eligible area instead of region area");
    add_fixture_opts(overlap, fx_opts);

    // fit
    auto* fit = app.add_subcommand("fit", "planning-outcome and validation regressions");
    fit->require_subcommand(1);
    std::string fit_data, fit_response;
    std::vector<std::string> fit_covariates;
    int fit_model = 4;
    bool fit_no_turbines = false;
    auto* fit_logit_cmd = fit->add_subcommand("logit");
    fit_logit_cmd->add_option("--data", fit_data, "planning record CSV")->required();
    fit_logit_cmd->add_option("--model", fit_model, "specification 1..4");
    fit_logit_cmd->add_flag("--no-turbine-count", fit_no_turbines);
    auto* fit_probit_cmd = fit->add_subcommand("probit");
    fit_probit_cmd->add_option("--data", fit_data, "planning record CSV")->required();
    fit_probit_cmd->add_option("--model", fit_model, "specification 1..4");
    fit_probit_cmd->add_flag("--no-turbine-count", fit_no_turbines);
    auto* fit_ols_cmd = fit->add_subcommand("ols");
    fit_ols_cmd->add_option("--data", fit_data, "data CSV")->required();
    fit_ols_cmd->add_option("--response", fit_response)->required();
    fit_ols_cmd->add_option("--covariates", fit_covariates)->required();

    // link-la
    auto* link = app.add_subcommand("link-la", "join records to LA regions");
    std::string la_csv, la_records, la_postcodes, la_matched = "matched.csv",
                                                  la_rejects = "rejects.csv";
    link->add_option("--la-table", la_csv, "LA CSV code,name,area_km2")->required();
    link->add_option("--records", la_records, "record CSV id[,la_code][,postcode]")->required();
    link->add_option("--postcodes", la_postcodes, "postcode CSV postcode,la_code");
    link->add_option("--matched-out", la_matched);
    link->add_option("--rejects-out", la_rejects);

    // validate
    auto* validate = app.add_subcommand("validate", "compare per-LA results to an external study");
    std::string va_own, va_external, va_out;
    double va_factor = 8.0;
    validate->add_option("--own", va_own, "per-LA CSV with code,energy_GWh")->required();
    validate->add_option("--external", va_external, "external per-LA CSV")->required();
    validate->add_option("--factor", va_factor, "external scaling factor");
    validate->add_option("--out", va_out, "deviation row CSV");

    // plot
    auto* plot = app.add_subcommand("plot", "render a cost-curve CSV to SVG");
    std::string pl_curve, pl_svg;
    plot->add_option("--curve", pl_curve, "curve CSV")->required();
    plot->add_option("--out", pl_svg, "SVG output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;  // bad flags are config errors
    }

    try {
        (void)thread_cap();  // the orchestrator runs serially; any cap >= 1 holds

        if (ingest->parsed()) {
            if (in_points.empty() == in_grid.empty()) {
                throw vre::ConfigError("ingest needs exactly one of --points or --grid");
            }
            return cmd_ingest(in_points, in_grid, in_out, in_votes, fx_opts, in_ox, in_oy,
                              in_annual);
        }
        if (exclude->parsed()) return cmd_exclude(fx_opts, ex_buffer, ex_slope, ex_out);
        if (potential->parsed()) {
            if (pot_pv->parsed()) return cmd_potential_pv_ground(fx_opts, pot_scenario, pot_out);
            if (pot_roof->parsed()) return cmd_potential_pv_roof(fx_opts, roof_model, roof_ratios);
            return cmd_potential_wind(fx_opts, pot_scenario, pot_out);
        }
        if (lcoe_cmd->parsed()) {
            return cmd_lcoe(lc_tech, lc_flh, lc_invest, lc_om, lc_om_mode, lc_lifetime,
                            lc_interest, lc_sites, lc_out);
        }
        if (scenario->parsed()) {
            vre::RunConfig cfg;
            if (!sc_config.empty()) {
                cfg = vre::RunConfig::load(sc_config);
                if (scenario->count("--seed")) cfg.seed = fx_opts.seed;
                if (!sc_ids.empty()) cfg.scenario_ids = sc_ids;
                if (scenario->count("--out-dir")) cfg.output_dir = sc_out_dir;
            } else {
                cfg = fixture_run_config(fx_opts, sc_ids.empty()
                                                      ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}
                                                      : sc_ids);
                cfg.output_dir = sc_out_dir;
            }
            const vre::ScenarioRunResult result = vre::run_scenario(cfg);
            for (const auto& f : result.written_files) std::cout << "wrote " << f << "\n";
            return 0;
        }
        if (overlap->parsed()) return cmd_overlap(fx_opts, ov_out, ov_wind_denom);
        if (fit->parsed()) {
            if (fit_ols_cmd->parsed()) return cmd_fit_ols(fit_data, fit_response, fit_covariates);
            return cmd_fit_binary(fit_data, fit_model, fit_probit_cmd->parsed(),
                                  !fit_no_turbines);
        }
        if (link->parsed()) {
            return cmd_link_la(la_csv, la_records, la_postcodes, la_matched, la_rejects);
        }
        if (validate->parsed()) return cmd_validate(va_own, va_external, va_factor, va_out);
        if (plot->parsed()) {
            vre::emit_plot(pl_curve, pl_svg);
            std::cout << "wrote " << pl_svg << "\n";
            return 0;
        }
    } catch (const vre::ConfigError& e) {
        json report = {{"error", {{"kind", "config"}, {"message", e.what()}}}};
        std::cerr << report.dump() << "\n";
        return 1;
    } catch (const vre::VreError& e) {
        json report = {{"error", {{"kind", "data"}, {"message", e.what()}}}};
        std::cerr << report.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json report = {{"error", {{"kind", "data"}, {"message", e.what()}}}};
        std::cerr << report.dump() << "\n";
        return 2;
    }
    return 0;
}
