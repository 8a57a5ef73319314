#include "vre/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vre/csv.hpp"
#include "vre/errors.hpp"
#include "vre/grid_io.hpp"
#include "vre/plot.hpp"

namespace vre {

namespace fs = std::filesystem;

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open run config '" + path + "'");
    RunConfig cfg;
    cfg.master.n_rows = 100;
    cfg.master.n_cols = 100;
    cfg.master.cell_size = 1000.0;
    cfg.scenario_ids.clear();
    bool scenarios_set = false;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ": expected key=value, got '" + line + "'");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "rows") cfg.master.n_rows = std::stoul(value);
            else if (key == "cols") cfg.master.n_cols = std::stoul(value);
            else if (key == "cell_size") cfg.master.cell_size = std::stod(value);
            else if (key == "origin_x") cfg.master.origin_x = std::stod(value);
            else if (key == "origin_y") cfg.master.origin_y = std::stod(value);
            else if (key == "crs") cfg.master.crs_label = value;
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "out_dir") cfg.output_dir = value;
            else if (key == "wind_buffer_m") cfg.wind_buffer_m = std::stod(value);
            else if (key == "wind_slope_limit") cfg.wind_slope_limit_deg = std::stod(value);
            else if (key == "pv_slope_limit") cfg.pv_slope_limit_deg = std::stod(value);
            else if (key == "scenarios") {
                scenarios_set = true;
                std::istringstream vs(value);
                std::string tok;
                while (std::getline(vs, tok, ';')) {
                    if (!tok.empty()) cfg.scenario_ids.push_back(std::stoi(tok));
                }
            } else if (key == "technologies") {
                cfg.run_wind = value.find("wind") != std::string::npos;
                cfg.run_pv_ground = value.find("pv_ground") != std::string::npos;
                cfg.run_pv_roof = value.find("pv_roof") != std::string::npos;
            } else if (key.rfind("layer.", 0) == 0) {
                cfg.layer_paths[key.substr(6)] = value;
            } else {
                throw ConfigError(path + ": unknown key '" + key + "'");
            }
        } catch (const VreError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(path + ": bad value for '" + key + "'");
        }
    }
    if (!scenarios_set) cfg.scenario_ids = {1, 2, 3, 4, 5, 6, 7, 8};
    cfg.master.validate();
    for (const auto& [name, file] : cfg.layer_paths) {
        if (!fs::exists(file)) {
            throw DataError("layer '" + name + "': file not found: " + file);
        }
    }
    return cfg;
}

namespace {

NumericGrid gain_from_latitude(const NumericGrid& latitude) {
    NumericGrid gain(latitude.spec());
    for (std::size_t i = 0; i < gain.size(); ++i) {
        gain[i] = latitude.is_nodata(i) ? 1.0 : tilt_gain(latitude[i]);
    }
    return gain;
}

double mask_area_km2(const Mask& m) {
    return static_cast<double>(m.count()) * m.spec().cell_area() / 1e6;
}

// Rooftop potential from the land-use raster: per urban category, land
// area x footprint ratio spread over the default roof class model at the
// category's mean irradiance.
struct RoofOutcome {
    double total_kwh = 0.0;
    double roof_area_m2 = 0.0;
    std::vector<CellEnergy> cell_energy;
};

RoofOutcome rooftop_from_landuse(const SyntheticFixture& fx, const PvParams& params,
                                 const RoofClassModel& model,
                                 const FootprintRatioTable& ratios) {
    RoofOutcome out;
    const double cell_area = fx.spec.cell_area();
    for (std::size_t i = 0; i < fx.landuse.size(); ++i) {
        const int code = fx.landuse.get(i);
        if (!ratios.has(code)) continue;
        const double r = ratios.get(code);
        if (r <= 0.0) continue;
        const auto areas = usable_roof_area(cell_area, r, model);
        double roof_area = 0.0;
        for (double a : areas) roof_area += a;
        const double h = fx.irradiance_wm2.is_nodata(i) ? 0.0 : fx.irradiance_wm2[i];
        const double kwh = pv_roof_potential(areas, h, params, model);
        out.total_kwh += kwh;
        out.roof_area_m2 += roof_area;
        out.cell_energy.push_back({i, kwh});
    }
    return out;
}

FootprintRatioTable default_footprint_ratios() {
    FootprintRatioTable t;
    t.set(111, 0.30);
    t.set(112, 0.12);
    t.set(121, 0.25);
    return t;
}

}  // namespace

PipelinePotentials compute_potentials(const SyntheticFixture& fx,
                                      const std::vector<int>& scenario_ids,
                                      const RunConfig& config) {
    PipelinePotentials out;

    const NumericGrid slope = compute_slope(fx.dem);
    const Mask suitable = compose_precedence(fx.osm_positive, fx.osm_negative, fx.clc_positive);

    std::vector<BufferedNegative> wind_negatives = {
        {fx.protected_areas, 0.0},
        {fx.osm_negative, config.wind_buffer_m},
    };
    std::vector<BufferedNegative> pv_negatives = {
        {fx.protected_areas, 0.0},
    };
    const Mask wind_geo =
        geographic_potential(suitable, wind_negatives, slope, config.wind_slope_limit_deg);
    const Mask pv_geo =
        geographic_potential(suitable, pv_negatives, slope, config.pv_slope_limit_deg);

    const NumericGrid eff_scenic = effective_scenicness(fx.scenicness, fx.votes);
    const NumericGrid gain = gain_from_latitude(fx.latitude);

    const PvParams pv_params;
    const RoughnessTable roughness = RoughnessTable::default_table();
    const auto& turbines = default_turbine_db();
    const EconParams wind_economics = wind_econ();

    if (config.run_pv_roof) {
        const RoofOutcome roof = rooftop_from_landuse(
            fx, pv_params, RoofClassModel::default_model(), default_footprint_ratios());
        out.roof_twh = roof.total_kwh / 1e9;
        out.roof_area_km2 = roof.roof_area_m2 / 1e6;
    }

    for (int id : scenario_ids) {
        const ScenarioConfig cfg = scenario_by_id(id);

        // Scenario split: the scenicness quartile constrains wind, the
        // agricultural-grade set constrains ground PV.
        ScenarioConfig wind_cfg = cfg;
        wind_cfg.ag_excluded_grades.clear();
        ScenarioConfig pv_cfg = cfg;
        pv_cfg.scenic_threshold = 10.0;

        if (config.run_wind) {
            const Mask wind_mask =
                apply_scenario_prefilled(wind_geo, eff_scenic, fx.ag_grades, wind_cfg);
            WindPotentialResult wind = wind_potential(wind_mask, fx.v10_ms, fx.landuse,
                                                      roughness, turbines, wind_economics);
            out.wind_twh_by_scenario[id] = wind.total_twh;
            out.wind_area_km2[id] = mask_area_km2(wind_mask);
            out.wind_mask_by_scenario[id] = wind_mask;
            out.wind_results[id] = std::move(wind);
        }
        if (config.run_pv_ground) {
            const Mask pv_mask =
                apply_scenario_prefilled(pv_geo, eff_scenic, fx.ag_grades, pv_cfg);
            PvGroundResult pv = pv_ground_potential(pv_mask, fx.irradiance_wm2, pv_params, gain);
            out.pv_ground_twh_by_scenario[id] = pv.total_kwh / 1e9;
            out.pv_area_km2[id] = mask_area_km2(pv_mask);
            out.pv_mask_by_scenario[id] = pv_mask;
            out.pv_results[id] = std::move(pv);
        }
    }
    return out;
}

namespace {

void write_per_la(const std::string& path, const std::vector<LAEnergy>& rows,
                  const std::string& tech, int scenario_id) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "code,name,tech,scenario_id,energy_GWh,energy_GWh_per_km2\n";
    for (const auto& r : rows) {
        out << r.code << ',' << r.name << ',' << tech << ',' << scenario_id << ','
            << csv::format_number(r.energy_gwh) << ','
            << csv::format_number(r.energy_gwh_per_km2) << "\n";
    }
}

void write_cost_curve(const std::string& path, const std::vector<CostCurvePoint>& curve) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "cumulative_TWh,lcoe_GBP_per_kWh,site_id\n";
    for (const auto& p : curve) {
        out << csv::format_number(p.cumulative_twh) << ','
            << csv::format_number(p.marginal_lcoe) << ',' << p.site_id << "\n";
    }
}

}  // namespace

ScenarioRunResult run_scenario(const RunConfig& config) {
    fs::create_directories(config.output_dir);

    SyntheticFixture fx = generate_fixture(config.master, config.seed);
    // External layers override fixture ones when provided.
    auto layer = [&](const char* name) {
        const auto it = config.layer_paths.find(name);
        return it == config.layer_paths.end() ? std::string() : it->second;
    };
    if (!layer("dem").empty()) fx.dem = resample_nearest(read_ascii_grid(layer("dem")), fx.spec);
    if (!layer("irradiance").empty()) {
        fx.irradiance_wm2 = resample_nearest(read_ascii_grid(layer("irradiance")), fx.spec);
    }
    if (!layer("wind").empty()) {
        fx.v10_ms = resample_nearest(read_ascii_grid(layer("wind")), fx.spec);
    }
    if (!layer("scenicness").empty()) {
        fx.scenicness = resample_nearest(read_ascii_grid(layer("scenicness")), fx.spec);
    }

    const PipelinePotentials pot = compute_potentials(fx, config.scenario_ids, config);

    ScenarioRunResult result;
    auto out_path = [&](const std::string& name) {
        const std::string p = (fs::path(config.output_dir) / name).string();
        result.written_files.push_back(p);
        return p;
    };

    // Scenario totals in the eight-row overview layout.
    {
        std::ofstream out(out_path("scenario_totals.csv"), std::ios::binary);
        out << "scenario_id,wind_area_km2,wind_TWh,pv_ground_area_km2,pv_ground_TWh,"
               "rooftop_area_km2,rooftop_TWh\n";
        for (int id : config.scenario_ids) {
            ScenarioTotals t;
            t.scenario_id = id;
            if (pot.wind_twh_by_scenario.count(id)) {
                t.wind_twh = pot.wind_twh_by_scenario.at(id);
                t.wind_area_km2 = pot.wind_area_km2.at(id);
            }
            if (pot.pv_ground_twh_by_scenario.count(id)) {
                t.pv_ground_twh = pot.pv_ground_twh_by_scenario.at(id);
                t.pv_ground_area_km2 = pot.pv_area_km2.at(id);
            }
            t.roof_twh = pot.roof_twh;
            t.roof_area_km2 = pot.roof_area_km2;
            result.totals.push_back(t);
            out << id << ',' << csv::format_number(t.wind_area_km2) << ','
                << csv::format_number(t.wind_twh) << ','
                << csv::format_number(t.pv_ground_area_km2) << ','
                << csv::format_number(t.pv_ground_twh) << ','
                << csv::format_number(t.roof_area_km2) << ','
                << csv::format_number(t.roof_twh) << "\n";
        }
    }

    // Per-LA tables for the first requested scenario of each technology.
    if (!config.scenario_ids.empty()) {
        const int first = config.scenario_ids.front();
        if (pot.wind_results.count(first)) {
            std::vector<CellEnergy> cells;
            for (const auto& s : pot.wind_results.at(first).sites) {
                cells.push_back({s.cell_index, s.annual_energy_kwh});
            }
            write_per_la(out_path("per_la_wind.csv"),
                         aggregate_to_la(cells, fx.region_grid, fx.la_table), "wind", first);
        }
        if (pot.pv_results.count(first)) {
            std::vector<CellEnergy> cells;
            for (const auto& c : pot.pv_results.at(first).cells) {
                cells.push_back({c.cell_index, c.annual_energy_kwh});
            }
            write_per_la(out_path("per_la_pv_ground.csv"),
                         aggregate_to_la(cells, fx.region_grid, fx.la_table), "pv_ground",
                         first);
        }
    }

    // Cost curves per technology at the least-restricted requested scenario.
    auto emit_curve = [&](const std::string& stem, const std::vector<CostCurveInput>& sites) {
        const auto curve = cost_curve(sites);
        const std::string csv_path = out_path(stem + ".csv");
        write_cost_curve(csv_path, curve);
        const std::string svg_path = out_path(stem + ".svg");
        std::ofstream svg(svg_path, std::ios::binary);
        svg << render_cost_curve_svg(curve, stem);
    };
    if (!pot.wind_results.empty()) {
        const auto& wind = pot.wind_results.begin()->second;
        std::vector<CostCurveInput> sites;
        for (const auto& s : wind.sites) {
            sites.push_back({s.annual_energy_kwh / 1e9, s.lcoe,
                             static_cast<long>(s.cell_index)});
        }
        emit_curve("cost_curve_wind", sites);
    }
    if (!pot.pv_results.empty()) {
        const EconParams econ = ground_pv_econ();
        const PvParams params;
        const auto& pv = pot.pv_results.begin()->second;
        std::vector<CostCurveInput> sites;
        for (const auto& c : pv.cells) {
            // Full-load hours per installed kW: kW capacity scales with
            // area, so yield per kW depends on irradiance alone.
            const double kw_capacity =
                c.area_m2 * params.packing_factor * params.efficiency;  // 1 kW/m2 STC
            if (kw_capacity <= 0.0 || c.annual_energy_kwh <= 0.0) continue;
            const double flh = c.annual_energy_kwh / kw_capacity;
            sites.push_back({c.annual_energy_kwh / 1e9, lcoe(econ, flh),
                             static_cast<long>(c.cell_index)});
        }
        emit_curve("cost_curve_pv_ground", sites);
    }

    // Wind/PV overlap across the four scenicness thresholds, against the
    // least-restricted PV mask available.
    if (!pot.wind_mask_by_scenario.empty() && !pot.pv_mask_by_scenario.empty()) {
        std::map<double, Mask> wind_by_threshold;
        for (const auto& [id, mask] : pot.wind_mask_by_scenario) {
            wind_by_threshold.emplace(scenario_by_id(id).scenic_threshold, mask);
        }
        // prefer the low-restriction PV scenario (ids 5-8) when present
        const Mask* pv_mask = &pot.pv_mask_by_scenario.begin()->second;
        for (const auto& [id, mask] : pot.pv_mask_by_scenario) {
            if (id >= 5) {
                pv_mask = &mask;
                break;
            }
        }
        const auto rows = overlap_analysis(wind_by_threshold, *pv_mask, fx.region_grid,
                                           fx.la_table, fx.landuse);
        std::ofstream out(out_path("overlap.csv"), std::ios::binary);
        out << "code,scenic_threshold,wind_area_km2,pv_area_km2,intersection_km2,"
               "overlap_fraction,rural,selected\n";
        for (const auto& r : rows) {
            out << r.region_code << ',' << csv::format_number(r.scenic_threshold) << ','
                << csv::format_number(r.wind_area_km2) << ','
                << csv::format_number(r.pv_area_km2) << ','
                << csv::format_number(r.intersection_km2) << ','
                << csv::format_number(r.overlap_fraction) << ',' << (r.rural ? 1 : 0) << ','
                << (r.selected ? 1 : 0) << "\n";
        }
    }

    return result;
}

}  // namespace vre
