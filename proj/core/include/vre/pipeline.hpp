#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vre/econ.hpp"
#include "vre/fixture.hpp"
#include "vre/solar_ground.hpp"
#include "vre/solar_rooftop.hpp"
#include "vre/wind.hpp"

namespace vre {

/// Orchestrator configuration, loadable from a key=value file. When no
/// layer paths are given, a synthetic fixture is generated from the master
/// spec and seed.
struct RunConfig {
    GridSpec master;
    std::uint64_t seed = 42;
    std::vector<int> scenario_ids = {1, 2, 3, 4, 5, 6, 7, 8};
    bool run_wind = true;
    bool run_pv_ground = true;
    bool run_pv_roof = true;
    std::string output_dir = ".";

    // Optional external layers (ESRI ASCII grids / CSVs); all-or-nothing
    // is not required, fixture layers back any that are missing.
    std::map<std::string, std::string> layer_paths;

    double wind_buffer_m = 500.0;
    double wind_slope_limit_deg = 20.0;
    double pv_slope_limit_deg = 15.0;

    static RunConfig load(const std::string& path);
};

struct ScenarioTotals {
    int scenario_id = 0;
    double wind_area_km2 = 0.0;
    double wind_twh = 0.0;
    double pv_ground_area_km2 = 0.0;
    double pv_ground_twh = 0.0;
    double roof_area_km2 = 0.0;
    double roof_twh = 0.0;
};

struct ScenarioRunResult {
    std::vector<ScenarioTotals> totals;
    std::vector<std::string> written_files;
};

/// End-to-end run: exclusion masks, per-scenario potentials, per-LA
/// aggregation, cost curves (CSV + SVG) and the wind/PV overlap table.
/// Deterministic for fixed config.
ScenarioRunResult run_scenario(const RunConfig& config);

/// The per-scenario potential computation without file output; used by the
/// CLI and by verification. Fixture layers are taken as given.
struct PipelinePotentials {
    std::map<int, double> wind_twh_by_scenario;
    std::map<int, double> pv_ground_twh_by_scenario;
    double roof_twh = 0.0;
    double roof_area_km2 = 0.0;
    std::map<int, double> wind_area_km2;
    std::map<int, double> pv_area_km2;
    std::map<int, Mask> wind_mask_by_scenario;
    std::map<int, Mask> pv_mask_by_scenario;
    std::map<int, WindPotentialResult> wind_results;
    std::map<int, PvGroundResult> pv_results;
};

PipelinePotentials compute_potentials(const SyntheticFixture& fx,
                                      const std::vector<int>& scenario_ids,
                                      const RunConfig& config);

}  // namespace vre
