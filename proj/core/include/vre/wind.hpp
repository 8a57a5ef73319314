#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vre/econ.hpp"
#include "vre/grid.hpp"

namespace vre {

struct PowerCurvePoint {
    double speed_ms = 0.0;
    double power_kw = 0.0;
};

struct TurbineSpec {
    std::string name;
    double rated_power_kw = 0.0;
    double rotor_diameter_m = 0.0;
    std::vector<double> hub_heights_m;
    std::vector<PowerCurvePoint> power_curve;
    double cut_in_ms = 0.0;
    double cut_out_ms = 0.0;  // may be +inf
    double investment_gbp_per_kw = 0.0;
    double om_gbp_per_kwh = 0.0;

    void validate() const;
    /// Piecewise-linear interpolation of the curve, clamped to zero outside
    /// [cut_in, cut_out] and capped at rated power.
    double power_at(double speed_ms) const;
};

/// Built-in three-entry database so the pipeline runs without external data.
const std::vector<TurbineSpec>& default_turbine_db();

/// Turbine DB CSV (name,rated_kW,rotor_m,hub_heights_semicolon_list,cut_in,
/// cut_out,invest_GBP_per_kW,om_GBP_per_kWh) plus companion curve CSV
/// (name,speed,power).
std::vector<TurbineSpec> load_turbine_db(const std::string& db_csv,
                                         const std::string& curve_csv);

/// Logarithmic profile from the 10 m reference: v * ln(hub/z0) / ln(10/z0).
double extrapolate_wind(double v10_ms, double roughness_m, double hub_m);

/// Rayleigh (Weibull k=2) speed distribution with the given mean.
struct WindDistribution {
    double shape_k = 2.0;
    double scale_c = 0.0;

    double pdf(double v) const;
    double cdf(double v) const;
    double mean() const;
};

WindDistribution speed_distribution(double mean_speed_ms, double shape_k = 2.0);

/// Expected annual output, kWh/yr: 8760 * integral of f(v) P(v) dv, with
/// probability-mass quadrature at the given speed step.
double annual_energy(const TurbineSpec& turbine, double hub_m, const WindDistribution& dist,
                     double step_ms = 0.01);

struct TurbineChoice {
    const TurbineSpec* turbine = nullptr;
    double hub_m = 0.0;
    double annual_energy_kwh = 0.0;
    double lcoe = 0.0;
    bool feasible = false;
};

/// Evaluates every (turbine, hub height) pair and returns the LCOE
/// minimizer; ties broken by higher energy, then by name order.
TurbineChoice select_turbine(double v10_ms, double roughness_m,
                             const std::vector<TurbineSpec>& db, const EconParams& econ);

struct RoughnessTable {
    std::map<int, double> z0_by_category;

    double lookup(int category) const;
    static RoughnessTable load_csv(const std::string& path);
    static RoughnessTable default_table();
};

struct WindSite {
    std::size_t cell_index = 0;
    double x = 0.0;
    double y = 0.0;
    double v10_ms = 0.0;
    double roughness_m = 0.0;
    std::string turbine_name;
    double hub_m = 0.0;
    long turbine_count = 0;
    double annual_energy_kwh = 0.0;
    double lcoe = 0.0;
    double capacity_mw = 0.0;
};

struct WindPotentialResult {
    std::vector<WindSite> sites;
    double total_twh = 0.0;
    long infeasible_cells = 0;
};

/// Elliptical per-turbine footprint, default 8D downwind by 4D crosswind.
struct SpacingConfig {
    double downwind_diameters = 8.0;
    double crosswind_diameters = 4.0;

    double footprint_m2(double rotor_diameter_m) const;
};

WindPotentialResult wind_potential(const Mask& mask, const NumericGrid& v10,
                                   const CategoricalGrid& landuse,
                                   const RoughnessTable& roughness,
                                   const std::vector<TurbineSpec>& db,
                                   const EconParams& econ,
                                   const SpacingConfig& spacing = {});

}  // namespace vre
