#pragma once

#include <string>
#include <vector>

#include "vre/errors.hpp"

namespace vre {

enum class OmMode { PerKwYear, PerKwh };

/// Technology economics: investment and O&M per installed kW, fixed
/// lifetime, constant annual energy.
struct EconParams {
    double investment_gbp_per_kw = 0.0;
    double om_cost = 0.0;
    OmMode om_mode = OmMode::PerKwYear;
    int lifetime_years = 20;
    double interest = 0.08;

    void validate() const;
};

EconParams ground_pv_econ();   // 500 GBP/kW, 8 GBP/kW.yr
EconParams rooftop_pv_econ();  // 1130 GBP/kW, 9.57 GBP/kW.yr
EconParams wind_econ();        // 1050 GBP/kW, 0.02 GBP/kWh

/// Present-value factor of a constant annual stream over the lifetime.
double annuity_factor(double interest, int lifetime_years);

/// Discounted lifetime cost over discounted lifetime energy, GBP/kWh.
/// `annual_energy_kwh_per_kw` is the full-load hours of the installation.
double lcoe(const EconParams& params, double annual_energy_kwh_per_kw);

struct CostCurvePoint {
    double cumulative_twh = 0.0;
    double marginal_lcoe = 0.0;
    long site_id = -1;
};

struct CostCurveInput {
    double annual_twh = 0.0;
    double lcoe = 0.0;
    long site_id = -1;
};

/// Supply curve: sites sorted by ascending LCOE with cumulative energy.
std::vector<CostCurvePoint> cost_curve(std::vector<CostCurveInput> sites);

}  // namespace vre
