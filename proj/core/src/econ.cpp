#include "vre/econ.hpp"

#include <algorithm>
#include <cmath>

namespace vre {

void EconParams::validate() const {
    if (lifetime_years < 1) throw ConfigError("EconParams: lifetime must be >= 1 year");
    if (interest < 0.0) throw ConfigError("EconParams: interest must be >= 0");
    if (investment_gbp_per_kw < 0.0) throw ConfigError("EconParams: negative investment");
}

EconParams ground_pv_econ() { return {500.0, 8.00, OmMode::PerKwYear, 20, 0.08}; }
EconParams rooftop_pv_econ() { return {1130.0, 9.57, OmMode::PerKwYear, 20, 0.08}; }
EconParams wind_econ() { return {1050.0, 0.02, OmMode::PerKwh, 20, 0.08}; }

double annuity_factor(double interest, int lifetime_years) {
    if (interest == 0.0) return static_cast<double>(lifetime_years);
    return (1.0 - std::pow(1.0 + interest, -lifetime_years)) / interest;
}

double lcoe(const EconParams& params, double annual_energy_kwh_per_kw) {
    params.validate();
    if (!(annual_energy_kwh_per_kw > 0.0)) {
        throw InvalidInputError("lcoe: annual energy must be > 0");
    }
    const double a = annuity_factor(params.interest, params.lifetime_years);
    // Discounted cost over discounted energy; the constant annual terms
    // share the annuity factor, so fixed O&M reduces to M/E.
    double value = params.investment_gbp_per_kw / (a * annual_energy_kwh_per_kw);
    if (params.om_mode == OmMode::PerKwYear) {
        value += params.om_cost / annual_energy_kwh_per_kw;
    } else {
        value += params.om_cost;
    }
    return value;
}

std::vector<CostCurvePoint> cost_curve(std::vector<CostCurveInput> sites) {
    for (const auto& s : sites) {
        if (!std::isfinite(s.lcoe)) {
            throw InvalidInputError("cost_curve: non-finite LCOE for site " +
                                    std::to_string(s.site_id));
        }
    }
    std::stable_sort(sites.begin(), sites.end(),
                     [](const CostCurveInput& a, const CostCurveInput& b) {
                         if (a.lcoe != b.lcoe) return a.lcoe < b.lcoe;
                         return a.site_id < b.site_id;
                     });
    std::vector<CostCurvePoint> out;
    out.reserve(sites.size());
    double cum = 0.0;
    for (const auto& s : sites) {
        cum += s.annual_twh;
        out.push_back({cum, s.lcoe, s.site_id});
    }
    return out;
}

}  // namespace vre
