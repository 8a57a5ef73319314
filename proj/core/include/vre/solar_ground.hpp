#pragma once

#include <vector>

#include "vre/grid.hpp"

namespace vre {

struct PvParams {
    double efficiency = 0.15;
    double performance_ratio = 0.85;
    double packing_factor = 0.51;
    double hours_per_year = 8760.0;

    void validate() const;
};

struct YieldCell {
    std::size_t cell_index = 0;
    double x = 0.0;
    double y = 0.0;
    double area_m2 = 0.0;
    double irradiance_wm2 = 0.0;
    double annual_energy_kwh = 0.0;
};

/// Optimal module tilt for a GB-like latitude band: 30 deg at latitude 50
/// rising linearly to 40 deg at latitude 58, clamped outside.
double optimal_tilt_deg(double latitude_deg);

/// Horizontal-to-tilted irradiation multiplier for a south-facing module:
/// 1.0 at tilt 0 rising to 1.17 at the optimal tilt, easing off beyond it.
double tilt_gain(double tilt_deg, double latitude_deg);

/// Gain at the latitude's optimal tilt (the 1.17 ceiling everywhere in band).
double tilt_gain(double latitude_deg);

struct PvGroundResult {
    std::vector<YieldCell> cells;
    double total_kwh = 0.0;
};

/// Ground-mounted PV potential over the eligible mask. Irradiance is mean
/// power density (W/m2); annual yield per cell is
/// gain * h * eta * H * A * PR * PF.
PvGroundResult pv_ground_potential(const Mask& mask, const NumericGrid& irradiance_wm2,
                                   const PvParams& params, const NumericGrid& gain);

}  // namespace vre
