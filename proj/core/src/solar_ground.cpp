#include "vre/solar_ground.hpp"

#include <algorithm>
#include <cmath>

#include "vre/errors.hpp"

namespace vre {

void PvParams::validate() const {
    auto check_fraction = [](double v, const char* name) {
        if (!(v > 0.0) || v > 1.0) {
            throw ConfigError(std::string("PvParams: ") + name + " must be in (0,1]");
        }
    };
    check_fraction(efficiency, "efficiency");
    check_fraction(performance_ratio, "performance_ratio");
    check_fraction(packing_factor, "packing_factor");
    if (!(hours_per_year > 0.0)) throw ConfigError("PvParams: hours_per_year must be > 0");
}

double optimal_tilt_deg(double latitude_deg) {
    const double lat = std::clamp(latitude_deg, 50.0, 58.0);
    return 30.0 + (lat - 50.0) / 8.0 * 10.0;
}

double tilt_gain(double tilt_deg, double latitude_deg) {
    const double t_opt = optimal_tilt_deg(latitude_deg);
    const double t = std::clamp(tilt_deg, 0.0, 90.0);
    constexpr double kMaxGain = 0.17;
    if (t <= t_opt) {
        // Smooth rise from 1.0 at horizontal to the 17% ceiling at optimum.
        return 1.0 + kMaxGain * std::sin(t / t_opt * M_PI / 2.0);
    }
    // Past the optimum the incidence penalty takes over; fall back towards
    // vertical with the same half-cosine shape.
    return 1.0 + kMaxGain * std::cos((t - t_opt) / (90.0 - t_opt) * M_PI / 2.0);
}

double tilt_gain(double latitude_deg) {
    return tilt_gain(optimal_tilt_deg(latitude_deg), latitude_deg);
}

PvGroundResult pv_ground_potential(const Mask& mask, const NumericGrid& irradiance_wm2,
                                   const PvParams& params, const NumericGrid& gain) {
    params.validate();
    require_aligned(mask.spec(), irradiance_wm2.spec(), "pv_ground_potential");
    require_aligned(mask.spec(), gain.spec(), "pv_ground_potential");

    const GridSpec& s = mask.spec();
    const double area = s.cell_area();
    PvGroundResult out;
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            const std::size_t i = s.index(r, c);
            if (!mask.get(i)) continue;
            if (irradiance_wm2.is_nodata(i)) continue;
            const double h_wm2 = irradiance_wm2[i];
            if (h_wm2 < 0.0) {
                throw DataError("pv_ground_potential: negative irradiance at cell " +
                                std::to_string(i));
            }
            const double kwh_per_m2 = h_wm2 * params.hours_per_year / 1000.0;
            const double energy = gain[i] * kwh_per_m2 * params.efficiency *
                                  params.performance_ratio * params.packing_factor * area;
            out.cells.push_back({i, s.cell_x(c), s.cell_y(r), area, h_wm2, energy});
            out.total_kwh += energy;
        }
    }
    return out;
}

}  // namespace vre
