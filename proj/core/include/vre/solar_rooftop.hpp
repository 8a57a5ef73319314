#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "vre/solar_ground.hpp"

namespace vre {

/// One of the 72 roof orientation classes: 8 azimuth sectors x 9 tilt
/// bands (0..80 deg in 10 deg steps). The 0-deg band is "flat" and carries
/// no azimuth.
struct RoofClass {
    std::string azimuth_sector;  // "flat", "S", "SW", "W", "NW", "N", "NE", "E", "SE"
    double tilt_band_deg = 0.0;  // lower edge of the band
    double proportion = 0.0;
    double relative_irradiance = 1.0;

    /// Band midpoint; the flat band uses 0 deg.
    double representative_tilt() const;
};

class RoofClassModel {
public:
    static constexpr std::size_t kClassCount = 72;

    explicit RoofClassModel(std::vector<RoofClass> classes);

    /// Default model: uniform class proportions with an isotropic-style
    /// irradiance table scaled so south-at-optimum is 1.17 and flat is 1.0.
    static RoofClassModel default_model();

    static RoofClassModel load_csv(const std::string& path);
    void save_csv(const std::string& path) const;

    const std::vector<RoofClass>& classes() const { return classes_; }

private:
    std::vector<RoofClass> classes_;
};

/// Relative irradiance used by the default model.
double default_relative_irradiance(const std::string& azimuth_sector, double tilt_deg);

/// Building footprint to land area ratio per land-use category.
class FootprintRatioTable {
public:
    void set(int category, double ratio);
    double get(int category) const;
    bool has(int category) const;
    const std::map<int, double>& ratios() const { return ratios_; }

    static FootprintRatioTable load_csv(const std::string& path);

private:
    std::map<int, double> ratios_;
};

/// r = s/A. Requires A > 0 and 0 <= s <= A.
double footprint_ratio(double footprint_area_m2, double land_area_m2);

/// U_i = A * r * p_i / cos(v_i) with v_i the band's representative tilt.
std::vector<double> usable_roof_area(double land_area_m2, double ratio,
                                     const RoofClassModel& model);

/// E = h * eta * H * PR * sum(U_i * irr_i). No packing factor: the class
/// areas are already net of obstructions.
double pv_roof_potential(const std::vector<double>& usable_areas_m2, double irradiance_wm2,
                         const PvParams& params, const RoofClassModel& model);

}  // namespace vre
