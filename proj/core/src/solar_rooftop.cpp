#include "vre/solar_rooftop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "vre/csv.hpp"
#include "vre/errors.hpp"

namespace vre {

namespace {

const std::array<const char*, 8> kSectors = {"S", "SW", "W", "NW", "N", "NE", "E", "SE"};

// Orientation weight on the 17% tilt gain: full credit facing south,
// negative towards north.
double sector_weight(const std::string& sector) {
    if (sector == "S" || sector == "flat") return 1.0;
    if (sector == "SE" || sector == "SW") return 0.75;
    if (sector == "E" || sector == "W") return 0.35;
    if (sector == "NE" || sector == "NW") return -0.25;
    if (sector == "N") return -0.60;
    throw InvalidInputError("unknown azimuth sector '" + sector + "'");
}

}  // namespace

double RoofClass::representative_tilt() const {
    return tilt_band_deg == 0.0 ? 0.0 : tilt_band_deg + 5.0;
}

double default_relative_irradiance(const std::string& azimuth_sector, double tilt_deg) {
    constexpr double kOptTilt = 35.0;
    constexpr double kMaxGain = 0.17;
    const double w = sector_weight(azimuth_sector);
    double shape;
    if (tilt_deg <= kOptTilt) {
        shape = std::sin(tilt_deg / kOptTilt * M_PI / 2.0);
    } else {
        shape = std::cos((tilt_deg - kOptTilt) / (90.0 - kOptTilt) * M_PI / 2.0);
    }
    const double irr = 1.0 + kMaxGain * w * shape;
    return std::clamp(irr, 0.05, 1.2);
}

RoofClassModel::RoofClassModel(std::vector<RoofClass> classes)
    : classes_(std::move(classes)) {
    if (classes_.size() != kClassCount) {
        throw DataError("RoofClassModel: expected 72 classes, got " +
                        std::to_string(classes_.size()));
    }
    double sum_p = 0.0;
    for (const auto& c : classes_) {
        if (c.proportion < 0.0) throw DataError("RoofClassModel: negative proportion");
        if (!(c.relative_irradiance > 0.0) || c.relative_irradiance > 1.2) {
            throw DataError("RoofClassModel: relative irradiance outside (0,1.2]");
        }
        if (c.representative_tilt() >= 90.0) {
            throw DataError("RoofClassModel: tilt band at or beyond vertical");
        }
        if (c.tilt_band_deg == 0.0 && c.azimuth_sector != "flat") {
            throw DataError("RoofClassModel: tilt-0 classes must carry azimuth 'flat'");
        }
        sum_p += c.proportion;
    }
    if (std::abs(sum_p - 1.0) > 1e-9) {
        throw DataError("RoofClassModel: class proportions sum to " +
                        std::to_string(sum_p) + ", expected 1");
    }
}

RoofClassModel RoofClassModel::default_model() {
    std::vector<RoofClass> classes;
    classes.reserve(kClassCount);
    const double p = 1.0 / static_cast<double>(kClassCount);
    for (const char* sector : kSectors) {
        for (int band = 0; band < 9; ++band) {
            RoofClass c;
            c.tilt_band_deg = band * 10.0;
            c.azimuth_sector = band == 0 ? "flat" : sector;
            c.proportion = p;
            const double tilt = c.representative_tilt();
            c.relative_irradiance =
                default_relative_irradiance(band == 0 ? "flat" : sector, tilt);
            if (band == 0) c.relative_irradiance = 1.0;
            classes.push_back(std::move(c));
        }
    }
    return RoofClassModel(std::move(classes));
}

RoofClassModel RoofClassModel::load_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const std::size_t ca = t.column("azimuth_sector");
    const std::size_t cv = t.column("tilt_band_deg");
    const std::size_t cp = t.column("p");
    const std::size_t ci = t.column("irr");
    std::vector<RoofClass> classes;
    classes.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        RoofClass c;
        c.azimuth_sector = row.at(ca);
        c.tilt_band_deg = csv::to_double(row.at(cv), path);
        c.proportion = csv::to_double(row.at(cp), path);
        c.relative_irradiance = csv::to_double(row.at(ci), path);
        classes.push_back(std::move(c));
    }
    return RoofClassModel(std::move(classes));
}

void RoofClassModel::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write roof model '" + path + "'");
    out << "azimuth_sector,tilt_band_deg,p,irr\n";
    for (const auto& c : classes_) {
        char p_buf[32];
        // full precision: the proportions must survive a round trip or the
        // sum-to-one check rejects the reloaded model
        std::snprintf(p_buf, sizeof p_buf, "%.17g", c.proportion);
        out << c.azimuth_sector << ',' << csv::format_number(c.tilt_band_deg) << ','
            << p_buf << ',' << csv::format_number(c.relative_irradiance) << "\n";
    }
}

void FootprintRatioTable::set(int category, double ratio) {
    if (ratio < 0.0 || ratio > 1.0) {
        throw InvalidInputError("FootprintRatioTable: ratio outside [0,1] for category " +
                                std::to_string(category));
    }
    ratios_[category] = ratio;
}

double FootprintRatioTable::get(int category) const {
    const auto it = ratios_.find(category);
    if (it == ratios_.end()) {
        throw DataError("FootprintRatioTable: no ratio for category " +
                        std::to_string(category));
    }
    return it->second;
}

bool FootprintRatioTable::has(int category) const { return ratios_.count(category) > 0; }

FootprintRatioTable FootprintRatioTable::load_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const std::size_t cc = t.column("category");
    const std::size_t cr = t.column("ratio");
    FootprintRatioTable table;
    for (const auto& row : t.rows) {
        table.set(static_cast<int>(csv::to_long(row.at(cc), path)),
                  csv::to_double(row.at(cr), path));
    }
    return table;
}

double footprint_ratio(double footprint_area_m2, double land_area_m2) {
    if (!(land_area_m2 > 0.0)) {
        throw InvalidInputError("footprint_ratio: land area must be > 0");
    }
    if (footprint_area_m2 < 0.0 || footprint_area_m2 > land_area_m2) {
        throw InvalidInputError("footprint_ratio: footprint must be in [0, land area]");
    }
    return footprint_area_m2 / land_area_m2;
}

std::vector<double> usable_roof_area(double land_area_m2, double ratio,
                                     const RoofClassModel& model) {
    std::vector<double> out;
    out.reserve(model.classes().size());
    for (const auto& c : model.classes()) {
        const double tilt_rad = c.representative_tilt() * M_PI / 180.0;
        out.push_back(land_area_m2 * ratio * c.proportion / std::cos(tilt_rad));
    }
    return out;
}

double pv_roof_potential(const std::vector<double>& usable_areas_m2, double irradiance_wm2,
                         const PvParams& params, const RoofClassModel& model) {
    params.validate();
    if (irradiance_wm2 < 0.0) throw DataError("pv_roof_potential: negative irradiance");
    if (usable_areas_m2.size() != model.classes().size()) {
        throw InvalidInputError("pv_roof_potential: area/class count mismatch");
    }
    double weighted_area = 0.0;
    for (std::size_t i = 0; i < usable_areas_m2.size(); ++i) {
        weighted_area += usable_areas_m2[i] * model.classes()[i].relative_irradiance;
    }
    const double kwh_per_m2 = irradiance_wm2 * params.hours_per_year / 1000.0;
    return kwh_per_m2 * params.efficiency * params.performance_ratio * weighted_area;
}

}  // namespace vre
