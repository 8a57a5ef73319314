#include "vre/wind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "vre/csv.hpp"
#include "vre/errors.hpp"

namespace vre {

void TurbineSpec::validate() const {
    if (name.empty()) throw ConfigError("TurbineSpec: empty name");
    if (!(rated_power_kw > 0.0)) throw ConfigError("TurbineSpec: rated power must be > 0");
    if (!(rotor_diameter_m > 0.0)) throw ConfigError("TurbineSpec: rotor diameter must be > 0");
    if (hub_heights_m.empty()) throw ConfigError("TurbineSpec: no hub heights");
    if (power_curve.size() < 2) throw ConfigError("TurbineSpec: power curve needs >= 2 points");
    for (std::size_t i = 1; i < power_curve.size(); ++i) {
        if (!(power_curve[i].speed_ms > power_curve[i - 1].speed_ms)) {
            throw ConfigError("TurbineSpec '" + name + "': curve speeds not strictly increasing");
        }
    }
    for (const auto& p : power_curve) {
        if (p.power_kw < 0.0 || p.power_kw > rated_power_kw + 1e-9) {
            throw ConfigError("TurbineSpec '" + name + "': curve power outside [0, rated]");
        }
    }
}

double TurbineSpec::power_at(double v) const {
    if (v < cut_in_ms || v > cut_out_ms) return 0.0;
    if (v <= power_curve.front().speed_ms) return power_curve.front().power_kw;
    if (v >= power_curve.back().speed_ms) return power_curve.back().power_kw;
    const auto it = std::lower_bound(
        power_curve.begin(), power_curve.end(), v,
        [](const PowerCurvePoint& p, double s) { return p.speed_ms < s; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (v - lo.speed_ms) / (hi.speed_ms - lo.speed_ms);
    return std::min(rated_power_kw, lo.power_kw + t * (hi.power_kw - lo.power_kw));
}

namespace {

TurbineSpec make_turbine(std::string name, double rated_kw, double rotor_m,
                         std::vector<double> hubs, double invest, double om) {
    TurbineSpec t;
    t.name = std::move(name);
    t.rated_power_kw = rated_kw;
    t.rotor_diameter_m = rotor_m;
    t.hub_heights_m = std::move(hubs);
    t.cut_in_ms = 3.0;
    t.cut_out_ms = 25.0;
    t.investment_gbp_per_kw = invest;
    t.om_gbp_per_kwh = om;
    // Cubic ramp from cut-in to rated at 12.5 m/s, flat to cut-out.
    const double rated_speed = 12.5;
    for (double v = 0.0; v <= 25.0 + 1e-9; v += 0.5) {
        double p = 0.0;
        if (v >= t.cut_in_ms && v < rated_speed) {
            const double x = (v * v * v - t.cut_in_ms * t.cut_in_ms * t.cut_in_ms) /
                             (rated_speed * rated_speed * rated_speed -
                              t.cut_in_ms * t.cut_in_ms * t.cut_in_ms);
            p = rated_kw * x;
        } else if (v >= rated_speed) {
            p = rated_kw;
        }
        t.power_curve.push_back({v, p});
    }
    t.validate();
    return t;
}

}  // namespace

const std::vector<TurbineSpec>& default_turbine_db() {
    static const std::vector<TurbineSpec> db = {
        make_turbine("VA-600", 600.0, 50.0, {50.0, 75.0}, 1050.0, 0.02),
        make_turbine("VA-1800", 1800.0, 80.0, {80.0, 100.0}, 1050.0, 0.02),
        make_turbine("VA-3000", 3000.0, 112.0, {100.0, 120.0}, 1050.0, 0.02),
    };
    return db;
}

std::vector<TurbineSpec> load_turbine_db(const std::string& db_csv,
                                         const std::string& curve_csv) {
    const csv::Table db = csv::read_file(db_csv);
    const csv::Table curves = csv::read_file(curve_csv);

    std::map<std::string, std::vector<PowerCurvePoint>> curve_by_name;
    {
        const std::size_t cn = curves.column("name");
        const std::size_t cs = curves.column("speed");
        const std::size_t cp = curves.column("power");
        for (const auto& row : curves.rows) {
            curve_by_name[row.at(cn)].push_back(
                {csv::to_double(row.at(cs), curve_csv),
                 csv::to_double(row.at(cp), curve_csv)});
        }
    }
    for (auto& [name, curve] : curve_by_name) {
        std::sort(curve.begin(), curve.end(),
                  [](const PowerCurvePoint& a, const PowerCurvePoint& b) {
                      return a.speed_ms < b.speed_ms;
                  });
    }

    std::vector<TurbineSpec> out;
    const std::size_t cn = db.column("name");
    const std::size_t cr = db.column("rated_kW");
    const std::size_t cd = db.column("rotor_m");
    const std::size_t ch = db.column("hub_heights_semicolon_list");
    const std::size_t ci = db.column("cut_in");
    const std::size_t co = db.column("cut_out");
    const std::size_t cv = db.column("invest_GBP_per_kW");
    const std::size_t cm = db.column("om_GBP_per_kWh");
    for (const auto& row : db.rows) {
        TurbineSpec t;
        t.name = row.at(cn);
        t.rated_power_kw = csv::to_double(row.at(cr), db_csv);
        t.rotor_diameter_m = csv::to_double(row.at(cd), db_csv);
        for (const auto& tok : csv::split_line(row.at(ch), ';')) {
            if (!tok.empty()) t.hub_heights_m.push_back(csv::to_double(tok, db_csv));
        }
        t.cut_in_ms = csv::to_double(row.at(ci), db_csv);
        t.cut_out_ms = csv::to_double(row.at(co), db_csv);
        t.investment_gbp_per_kw = csv::to_double(row.at(cv), db_csv);
        t.om_gbp_per_kwh = csv::to_double(row.at(cm), db_csv);
        const auto it = curve_by_name.find(t.name);
        if (it == curve_by_name.end()) {
            throw DataError("turbine '" + t.name + "' has no power curve in " + curve_csv);
        }
        t.power_curve = it->second;
        t.validate();
        out.push_back(std::move(t));
    }
    return out;
}

double extrapolate_wind(double v10_ms, double roughness_m, double hub_m) {
    if (!(roughness_m > 0.0) || roughness_m >= 10.0) {
        throw InvalidInputError("extrapolate_wind: roughness must be in (0, 10) m");
    }
    if (hub_m < 10.0) throw InvalidInputError("extrapolate_wind: hub height below 10 m");
    return v10_ms * std::log(hub_m / roughness_m) / std::log(10.0 / roughness_m);
}

double WindDistribution::pdf(double v) const {
    if (v < 0.0) return 0.0;
    const double r = v / scale_c;
    return (shape_k / scale_c) * std::pow(r, shape_k - 1.0) *
           std::exp(-std::pow(r, shape_k));
}

double WindDistribution::cdf(double v) const {
    if (v <= 0.0) return 0.0;
    return 1.0 - std::exp(-std::pow(v / scale_c, shape_k));
}

double WindDistribution::mean() const {
    return scale_c * std::tgamma(1.0 + 1.0 / shape_k);
}

WindDistribution speed_distribution(double mean_speed_ms, double shape_k) {
    if (!(mean_speed_ms > 0.0)) {
        throw InvalidInputError("speed_distribution: mean speed must be > 0");
    }
    if (!(shape_k > 0.0)) {
        throw InvalidInputError("speed_distribution: shape must be > 0");
    }
    WindDistribution d;
    d.shape_k = shape_k;
    d.scale_c = mean_speed_ms / std::tgamma(1.0 + 1.0 / shape_k);
    return d;
}

double annual_energy(const TurbineSpec& turbine, double hub_m, const WindDistribution& dist,
                     double step_ms) {
    (void)hub_m;  // the caller extrapolates the distribution to hub height
    const bool finite_cutout = std::isfinite(turbine.cut_out_ms);
    const double upper = finite_cutout ? turbine.cut_out_ms + 5.0
                                       : turbine.power_curve.back().speed_ms + 30.0;
    // Probability-mass quadrature: exact for the distribution, midpoint
    // sampling of the power curve.
    double expected_kw = 0.0;
    double f0 = dist.cdf(0.0);
    for (double v = 0.0; v < upper; v += step_ms) {
        const double v1 = std::min(v + step_ms, upper);
        const double f1 = dist.cdf(v1);
        expected_kw += turbine.power_at(0.5 * (v + v1)) * (f1 - f0);
        f0 = f1;
    }
    if (!finite_cutout) {
        // Tail mass beyond the quadrature window still produces power.
        expected_kw += turbine.power_at(upper) * (1.0 - dist.cdf(upper));
    }
    return 8760.0 * expected_kw;
}

TurbineChoice select_turbine(double v10_ms, double roughness_m,
                             const std::vector<TurbineSpec>& db, const EconParams& econ) {
    if (db.empty()) throw ConfigError("select_turbine: empty turbine database");

    TurbineChoice best;
    for (const auto& t : db) {
        for (double hub : t.hub_heights_m) {
            const double v_hub = extrapolate_wind(v10_ms, roughness_m, hub);
            const WindDistribution dist = speed_distribution(v_hub);
            const double energy = annual_energy(t, hub, dist);
            if (!(energy > 0.0)) continue;

            EconParams e = econ;
            e.investment_gbp_per_kw = t.investment_gbp_per_kw;
            e.om_cost = t.om_gbp_per_kwh;
            e.om_mode = OmMode::PerKwh;
            const double flh = energy / t.rated_power_kw;
            const double cost = lcoe(e, flh);

            const bool better =
                !best.feasible || cost < best.lcoe ||
                (cost == best.lcoe && energy > best.annual_energy_kwh) ||
                (cost == best.lcoe && energy == best.annual_energy_kwh &&
                 t.name < best.turbine->name);
            if (better) {
                best = {&t, hub, energy, cost, true};
            }
        }
    }
    return best;
}

double RoughnessTable::lookup(int category) const {
    const auto it = z0_by_category.find(category);
    if (it == z0_by_category.end()) {
        throw DataError("RoughnessTable: no roughness for land-use code " +
                        std::to_string(category));
    }
    return it->second;
}

RoughnessTable RoughnessTable::load_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const std::size_t cc = t.column("category_code");
    const std::size_t cz = t.column("z0_m");
    RoughnessTable out;
    for (const auto& row : t.rows) {
        out.z0_by_category[static_cast<int>(csv::to_long(row.at(cc), path))] =
            csv::to_double(row.at(cz), path);
    }
    return out;
}

RoughnessTable RoughnessTable::default_table() {
    // CORINE-style codes with conventional roughness lengths.
    RoughnessTable t;
    t.z0_by_category = {
        {111, 1.1},    // continuous urban fabric
        {112, 0.5},    // discontinuous urban fabric
        {121, 0.5},    // industrial or commercial units
        {211, 0.05},   // arable land
        {231, 0.03},   // pasture
        {311, 0.75},   // forest
        {321, 0.03},   // natural grassland
        {333, 0.005},  // sparsely vegetated
        {412, 0.03},   // peat bog
    };
    return t;
}

double SpacingConfig::footprint_m2(double rotor_diameter_m) const {
    // Ellipse with axes downwind x crosswind diameters.
    const double a = downwind_diameters * rotor_diameter_m / 2.0;
    const double b = crosswind_diameters * rotor_diameter_m / 2.0;
    return M_PI * a * b;
}

WindPotentialResult wind_potential(const Mask& mask, const NumericGrid& v10,
                                   const CategoricalGrid& landuse,
                                   const RoughnessTable& roughness,
                                   const std::vector<TurbineSpec>& db,
                                   const EconParams& econ, const SpacingConfig& spacing) {
    require_aligned(mask.spec(), v10.spec(), "wind_potential");
    require_aligned(mask.spec(), landuse.spec(), "wind_potential");

    const GridSpec& s = mask.spec();
    const double cell_area = s.cell_area();

    // Turbine selection depends only on (v10, z0); quantize the speed to
    // 0.01 m/s so repeated site conditions hit the cache.
    struct Key {
        long v100;
        long z0_micro;
        bool operator==(const Key& o) const { return v100 == o.v100 && z0_micro == o.z0_micro; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<long>()(k.v100 * 1000003 + k.z0_micro);
        }
    };
    std::unordered_map<Key, TurbineChoice, KeyHash> cache;

    WindPotentialResult out;
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            const std::size_t i = s.index(r, c);
            if (!mask.get(i)) continue;
            if (v10.is_nodata(i)) continue;
            const int category = landuse.get(i);
            if (category == CategoricalGrid::kNodata) continue;
            const double z0 = roughness.lookup(category);
            const double speed = std::max(0.01, std::round(v10[i] * 100.0) / 100.0);

            const Key key{std::lround(speed * 100.0), std::lround(z0 * 1e6)};
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, select_turbine(speed, z0, db, econ)).first;
            }
            const TurbineChoice& choice = it->second;
            if (!choice.feasible) {
                ++out.infeasible_cells;
                continue;
            }

            const long count = static_cast<long>(
                cell_area / spacing.footprint_m2(choice.turbine->rotor_diameter_m));
            if (count < 1) continue;

            WindSite site;
            site.cell_index = i;
            site.x = s.cell_x(c);
            site.y = s.cell_y(r);
            site.v10_ms = v10[i];
            site.roughness_m = z0;
            site.turbine_name = choice.turbine->name;
            site.hub_m = choice.hub_m;
            site.turbine_count = count;
            site.annual_energy_kwh = static_cast<double>(count) * choice.annual_energy_kwh;
            site.lcoe = choice.lcoe;
            site.capacity_mw =
                static_cast<double>(count) * choice.turbine->rated_power_kw / 1000.0;
            out.total_twh += site.annual_energy_kwh / 1e9;
            out.sites.push_back(std::move(site));
        }
    }
    return out;
}

}  // namespace vre
