#include "vre/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vre/errors.hpp"

namespace vre {

void AgGradeGrid::set(std::size_t i, int grade) {
    if (grade != kNone && (grade < 1 || grade > 5)) {
        throw InvalidInputError("AgGradeGrid: grade " + std::to_string(grade) +
                                " outside 1..5");
    }
    grades_[i] = grade;
}

void ScenarioConfig::validate() const {
    if (!(scenic_threshold > 0.0) || scenic_threshold > 10.0) {
        throw ConfigError("ScenarioConfig: scenic_threshold must be in (0,10]");
    }
    for (int g : ag_excluded_grades) {
        if (g < 1 || g > 5) {
            throw ConfigError("ScenarioConfig: excluded grade " + std::to_string(g) +
                              " outside 1..5");
        }
    }
}

const std::vector<ScenarioConfig>& builtin_scenarios() {
    // Four scenicness quartile thresholds crossed with high ({1,2,3}) and
    // low ({1,2}) agricultural restriction.
    static const std::vector<ScenarioConfig> configs = {
        {1, 10.00, {1, 2, 3}, "technical potential, high ag restriction"},
        {2, 5.80, {1, 2, 3}, "75% scenicness, high ag restriction"},
        {3, 4.67, {1, 2, 3}, "50% scenicness, high ag restriction"},
        {4, 3.67, {1, 2, 3}, "25% scenicness, high ag restriction"},
        {5, 10.00, {1, 2}, "technical potential, low ag restriction"},
        {6, 5.80, {1, 2}, "75% scenicness, low ag restriction"},
        {7, 4.67, {1, 2}, "50% scenicness, low ag restriction"},
        {8, 3.67, {1, 2}, "25% scenicness, low ag restriction"},
    };
    return configs;
}

ScenarioConfig scenario_by_id(int id) {
    for (const auto& c : builtin_scenarios()) {
        if (c.id == id) return c;
    }
    throw ConfigError("unknown scenario id " + std::to_string(id));
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    ScenarioConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ": expected key=value, got '" + line + "'");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "id") {
            cfg.id = std::stoi(value);
        } else if (key == "scenic_threshold") {
            cfg.scenic_threshold = std::stod(value);
        } else if (key == "ag_excluded_grades") {
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ';')) {
                if (!tok.empty()) cfg.ag_excluded_grades.insert(std::stoi(tok));
            }
        } else if (key == "label") {
            cfg.label = value;
        } else {
            throw ConfigError(path + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

int harmonize_ag_grade(Country country, const std::string& raw_grade) {
    if (country == Country::Scotland) {
        // Scottish classes 1..7: 3 and 4 map to the English subgrades 3a/3b
        // (unified 3), 6 and 7 to grade 5.
        if (raw_grade == "1") return 1;
        if (raw_grade == "2") return 2;
        if (raw_grade == "3") return 3;
        if (raw_grade == "4") return 3;
        if (raw_grade == "5") return 4;
        if (raw_grade == "6") return 5;
        if (raw_grade == "7") return 5;
    } else {
        if (raw_grade == "1") return 1;
        if (raw_grade == "2") return 2;
        if (raw_grade == "3a" || raw_grade == "3b") return 3;
        if (raw_grade == "4") return 4;
        if (raw_grade == "5") return 5;
    }
    throw InvalidInputError("harmonize_ag_grade: unknown grade label '" + raw_grade + "'");
}

Mask compose_precedence(const Mask& osm_pos, const Mask& osm_neg, const Mask& clc_pos) {
    require_aligned(osm_pos.spec(), osm_neg.spec(), "compose_precedence");
    require_aligned(osm_pos.spec(), clc_pos.spec(), "compose_precedence");

    std::vector<std::size_t> conflicts;
    for (std::size_t i = 0; i < osm_pos.size(); ++i) {
        if (osm_pos.get(i) && osm_neg.get(i)) conflicts.push_back(i);
    }
    if (!conflicts.empty()) {
        std::ostringstream msg;
        msg << "compose_precedence: OSM positive/negative overlap at " << conflicts.size()
            << " cell(s):";
        for (std::size_t k = 0; k < std::min<std::size_t>(conflicts.size(), 20); ++k) {
            msg << ' ' << conflicts[k];
        }
        throw DataError(msg.str());
    }

    Mask out(osm_pos.spec());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.set(i, osm_pos.get(i) || (clc_pos.get(i) && !osm_neg.get(i)));
    }
    return out;
}

CategoricalGrid attach_landuse(const Mask& suitable, const CategoricalGrid& osm_codes,
                               const CategoricalGrid& clc_codes) {
    require_aligned(suitable.spec(), osm_codes.spec(), "attach_landuse");
    require_aligned(suitable.spec(), clc_codes.spec(), "attach_landuse");
    CategoricalGrid out(suitable.spec());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!suitable.get(i)) continue;
        const int osm = osm_codes.get(i);
        out.set(i, osm != CategoricalGrid::kNodata ? osm : clc_codes.get(i));
    }
    for (const auto& [code, label] : osm_codes.legend()) out.define(code, label);
    for (const auto& [code, label] : clc_codes.legend()) {
        if (out.legend().find(code) == out.legend().end()) out.define(code, label);
    }
    return out;
}

Mask geographic_potential(const Mask& base, const std::vector<BufferedNegative>& negatives,
                          const NumericGrid& slope, double slope_limit_deg) {
    if (!(slope_limit_deg > 0.0)) {
        throw InvalidInputError("geographic_potential: slope_limit must be > 0");
    }
    require_aligned(base.spec(), slope.spec(), "geographic_potential");
    Mask out = base;
    for (const auto& neg : negatives) {
        require_aligned(base.spec(), neg.mask.spec(), "geographic_potential");
        out = out.subtract(buffer_mask(neg.mask, neg.buffer_m));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out.get(i)) continue;
        if (!slope.is_nodata(i) && slope[i] > slope_limit_deg) out.set(i, false);
    }
    return out;
}

NumericGrid effective_scenicness(const NumericGrid& scenic, const NumericGrid& votes,
                                 long min_votes) {
    require_aligned(scenic.spec(), votes.spec(), "effective_scenicness");
    const GridSpec& s = scenic.spec();

    Mask rated(s);
    bool any_rated = false;
    for (std::size_t i = 0; i < scenic.size(); ++i) {
        const bool ok = !scenic.is_nodata(i) &&
                        static_cast<long>(std::llround(votes[i])) >= min_votes;
        rated.set(i, ok);
        any_rated = any_rated || ok;
    }

    NumericGrid out = scenic;
    if (!any_rated) {
        throw DataError("effective_scenicness: no cell has the minimum vote count");
    }

    const std::vector<double> d2 = squared_distance_transform(rated);
    const double cs2 = s.cell_size * s.cell_size;
    const long nr = static_cast<long>(s.n_rows), nc = static_cast<long>(s.n_cols);
    for (long r = 0; r < nr; ++r) {
        for (long c = 0; c < nc; ++c) {
            const std::size_t i = s.index(static_cast<std::size_t>(r),
                                          static_cast<std::size_t>(c));
            if (rated.get(i)) continue;
            // Scan the ring at the exact nearest distance in index order so
            // ties resolve to the lowest cell index.
            const long best2 = std::llround(d2[i] / cs2);
            const long radius = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(best2))));
            bool found = false;
            for (long rr = std::max<long>(0, r - radius); !found && rr <= std::min(nr - 1, r + radius); ++rr) {
                for (long cc = std::max<long>(0, c - radius); cc <= std::min(nc - 1, c + radius); ++cc) {
                    if ((rr - r) * (rr - r) + (cc - c) * (cc - c) != best2) continue;
                    const std::size_t j = s.index(static_cast<std::size_t>(rr),
                                                  static_cast<std::size_t>(cc));
                    if (rated.get(j)) {
                        out[i] = scenic[j];
                        found = true;
                        break;
                    }
                }
            }
            if (!found) out[i] = scenic.nodata();  // unreachable for exact EDT
        }
    }
    return out;
}

Mask apply_scenario(const Mask& geo, const NumericGrid& scenic, const NumericGrid& votes,
                    const AgGradeGrid& ag, const ScenarioConfig& cfg, long min_votes) {
    require_aligned(geo.spec(), votes.spec(), "apply_scenario");
    const NumericGrid eff = effective_scenicness(scenic, votes, min_votes);
    return apply_scenario_prefilled(geo, eff, ag, cfg);
}

Mask apply_scenario_prefilled(const Mask& geo, const NumericGrid& eff,
                              const AgGradeGrid& ag, const ScenarioConfig& cfg) {
    cfg.validate();
    require_aligned(geo.spec(), eff.spec(), "apply_scenario");
    require_aligned(geo.spec(), ag.spec(), "apply_scenario");

    Mask out(geo.spec());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!geo.get(i)) continue;
        if (eff.is_nodata(i) || eff[i] > cfg.scenic_threshold) continue;
        const int grade = ag.get(i);
        if (grade != AgGradeGrid::kNone && cfg.ag_excluded_grades.count(grade)) continue;
        out.set(i, true);
    }
    return out;
}

}  // namespace vre
