#include "vre/regions.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "vre/csv.hpp"
#include "vre/errors.hpp"

namespace vre {

void LATable::add(LARegion region) {
    if (index_.count(region.code)) {
        throw DataError("LATable: duplicate LA code '" + region.code + "'");
    }
    if (!(region.area_km2 > 0.0)) {
        throw DataError("LATable: region '" + region.code + "' has non-positive area");
    }
    index_[region.code] = regions_.size();
    regions_.push_back(std::move(region));
}

const LARegion& LATable::by_code(const std::string& code) const {
    const auto it = index_.find(code);
    if (it == index_.end()) throw DataError("LATable: unknown LA code '" + code + "'");
    return regions_[it->second];
}

bool LATable::has(const std::string& code) const { return index_.count(code) > 0; }

LATable LATable::load_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const std::size_t cc = t.column("code");
    const std::size_t cn = t.column("name");
    const std::size_t ca = t.column("area_km2");
    LATable out;
    for (const auto& row : t.rows) {
        out.add({row.at(cc), row.at(cn), csv::to_double(row.at(ca), path)});
    }
    return out;
}

LinkResult link_records(const LATable& la_table, const std::vector<LinkRecord>& records,
                        const std::map<std::string, std::string>& postcode_lookup) {
    LinkResult out;
    for (const auto& rec : records) {
        if (!rec.la_code.empty()) {
            if (la_table.has(rec.la_code)) {
                out.matched.push_back({rec, rec.la_code, "la_code"});
            } else {
                out.rejects.push_back({rec, "unknown_la"});
            }
            continue;
        }
        if (!rec.postcode.empty()) {
            const auto it = postcode_lookup.find(rec.postcode);
            if (it != postcode_lookup.end() && la_table.has(it->second)) {
                out.matched.push_back({rec, it->second, "postcode"});
            } else {
                out.rejects.push_back({rec, "unknown_postcode"});
            }
            continue;
        }
        out.rejects.push_back({rec, "no_key"});
    }
    return out;
}

std::vector<LAEnergy> aggregate_to_la(const std::vector<CellEnergy>& energy,
                                      const CategoricalGrid& region_grid,
                                      const LATable& la_table) {
    std::vector<double> sums(la_table.regions().size(), 0.0);
    for (const auto& e : energy) {
        if (e.cell_index >= region_grid.size()) {
            throw DataError("aggregate_to_la: cell index out of range");
        }
        const int rid = region_grid.get(e.cell_index);
        if (rid == CategoricalGrid::kNodata) continue;  // unassigned
        if (rid < 0 || static_cast<std::size_t>(rid) >= sums.size()) {
            throw DataError("aggregate_to_la: cell assigned to unknown region id " +
                            std::to_string(rid));
        }
        sums[static_cast<std::size_t>(rid)] += e.energy_kwh;
    }

    std::vector<LAEnergy> out;
    out.reserve(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        const LARegion& r = la_table.regions()[i];
        const double gwh = sums[i] / 1e6;
        out.push_back({r.code, r.name, gwh, gwh / r.area_km2});
    }
    return out;
}

std::vector<OverlapRow> overlap_analysis(
    const std::map<double, Mask>& wind_masks_by_threshold, const Mask& pv_mask,
    const CategoricalGrid& region_grid, const LATable& la_table,
    const CategoricalGrid& landuse, const OverlapCriteria& criteria) {
    if (wind_masks_by_threshold.empty()) {
        throw InvalidInputError("overlap_analysis: no wind masks");
    }
    const GridSpec& spec = pv_mask.spec();
    for (const auto& [t, m] : wind_masks_by_threshold) {
        require_aligned(spec, m.spec(), "overlap_analysis");
    }
    require_aligned(spec, region_grid.spec(), "overlap_analysis");
    require_aligned(spec, landuse.spec(), "overlap_analysis");

    const std::size_t n_regions = la_table.regions().size();
    const double cell_km2 = spec.cell_area() / 1e6;

    // Rural/urban tag: artificial-surface codes (CORINE 1xx) vs the rest.
    std::vector<long> artificial(n_regions, 0), total_cells(n_regions, 0);
    for (std::size_t i = 0; i < region_grid.size(); ++i) {
        const int rid = region_grid.get(i);
        if (rid == CategoricalGrid::kNodata) continue;
        if (rid < 0 || static_cast<std::size_t>(rid) >= n_regions) {
            throw DataError("overlap_analysis: unknown region id " + std::to_string(rid));
        }
        ++total_cells[static_cast<std::size_t>(rid)];
        const int code = landuse.get(i);
        if (code >= 100 && code < 200) ++artificial[static_cast<std::size_t>(rid)];
    }

    struct PerThreshold {
        double wind_km2 = 0.0;
        double pv_km2 = 0.0;
        double inter_km2 = 0.0;
    };
    std::map<double, std::vector<PerThreshold>> acc;
    for (const auto& [threshold, wind] : wind_masks_by_threshold) {
        auto& v = acc[threshold];
        v.assign(n_regions, {});
        for (std::size_t i = 0; i < wind.size(); ++i) {
            const int rid = region_grid.get(i);
            if (rid == CategoricalGrid::kNodata) continue;
            auto& p = v[static_cast<std::size_t>(rid)];
            if (wind.get(i)) p.wind_km2 += cell_km2;
            if (pv_mask.get(i)) p.pv_km2 += cell_km2;
            if (wind.get(i) && pv_mask.get(i)) p.inter_km2 += cell_km2;
        }
    }

    auto fraction = [&](const PerThreshold& p, double region_km2) {
        const double denom = criteria.denominator == OverlapDenominator::RegionArea
                                 ? region_km2
                                 : p.wind_km2;
        return denom > 0.0 ? p.inter_km2 / denom : 0.0;
    };

    std::vector<OverlapRow> out;
    for (std::size_t r = 0; r < n_regions; ++r) {
        const LARegion& region = la_table.regions()[r];

        // Selection per the two-part criterion, evaluated at thresholds 10
        // and 5.8 when both are present.
        bool selected = false;
        const auto it_full = acc.find(10.0);
        const auto it_75 = acc.find(5.8);
        if (it_full != acc.end() && it_75 != acc.end()) {
            const double f_full = fraction(it_full->second[r], region.area_km2);
            const double f_75 = fraction(it_75->second[r], region.area_km2);
            selected = f_full > criteria.min_overlap_fraction && f_full > 0.0 &&
                       f_75 / f_full <= criteria.shrink_ratio_max;
        }

        // Urban iff artificial surfaces are the predominant cover.
        const bool urban = total_cells[r] > 0 && artificial[r] * 2 > total_cells[r];

        for (const auto& [threshold, v] : acc) {
            const PerThreshold& p = v[r];
            OverlapRow row;
            row.region_code = region.code;
            row.scenic_threshold = threshold;
            row.wind_area_km2 = p.wind_km2;
            row.pv_area_km2 = p.pv_km2;
            row.intersection_km2 = p.inter_km2;
            row.overlap_fraction = fraction(p, region.area_km2);
            row.rural = !urban;
            row.selected = selected;
            out.push_back(std::move(row));
        }
    }
    return out;
}

DeviationSummary validation_compare(const std::map<std::string, double>& own,
                                    const std::map<std::string, double>& external,
                                    double factor) {
    if (!(factor > 0.0)) throw InvalidInputError("validation_compare: factor must be > 0");
    DeviationSummary out;
    double sum = 0.0;
    for (const auto& [code, own_value] : own) {
        const auto it = external.find(code);
        if (it == external.end()) {
            throw DataError("validation_compare: region '" + code +
                            "' missing from external results");
        }
        DeviationRow row;
        row.region_code = code;
        row.own_gwh = own_value;
        row.external_gwh = it->second;
        if (it->second == 0.0) {
            row.excluded = true;
            out.rows.push_back(row);
            continue;
        }
        row.deviation = own_value / (it->second * factor);
        sum += row.deviation;
        ++out.n;
        out.rows.push_back(row);
    }
    if (out.n == 0) return out;

    out.mean = sum / static_cast<double>(out.n);
    double ss = 0.0;
    out.min = std::numeric_limits<double>::infinity();
    out.max = -std::numeric_limits<double>::infinity();
    for (const auto& row : out.rows) {
        if (row.excluded) continue;
        ss += (row.deviation - out.mean) * (row.deviation - out.mean);
        out.min = std::min(out.min, row.deviation);
        out.max = std::max(out.max, row.deviation);
    }
    out.std_dev = out.n > 1 ? std::sqrt(ss / static_cast<double>(out.n - 1)) : 0.0;
    return out;
}

std::vector<ScenicCostPoint> scenic_cost_curve(
    const std::vector<std::tuple<double, double, double>>& sites, CostWeighting weighting) {
    std::vector<ScenicCostPoint> out;
    for (int level = 1; level <= 10; ++level) {
        double twh = 0.0, weight = 0.0, weighted_lcoe = 0.0;
        for (const auto& [scenic, energy_twh, site_lcoe] : sites) {
            if (scenic > static_cast<double>(level)) continue;
            twh += energy_twh;
            const double w = weighting == CostWeighting::Site ? 1.0 : energy_twh;
            weight += w;
            weighted_lcoe += w * site_lcoe;
        }
        if (weight == 0.0) continue;
        out.push_back({level, twh, weighted_lcoe / weight});
    }
    return out;
}

}  // namespace vre
