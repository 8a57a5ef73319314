#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vre/grid.hpp"

namespace vre {

struct LARegion {
    std::string code;  // 9-character administrative code
    std::string name;
    double area_km2 = 0.0;
};

/// LA table CSV: code,name,area_km2. Duplicate codes are a data error.
class LATable {
public:
    void add(LARegion region);
    const LARegion& by_code(const std::string& code) const;
    bool has(const std::string& code) const;
    const std::vector<LARegion>& regions() const { return regions_; }

    static LATable load_csv(const std::string& path);

private:
    std::vector<LARegion> regions_;
    std::map<std::string, std::size_t> index_;
};

struct LinkRecord {
    std::string id;
    std::string la_code;   // may be empty
    std::string postcode;  // may be empty
};

struct LinkedRecord {
    LinkRecord record;
    std::string resolved_la;
    std::string match_path;  // "la_code" or "postcode"
};

struct RejectedRecord {
    LinkRecord record;
    std::string reason;  // "no_key", "unknown_la", "unknown_postcode"
};

struct LinkResult {
    std::vector<LinkedRecord> matched;
    std::vector<RejectedRecord> rejects;
};

/// Join records to LA regions: first by 9-character code, then via the
/// postcode lookup. Every input lands in exactly one of matched/rejects.
LinkResult link_records(const LATable& la_table, const std::vector<LinkRecord>& records,
                        const std::map<std::string, std::string>& postcode_lookup);

struct LAEnergy {
    std::string code;
    std::string name;
    double energy_gwh = 0.0;
    double energy_gwh_per_km2 = 0.0;
};

struct CellEnergy {
    std::size_t cell_index = 0;
    double energy_kwh = 0.0;
};

/// Region ids in the grid are indices into la_table.regions().
std::vector<LAEnergy> aggregate_to_la(const std::vector<CellEnergy>& energy,
                                      const CategoricalGrid& region_grid,
                                      const LATable& la_table);

enum class OverlapDenominator { RegionArea, WindArea };

struct OverlapRow {
    std::string region_code;
    double scenic_threshold = 0.0;
    double wind_area_km2 = 0.0;
    double pv_area_km2 = 0.0;
    double intersection_km2 = 0.0;
    double overlap_fraction = 0.0;
    bool rural = true;
    bool selected = false;
};

struct OverlapCriteria {
    double shrink_ratio_max = 0.80;  // fraction at 5.8 vs at 10
    double min_overlap_fraction = 0.35;
    OverlapDenominator denominator = OverlapDenominator::RegionArea;
};

/// Wind/PV land competition per region and scenicness threshold. Thresholds
/// must include 10 and 5.8 for the selection criteria to apply. The rural
/// tag is true unless artificial-surface land-cover codes (1xx) are the
/// plurality within the region.
std::vector<OverlapRow> overlap_analysis(
    const std::map<double, Mask>& wind_masks_by_threshold, const Mask& pv_mask,
    const CategoricalGrid& region_grid, const LATable& la_table,
    const CategoricalGrid& landuse, const OverlapCriteria& criteria = {});

struct DeviationRow {
    std::string region_code;
    double own_gwh = 0.0;
    double external_gwh = 0.0;
    double deviation = 0.0;  // own / (external * factor)
    bool excluded = false;   // external value was zero
};

struct DeviationSummary {
    std::vector<DeviationRow> rows;
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

/// Compare per-region results against an external study scaled by `factor`.
DeviationSummary validation_compare(const std::map<std::string, double>& own,
                                    const std::map<std::string, double>& external,
                                    double factor);

struct ScenicCostPoint {
    int scenic_level = 0;       // integer threshold
    double cumulative_twh = 0.0;
    double mean_lcoe = 0.0;     // over all sites at or below the level
};

enum class CostWeighting { Site, Energy };

/// Mean cumulative LCOE and cumulative potential per integer scenicness
/// level (the per-region scenicness/cost trade-off curve).
std::vector<ScenicCostPoint> scenic_cost_curve(
    const std::vector<std::tuple<double, double, double>>& sites,  // scenicness, TWh, lcoe
    CostWeighting weighting = CostWeighting::Site);

}  // namespace vre
