#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vre/grid.hpp"

namespace vre {

enum class Country { England, Wales, Scotland };

enum class LayerSource { OSM, CORINE, Protected, Other };

struct LayerRole {
    LayerSource source = LayerSource::Other;
    bool positive = true;
    double buffer_distance_m = 0.0;  // meaningful for negative layers only
};

/// Agricultural land quality on the unified 1..5 scale (1 best).
class AgGradeGrid {
public:
    static constexpr int kNone = 0;  // non-agricultural / unknown

    AgGradeGrid() = default;
    explicit AgGradeGrid(GridSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        grades_.assign(spec_.size(), kNone);
    }

    const GridSpec& spec() const { return spec_; }
    int get(std::size_t i) const { return grades_[i]; }
    void set(std::size_t i, int grade);
    std::size_t size() const { return grades_.size(); }

private:
    GridSpec spec_;
    std::vector<int> grades_;
};

struct ScenarioConfig {
    int id = 0;
    double scenic_threshold = 10.0;   // inclusive, scale 1..10
    std::set<int> ag_excluded_grades;
    std::string label;

    void validate() const;
};

/// The eight built-in scenario configurations (ids 1..8).
const std::vector<ScenarioConfig>& builtin_scenarios();
ScenarioConfig scenario_by_id(int id);
ScenarioConfig load_scenario_file(const std::string& path);

/// National agricultural grade labels onto the unified 1..5 scale.
/// England/Wales use 1,2,3a,3b,4,5; Scotland uses classes 1..7.
int harmonize_ag_grade(Country country, const std::string& raw_grade);

/// OSM-over-CORINE land suitability: (osm_pos \ clc_pos) u (clc_pos \ osm_neg).
/// osm_pos and osm_neg overlapping is a data-quality error.
Mask compose_precedence(const Mask& osm_pos, const Mask& osm_neg, const Mask& clc_pos);

/// Attach a single land-use code per suitable cell: OSM code where present,
/// CORINE code otherwise.
CategoricalGrid attach_landuse(const Mask& suitable, const CategoricalGrid& osm_codes,
                               const CategoricalGrid& clc_codes);

struct BufferedNegative {
    Mask mask;
    double buffer_m = 0.0;
};

/// base minus buffered negatives minus cells with slope strictly above the
/// limit (the boundary value itself is retained).
Mask geographic_potential(const Mask& base, const std::vector<BufferedNegative>& negatives,
                          const NumericGrid& slope, double slope_limit_deg);

/// Apply a scenario filter: scenicness <= threshold
/// (inclusive) and unified grade not in the excluded set. Cells whose
/// scenicness has fewer than `min_votes` votes take the nearest rated
/// cell's value (ties by lowest cell index).
Mask apply_scenario(const Mask& geo, const NumericGrid& scenic, const NumericGrid& votes,
                    const AgGradeGrid& ag, const ScenarioConfig& cfg, long min_votes = 3);

/// Variant taking an already vote-filled scenicness layer; avoids repeating
/// the fill when several scenarios share one input.
Mask apply_scenario_prefilled(const Mask& geo, const NumericGrid& effective_scenic,
                              const AgGradeGrid& ag, const ScenarioConfig& cfg);

/// The effective scenicness layer after the <3 votes nearest-neighbour fill.
NumericGrid effective_scenicness(const NumericGrid& scenic, const NumericGrid& votes,
                                 long min_votes = 3);

}  // namespace vre
