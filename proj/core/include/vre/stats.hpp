#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vre/errors.hpp"

namespace vre {

enum class Technology { Wind, PvGround };

struct PlanningRecord {
    Technology technology = Technology::Wind;
    int year = 0;
    int outcome = 0;  // 1 granted, 0 rejected
    double scenicness = 0.0;
    long votes = 0;
    double n_turbines = 0.0;  // wind only
    double capacity_mw = 0.0;
    double log_dist_national_park = 0.0;
    double log_dist_airport = 0.0;
    double log_dist_spa = 0.0;
    double log_dist_sac = 0.0;
    double log_dist_ramsar = 0.0;
};

/// CSV schema: tech,year,outcome,scenicness,votes,n_turbines,capacity_MW,
/// dist_np_m,dist_airport_m,dist_spa_m,dist_sac_m,dist_ramsar_m.
/// Distances are metres in the file and enter the model as logs.
std::vector<PlanningRecord> load_planning_csv(const std::string& path);

/// Covariate blocks of the four nested model specifications: model >= 2
/// adds year dummies, >= 3 project size, >= 4 the distance covariates.
struct ModelSpec {
    int model = 4;  // 1..4
    bool include_turbine_count = true;  // only used for wind, models 3-4

    void validate() const;
};

struct FitResult {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> odds_ratios;  // exp(beta); empty for OLS
    double log_likelihood = 0.0;
    double aic = 0.0;
    int iterations = 0;
    bool converged = false;
    double gradient_max_norm = 0.0;
};

enum class BinaryLink { Logit, Probit };

FitResult fit_logit(const std::vector<PlanningRecord>& records, const ModelSpec& spec);
FitResult fit_probit(const std::vector<PlanningRecord>& records, const ModelSpec& spec);

/// Generic binary-outcome MLE on an explicit design matrix. Column names
/// are used in collinearity diagnostics.
FitResult fit_binary(const std::vector<int>& outcomes,
                     const std::vector<std::vector<double>>& design,
                     const std::vector<std::string>& names, BinaryLink link);

struct OlsResult {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    double r_squared = 0.0;
    std::size_t n_obs = 0;
};

OlsResult fit_ols(const std::vector<double>& y,
                  const std::vector<std::vector<double>>& design,
                  const std::vector<std::string>& names);

/// The raw 13-category land-use shares.
struct LanduseShares {
    double residential = 0.0;
    double community_service = 0.0;
    double industry_and_commerce = 0.0;
    double defense = 0.0;
    double undeveloped = 0.0;
    double vacant = 0.0;
    double unknown_developed = 0.0;
    double minerals_landfill = 0.0;
    double transport_utilities = 0.0;
    double outdoor_recreation = 0.0;
    double agriculture = 0.0;
    double forest_open_water = 0.0;
    double residential_gardens = 0.0;
};

struct AggregatedShares {
    double residential = 0.0;
    double commercial = 0.0;
    double vacant = 0.0;
    double agricultural_forest = 0.0;
    double other = 0.0;

    double total() const {
        return residential + commercial + vacant + agricultural_forest + other;
    }
};

/// Collapse the 13 categories into residential/commercial/vacant/
/// agricultural+forest/other; totals are conserved.
AggregatedShares aggregate_landuse(const LanduseShares& shares);

/// Plain-text fit report: odds ratio, SE, significance stars at
/// 0.01/0.05/0.10, with log-likelihood and AIC footer.
std::string format_fit_report(const FitResult& fit, const std::string& title);

}  // namespace vre
