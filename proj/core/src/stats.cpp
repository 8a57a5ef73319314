#include "vre/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "vre/csv.hpp"

namespace vre {

void ModelSpec::validate() const {
    if (model < 1 || model > 4) throw ConfigError("ModelSpec: model must be 1..4");
}

std::vector<PlanningRecord> load_planning_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const std::size_t c_tech = t.column("tech");
    const std::size_t c_year = t.column("year");
    const std::size_t c_out = t.column("outcome");
    const std::size_t c_sc = t.column("scenicness");
    const std::size_t c_votes = t.column("votes");
    const std::size_t c_nt = t.column("n_turbines");
    const std::size_t c_cap = t.column("capacity_MW");
    const std::size_t c_np = t.column("dist_np_m");
    const std::size_t c_air = t.column("dist_airport_m");
    const std::size_t c_spa = t.column("dist_spa_m");
    const std::size_t c_sac = t.column("dist_sac_m");
    const std::size_t c_ram = t.column("dist_ramsar_m");

    auto log_dist = [&](const std::string& s) {
        const double d = csv::to_double(s, path);
        if (!(d > 0.0)) throw DataError(path + ": distances must be > 0 m");
        return std::log(d);
    };

    std::vector<PlanningRecord> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        PlanningRecord r;
        const std::string& tech = row.at(c_tech);
        if (tech == "wind") {
            r.technology = Technology::Wind;
        } else if (tech == "pv_ground") {
            r.technology = Technology::PvGround;
        } else {
            throw DataError(path + ": unknown technology '" + tech + "'");
        }
        r.year = static_cast<int>(csv::to_long(row.at(c_year), path));
        r.outcome = static_cast<int>(csv::to_long(row.at(c_out), path));
        if (r.outcome != 0 && r.outcome != 1) {
            throw DataError(path + ": outcome must be 0 or 1");
        }
        r.scenicness = csv::to_double(row.at(c_sc), path);
        r.votes = csv::to_long(row.at(c_votes), path);
        r.n_turbines = csv::to_double(row.at(c_nt), path);
        r.capacity_mw = csv::to_double(row.at(c_cap), path);
        if (!(r.capacity_mw > 0.0)) throw DataError(path + ": capacity must be > 0");
        r.log_dist_national_park = log_dist(row.at(c_np));
        r.log_dist_airport = log_dist(row.at(c_air));
        r.log_dist_spa = log_dist(row.at(c_spa));
        r.log_dist_sac = log_dist(row.at(c_sac));
        r.log_dist_ramsar = log_dist(row.at(c_ram));
        out.push_back(r);
    }
    return out;
}

namespace {

struct Design {
    std::vector<int> outcomes;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> names;
};

Design build_design(const std::vector<PlanningRecord>& records, const ModelSpec& spec) {
    spec.validate();
    if (records.empty()) throw InvalidInputError("fit: no records");

    std::set<int> years;
    if (spec.model >= 2) {
        for (const auto& r : records) years.insert(r.year);
    }

    Design d;
    d.names.push_back("const");
    d.names.push_back("scenicness");
    if (spec.model >= 2) {
        bool first = true;
        for (int y : years) {
            if (first) {  // earliest year is the base category
                first = false;
                continue;
            }
            d.names.push_back("year_" + std::to_string(y));
        }
    }
    const bool wind = records.front().technology == Technology::Wind;
    if (spec.model >= 3) {
        if (wind && spec.include_turbine_count) d.names.push_back("n_turbines");
        d.names.push_back("capacity_MW");
    }
    if (spec.model >= 4) {
        d.names.push_back("log_dist_national_park");
        d.names.push_back("log_dist_airport");
        d.names.push_back("log_dist_spa");
        d.names.push_back("log_dist_sac");
        d.names.push_back("log_dist_ramsar");
    }

    for (const auto& r : records) {
        std::vector<double> row;
        row.reserve(d.names.size());
        row.push_back(1.0);
        row.push_back(r.scenicness);
        if (spec.model >= 2) {
            bool first = true;
            for (int y : years) {
                if (first) {
                    first = false;
                    continue;
                }
                row.push_back(r.year == y ? 1.0 : 0.0);
            }
        }
        if (spec.model >= 3) {
            if (wind && spec.include_turbine_count) row.push_back(r.n_turbines);
            row.push_back(r.capacity_mw);
        }
        if (spec.model >= 4) {
            row.push_back(r.log_dist_national_park);
            row.push_back(r.log_dist_airport);
            row.push_back(r.log_dist_spa);
            row.push_back(r.log_dist_sac);
            row.push_back(r.log_dist_ramsar);
        }
        d.rows.push_back(std::move(row));
        d.outcomes.push_back(r.outcome);
    }
    return d;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index k = n > 0 ? static_cast<Eigen::Index>(rows.front().size()) : 0;
    Eigen::MatrixXd X(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != k) {
            throw InvalidInputError("design matrix rows have inconsistent width");
        }
        for (Eigen::Index j = 0; j < k; ++j) X(i, j) = rows[i][j];
    }
    return X;
}

void check_rank(const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-9);
    if (qr.rank() < X.cols()) {
        // Pivot columns beyond the rank are the linearly dependent ones.
        const auto perm = qr.colsPermutation().indices();
        const Eigen::Index bad = perm(qr.rank());
        throw DataError("design matrix is rank-deficient; column '" +
                        names.at(static_cast<std::size_t>(bad)) + "' is collinear");
    }
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

FitResult fit_binary(const std::vector<int>& outcomes,
                     const std::vector<std::vector<double>>& design,
                     const std::vector<std::string>& names, BinaryLink link) {
    const Eigen::MatrixXd X = to_matrix(design);
    const Eigen::Index n = X.rows(), k = X.cols();
    if (n == 0 || k == 0) throw InvalidInputError("fit_binary: empty design");
    if (static_cast<std::size_t>(n) != outcomes.size()) {
        throw InvalidInputError("fit_binary: outcome/design size mismatch");
    }

    int n_pos = 0;
    for (int y : outcomes) n_pos += y;
    if (n_pos == 0 || n_pos == static_cast<int>(n)) {
        throw DataError("fit_binary: perfect separation (all outcomes identical)");
    }
    check_rank(X, names);

    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = outcomes[static_cast<std::size_t>(i)];

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    constexpr double kEps = 1e-12;
    constexpr double kBetaLimit = 30.0;
    constexpr int kMaxIter = 100;

    auto log_lik = [&](const Eigen::VectorXd& b) {
        const Eigen::VectorXd eta = X * b;
        double ll = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double p = link == BinaryLink::Logit ? 1.0 / (1.0 + std::exp(-eta(i)))
                                                 : normal_cdf(eta(i));
            p = std::clamp(p, kEps, 1.0 - kEps);
            ll += y(i) * std::log(p) + (1.0 - y(i)) * std::log(1.0 - p);
        }
        return ll;
    };

    double ll_prev = log_lik(beta);
    int iter = 0;
    bool converged = false;
    Eigen::MatrixXd info(k, k);
    Eigen::VectorXd grad(k);

    auto grad_info = [&](const Eigen::VectorXd& b, Eigen::VectorXd& g, Eigen::MatrixXd& I) {
        const Eigen::VectorXd eta = X * b;
        g.setZero();
        I.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            double p, w_score, w_info;
            if (link == BinaryLink::Logit) {
                p = 1.0 / (1.0 + std::exp(-eta(i)));
                p = std::clamp(p, kEps, 1.0 - kEps);
                w_score = 1.0;
                w_info = p * (1.0 - p);
            } else {
                p = std::clamp(normal_cdf(eta(i)), kEps, 1.0 - kEps);
                const double phi = normal_pdf(eta(i));
                w_score = phi / (p * (1.0 - p));
                w_info = phi * phi / (p * (1.0 - p));
            }
            const Eigen::VectorXd x = X.row(i).transpose();
            g += x * ((y(i) - p) * w_score);
            I += x * x.transpose() * w_info;
        }
    };

    for (iter = 1; iter <= kMaxIter; ++iter) {
        grad_info(beta, grad, info);
        const Eigen::VectorXd step = info.ldlt().solve(grad);
        beta += step;
        if (beta.cwiseAbs().maxCoeff() > kBetaLimit) {
            throw DataError("fit_binary: separation suspected (|beta| exceeded 30)");
        }
        const double ll = log_lik(beta);
        if (std::abs(ll - ll_prev) < 1e-8) {
            ll_prev = ll;
            converged = true;
            break;
        }
        ll_prev = ll;
    }

    grad_info(beta, grad, info);
    const Eigen::MatrixXd cov = info.inverse();

    FitResult out;
    out.names = names;
    out.iterations = iter;
    out.converged = converged;
    out.log_likelihood = ll_prev;
    out.aic = 2.0 * static_cast<double>(k) - 2.0 * ll_prev;
    out.gradient_max_norm = grad.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < k; ++j) {
        out.coefficients.push_back(beta(j));
        out.std_errors.push_back(std::sqrt(cov(j, j)));
        out.odds_ratios.push_back(std::exp(beta(j)));
    }
    return out;
}

FitResult fit_logit(const std::vector<PlanningRecord>& records, const ModelSpec& spec) {
    const Design d = build_design(records, spec);
    return fit_binary(d.outcomes, d.rows, d.names, BinaryLink::Logit);
}

FitResult fit_probit(const std::vector<PlanningRecord>& records, const ModelSpec& spec) {
    const Design d = build_design(records, spec);
    return fit_binary(d.outcomes, d.rows, d.names, BinaryLink::Probit);
}

OlsResult fit_ols(const std::vector<double>& y,
                  const std::vector<std::vector<double>>& design,
                  const std::vector<std::string>& names) {
    const Eigen::MatrixXd X = to_matrix(design);
    const Eigen::Index n = X.rows(), k = X.cols();
    if (static_cast<std::size_t>(n) != y.size()) {
        throw InvalidInputError("fit_ols: y/design size mismatch");
    }
    if (n <= k) throw InvalidInputError("fit_ols: need more rows than columns");
    check_rank(X, names);

    Eigen::VectorXd yv(n);
    for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<std::size_t>(i)];

    const Eigen::MatrixXd xtx = X.transpose() * X;
    const Eigen::VectorXd beta = xtx.ldlt().solve(X.transpose() * yv);
    const Eigen::VectorXd resid = yv - X * beta;
    const double rss = resid.squaredNorm();
    const double mean_y = yv.mean();
    const double tss = (yv.array() - mean_y).square().sum();
    const double sigma2 = rss / static_cast<double>(n - k);
    const Eigen::MatrixXd cov = sigma2 * xtx.inverse();

    OlsResult out;
    out.names = names;
    out.n_obs = static_cast<std::size_t>(n);
    out.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        out.coefficients.push_back(beta(j));
        out.std_errors.push_back(std::sqrt(cov(j, j)));
    }
    return out;
}

AggregatedShares aggregate_landuse(const LanduseShares& s) {
    const double all[] = {s.residential, s.community_service, s.industry_and_commerce,
                          s.defense, s.undeveloped, s.vacant, s.unknown_developed,
                          s.minerals_landfill, s.transport_utilities, s.outdoor_recreation,
                          s.agriculture, s.forest_open_water, s.residential_gardens};
    for (double v : all) {
        if (v < 0.0) throw DataError("aggregate_landuse: negative share");
    }
    AggregatedShares out;
    out.residential = s.residential;
    out.commercial = s.community_service + s.industry_and_commerce + s.defense;
    out.vacant = s.undeveloped + s.vacant;
    out.other = s.unknown_developed + s.minerals_landfill + s.transport_utilities +
                s.outdoor_recreation;
    out.agricultural_forest = s.agriculture + s.forest_open_water + s.residential_gardens;
    return out;
}

std::string format_fit_report(const FitResult& fit, const std::string& title) {
    std::ostringstream out;
    out << title << "\n";
    out << std::string(title.size(), '-') << "\n";
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
        const double z = fit.coefficients[j] / fit.std_errors[j];
        const double p = std::erfc(std::abs(z) / std::sqrt(2.0));
        const char* stars = p < 0.01 ? "***" : (p < 0.05 ? "**" : (p < 0.10 ? "*" : ""));
        out << fit.names[j] << "\t" << csv::format_number(fit.odds_ratios[j]) << stars
            << " (" << csv::format_number(fit.std_errors[j]) << ")\n";
    }
    out << "Log likelihood\t" << csv::format_number(fit.log_likelihood) << "\n";
    out << "AIC\t" << csv::format_number(fit.aic) << "\n";
    out << "Iterations\t" << fit.iterations << (fit.converged ? "" : " (not converged)")
        << "\n";
    return out.str();
}

}  // namespace vre
