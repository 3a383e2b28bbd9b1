#include "bbq/em.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bbq/errors.hpp"
#include "bbq/uncertainty.hpp"

namespace bbq {

std::string_view to_string(Solver solver) {
    switch (solver) {
        case Solver::bbq: return "bbq";
        case Solver::bayes_bt: return "bayes_bt";
    }
    return "unknown";
}

Solver parse_solver(std::string_view name) {
    if (name == "bbq") return Solver::bbq;
    if (name == "bayes_bt" || name == "bayes-bt") return Solver::bayes_bt;
    throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

void FitConfig::validate() const {
    if (!(elo_tolerance > 0.0)) throw std::invalid_argument("elo_tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(elo_scale > 0.0)) throw std::invalid_argument("elo_scale must be > 0");
    if (!(initial_lambda > 0.0) || !std::isfinite(initial_lambda)) {
        throw std::invalid_argument("initial_lambda must be positive and finite");
    }
    if (initial_q && !(*initial_q >= 0.0 && *initial_q <= 1.0)) {
        throw std::invalid_argument("initial_q must lie in [0, 1]");
    }
}

double gamma_responsibility(double q, double lambda_i, double lambda_j) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("quality must lie in [0, 1], got " + std::to_string(q));
    }
    const double y = bt_prob(lambda_i, lambda_j);
    const double informed = q * y;
    return informed / (informed + (1.0 - q) * 0.5);
}

Responsibilities e_step(const ComparisonDataset& data, const ModelParams& params) {
    check_dimensions(data, params);
    Responsibilities out;
    out.gamma.reserve(data.cells().size());
    for (const auto& c : data.cells()) {
        out.gamma.push_back(
            gamma_responsibility(params.q[c.rater], params.lambda[c.winner], params.lambda[c.loser]));
    }
    return out;
}

Responsibilities unit_responsibilities(const ComparisonDataset& data) {
    return Responsibilities{std::vector<double>(data.cells().size(), 1.0)};
}

namespace {

void check_gamma(const ComparisonDataset& data, const Responsibilities& gamma) {
    if (gamma.gamma.size() != data.cells().size()) {
        throw std::invalid_argument("responsibilities do not match the dataset cells");
    }
}

}  // namespace

std::vector<double> m_step_quality(const ComparisonDataset& data, const Responsibilities& gamma,
                                   const Priors& priors) {
    check_gamma(data, gamma);
    const auto cells = data.cells();
    std::vector<double> q(data.num_raters());
    for (std::size_t r = 0; r < data.num_raters(); ++r) {
        const auto offset = data.rater_offset(r);
        const auto own = data.rater_cells(r);
        double effective = 0.0;
        for (std::size_t k = 0; k < own.size(); ++k) {
            effective += static_cast<double>(cells[offset + k].count) * gamma.gamma[offset + k];
        }
        q[r] = (effective + priors.alpha - 1.0) /
               (static_cast<double>(data.rater_total(r)) + priors.alpha + priors.beta - 2.0);
    }
    return q;
}

SkillStatistics skill_statistics(const ComparisonDataset& data, const Responsibilities& gamma,
                                 std::span<const double> lambda) {
    check_gamma(data, gamma);
    if (lambda.size() != data.num_items()) {
        throw std::invalid_argument("skill vector does not match the number of items");
    }
    SkillStatistics stats{std::vector<double>(data.num_items(), 0.0),
                          std::vector<double>(data.num_items(), 0.0)};
    const auto cells = data.cells();
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& c = cells[k];
        const double weighted = static_cast<double>(c.count) * gamma.gamma[k];
        const double exposure = weighted / (lambda[c.winner] + lambda[c.loser]);
        stats.weighted_wins[c.winner] += weighted;
        stats.weighted_exposure[c.winner] += exposure;
        stats.weighted_exposure[c.loser] += exposure;
    }
    return stats;
}

std::vector<double> m_step_skills(const ComparisonDataset& data, const Responsibilities& gamma,
                                  std::span<const double> lambda_prev, const Priors& priors) {
    const auto stats = skill_statistics(data, gamma, lambda_prev);
    std::vector<double> lambda(data.num_items());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        lambda[i] = (stats.weighted_wins[i] + priors.a - 1.0) /
                    (stats.weighted_exposure[i] + priors.b);
    }
    return lambda;
}

bool converged(std::span<const double> elo_prev, std::span<const double> elo_next,
               double tolerance) {
    if (elo_prev.size() != elo_next.size()) {
        throw std::invalid_argument("Elo vectors differ in length");
    }
    for (std::size_t i = 0; i < elo_prev.size(); ++i) {
        if (!(std::abs(elo_next[i] - elo_prev[i]) <= tolerance)) return false;
    }
    return true;
}

namespace {

std::vector<double> to_elo(std::span<const double> lambda, double scale) {
    std::vector<double> elo(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) elo[i] = elo_from_skill(lambda[i], scale);
    return elo;
}

FitResult run_em(Solver solver, const ComparisonDataset& data, const Priors& priors,
                 const FitConfig& config, const IterationObserver& observer) {
    config.validate();
    const bool estimate_quality = solver == Solver::bbq && config.update_quality;
    if (estimate_quality) {
        priors.validate();
    } else {
        priors.validate_skills();
    }
    if (data.num_items() < 2) throw DataError("at least two items are required");
    if (data.empty()) throw DataError("dataset contains no comparisons");

    FitResult result;
    result.solver = solver;
    result.quality_estimated = estimate_quality;

    double q0 = 1.0;
    if (solver == Solver::bbq) {
        q0 = config.initial_q.value_or(priors.alpha / (priors.alpha + priors.beta));
    }
    auto& params = result.params;
    params.lambda.assign(data.num_items(), config.initial_lambda);
    params.q.assign(data.num_raters(), q0);

    const auto quality_prior = estimate_quality ? QualityPrior::include : QualityPrior::exclude;
    auto elo_prev = to_elo(params.lambda, config.elo_scale);

    for (int t = 1; t <= config.max_iterations; ++t) {
        const auto gamma =
            solver == Solver::bayes_bt ? unit_responsibilities(data) : e_step(data, params);
        if (estimate_quality) params.q = m_step_quality(data, gamma, priors);
        params.lambda = m_step_skills(data, gamma, params.lambda, priors);

        for (double l : params.lambda) {
            if (!(l > 0.0) || !std::isfinite(l)) {
                throw NumericalError("skill update left the positive reals at iteration " +
                                     std::to_string(t));
            }
        }

        const double lp = log_posterior(data, params, priors, quality_prior);
        result.log_posterior_trace.push_back(lp);
        result.iterations = t;
        if (observer) observer(IterationState{t, params, lp});

        auto elo_next = to_elo(params.lambda, config.elo_scale);
        if (converged(elo_prev, elo_next, config.elo_tolerance)) {
            result.converged = true;
            break;
        }
        elo_prev = std::move(elo_next);
    }
    return result;
}

}  // namespace

FitResult fit_bbq(const ComparisonDataset& data, const Priors& priors, const FitConfig& config,
                  const IterationObserver& observer) {
    return run_em(Solver::bbq, data, priors, config, observer);
}

FitResult fit_bayes_bt(const ComparisonDataset& data, const Priors& priors,
                       const FitConfig& config, const IterationObserver& observer) {
    return run_em(Solver::bayes_bt, data, priors, config, observer);
}

FitResult fit(Solver solver, const ComparisonDataset& data, const Priors& priors,
              const FitConfig& config, const IterationObserver& observer) {
    return run_em(solver, data, priors, config, observer);
}

}  // namespace bbq
