#include "bbq/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bbq {

void Priors::validate_skills() const {
    if (!(a > 1.0) || !(b > 0.0)) {
        throw std::invalid_argument("skill prior requires a > 1 and b > 0");
    }
}

void Priors::validate() const {
    validate_skills();
    if (!(alpha > 1.0) || !(beta > 1.0)) {
        throw std::invalid_argument("quality prior requires alpha > 1 and beta > 1");
    }
}

namespace {

void check_skill(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("skill must be positive and finite, got " + std::to_string(lambda));
    }
}

void check_quality(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("quality must lie in [0, 1], got " + std::to_string(q));
    }
}

}  // namespace

double bt_prob(double lambda_i, double lambda_j) {
    check_skill(lambda_i);
    check_skill(lambda_j);
    return lambda_i / (lambda_i + lambda_j);
}

double mixture_prob(double q, double lambda_i, double lambda_j) {
    check_quality(q);
    return q * bt_prob(lambda_i, lambda_j) + (1.0 - q) * 0.5;
}

void check_dimensions(const ComparisonDataset& data, const ModelParams& params) {
    if (params.lambda.size() != data.num_items() || params.q.size() != data.num_raters()) {
        throw std::invalid_argument("parameter dimensions (" + std::to_string(params.lambda.size()) +
                                    " skills, " + std::to_string(params.q.size()) +
                                    " qualities) do not match dataset (" +
                                    std::to_string(data.num_items()) + " items, " +
                                    std::to_string(data.num_raters()) + " raters)");
    }
}

double log_likelihood(const ComparisonDataset& data, const ModelParams& params) {
    check_dimensions(data, params);
    double ll = 0.0;
    for (const auto& c : data.cells()) {
        const double p = mixture_prob(params.q[c.rater], params.lambda[c.winner],
                                      params.lambda[c.loser]);
        ll += static_cast<double>(c.count) * std::log(p);
    }
    return ll;
}

double log_posterior(const ComparisonDataset& data, const ModelParams& params,
                     const Priors& priors, QualityPrior quality) {
    double lp = log_likelihood(data, params);
    for (double l : params.lambda) {
        lp += (priors.a - 1.0) * std::log(l) - priors.b * l;
    }
    if (quality == QualityPrior::include) {
        for (double q : params.q) {
            lp += (priors.alpha - 1.0) * std::log(q) + (priors.beta - 1.0) * std::log1p(-q);
        }
    }
    return lp;
}

}  // namespace bbq
