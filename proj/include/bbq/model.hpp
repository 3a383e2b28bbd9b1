#pragma once

// Bradley-Terry mixture model with per-rater quality: probabilities,
// likelihood and MAP objective.

#include <vector>

#include "bbq/dataset.hpp"

namespace bbq {

// Gamma(a, b) prior on item skills (shape, rate) and Beta(alpha, beta) prior
// on rater quality. Defaults are the reference configuration.
struct Priors {
    double a = 5.0;
    double b = 0.1;
    double alpha = 10.0;
    double beta = 2.0;

    // Requires a > 1, b > 0, alpha > 1, beta > 1; throws std::invalid_argument.
    void validate() const;
    // Skill prior only (a > 1, b > 0); used when q is not estimated.
    void validate_skills() const;
};

struct ModelParams {
    std::vector<double> lambda;  // item skills, > 0
    std::vector<double> q;       // rater qualities, in (0, 1)
};

// P(i beats j) = lambda_i / (lambda_i + lambda_j)
double bt_prob(double lambda_i, double lambda_j);

// q * bt_prob + (1 - q) / 2: the rater follows BT with probability q and
// otherwise flips a fair coin.
double mixture_prob(double q, double lambda_i, double lambda_j);

double log_likelihood(const ComparisonDataset& data, const ModelParams& params);

// Whether q is a free parameter (carries the Beta prior) or held fixed.
enum class QualityPrior { include, exclude };

// log_likelihood + Gamma log-prior on skills (+ Beta log-prior on q),
// up to parameter-free constants.
double log_posterior(const ComparisonDataset& data, const ModelParams& params,
                     const Priors& priors, QualityPrior quality = QualityPrior::include);

// Throws std::invalid_argument when params do not match the dataset shape.
void check_dimensions(const ComparisonDataset& data, const ModelParams& params);

}  // namespace bbq
