#pragma once

// Elo-scale reporting, posterior credible intervals and the pairwise
// non-overlap significance test.

#include <vector>

#include "bbq/dataset.hpp"
#include "bbq/em.hpp"
#include "bbq/model.hpp"

namespace bbq {

inline constexpr double kDefaultEloScale = 400.0;

// scale * ln(lambda); throws std::domain_error for lambda <= 0.
double elo_from_skill(double lambda, double scale = kDefaultEloScale);

struct EloInterval {
    double low = 0.0;
    double high = 0.0;
};

// Gamma(shape, rate) approximation of one item's skill posterior.
struct ItemPosterior {
    double shape = 0.0;
    double rate = 0.0;
    double median_elo = 0.0;
    EloInterval interval;
};

struct PosteriorSummary {
    double level = 0.99;
    std::vector<ItemPosterior> items;
};

// Conditional-conjugate Gamma at the EM fixed point:
//   shape_i = sum_r sum_j w_{r,ij} gamma_{r,ij} + a
//   rate_i  = sum_j E[m_ij] / (lambda_i + lambda_j) + b
// so that the Gamma mode (shape - 1) / rate reproduces the fitted lambda_i.
// The central `level` interval is mapped to Elo. level = 1 gives an
// unbounded interval. Throws NumericalError for a non-converged fit.
PosteriorSummary posterior_summary(const ComparisonDataset& data, const FitResult& fit,
                                   const Priors& priors, double level = 0.99,
                                   double elo_scale = kDefaultEloScale);

// True iff the intervals are disjoint; touching endpoints count as overlap.
bool significance_test(const EloInterval& a, const EloInterval& b);

}  // namespace bbq
