#include "bbq/uncertainty.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bbq/errors.hpp"
#include "bbq/special.hpp"

namespace bbq {

double elo_from_skill(double lambda, double scale) {
    if (!(lambda > 0.0)) {
        throw std::domain_error("skill must be positive, got " + std::to_string(lambda));
    }
    return scale * std::log(lambda);
}

namespace {

double elo_or_infinite(double lambda, double scale) {
    if (lambda == 0.0) return -std::numeric_limits<double>::infinity();
    if (std::isinf(lambda)) return std::numeric_limits<double>::infinity();
    return elo_from_skill(lambda, scale);
}

}  // namespace

PosteriorSummary posterior_summary(const ComparisonDataset& data, const FitResult& fit,
                                   const Priors& priors, double level, double elo_scale) {
    if (!fit.converged) throw NumericalError("posterior summary requires a converged fit");
    if (!(level > 0.0 && level <= 1.0)) {
        throw std::invalid_argument("credible level must lie in (0, 1]");
    }
    // q == 1 (Bayes-BT, or frozen quality) gives gamma == 1 exactly.
    const auto gamma = e_step(data, fit.params);
    const auto stats = skill_statistics(data, gamma, fit.params.lambda);

    const double tail = (1.0 - level) / 2.0;
    PosteriorSummary summary;
    summary.level = level;
    summary.items.reserve(data.num_items());
    for (std::size_t i = 0; i < data.num_items(); ++i) {
        ItemPosterior post;
        post.shape = stats.weighted_wins[i] + priors.a;
        post.rate = stats.weighted_exposure[i] + priors.b;
        post.median_elo = elo_from_skill(gamma_quantile(post.shape, post.rate, 0.5), elo_scale);
        post.interval.low = elo_or_infinite(gamma_quantile(post.shape, post.rate, tail), elo_scale);
        post.interval.high =
            elo_or_infinite(gamma_quantile(post.shape, post.rate, 1.0 - tail), elo_scale);
        summary.items.push_back(post);
    }
    return summary;
}

bool significance_test(const EloInterval& a, const EloInterval& b) {
    if (!(a.low <= a.high) || !(b.low <= b.high)) {
        throw std::invalid_argument("malformed interval (low > high or NaN)");
    }
    return a.low > b.high || b.low > a.high;
}

}  // namespace bbq
