#include "bbq/simulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bbq/errors.hpp"
#include "bbq/parallel.hpp"
#include "bbq/rng.hpp"
#include "bbq/uncertainty.hpp"

namespace bbq {

void SimulationConfig::validate() const {
    if (true_skills.size() < 2) throw std::invalid_argument("simulation needs at least two items");
    for (double s : true_skills) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("true skills must be positive and finite");
        }
    }
    for (double q : rater_qualities) {
        if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("rater qualities must lie in [0, 1]");
    }
    if (comparisons_per_rater < 1) throw std::invalid_argument("comparisons_per_rater must be >= 1");
}

ComparisonDataset simulate_comparisons(const SimulationConfig& config) {
    config.validate();
    const auto K = config.true_skills.size();
    const auto R = config.rater_qualities.size();
    std::vector<CountCell> cells;
    cells.reserve(R * static_cast<std::size_t>(config.comparisons_per_rater));
    for (std::size_t r = 0; r < R; ++r) {
        Rng rng(config.seed, r);
        const double q = config.rater_qualities[r];
        for (int c = 0; c < config.comparisons_per_rater; ++c) {
            const auto i = rng.index(K);
            auto j = rng.index(K - 1);
            if (j >= i) ++j;
            const double p = mixture_prob(q, config.true_skills[i], config.true_skills[j]);
            const bool i_wins = rng.bernoulli(p);
            cells.push_back({static_cast<std::uint32_t>(r),
                             static_cast<std::uint32_t>(i_wins ? i : j),
                             static_cast<std::uint32_t>(i_wins ? j : i), 1});
        }
    }
    return ComparisonDataset::from_cells(K, R, std::move(cells));
}

std::vector<double> log_spaced_skills(std::size_t count, double decades) {
    std::vector<double> skills(count, 1.0);
    if (count < 2) return skills;
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = static_cast<double>(count - 1 - i) / static_cast<double>(count - 1);
        skills[i] = std::pow(10.0, decades * frac);
    }
    return skills;
}

namespace {

double standard_normal(Rng& rng) {
    double u1 = rng.uniform();
    while (u1 <= 0.0) u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double gamma_variate(Rng& rng, double shape) {
    if (shape < 1.0) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        return gamma_variate(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

std::vector<double> draw_beta(std::size_t count, double alpha, double beta, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("Beta shapes must be > 0");
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) {
        const double x = gamma_variate(rng, alpha);
        const double y = gamma_variate(rng, beta);
        v = x / (x + y);
    }
    return out;
}

void CalibrationConfig::validate() const {
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    if (n_raters < 1) throw std::invalid_argument("n_raters must be >= 1");
    if (comparisons_per_rater < 1) throw std::invalid_argument("comparisons_per_rater must be >= 1");
    if (!(level > 0.0 && level <= 1.0)) throw std::invalid_argument("level must lie in (0, 1]");
}

ComparisonDataset calibration_trial(const CalibrationConfig& config, std::uint64_t trial) {
    SimulationConfig sim;
    sim.true_skills = {1.0, 1.0};
    sim.rater_qualities.assign(static_cast<std::size_t>(config.n_raters), 1.0);
    sim.comparisons_per_rater = config.comparisons_per_rater;
    sim.seed = derive_seed(config.seed, trial);
    return simulate_comparisons(sim);
}

CalibrationResult type1_error_experiment(const CalibrationConfig& config, Solver solver,
                                         const Priors& priors, const FitConfig& fit_config) {
    config.validate();
    enum class Outcome { accepted, rejected, excluded };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(config.n_trials), Outcome::excluded);

    parallel_for(outcomes.size(), config.threads, [&](std::size_t t) {
        const auto data = calibration_trial(config, t);
        try {
            const auto result = fit(solver, data, priors, fit_config);
            if (!result.converged) return;
            const auto summary =
                posterior_summary(data, result, priors, config.level, fit_config.elo_scale);
            outcomes[t] = significance_test(summary.items[0].interval, summary.items[1].interval)
                              ? Outcome::rejected
                              : Outcome::accepted;
        } catch (const NumericalError&) {
        } catch (const DataError&) {
        }
    });

    CalibrationResult out;
    for (auto o : outcomes) {
        if (o == Outcome::excluded) {
            ++out.excluded_trials;
        } else {
            ++out.completed_trials;
            if (o == Outcome::rejected) ++out.rejections;
        }
    }
    if (out.completed_trials == 0) throw NumericalError("every calibration trial was excluded");
    out.error_rate_percent = 100.0 * out.rejections / out.completed_trials;
    return out;
}

}  // namespace bbq
