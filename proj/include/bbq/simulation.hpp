#pragma once

// Synthetic comparison data from the rater-quality mixture model and the
// equal-skill Type-I error experiment.

#include <cstdint>
#include <vector>

#include "bbq/dataset.hpp"
#include "bbq/em.hpp"
#include "bbq/model.hpp"

namespace bbq {

struct SimulationConfig {
    std::vector<double> true_skills;
    std::vector<double> rater_qualities;
    int comparisons_per_rater = 50;
    std::uint64_t seed = 0;

    void validate() const;
};

// Each rater judges `comparisons_per_rater` pairs drawn uniformly among
// distinct items (presentation order random); item i wins with
// mixture_prob(q_r, lambda_i, lambda_j). Rater r uses stream (seed, r).
ComparisonDataset simulate_comparisons(const SimulationConfig& config);

// `count` skills log-spaced from 1 up to 10^decades, best item first.
std::vector<double> log_spaced_skills(std::size_t count, double decades = 1.0);

// Deterministic Beta(alpha, beta) draws built from Marsaglia-Tsang gamma variates.
std::vector<double> draw_beta(std::size_t count, double alpha, double beta, std::uint64_t seed);

struct CalibrationConfig {
    int n_trials = 10000;
    int n_raters = 64;
    int comparisons_per_rater = 50;
    double level = 0.99;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    void validate() const;
};

struct CalibrationResult {
    double error_rate_percent = 0.0;  // over completed trials
    int rejections = 0;
    int completed_trials = 0;
    int excluded_trials = 0;  // fit failed or hit max_iterations
};

// Null dataset of trial t: two equal items, perfect raters.
ComparisonDataset calibration_trial(const CalibrationConfig& config, std::uint64_t trial);

// Two equal-skill items, coin-flip outcomes; counts the trials whose
// `level` credible intervals fail to overlap.

CalibrationResult type1_error_experiment(const CalibrationConfig& config, Solver solver,
                                         const Priors& priors, const FitConfig& fit);

}  // namespace bbq
