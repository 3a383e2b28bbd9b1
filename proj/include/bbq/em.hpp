#pragma once

// Closed-form EM for the rater-quality model (BBQ) and the Bayes-BT baseline.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bbq/dataset.hpp"
#include "bbq/model.hpp"

namespace bbq {

enum class Solver { bbq, bayes_bt };

std::string_view to_string(Solver solver);
// Accepts "bbq" and "bayes_bt" (also "bayes-bt"); throws std::invalid_argument.
Solver parse_solver(std::string_view name);

struct FitConfig {
    double elo_tolerance = 1.0;
    int max_iterations = 10000;
    double elo_scale = 400.0;
    double initial_lambda = 1.0;
    // Defaults to the prior mean alpha / (alpha + beta).
    std::optional<double> initial_q;
    // When false, q stays at its initial value and carries no prior term.
    bool update_quality = true;

    void validate() const;
};

struct FitResult {
    Solver solver = Solver::bbq;
    ModelParams params;
    std::vector<double> log_posterior_trace;  // one entry per iteration
    int iterations = 0;
    bool converged = false;
    // Whether q was estimated; otherwise it is fixed and has no prior term.
    bool quality_estimated = true;
};

// gamma_{r,ij} per stored cell, aligned with ComparisonDataset::cells().
struct Responsibilities {
    std::vector<double> gamma;
};

// Snapshot handed to an IterationObserver after each completed iteration.
struct IterationState {
    int iteration = 0;
    const ModelParams& params;
    double log_posterior = 0.0;
};

using IterationObserver = std::function<void(const IterationState&)>;

// Posterior probability that an observed "i beats j" came from the BT branch:
// q y / (q y + (1 - q) / 2) with y = bt_prob(lambda_i, lambda_j).
double gamma_responsibility(double q, double lambda_i, double lambda_j);

Responsibilities e_step(const ComparisonDataset& data, const ModelParams& params);
// gamma == 1 everywhere: every judgement follows BT.
Responsibilities unit_responsibilities(const ComparisonDataset& data);

std::vector<double> m_step_quality(const ComparisonDataset& data, const Responsibilities& gamma,
                                   const Priors& priors);

// Jacobi-style update: lambda_prev is used for every pair in the denominator.
std::vector<double> m_step_skills(const ComparisonDataset& data, const Responsibilities& gamma,
                                  std::span<const double> lambda_prev, const Priors& priors);

// Sufficient statistics for the skill update of one item: gamma-weighted wins
// and the gamma-weighted pair counts divided by (lambda_i + lambda_j).
struct SkillStatistics {
    std::vector<double> weighted_wins;
    std::vector<double> weighted_exposure;
};

SkillStatistics skill_statistics(const ComparisonDataset& data, const Responsibilities& gamma,
                                 std::span<const double> lambda);

// max_i |next_i - prev_i| <= tolerance
bool converged(std::span<const double> elo_prev, std::span<const double> elo_next,
               double tolerance);

FitResult fit_bbq(const ComparisonDataset& data, const Priors& priors, const FitConfig& config,
                  const IterationObserver& observer = {});

FitResult fit_bayes_bt(const ComparisonDataset& data, const Priors& priors,
                       const FitConfig& config, const IterationObserver& observer = {});

FitResult fit(Solver solver, const ComparisonDataset& data, const Priors& priors,
              const FitConfig& config, const IterationObserver& observer = {});

}  // namespace bbq
