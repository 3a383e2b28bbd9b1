#pragma once

// Rater-level bootstrap stability analysis and rater / comparison scaling sweeps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bbq/dataset.hpp"
#include "bbq/em.hpp"
#include "bbq/metrics.hpp"
#include "bbq/model.hpp"
#include "bbq/simulation.hpp"

namespace bbq {

struct BootstrapConfig {
    int n_resamples = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency; never changes results

    void validate() const;
};

// Draws whole raters with replacement. Resample k depends only on
// (seed, k); each draw becomes a fresh rater "<label>#<slot>" carrying the
// original rater's comparison counts unchanged.
class RaterBootstrap {
public:
    // Throws DataError when the dataset has no raters or no comparisons.
    RaterBootstrap(const ComparisonDataset& data, std::uint64_t seed);
    // Restricts draws to `pool` (indices into the original raters).
    RaterBootstrap(const ComparisonDataset& data, std::uint64_t seed,
                   std::vector<std::size_t> pool);

    // The k-th resample with `draws` raters (defaults to the pool size).
    ComparisonDataset resample(std::uint64_t k) const { return resample(k, pool_.size()); }
    ComparisonDataset resample(std::uint64_t k, std::size_t draws) const;
    // Rater indices drawn for resample k.
    std::vector<std::size_t> drawn_raters(std::uint64_t k, std::size_t draws) const;

    // Materializes resamples 0..n-1 in order.
    std::vector<ComparisonDataset> take(std::size_t n) const;

private:
    const ComparisonDataset* data_;
    std::uint64_t seed_;
    std::vector<std::size_t> pool_;
};

// Concatenates the counts of `raters` (repeats allowed), slot s becoming a
// fresh rater "<label>#<s>".
ComparisonDataset assemble_raters(const ComparisonDataset& data,
                                  std::span<const std::size_t> raters);

struct BootstrapReport {
    Solver solver = Solver::bbq;
    std::uint64_t seed = 0;
    int n_resamples = 0;
    double top1_percent = 0.0;
    double kendall_tau_mean = 0.0;
    std::vector<double> kendall_tau_values;  // one per retained resample, in order
    double kendall_tau_q05 = 0.0;
    double kendall_tau_q50 = 0.0;
    double kendall_tau_q95 = 0.0;
    Ranking reference_ranking;
    int excluded_resamples = 0;  // solver error or no convergence
};

// Fits the full data for the reference ranking, then every resample.
BootstrapReport stability_report(const ComparisonDataset& data, Solver solver,
                                 const BootstrapConfig& boot, const FitConfig& fit,
                                 const Priors& priors);

enum class SweepAxis { raters, comparisons_per_rater };
// redraw: each resample draws g raters from the full set.
// fixed: one subset of g raters (without replacement) per grid point; resamples bootstrap it.
enum class SweepMode { redraw, fixed };

struct SweepPoint {
    int grid_value = 0;
    BootstrapReport report;
};

std::vector<SweepPoint> scaling_sweep(const ComparisonDataset& data, SweepAxis axis,
                                      std::span<const int> grid, Solver solver,
                                      const BootstrapConfig& boot, const FitConfig& fit,
                                      const Priors& priors, SweepMode mode = SweepMode::redraw);

// Generates the dataset from `sim` first, then sweeps it.
std::vector<SweepPoint> scaling_sweep(const SimulationConfig& sim, SweepAxis axis,
                                      std::span<const int> grid, Solver solver,
                                      const BootstrapConfig& boot, const FitConfig& fit,
                                      const Priors& priors, SweepMode mode = SweepMode::redraw);

// Each rater with more than `per_rater` comparisons keeps a uniformly random
// subset of that size; raters at or below it are untouched.
ComparisonDataset subsample_comparisons(const ComparisonDataset& data, std::uint64_t per_rater,
                                        std::uint64_t seed);

// Linear-interpolation quantile of an unsorted sample.
double sample_quantile(std::vector<double> values, double p);

}  // namespace bbq
