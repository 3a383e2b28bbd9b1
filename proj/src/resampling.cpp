#include "bbq/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "bbq/errors.hpp"
#include "bbq/parallel.hpp"
#include "bbq/rng.hpp"

namespace bbq {

void BootstrapConfig::validate() const {
    if (n_resamples < 1) throw std::invalid_argument("n_resamples must be >= 1");
}

RaterBootstrap::RaterBootstrap(const ComparisonDataset& data, std::uint64_t seed)
    : RaterBootstrap(data, seed, [&] {
          std::vector<std::size_t> all(data.num_raters());
          std::iota(all.begin(), all.end(), std::size_t{0});
          return all;
      }()) {}

RaterBootstrap::RaterBootstrap(const ComparisonDataset& data, std::uint64_t seed,
                               std::vector<std::size_t> pool)
    : data_(&data), seed_(seed), pool_(std::move(pool)) {
    if (data.num_raters() == 0 || data.empty()) {
        throw DataError("cannot bootstrap an empty dataset");
    }
    if (pool_.empty()) throw std::invalid_argument("bootstrap rater pool is empty");
    for (auto r : pool_) {
        if (r >= data.num_raters()) throw std::invalid_argument("bootstrap pool index out of range");
    }
}

std::vector<std::size_t> RaterBootstrap::drawn_raters(std::uint64_t k, std::size_t draws) const {
    Rng rng(seed_, k);
    std::vector<std::size_t> drawn(draws);
    for (auto& d : drawn) d = pool_[rng.index(pool_.size())];
    return drawn;
}

ComparisonDataset RaterBootstrap::resample(std::uint64_t k, std::size_t draws) const {
    const auto drawn = drawn_raters(k, draws);
    return assemble_raters(*data_, drawn);
}

std::vector<ComparisonDataset> RaterBootstrap::take(std::size_t n) const {
    std::vector<ComparisonDataset> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(resample(k));
    return out;
}

ComparisonDataset assemble_raters(const ComparisonDataset& data,
                                  std::span<const std::size_t> raters) {
    std::vector<std::string> labels;
    labels.reserve(raters.size());
    std::vector<CountCell> cells;
    for (std::size_t slot = 0; slot < raters.size(); ++slot) {
        const auto r = raters[slot];
        labels.push_back(data.rater_labels().at(r) + "#" + std::to_string(slot));
        for (auto c : data.rater_cells(r)) {
            c.rater = static_cast<std::uint32_t>(slot);
            cells.push_back(c);
        }
    }
    return ComparisonDataset(data.item_labels(), std::move(labels), std::move(cells));
}

double sample_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

Ranking reference_ranking(const ComparisonDataset& data, Solver solver, const FitConfig& fit_config,
                          const Priors& priors) {
    const auto full = fit(solver, data, priors, fit_config);
    return Ranking::from_scores(full.params.lambda);
}

// Fits n resamples produced by make(k) and aggregates them against `reference`.
template <typename MakeResample>
BootstrapReport aggregate(const Ranking& reference, Solver solver, const BootstrapConfig& boot,
                          const FitConfig& fit_config, const Priors& priors,
                          MakeResample&& make) {
    boot.validate();
    const auto n = static_cast<std::size_t>(boot.n_resamples);
    std::vector<std::optional<Ranking>> rankings(n);
    parallel_for(n, boot.threads, [&](std::size_t k) {
        try {
            const auto sample = make(k);
            const auto result = fit(solver, sample, priors, fit_config);
            if (result.converged) rankings[k] = Ranking::from_scores(result.params.lambda);
        } catch (const DataError&) {
        } catch (const NumericalError&) {
        }
    });

    BootstrapReport report;
    report.solver = solver;
    report.seed = boot.seed;
    report.n_resamples = boot.n_resamples;
    report.reference_ranking = reference;
    std::vector<Ranking> kept;
    for (auto& r : rankings) {
        if (!r) {
            ++report.excluded_resamples;
            continue;
        }
        report.kendall_tau_values.push_back(kendall_tau(*r, reference));
        kept.push_back(std::move(*r));
    }
    if (kept.empty()) throw NumericalError("every bootstrap resample failed to fit");
    report.top1_percent = top1_agreement(kept, reference);
    const auto& taus = report.kendall_tau_values;
    report.kendall_tau_mean =
        std::accumulate(taus.begin(), taus.end(), 0.0) / static_cast<double>(taus.size());
    report.kendall_tau_q05 = sample_quantile(taus, 0.05);
    report.kendall_tau_q50 = sample_quantile(taus, 0.50);
    report.kendall_tau_q95 = sample_quantile(taus, 0.95);
    return report;
}

// Separate stream family for sweep subsets so that they never collide with
// resample streams.
constexpr std::uint64_t kSubsetStream = 0x8000000000000000ULL;

}  // namespace

BootstrapReport stability_report(const ComparisonDataset& data, Solver solver,
                                 const BootstrapConfig& boot, const FitConfig& fit_config,
                                 const Priors& priors) {
    boot.validate();
    const RaterBootstrap bootstrap(data, boot.seed);
    const auto reference = reference_ranking(data, solver, fit_config, priors);
    return aggregate(reference, solver, boot, fit_config, priors,
                     [&](std::size_t k) { return bootstrap.resample(k); });
}

ComparisonDataset subsample_comparisons(const ComparisonDataset& data, std::uint64_t per_rater,
                                        std::uint64_t seed) {
    std::vector<CountCell> cells;
    for (std::size_t r = 0; r < data.num_raters(); ++r) {
        const auto own = data.rater_cells(r);
        if (data.rater_total(r) <= per_rater) {
            cells.insert(cells.end(), own.begin(), own.end());
            continue;
        }
        // Partial Fisher-Yates over the expanded comparison list.
        std::vector<std::size_t> units;
        units.reserve(data.rater_total(r));
        for (std::size_t k = 0; k < own.size(); ++k) {
            for (std::uint64_t c = 0; c < own[k].count; ++c) units.push_back(k);
        }
        Rng rng(seed, r);
        for (std::size_t k = 0; k < per_rater; ++k) {
            const auto pick = k + rng.index(units.size() - k);
            std::swap(units[k], units[pick]);
            auto cell = own[units[k]];
            cell.count = 1;
            cells.push_back(cell);
        }
    }
    return ComparisonDataset(data.item_labels(), data.rater_labels(), std::move(cells));
}

std::vector<SweepPoint> scaling_sweep(const ComparisonDataset& data, SweepAxis axis,
                                      std::span<const int> grid, Solver solver,
                                      const BootstrapConfig& boot, const FitConfig& fit_config,
                                      const Priors& priors, SweepMode mode) {
    boot.validate();
    std::uint64_t max_per_rater = 0;
    for (std::size_t r = 0; r < data.num_raters(); ++r) {
        max_per_rater = std::max(max_per_rater, data.rater_total(r));
    }
    for (int g : grid) {
        if (g < 1) throw std::invalid_argument("sweep grid values must be >= 1");
        if (axis == SweepAxis::raters && static_cast<std::size_t>(g) > data.num_raters()) {
            throw std::invalid_argument("grid point " + std::to_string(g) + " exceeds the " +
                                        std::to_string(data.num_raters()) + " available raters");
        }
        if (axis == SweepAxis::comparisons_per_rater && static_cast<std::uint64_t>(g) > max_per_rater) {
            throw std::invalid_argument("grid point " + std::to_string(g) +
                                        " exceeds the largest per-rater comparison count " +
                                        std::to_string(max_per_rater));
        }
    }

    const auto reference = reference_ranking(data, solver, fit_config, priors);
    std::vector<SweepPoint> out;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const int g = grid[gi];
        SweepPoint point{g, {}};
        if (axis == SweepAxis::raters) {
            std::vector<std::size_t> pool(data.num_raters());
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            if (mode == SweepMode::fixed) {
                Rng rng(boot.seed, kSubsetStream + gi);
                for (std::size_t k = 0; k < static_cast<std::size_t>(g); ++k) {
                    std::swap(pool[k], pool[k + rng.index(pool.size() - k)]);
                }
                pool.resize(static_cast<std::size_t>(g));
            }
            const RaterBootstrap bootstrap(data, boot.seed, std::move(pool));
            point.report = aggregate(reference, solver, boot, fit_config, priors, [&](std::size_t k) {
                return bootstrap.resample(k, static_cast<std::size_t>(g));
            });
        } else {
            const auto reduced =
                subsample_comparisons(data, static_cast<std::uint64_t>(g),
                                      derive_seed(boot.seed, kSubsetStream + gi));
            const RaterBootstrap bootstrap(reduced, boot.seed);
            point.report = aggregate(reference, solver, boot, fit_config, priors,
                                     [&](std::size_t k) { return bootstrap.resample(k); });
        }
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<SweepPoint> scaling_sweep(const SimulationConfig& sim, SweepAxis axis,
                                      std::span<const int> grid, Solver solver,
                                      const BootstrapConfig& boot, const FitConfig& fit_config,
                                      const Priors& priors, SweepMode mode) {
    const auto data = simulate_comparisons(sim);
    return scaling_sweep(data, axis, grid, solver, boot, fit_config, priors, mode);
}

}  // namespace bbq
