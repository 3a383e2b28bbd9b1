#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "bbq/errors.hpp"
#include "bbq/resampling.hpp"

using namespace bbq;

namespace {

ComparisonDataset heterogeneous(std::uint64_t seed, int raters = 24, int per_rater = 40) {
    std::vector<double> q;
    for (int r = 0; r < raters; ++r) q.push_back(r % 3 == 0 ? 0.0 : 0.9);
    return simulate_comparisons({log_spaced_skills(6, 1.0), q, per_rater, seed});
}

bool same_cells(std::span<const CountCell> a, std::span<const CountCell> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].winner != b[k].winner || a[k].loser != b[k].loser || a[k].count != b[k].count) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("a single rater resamples to itself") {
    const auto d = ComparisonDataset({"a", "b", "c"}, {"solo"}, {{0, 0, 1, 3}, {0, 2, 1, 1}});
    const RaterBootstrap boot(d, 5);
    for (std::uint64_t k = 0; k < 5; ++k) {
        const auto s = boot.resample(k);
        CHECK(s.rater_labels() == std::vector<std::string>{"solo#0"});
        CHECK(s.item_labels() == d.item_labels());
        CHECK(same_cells(s.cells(), d.cells()));
    }
}

TEST_CASE("bootstrap resamples are deterministic and preserve rater structure") {
    const auto d = heterogeneous(3);
    const RaterBootstrap a(d, 42), b(d, 42), c(d, 43);
    const auto first = a.take(10);
    CHECK(first == b.take(10));
    CHECK_FALSE(first == c.take(10));
    for (std::uint64_t k = 0; k < 10; ++k) {
        const auto drawn = a.drawn_raters(k, d.num_raters());
        const auto& s = first[k];
        REQUIRE(s.num_raters() == d.num_raters());
        // Count-sum oracle: totals equal the sum of n_r over the drawn multiset.
        std::uint64_t expected = 0;
        for (auto r : drawn) expected += d.rater_total(r);
        CHECK(s.total() == expected);
        for (std::size_t slot = 0; slot < drawn.size(); ++slot) {
            CHECK(same_cells(s.rater_cells(slot), d.rater_cells(drawn[slot])));
        }
    }
}

TEST_CASE("bootstrap input errors") {
    const auto empty = ComparisonDataset::from_cells(3, 2, {});
    CHECK_THROWS_AS(RaterBootstrap(empty, 1), DataError);
    const auto d = heterogeneous(1);
    CHECK_THROWS_AS(RaterBootstrap(d, 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(RaterBootstrap(d, 1, {999}), std::invalid_argument);
    BootstrapConfig bad;
    bad.n_resamples = 0;
    CHECK_THROWS_AS(stability_report(d, Solver::bbq, bad, FitConfig{}, Priors{}), std::invalid_argument);
}

TEST_CASE("separable data is perfectly stable") {
    const auto d = simulate_comparisons({{1000.0, 100.0, 10.0, 1.0}, std::vector<double>(10, 1.0), 200, 8});
    BootstrapConfig boot;
    boot.n_resamples = 50;
    boot.seed = 1;
    const auto report = stability_report(d, Solver::bbq, boot, FitConfig{}, Priors{});
    CHECK(report.top1_percent == 100.0);
    CHECK(report.kendall_tau_mean > 0.99);
    CHECK(report.excluded_resamples == 0);
    CHECK(report.reference_ranking.order() == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("one resample reduces to a single fit comparison") {
    const auto d = heterogeneous(4);
    BootstrapConfig boot;
    boot.n_resamples = 1;
    boot.seed = 9;
    const auto report = stability_report(d, Solver::bayes_bt, boot, FitConfig{}, Priors{});
    const auto reference = Ranking::from_scores(fit_bayes_bt(d, Priors{}, FitConfig{}).params.lambda);
    const auto sample = RaterBootstrap(d, 9).resample(0);
    const auto single = Ranking::from_scores(fit_bayes_bt(sample, Priors{}, FitConfig{}).params.lambda);
    CHECK(report.reference_ranking == reference);
    CHECK(report.kendall_tau_values == std::vector<double>{kendall_tau(single, reference)});
    CHECK(report.top1_percent == (single.best() == reference.best() ? 100.0 : 0.0));
    CHECK(report.kendall_tau_q05 == report.kendall_tau_q95);
}

TEST_CASE("stability report does not depend on the thread count") {
    const auto d = heterogeneous(5);
    BootstrapConfig boot;
    boot.n_resamples = 40;
    boot.seed = 12;
    boot.threads = 1;
    const auto serial = stability_report(d, Solver::bbq, boot, FitConfig{}, Priors{});
    boot.threads = 6;
    const auto parallel = stability_report(d, Solver::bbq, boot, FitConfig{}, Priors{});
    CHECK(serial.kendall_tau_values == parallel.kendall_tau_values);
    CHECK(serial.top1_percent == parallel.top1_percent);
}

TEST_CASE("sample_quantile") {
    CHECK(sample_quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(sample_quantile({1.0, 2.0}, 0.25) == doctest::Approx(1.25));
    CHECK(sample_quantile({4.0}, 0.95) == 4.0);
    CHECK_THROWS_AS(sample_quantile({}, 0.5), std::invalid_argument);
}

TEST_CASE("subsample_comparisons caps each rater") {
    const auto d = heterogeneous(6, 10, 30);
    const auto s = subsample_comparisons(d, 12, 3);
    for (std::size_t r = 0; r < d.num_raters(); ++r) {
        CHECK(s.rater_total(r) == 12);
        for (const auto& c : s.rater_cells(r)) CHECK(c.count <= d.wins(r, c.winner, c.loser));
    }
    CHECK(subsample_comparisons(d, 30, 3) == d);
    CHECK(subsample_comparisons(d, 12, 3) == s);
}

TEST_CASE("scaling_sweep") {
    const auto d = heterogeneous(7, 12, 30);
    BootstrapConfig boot;
    boot.n_resamples = 20;
    boot.seed = 4;

    SUBCASE("the full-size grid point equals the stability report") {
        const auto full = stability_report(d, Solver::bbq, boot, FitConfig{}, Priors{});
        const std::vector<int> rgrid{12};
        const auto by_raters = scaling_sweep(d, SweepAxis::raters, rgrid, Solver::bbq, boot, FitConfig{}, Priors{});
        REQUIRE(by_raters.size() == 1);
        CHECK(by_raters[0].report.kendall_tau_values == full.kendall_tau_values);
        CHECK(by_raters[0].report.top1_percent == full.top1_percent);
        const std::vector<int> cgrid{30};
        const auto by_comps = scaling_sweep(d, SweepAxis::comparisons_per_rater, cgrid, Solver::bbq,
                                            boot, FitConfig{}, Priors{});
        CHECK(by_comps[0].report.kendall_tau_values == full.kendall_tau_values);
    }
    SUBCASE("grid validation") {
        const std::vector<int> too_many{13};
        CHECK_THROWS_AS(scaling_sweep(d, SweepAxis::raters, too_many, Solver::bbq, boot, FitConfig{}, Priors{}),
                        std::invalid_argument);
        const std::vector<int> too_long{31};
        CHECK_THROWS_AS(scaling_sweep(d, SweepAxis::comparisons_per_rater, too_long, Solver::bbq, boot,
                                      FitConfig{}, Priors{}),
                        std::invalid_argument);
        const std::vector<int> zero{0};
        CHECK_THROWS_AS(scaling_sweep(d, SweepAxis::raters, zero, Solver::bbq, boot, FitConfig{}, Priors{}),
                        std::invalid_argument);
    }
    SUBCASE("fixed subsets are reproducible") {
        const std::vector<int> grid{3, 6};
        const auto a = scaling_sweep(d, SweepAxis::raters, grid, Solver::bayes_bt, boot, FitConfig{},
                                     Priors{}, SweepMode::fixed);
        const auto b = scaling_sweep(d, SweepAxis::raters, grid, Solver::bayes_bt, boot, FitConfig{},
                                     Priors{}, SweepMode::fixed);
        REQUIRE(a.size() == 2);
        CHECK(a[0].grid_value == 3);
        CHECK(a[1].report.kendall_tau_values == b[1].report.kendall_tau_values);
    }
}

TEST_CASE("tau improves with more raters on synthetic data") {
    SimulationConfig sim{log_spaced_skills(8, 1.0), {}, 40, 21};
    for (int r = 0; r < 64; ++r) sim.rater_qualities.push_back(r % 4 == 0 ? 0.1 : 0.85);
    BootstrapConfig boot;
    boot.n_resamples = 60;
    boot.seed = 2;
    const std::vector<int> grid{4, 16, 64};
    const auto points = scaling_sweep(sim, SweepAxis::raters, grid, Solver::bbq, boot, FitConfig{}, Priors{});
    for (std::size_t k = 1; k < points.size(); ++k) {
        CHECK(points[k].report.kendall_tau_mean >= points[k - 1].report.kendall_tau_mean - 0.02);
    }
}
