#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bbq/metrics.hpp"

using namespace bbq;

TEST_CASE("Ranking") {
    const std::vector<double> scores{0.3, 2.0, 2.0, -1.0};
    const auto r = Ranking::from_scores(scores);
    CHECK(r.order() == std::vector<std::size_t>{1, 2, 0, 3});
    CHECK(r.best() == 1);
    CHECK(r.positions() == std::vector<std::size_t>{2, 0, 1, 3});
    CHECK_THROWS_AS(Ranking({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Ranking({0, 3}), std::invalid_argument);
}

TEST_CASE("kendall_tau") {
    const Ranking a({0, 1, 2, 3});
    CHECK(kendall_tau(a, a) == 1.0);
    CHECK(kendall_tau(a, Ranking({3, 2, 1, 0})) == -1.0);
    CHECK(kendall_tau(a, Ranking({1, 0, 2, 3})) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(kendall_tau(a, Ranking({0, 1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(kendall_tau(Ranking({0}), Ranking({0})), std::invalid_argument);
}

TEST_CASE("property: kendall_tau symmetry, reversal and relabeling") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 12;
        std::vector<std::size_t> x(n), y(n), relabel(n);
        std::iota(x.begin(), x.end(), std::size_t{0});
        y = x;
        relabel = x;
        std::shuffle(x.begin(), x.end(), rng);
        std::shuffle(y.begin(), y.end(), rng);
        std::shuffle(relabel.begin(), relabel.end(), rng);
        const Ranking a(x), b(y);
        auto rev = x;
        std::reverse(rev.begin(), rev.end());
        const double tau = kendall_tau(a, b);
        CHECK(tau >= -1.0);
        CHECK(tau <= 1.0);
        CHECK(tau == kendall_tau(b, a));
        CHECK(kendall_tau(a, a) == 1.0);
        CHECK(kendall_tau(a, Ranking(rev)) == -1.0);
        auto map = [&](std::vector<std::size_t> v) {
            for (auto& e : v) e = relabel[e];
            return Ranking(v);
        };
        CHECK(kendall_tau(map(x), map(y)) == doctest::Approx(tau));
    }
}

TEST_CASE("top1_agreement") {
    const Ranking ref({2, 0, 1});
    std::vector<Ranking> all(4, Ranking({2, 1, 0}));
    CHECK(top1_agreement(all, ref) == 100.0);
    std::vector<Ranking> half{Ranking({2, 1, 0}), Ranking({0, 2, 1})};
    CHECK(top1_agreement(half, ref) == 50.0);
    std::vector<Ranking> three{Ranking({2, 1, 0}), Ranking({2, 0, 1}), Ranking({1, 2, 0}),
                               Ranking({2, 1, 0})};
    CHECK(top1_agreement(three, ref) == 75.0);
    CHECK_THROWS_AS(top1_agreement(std::vector<Ranking>{}, ref), std::invalid_argument);
}

TEST_CASE("rater_agreement") {
    const Ranking ref({0, 1, 2});
    const auto d = ComparisonDataset::from_cells(
        3, 4,
        {{0, 0, 1, 3}, {0, 1, 2, 2},                // always concordant
         {1, 2, 0, 1}, {1, 1, 0, 4},                // always discordant
         {2, 0, 2, 2}, {2, 1, 2, 1}, {2, 2, 1, 1}}  // 3 of 4
    );
    const auto agree = rater_agreement(d, ref);
    REQUIRE(agree.size() == 4);
    CHECK(*agree[0] == 1.0);
    CHECK(*agree[1] == 0.0);
    CHECK(*agree[2] == 0.75);
    CHECK_FALSE(agree[3].has_value());
    CHECK_THROWS_AS(rater_agreement(d, Ranking({0, 1})), std::invalid_argument);
}

TEST_CASE("pearson_correlation") {
    const std::vector<double> x{1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(2 * v + 1);
    CHECK(pearson_correlation(x, y) == doctest::Approx(1.0));
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    CHECK(pearson_correlation(x, neg) == doctest::Approx(-1.0));
    CHECK(pearson_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(pearson_correlation(x, std::vector<double>{1, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(pearson_correlation(std::vector<double>{1}, std::vector<double>{1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(pearson_correlation(x, std::vector<double>{1, 2}), std::invalid_argument);
}
