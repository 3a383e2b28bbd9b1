#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bbq/model.hpp"
#include "support/oracles.hpp"

using namespace bbq;

namespace {

// Three items, two raters; values below were evaluated term by term in
// 30-digit arithmetic.
ComparisonDataset hand_built() {
    return ComparisonDataset::from_cells(3, 2,
                                         {{0, 0, 1, 3},
                                          {0, 1, 0, 1},
                                          {0, 0, 2, 2},
                                          {0, 2, 1, 4},
                                          {1, 1, 2, 2},
                                          {1, 2, 0, 1},
                                          {1, 0, 1, 1}});
}

const ModelParams kHandParams{{2.0, 1.0, 0.5}, {0.8, 0.3}};

}  // namespace

TEST_CASE("bt_prob") {
    CHECK(bt_prob(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(bt_prob(3.0, 1.0) == doctest::Approx(0.75));
    CHECK(bt_prob(0.1, 0.9) == doctest::Approx(0.1));
    CHECK_THROWS_AS(bt_prob(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bt_prob(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(bt_prob(INFINITY, 1.0), std::domain_error);
    CHECK_THROWS_AS(bt_prob(NAN, 1.0), std::domain_error);
}

TEST_CASE("mixture_prob") {
    CHECK(mixture_prob(0.0, 7.0, 0.2) == doctest::Approx(0.5));
    CHECK(mixture_prob(1.0, 3.0, 1.0) == doctest::Approx(0.75));
    CHECK(mixture_prob(0.8, 3.0, 1.0) == doctest::Approx(0.7));
    CHECK_THROWS_AS(mixture_prob(1.1, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mixture_prob(-0.1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("property: antisymmetry, bounds and monotonicity in q") {
    std::mt19937_64 rng(3);
    std::lognormal_distribution<double> skill(0.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = skill(rng), y = skill(rng), q = unit(rng);
        CHECK(bt_prob(x, y) + bt_prob(y, x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(mixture_prob(q, x, y) + mixture_prob(q, y, x) == doctest::Approx(1.0).epsilon(1e-14));
        const double p = mixture_prob(q, x, y);
        const double bt = bt_prob(x, y);
        CHECK(p >= std::min(0.5, bt) - 1e-15);
        CHECK(p <= std::max(0.5, bt) + 1e-15);
        const double q2 = std::min(1.0, q + 0.1);
        if (bt > 0.5 + 1e-12 && q2 > q) CHECK(mixture_prob(q2, x, y) > p);
        if (bt < 0.5 - 1e-12 && q2 > q) CHECK(mixture_prob(q2, x, y) < p);
    }
}

TEST_CASE("log_likelihood") {
    const auto empty = ComparisonDataset::from_cells(3, 2, {});
    CHECK(log_likelihood(empty, kHandParams) == 0.0);

    const auto one = ComparisonDataset::from_cells(2, 1, {{0, 0, 1, 1}});
    CHECK(log_likelihood(one, {{2.5, 2.5}, {1.0}}) == doctest::Approx(std::log(0.5)));

    const auto d = hand_built();
    CHECK(log_likelihood(d, kHandParams) == doctest::Approx(-9.6741050589245570438).epsilon(1e-13));
    CHECK(log_likelihood(d, kHandParams) ==
          doctest::Approx(oracle::log_likelihood(oracle::dense_counts(d), kHandParams.lambda,
                                                 kHandParams.q))
              .epsilon(1e-13));

    CHECK_THROWS_AS(log_likelihood(d, {{1.0, 1.0}, {0.5, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(log_likelihood(d, {{1.0, 1.0, 1.0}, {0.5}}), std::invalid_argument);
}

TEST_CASE("property: log_likelihood is invariant to skill scale") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::lognormal_distribution<double> skill(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const auto d = oracle::random_instance(rng, 2 + rng() % 5, 1 + rng() % 4, 10);
        ModelParams p;
        for (std::size_t i = 0; i < d.num_items(); ++i) p.lambda.push_back(skill(rng));
        for (std::size_t r = 0; r < d.num_raters(); ++r) p.q.push_back(unit(rng));
        auto scaled = p;
        const double c = skill(rng) * 10.0;
        for (auto& l : scaled.lambda) l *= c;
        CHECK(log_likelihood(d, scaled) == doctest::Approx(log_likelihood(d, p)).epsilon(1e-12));
    }
}

TEST_CASE("log_posterior") {
    const auto empty3 = ComparisonDataset::from_cells(3, 0, {});
    CHECK(log_posterior(empty3, {{1.0, 1.0, 1.0}, {}}, Priors{1.0, 0.0, 1.0, 1.0}) == 0.0);

    const auto empty1 = ComparisonDataset::from_cells(1, 0, {});
    CHECK(log_posterior(empty1, {{1.0}, {}}, Priors{5.0, 0.1, 10.0, 2.0}) == doctest::Approx(-0.1));

    const auto d = hand_built();
    const Priors priors;
    CHECK(log_posterior(d, kHandParams, priors) ==
          doctest::Approx(-24.834265116058701533).epsilon(1e-13));
    CHECK(log_posterior(d, kHandParams, priors) ==
          doctest::Approx(oracle::log_posterior(oracle::dense_counts(d), kHandParams.lambda,
                                                kHandParams.q, 5.0, 0.1, 10.0, 2.0))
              .epsilon(1e-13));

    // Without the quality prior only the likelihood and skill prior remain.
    double skill_prior = 0.0;
    for (double l : kHandParams.lambda) skill_prior += 4.0 * std::log(l) - 0.1 * l;
    CHECK(log_posterior(d, kHandParams, priors, QualityPrior::exclude) ==
          doctest::Approx(log_likelihood(d, kHandParams) + skill_prior));
}

TEST_CASE("priors validation") {
    CHECK_NOTHROW(Priors{}.validate());
    CHECK_THROWS_AS((Priors{1.0, 0.1, 10.0, 2.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Priors{5.0, 0.0, 10.0, 2.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Priors{5.0, 0.1, 1.0, 2.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Priors{5.0, 0.1, 10.0, 1.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((Priors{5.0, 0.1, 1.0, 1.0}.validate_skills()));
}
