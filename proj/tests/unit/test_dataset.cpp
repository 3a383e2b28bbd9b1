#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bbq/dataset.hpp"
#include "bbq/errors.hpp"

using namespace bbq;

TEST_CASE("builder interns labels in first-appearance order") {
    DatasetBuilder b;
    b.add("r1", "b", "a");
    b.add("r0", "a", "c");
    b.add("r1", "b", "a");
    const auto d = b.build();
    CHECK(d.item_labels() == std::vector<std::string>{"b", "a", "c"});
    CHECK(d.rater_labels() == std::vector<std::string>{"r1", "r0"});
    CHECK(d.num_items() == 3);
    CHECK(d.num_raters() == 2);
    CHECK(d.wins(0, 0, 1) == 2);
    CHECK(d.wins(0, 1, 0) == 0);
    CHECK(d.pair_total(0, 1, 0) == 2);
    CHECK(d.rater_total(0) == 2);
    CHECK(d.rater_total(1) == 1);
    CHECK(d.item_total(1) == 3);
    CHECK(d.total() == 3);
    CHECK(d.cells().size() == 2);
}

TEST_CASE("self-comparisons are rejected") {
    DatasetBuilder b;
    CHECK_THROWS_AS(b.add("r", "x", "x"), DataError);
    CHECK_THROWS_AS(ComparisonDataset::from_cells(2, 1, {{0, 1, 1, 1}}), DataError);
}

TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(ComparisonDataset({"a", "a"}, {"r"}, {}), DataError);
    CHECK_THROWS_AS(ComparisonDataset({"a", "b"}, {"r", "r"}, {}), DataError);
    CHECK_THROWS_AS(ComparisonDataset::from_cells(2, 1, {{1, 0, 1, 1}}), DataError);
    CHECK_THROWS_AS(ComparisonDataset::from_cells(2, 1, {{0, 0, 2, 1}}), DataError);
    DatasetBuilder b({"a", "b"}, {"r"});
    CHECK_THROWS_AS(b.add(ComparisonRecord{RaterId{1}, ItemId{0}, ItemId{1}}), DataError);
}

TEST_CASE("unseen items and raters are kept with zero totals") {
    DatasetBuilder b({"a", "b", "ghost"}, {"r0", "idle"});
    b.add("r0", "a", "b");
    const auto d = b.build();
    CHECK(d.num_items() == 3);
    CHECK(d.item_total(2) == 0);
    CHECK(d.rater_total(1) == 0);
    CHECK(d.rater_cells(1).empty());
}

TEST_CASE("zero-count cells are dropped and duplicates merged") {
    const auto d = ComparisonDataset::from_cells(3, 1, {{0, 0, 1, 0}, {0, 2, 1, 2}, {0, 2, 1, 3}});
    REQUIRE(d.cells().size() == 1);
    CHECK(d.cells()[0].count == 5);
}

TEST_CASE("property: records -> counts -> totals is exact and order independent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t K = 2 + rng() % 6;
        const std::size_t R = 1 + rng() % 5;
        std::vector<ComparisonRecord> records;
        const auto n = rng() % 200;
        for (std::size_t k = 0; k < n; ++k) {
            const auto i = rng() % K;
            auto j = rng() % (K - 1);
            if (j >= i) ++j;
            records.push_back({RaterId{rng() % R}, ItemId{i}, ItemId{j}});
        }
        const auto d = dataset_from_records(K, R, records);
        CHECK(d.total() == records.size());

        std::vector<std::uint64_t> per_rater(R, 0);
        for (const auto& rec : records) ++per_rater[rec.rater.index];
        for (std::size_t r = 0; r < R; ++r) {
            CHECK(d.rater_total(r) == per_rater[r]);
            std::uint64_t sum = 0;
            for (std::size_t i = 0; i < K; ++i)
                for (std::size_t j = 0; j < K; ++j)
                    if (i != j) sum += d.wins(r, i, j);
            CHECK(sum == d.rater_total(r));
        }

        auto expanded = d.records();
        auto sorted = records;
        auto key = [](const ComparisonRecord& x) {
            return std::tuple(x.rater.index, x.winner.index, x.loser.index);
        };
        auto by_key = [&](const ComparisonRecord& x, const ComparisonRecord& y) { return key(x) < key(y); };
        std::sort(sorted.begin(), sorted.end(), by_key);
        CHECK(expanded == sorted);

        std::shuffle(records.begin(), records.end(), rng);
        CHECK(dataset_from_records(K, R, records) == d);
    }
}
