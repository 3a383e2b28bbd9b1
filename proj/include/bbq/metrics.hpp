#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bbq/dataset.hpp"

namespace bbq {

// Strict ordering of item indices, best first.
class Ranking {
public:
    Ranking() = default;
    // Throws std::invalid_argument unless `order` is a permutation of 0..K-1.
    explicit Ranking(std::vector<std::size_t> order);

    // Descending skill; exact ties broken by ascending item index.
    static Ranking from_scores(std::span<const double> scores);

    const std::vector<std::size_t>& order() const { return order_; }
    std::size_t size() const { return order_.size(); }
    std::size_t best() const { return order_.at(0); }
    // position()[item] = 0 for the best item.
    std::vector<std::size_t> positions() const;

    friend bool operator==(const Ranking&, const Ranking&) = default;

private:
    std::vector<std::size_t> order_;
};

// Tau-a: (concordant - discordant) / (K (K - 1) / 2). Requires K >= 2.
double kendall_tau(const Ranking& a, const Ranking& b);

// Percentage of rankings whose best item equals the reference's best item.
double top1_agreement(std::span<const Ranking> rankings, const Ranking& reference);

// Per rater: fraction of comparisons whose winner the reference ranks higher.
// Raters without comparisons get std::nullopt.
std::vector<std::optional<double>> rater_agreement(const ComparisonDataset& data,
                                                   const Ranking& reference);

// Sample Pearson correlation; throws std::invalid_argument for mismatched
// lengths, fewer than two points or zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace bbq
