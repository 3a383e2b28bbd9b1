#include "bbq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bbq {

Ranking::Ranking(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (auto item : order_) {
        if (item >= order_.size() || seen[item]) {
            throw std::invalid_argument("ranking is not a permutation");
        }
        seen[item] = true;
    }
}

Ranking Ranking::from_scores(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return Ranking(std::move(order));
}

std::vector<std::size_t> Ranking::positions() const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t p = 0; p < order_.size(); ++p) pos[order_[p]] = p;
    return pos;
}

double kendall_tau(const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rankings cover different item sets");
    const auto n = a.size();
    if (n < 2) throw std::invalid_argument("Kendall's tau needs at least two items");
    const auto pa = a.positions();
    const auto pb = b.positions();
    long long concordant = 0;
    long long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool above_a = pa[i] < pa[j];
            const bool above_b = pb[i] < pb[j];
            if (above_a == above_b) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(concordant - discordant) / pairs;
}

double top1_agreement(std::span<const Ranking> rankings, const Ranking& reference) {
    if (rankings.empty()) throw std::invalid_argument("no rankings to compare");
    const auto best = reference.best();
    const auto hits = std::count_if(rankings.begin(), rankings.end(),
                                    [&](const Ranking& r) { return r.best() == best; });
    return 100.0 * static_cast<double>(hits) / static_cast<double>(rankings.size());
}

std::vector<std::optional<double>> rater_agreement(const ComparisonDataset& data,
                                                   const Ranking& reference) {
    if (reference.size() != data.num_items()) {
        throw std::invalid_argument("reference ranking does not cover all items");
    }
    const auto pos = reference.positions();
    std::vector<std::optional<double>> out(data.num_raters());
    for (std::size_t r = 0; r < data.num_raters(); ++r) {
        const auto total = data.rater_total(r);
        if (total == 0) continue;
        std::uint64_t agree = 0;
        for (const auto& c : data.rater_cells(r)) {
            if (pos[c.winner] < pos[c.loser]) agree += c.count;
        }
        out[r] = static_cast<double>(agree) / static_cast<double>(total);
    }
    return out;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("vectors differ in length");
    if (x.size() < 2) throw std::invalid_argument("need at least two points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace bbq
