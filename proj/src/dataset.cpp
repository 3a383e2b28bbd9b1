#include "bbq/dataset.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <unordered_set>

#include "bbq/errors.hpp"

namespace bbq {

std::size_t LabelTable::intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    const std::size_t idx = labels_.size();
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), idx);
    return idx;
}

std::optional<std::size_t> LabelTable::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw DataError(std::string("duplicate ") + what + " label '" + l + "'");
        }
    }
}

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace

ComparisonDataset::ComparisonDataset(std::vector<std::string> item_labels,
                                     std::vector<std::string> rater_labels,
                                     std::vector<CountCell> cells)
    : item_labels_(std::move(item_labels)), rater_labels_(std::move(rater_labels)) {
    check_unique(item_labels_, "item");
    check_unique(rater_labels_, "rater");
    if (item_labels_.size() > std::numeric_limits<std::uint32_t>::max() ||
        rater_labels_.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw DataError("too many items or raters");
    }
    const auto K = item_labels_.size();
    const auto R = rater_labels_.size();

    for (const auto& c : cells) {
        if (c.rater >= R || c.winner >= K || c.loser >= K) {
            throw DataError("comparison cell index out of range");
        }
        if (c.winner == c.loser) {
            throw DataError("self-comparison of item '" + item_labels_[c.winner] + "'");
        }
    }

    auto key = [](const CountCell& c) { return std::tie(c.rater, c.winner, c.loser); };
    std::sort(cells.begin(), cells.end(),
              [&](const CountCell& a, const CountCell& b) { return key(a) < key(b); });
    for (const auto& c : cells) {
        if (c.count == 0) continue;
        if (!cells_.empty() && key(cells_.back()) == key(c)) {
            cells_.back().count += c.count;
        } else {
            cells_.push_back(c);
        }
    }

    rater_offsets_.assign(R + 1, 0);
    rater_totals_.assign(R, 0);
    item_totals_.assign(K, 0);
    for (const auto& c : cells_) {
        rater_offsets_[c.rater + 1] += 1;
        rater_totals_[c.rater] += c.count;
        item_totals_[c.winner] += c.count;
        item_totals_[c.loser] += c.count;
        total_ += c.count;
    }
    for (std::size_t r = 0; r < R; ++r) rater_offsets_[r + 1] += rater_offsets_[r];
}

ComparisonDataset ComparisonDataset::from_cells(std::size_t num_items, std::size_t num_raters,
                                                std::vector<CountCell> cells) {
    return ComparisonDataset(numbered("item", num_items), numbered("rater", num_raters),
                             std::move(cells));
}

std::span<const CountCell> ComparisonDataset::rater_cells(std::size_t rater) const {
    const auto begin = rater_offsets_.at(rater);
    const auto end = rater_offsets_.at(rater + 1);
    return std::span<const CountCell>(cells_).subspan(begin, end - begin);
}

std::uint64_t ComparisonDataset::wins(std::size_t rater, std::size_t winner,
                                      std::size_t loser) const {
    const auto cells = rater_cells(rater);
    auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{winner, loser},
                               [](const CountCell& c, const std::pair<std::size_t, std::size_t>& k) {
                                   return std::pair<std::size_t, std::size_t>{c.winner, c.loser} < k;
                               });
    if (it != cells.end() && it->winner == winner && it->loser == loser) return it->count;
    return 0;
}

std::uint64_t ComparisonDataset::pair_total(std::size_t rater, std::size_t i, std::size_t j) const {
    return wins(rater, i, j) + wins(rater, j, i);
}

std::vector<ComparisonRecord> ComparisonDataset::records() const {
    std::vector<ComparisonRecord> out;
    out.reserve(total_);
    for (const auto& c : cells_) {
        for (std::uint64_t k = 0; k < c.count; ++k) {
            out.push_back({RaterId{c.rater}, ItemId{c.winner}, ItemId{c.loser}});
        }
    }
    return out;
}

DatasetBuilder::DatasetBuilder(const std::vector<std::string>& item_labels,
                               const std::vector<std::string>& rater_labels) {
    for (const auto& l : item_labels) items_.intern(l);
    for (const auto& l : rater_labels) raters_.intern(l);
}

void DatasetBuilder::add(std::string_view rater, std::string_view winner, std::string_view loser,
                         std::uint64_t count) {
    if (winner == loser) {
        throw DataError("self-comparison of item '" + std::string(winner) + "'");
    }
    const auto r = raters_.intern(rater);
    const auto w = items_.intern(winner);
    const auto l = items_.intern(loser);
    cells_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(w),
                      static_cast<std::uint32_t>(l), count});
}

void DatasetBuilder::add(const ComparisonRecord& record, std::uint64_t count) {
    if (record.rater.index >= raters_.size() || record.winner.index >= items_.size() ||
        record.loser.index >= items_.size()) {
        throw DataError("record refers to an unregistered item or rater");
    }
    if (record.winner == record.loser) {
        throw DataError("self-comparison of item '" + items_.label(record.winner.index) + "'");
    }
    cells_.push_back({static_cast<std::uint32_t>(record.rater.index),
                      static_cast<std::uint32_t>(record.winner.index),
                      static_cast<std::uint32_t>(record.loser.index), count});
}

ComparisonDataset DatasetBuilder::build() const {
    return ComparisonDataset(items_.labels(), raters_.labels(), cells_);
}

ComparisonDataset dataset_from_records(std::size_t num_items, std::size_t num_raters,
                                       std::span<const ComparisonRecord> records) {
    DatasetBuilder builder(numbered("item", num_items), numbered("rater", num_raters));
    for (const auto& rec : records) builder.add(rec);
    return builder.build();
}

}  // namespace bbq
