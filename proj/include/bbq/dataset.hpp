#pragma once

// Sparse per-rater pairwise comparison counts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bbq {

struct ItemId {
    std::size_t index = 0;
    friend bool operator==(ItemId, ItemId) = default;
};

struct RaterId {
    std::size_t index = 0;
    friend bool operator==(RaterId, RaterId) = default;
};

// One observed judgement: `rater` preferred `winner` over `loser`.
struct ComparisonRecord {
    RaterId rater;
    ItemId winner;
    ItemId loser;
    friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

// w_{r,ij}: number of times rater r ranked item i (winner) above item j (loser).
struct CountCell {
    std::uint32_t rater = 0;
    std::uint32_t winner = 0;
    std::uint32_t loser = 0;
    std::uint64_t count = 0;
    friend bool operator==(const CountCell&, const CountCell&) = default;
};

// Dense label <-> index mapping, indices assigned in first-appearance order.
class LabelTable {
public:
    std::size_t intern(std::string_view label);
    std::optional<std::size_t> find(std::string_view label) const;
    const std::string& label(std::size_t index) const { return labels_.at(index); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Immutable comparison counts. Cells are merged, sorted by (rater, winner, loser)
// and never include zero counts or self-comparisons.
class ComparisonDataset {
public:
    ComparisonDataset() = default;

    // Throws DataError on self-comparisons, out-of-range indices or duplicate labels.
    ComparisonDataset(std::vector<std::string> item_labels, std::vector<std::string> rater_labels,
                      std::vector<CountCell> cells);

    // Unlabelled convenience constructor; labels become "item<i>" / "rater<r>".
    static ComparisonDataset from_cells(std::size_t num_items, std::size_t num_raters,
                                        std::vector<CountCell> cells);

    std::size_t num_items() const { return item_labels_.size(); }
    std::size_t num_raters() const { return rater_labels_.size(); }

    std::span<const CountCell> cells() const { return cells_; }
    std::span<const CountCell> rater_cells(std::size_t rater) const;
    // Offset of the first cell of `rater` inside cells().
    std::size_t rater_offset(std::size_t rater) const { return rater_offsets_.at(rater); }

    std::uint64_t wins(std::size_t rater, std::size_t winner, std::size_t loser) const;
    // n_{r,ij} = w_{r,ij} + w_{r,ji}
    std::uint64_t pair_total(std::size_t rater, std::size_t i, std::size_t j) const;
    // n_r
    std::uint64_t rater_total(std::size_t rater) const { return rater_totals_.at(rater); }
    // Number of comparisons item i took part in, over all raters.
    std::uint64_t item_total(std::size_t item) const { return item_totals_.at(item); }
    std::uint64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    const std::vector<std::string>& item_labels() const { return item_labels_; }
    const std::vector<std::string>& rater_labels() const { return rater_labels_; }

    // Expands counts back into individual records in cell order.
    std::vector<ComparisonRecord> records() const;

    friend bool operator==(const ComparisonDataset&, const ComparisonDataset&) = default;

private:
    std::vector<std::string> item_labels_;
    std::vector<std::string> rater_labels_;
    std::vector<CountCell> cells_;
    std::vector<std::size_t> rater_offsets_;  // size R + 1
    std::vector<std::uint64_t> rater_totals_;
    std::vector<std::uint64_t> item_totals_;
    std::uint64_t total_ = 0;
};

// Accumulates labelled or indexed records into a ComparisonDataset.
class DatasetBuilder {
public:
    DatasetBuilder() = default;
    // Pre-registers item/rater labels so that they keep their indices even
    // when they never appear in a record.
    DatasetBuilder(const std::vector<std::string>& item_labels,
                   const std::vector<std::string>& rater_labels);

    ItemId item(std::string_view label) { return ItemId{items_.intern(label)}; }
    RaterId rater(std::string_view label) { return RaterId{raters_.intern(label)}; }

    void add(std::string_view rater, std::string_view winner, std::string_view loser,
             std::uint64_t count = 1);
    void add(const ComparisonRecord& record, std::uint64_t count = 1);

    ComparisonDataset build() const;

private:
    LabelTable items_;
    LabelTable raters_;
    std::vector<CountCell> cells_;
};

ComparisonDataset dataset_from_records(std::size_t num_items, std::size_t num_raters,
                                       std::span<const ComparisonRecord> records);

}  // namespace bbq
