#pragma once

// Comparison CSV: header `rater,winner,loser`, one judgement per line.
// Labels are interned in first-appearance order.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "bbq/dataset.hpp"

namespace bbq {

// Throws DataError (with the 1-based line number) on a missing or wrong
// header, a malformed row, a self-comparison or a file without rows.
ComparisonDataset read_comparisons_csv(std::istream& in, const std::string& source = "<input>");
ComparisonDataset parse_comparisons_csv(const std::filesystem::path& path);

// One line per comparison, in cell order.
void write_comparisons_csv(const ComparisonDataset& data, std::ostream& out);

}  // namespace bbq
