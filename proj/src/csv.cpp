#include "bbq/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "bbq/errors.hpp"

namespace bbq {

namespace {

constexpr std::string_view kHeader = "rater,winner,loser";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

ComparisonDataset read_comparisons_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw DataError(source + ": empty file");
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        fail(source, line_no, "expected header '" + std::string(kHeader) + "'");
    }

    DatasetBuilder builder;
    std::size_t rows = 0;
    std::size_t blank_run_start = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (blank_run_start == 0) blank_run_start = line_no;
            continue;
        }
        if (blank_run_start != 0) fail(source, blank_run_start, "blank line");
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            fail(source, line_no, "expected 3 fields, found " + std::to_string(fields.size()));
        }
        for (auto f : fields) {
            if (f.empty()) fail(source, line_no, "empty field");
        }
        if (fields[1] == fields[2]) {
            fail(source, line_no, "self-comparison of item '" + std::string(fields[1]) + "'");
        }
        builder.add(fields[0], fields[1], fields[2]);
        ++rows;
    }
    if (rows == 0) throw DataError(source + ": no comparison rows");
    return builder.build();
}

ComparisonDataset parse_comparisons_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return read_comparisons_csv(in, path.string());
}

void write_comparisons_csv(const ComparisonDataset& data, std::ostream& out) {
    auto check = [](const std::string& label) {
        if (label.empty() || label.find_first_of(",\r\n") != std::string::npos) {
            throw DataError("label '" + label + "' cannot be written as a CSV field");
        }
    };
    for (const auto& l : data.item_labels()) check(l);
    for (const auto& l : data.rater_labels()) check(l);
    out << kHeader << '\n';
    const auto& items = data.item_labels();
    const auto& raters = data.rater_labels();
    for (const auto& c : data.cells()) {
        for (std::uint64_t k = 0; k < c.count; ++k) {
            out << raters[c.rater] << ',' << items[c.winner] << ',' << items[c.loser] << '\n';
        }
    }
}

}  // namespace bbq
