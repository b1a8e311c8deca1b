#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace greybox {

// Numeric CSV with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    bool has(std::string_view name) const;
    std::vector<double> column(std::string_view name) const;  // throws InvalidInput
    std::vector<double> column(std::size_t index) const;
};

// Throws InvalidInput with the offending line number on malformed input.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

// Six significant digits; a leading "time_s" column is written as integer
// seconds.
std::string format_number(double v);
void write_csv(std::ostream& os, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace greybox
