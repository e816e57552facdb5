#pragma once

/// @file io.hpp
/// @brief Locale-independent CSV and JSON output helpers.

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace vsw::io {

/// Shortest round-trip decimal representation, '.' separator.
std::string format_double(double x);

/// Writes rows of doubles with a header line; LF line endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::initializer_list<std::string> header);
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    void row(std::initializer_list<double> values);
    void row(std::span<const double> values);

private:
    std::ostream& os_;
    std::size_t columns_;
};

/// Write text to a file, creating parent directories. Throws on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

std::string read_file(const std::filesystem::path& path);

} // namespace vsw::io
