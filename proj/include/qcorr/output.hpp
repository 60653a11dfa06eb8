#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qcorr {

/// Rectangular numeric table; the first column is "X".
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Values rendered with 12 significant digits, "\n" line endings.
std::string render_csv(const CsvTable& table);

/// Minimal 800x600 line plot: one polyline per non-X column against X.
std::string render_svg(const CsvTable& table, const std::string& title);

/// Writes `content` to `path`; throws std::ios_base::failure on error.
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace qcorr
