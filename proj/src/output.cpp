#include "qcorr/output.hpp"

#include "qcorr/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcorr {

std::string render_csv(const CsvTable& table)
{
    if (table.header.empty() || table.header.front() != "X")
        throw std::invalid_argument("CSV table must start with an X column");
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i)
            out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("CSV table is not rectangular");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

constexpr std::array<const char*, 8> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

} // namespace

std::string render_svg(const CsvTable& table, const std::string& title)
{
    constexpr double kWidth = 800, kHeight = 600;
    constexpr double kLeft = 80, kRight = 180, kTop = 50, kBottom = 60;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 0;
    bool first = true;
    for (const auto& row : table.rows) {
        if (first) {
            x_lo = x_hi = row[0];
            first = false;
        }
        x_lo = std::min(x_lo, row[0]);
        x_hi = std::max(x_hi, row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (!std::isfinite(row[c]))
                continue;
            y_lo = std::min(y_lo, row[c]);
            y_hi = std::max(y_hi, row[c]);
        }
    }
    if (x_hi <= x_lo)
        x_hi = x_lo + 1;
    if (y_hi <= y_lo)
        y_hi = y_lo + 1;
    y_hi += 0.05 * (y_hi - y_lo);

    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" << escape_xml(title)
        << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\" font-size=\"12\">"
            << format_number(std::round(xv * 1e6) / 1e6) << "</text>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
            << format_number(std::round(yv * 1e4) / 1e4) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\" font-size=\"14\">X</text>\n";

    for (std::size_t c = 1; c < table.header.size(); ++c) {
        const char* color = kPalette[(c - 1) % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool sep = false;
        for (const auto& row : table.rows) {
            if (!std::isfinite(row[c]))
                continue;
            if (sep)
                out << ' ';
            out << format_number(px(row[0])) << ',' << format_number(py(row[c]));
            sep = true;
        }
        out << "\"/>\n";
        const double ly = kTop + 20 + 20.0 * static_cast<double>(c - 1);
        out << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + plot_w + 40
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kLeft + plot_w + 45 << "\" y=\"" << ly << "\" font-size=\"12\">"
            << escape_xml(table.header[c]) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out)
        throw std::ios_base::failure("failed writing " + path.string());
}

} // namespace qcorr
