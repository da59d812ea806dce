#include "ecgsep/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <system_error>

#include "ecgsep/errors.hpp"

namespace ecgsep {

namespace {

void split_line(const std::string& line, std::vector<std::string>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || cell.empty())
        throw DataError("line " + std::to_string(line_no) +
                        ": cell '" + cell + "' is not a number");
    if (!std::isfinite(value))
        throw DataError("line " + std::to_string(line_no) +
                        ": cell '" + cell + "' is not finite");
    return value;
}

struct Column {
    std::size_t file_index;
    ChannelRole role;
    std::size_t channel_index;
};

} // namespace

Recording load_recording(std::istream& source, const CsvLayout& layout) {
    std::string line;
    if (!read_line(source, line)) throw ParseError("empty input");

    std::vector<std::string> header;
    split_line(line, header);

    std::vector<Column> mapped;
    std::size_t n_chest = 0, n_abd = 0;
    for (const auto& [name, role] : layout.columns) {
        std::size_t idx = header.size();
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) { idx = i; break; }
        if (idx == header.size())
            throw LayoutError("column '" + name + "' not found in header");
        std::size_t chan = role == ChannelRole::chest ? n_chest++ : n_abd++;
        mapped.push_back({idx, role, chan});
    }
    if (n_chest < 1 || n_chest > 3)
        throw LayoutError("need 1..3 chest channels, layout has " +
                          std::to_string(n_chest));
    if (n_abd < 1 || n_abd > 5)
        throw LayoutError("need 1..5 abdomen channels, layout has " +
                          std::to_string(n_abd));

    std::vector<Signal> chest(n_chest, Signal{{}, layout.sample_rate_hz});
    std::vector<Signal> abdomen(n_abd, Signal{{}, layout.sample_rate_hz});

    std::vector<std::string> cells;
    std::size_t line_no = 1;
    while (read_line(source, line)) {
        ++line_no;
        if (line.empty()) continue;
        split_line(line, cells);
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(cells.size()));
        for (const Column& col : mapped) {
            double v = parse_cell(cells[col.file_index], line_no);
            auto& chans = col.role == ChannelRole::chest ? chest : abdomen;
            chans[col.channel_index].samples.push_back(v);
        }
    }
    if (chest.front().samples.empty()) throw ParseError("no data rows");
    return make_recording(std::move(chest), std::move(abdomen));
}

CsvLayout auto_layout(const std::string& header_line, double sample_rate_hz) {
    std::string line = header_line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    split_line(line, header);

    CsvLayout layout;
    layout.sample_rate_hz = sample_rate_hz;
    for (const std::string& name : header) {
        if (name.rfind("chest", 0) == 0)
            layout.columns.emplace_back(name, ChannelRole::chest);
        else if (name.rfind("abdomen", 0) == 0)
            layout.columns.emplace_back(name, ChannelRole::abdomen);
    }
    if (layout.columns.empty())
        throw LayoutError("header has no chest*/abdomen* columns");
    return layout;
}

Signal load_signal(std::istream& source, const std::string& column,
                   double sample_rate_hz) {
    std::string line;
    if (!read_line(source, line)) throw ParseError("empty input");

    std::vector<std::string> header;
    split_line(line, header);
    std::size_t idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) { idx = i; break; }
    if (idx == header.size())
        throw LayoutError("column '" + column + "' not found in header");

    Signal s;
    s.sample_rate_hz = sample_rate_hz;
    std::vector<std::string> cells;
    std::size_t line_no = 1;
    while (read_line(source, line)) {
        ++line_no;
        if (line.empty()) continue;
        split_line(line, cells);
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(cells.size()));
        s.samples.push_back(parse_cell(cells[idx], line_no));
    }
    if (s.samples.empty()) throw ParseError("no data rows");
    return s;
}

std::string format_double(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

void write_signal(const Signal& s, std::ostream& sink) {
    if (s.samples.empty()) throw ShapeError("refusing to write an empty signal");
    sink << "t,value\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        double t = static_cast<double>(i) / s.sample_rate_hz;
        sink << format_double(t) << ',' << format_double(s.samples[i]) << '\n';
    }
    if (!sink) throw IoError("failed writing signal CSV");
}

void write_recording(const Recording& r, std::ostream& sink) {
    sink << 't';
    for (std::size_t i = 0; i < r.chest.size(); ++i) sink << ",chest" << i;
    for (std::size_t i = 0; i < r.abdomen.size(); ++i) sink << ",abdomen" << i;
    sink << '\n';
    const std::size_t n = r.samples();
    for (std::size_t i = 0; i < n; ++i) {
        sink << format_double(static_cast<double>(i) / r.sample_rate_hz);
        for (const Signal& s : r.chest) sink << ',' << format_double(s.samples[i]);
        for (const Signal& s : r.abdomen) sink << ',' << format_double(s.samples[i]);
        sink << '\n';
    }
    if (!sink) throw IoError("failed writing recording CSV");
}

} // namespace ecgsep
