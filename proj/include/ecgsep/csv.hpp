#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ecgsep/signal.hpp"

namespace ecgsep {

enum class ChannelRole { chest, abdomen };

// Column-role map for loading a recording. Columns of the CSV that are
// not named here (e.g. a time column) are ignored. Declared order is
// preserved within each role.
struct CsvLayout {
    std::vector<std::pair<std::string, ChannelRole>> columns;
    double sample_rate_hz = 500.0;
};

// Parse a CSV with a header row into a Recording.
// Throws ParseError (malformed text / empty input / no data rows),
// DataError (non-numeric or non-finite cell, reported with line number),
// LayoutError (layout names a missing column, or channel counts are
// outside 1..3 chest / 1..5 abdomen).
Recording load_recording(std::istream& source, const CsvLayout& layout);

// Builds the layout used by the CLI: every column whose name starts
// with "chest" is a chest channel, "abdomen" an abdominal one, in
// header order. Throws LayoutError if the header has neither.
CsvLayout auto_layout(const std::string& header_line, double sample_rate_hz);

// Single-channel files ("t,value"). column selects the value column.
Signal load_signal(std::istream& source, const std::string& column,
                   double sample_rate_hz);

// Writes "t,value" rows; t is derived from the sample rate. Values are
// formatted with the shortest round-trip representation, so
// load -> write -> load is the identity on samples.
// Throws IoError on stream failure.
void write_signal(const Signal& s, std::ostream& sink);

// Multichannel writer used by the synthesizer: header is
// t,chest0..,abdomen0.. in channel order.
void write_recording(const Recording& r, std::ostream& sink);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

} // namespace ecgsep
