#pragma once

#include <stdexcept>
#include <string>

namespace ecgsep {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed CSV text: bad header, wrong field count, empty input.
struct ParseError : Error {
    using Error::Error;
};

// Well-formed CSV but unusable values: non-numeric or non-finite cells.
struct DataError : Error {
    using Error::Error;
};

// Column-role map does not fit the file or the channel-count bounds.
struct LayoutError : Error {
    using Error::Error;
};

// Mismatched lengths or an out-of-range window/delay size.
struct ShapeError : Error {
    using Error::Error;
};

// lms_step was called on a filter that already diverged.
struct DivergedError : Error {
    using Error::Error;
};

// Invalid parameter combination (non-positive sizes, bad pairs, ...).
struct ConfigError : Error {
    using Error::Error;
};

// Accuracy metric is undefined for the given target (zero variance).
struct MetricError : Error {
    using Error::Error;
};

// Stream write failure.
struct IoError : Error {
    using Error::Error;
};

// A requested spectral band contains no energy at all.
struct PeakError : Error {
    using Error::Error;
};

} // namespace ecgsep
