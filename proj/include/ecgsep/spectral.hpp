#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "ecgsep/parallel.hpp"
#include "ecgsep/signal.hpp"

namespace ecgsep {

// Frequency-domain separation: the mother's heart runs slower than the
// child's, so their fundamentals fall on opposite sides of split_hz.
struct SpectralConfig {
    double window_seconds = 2.0;
    double split_hz = 1.5;
    std::size_t zero_pad_factor = 8; // peak search resolution multiplier
    std::size_t harmonics = 5;       // child harmonics kept on reconstruction
    bool hann_taper = false;         // analysis taper for peak estimates only
};

// Dominant frequency below split_hz (mother) and at-or-above it
// (child), located on the zero-padded spectrum of one window. DC is
// never a candidate.
// Throws ConfigError (window too short for the rate, split_hz not
// inside (0, rate/2), zero pad factor == 0) and PeakError naming the
// band if it holds no energy at all.
std::pair<double, double> dominant_frequencies(std::span<const double> window,
                                               double sample_rate_hz,
                                               const SpectralConfig& config);

// Blockwise separation. The mixture is cut into back-to-back windows;
// for each one the child's fundamental is located, the unpadded
// spectrum is masked down to harmonics 1..harmonics of it (one bin of
// slack either side, conjugate halves kept symmetric, DC dropped) and
// the masked window is resynthesized into the output one window later,
// so the result trails the input by exactly one window. The trailing
// part of the input that doesn't fill a window is dropped.
// Windows whose child band is silent or whose peak is not well above
// the band's median level are emitted as zeros and listed in
// low_confidence_windows.
// Throws ConfigError as above and ShapeError if the mixture is shorter
// than one window.
ExtractionResult separate_spectral(const Signal& mixture,
                                   const SpectralConfig& config,
                                   Exec exec = Exec::parallel);

} // namespace ecgsep
