#pragma once

#include <array>
#include <cstdint>

#include "ecgsep/parallel.hpp"
#include "ecgsep/signal.hpp"

namespace ecgsep {

// Synthetic mother+child recording: two Gaussian-pulse trains with a
// slow sinusoidal rate drift, mixed into 3 chest + 5 abdomen channels
// with per-channel gains plus white Gaussian noise. Channel sample =
//   gains[ch][0] * true_mother + gains[ch][1] * true_child + noise
// where the truth signals are the unit-gain pulse trains scaled by
// their amplitudes. Noise comes from a counter-based generator keyed
// on (seed, channel, sample), so generation is order-independent and
// bit-reproducible.
struct SynthParams {
    double duration_s = 180.0;
    double sample_rate_hz = 500.0;
    double mother_hz = 0.8;
    double child_hz = 2.3;
    double mother_amplitude = 0.008;
    double child_amplitude = 0.002;
    double mother_pulse_sigma_s = 0.010;
    double child_pulse_sigma_s = 0.015;
    double rate_drift = 0.02; // +-2% sinusoidal drift over the recording
    double noise_std = 1.2e-4;
    std::uint64_t seed = 0;
    // {mother gain, child gain} rows: chest 0..2 then abdomen 0..4.
    std::array<std::array<double, 2>, 8> gains{{{1.00, 0.015},
                                                {0.92, 0.030},
                                                {0.85, 0.020},
                                                {0.60, 1.00},
                                                {0.55, 0.95},
                                                {0.70, 0.75},
                                                {0.50, 0.85},
                                                {0.65, 0.90}}};
};

struct SynthOutput {
    Recording recording;
    Signal true_child;  // child train at unit gain (times child_amplitude)
    Signal true_mother;
};

// Throws ConfigError for non-positive duration/rate/widths, negative
// amplitudes or noise, |drift| >= 1, or frequencies at or above
// Nyquist. Zero amplitudes are allowed (single-source recordings).
SynthOutput generate(const SynthParams& params, Exec exec = Exec::parallel);

} // namespace ecgsep
