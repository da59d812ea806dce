#pragma once

#include <cstddef>
#include <vector>

namespace ecgsep {

// A uniformly sampled real-valued channel.
struct Signal {
    std::vector<double> samples;
    double sample_rate_hz = 500.0;

    std::size_t size() const { return samples.size(); }
};

// One multichannel maternal recording: chest leads carry the mother's
// signal, abdominal leads carry mother plus fetus. All channels share
// the same length and rate. 1..3 chest and 1..5 abdomen channels.
struct Recording {
    std::vector<Signal> chest;
    std::vector<Signal> abdomen;
    double sample_rate_hz = 500.0;

    std::size_t samples() const {
        if (!chest.empty()) return chest.front().size();
        if (!abdomen.empty()) return abdomen.front().size();
        return 0;
    }
};

// Validating constructor for Recording: 1..3 chest and 1..5 abdomen
// channels (LayoutError otherwise), all channels the same nonzero
// length (ShapeError) and the same positive rate (ConfigError).
Recording make_recording(std::vector<Signal> chest, std::vector<Signal> abdomen);

// Output of a full separation run (adaptive cascade or spectral).
struct ExtractionResult {
    Signal child;                        // extracted fetal signal
    std::vector<Signal> stage1_outputs;  // per-pair mother-cancelled traces (cascade only)
    std::vector<double> lr_trace;        // learning rate used at each adaptive step
    bool diverged = false;
    std::vector<std::size_t> low_confidence_windows; // spectral only
};

} // namespace ecgsep
