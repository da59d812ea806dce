#include "ecgsep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "ecgsep/dft.hpp"
#include "ecgsep/errors.hpp"

namespace ecgsep {

namespace {

void check_config(const SpectralConfig& config, double sample_rate_hz,
                  std::size_t window_len) {
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be > 0");
    if (window_len < 2)
        throw ConfigError("window of " + std::to_string(window_len) +
                          " samples is too short");
    if (!(config.split_hz > 0.0) || !(config.split_hz < sample_rate_hz / 2.0))
        throw ConfigError("split_hz must lie inside (0, rate/2)");
    if (config.zero_pad_factor == 0) throw ConfigError("zero_pad_factor must be >= 1");
    if (config.harmonics == 0) throw ConfigError("harmonics must be >= 1");
}

struct BandPeak {
    double frequency = 0.0;
    double magnitude = 0.0;
    double median = 0.0;
    bool empty = true;
};

// peak of |spectrum| over bins whose frequency lies in [lo, hi); bins
// run 1..N/2 (DC excluded, negative half mirrors the positive one)
BandPeak band_peak(const std::vector<double>& mags, double bin_hz, double lo,
                   double hi) {
    BandPeak p;
    std::vector<double> band;
    const std::size_t half = mags.size() / 2;
    for (std::size_t k = 1; k <= half; ++k) {
        const double f = static_cast<double>(k) * bin_hz;
        if (f < lo || f >= hi) continue;
        p.empty = false;
        band.push_back(mags[k]);
        if (mags[k] > p.magnitude) {
            p.magnitude = mags[k];
            p.frequency = f;
        }
    }
    if (!band.empty()) {
        auto mid = band.begin() + static_cast<std::ptrdiff_t>(band.size() / 2);
        std::nth_element(band.begin(), mid, band.end());
        p.median = *mid;
    }
    return p;
}

std::vector<double> padded_magnitudes(std::span<const double> window,
                                      const SpectralConfig& config) {
    std::vector<double> padded(window.size() * config.zero_pad_factor, 0.0);
    std::copy(window.begin(), window.end(), padded.begin());
    if (config.hann_taper) {
        const std::size_t n = window.size();
        for (std::size_t i = 0; i < n; ++i)
            padded[i] *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                              static_cast<double>(i) /
                                              static_cast<double>(n));
    }
    return dft::magnitudes(dft::forward(padded));
}

} // namespace

std::pair<double, double> dominant_frequencies(std::span<const double> window,
                                               double sample_rate_hz,
                                               const SpectralConfig& config) {
    check_config(config, sample_rate_hz, window.size());
    const auto mags = padded_magnitudes(window, config);
    const double bin_hz = sample_rate_hz / static_cast<double>(mags.size());

    BandPeak mother = band_peak(mags, bin_hz, 0.0, config.split_hz);
    BandPeak child =
        band_peak(mags, bin_hz, config.split_hz, sample_rate_hz / 2.0 + bin_hz / 2.0);
    if (mother.empty || mother.magnitude == 0.0)
        throw PeakError("mother band (< split_hz) has no energy");
    if (child.empty || child.magnitude == 0.0)
        throw PeakError("child band (>= split_hz) has no energy");
    return {mother.frequency, child.frequency};
}

ExtractionResult separate_spectral(const Signal& mixture,
                                   const SpectralConfig& config, Exec exec) {
    const double fs = mixture.sample_rate_hz;
    if (!(fs > 0.0)) throw ConfigError("sample rate must be > 0");
    if (!(config.window_seconds > 0.0))
        throw ConfigError("window_seconds must be > 0");
    const auto window_len = static_cast<std::size_t>(
        std::llround(config.window_seconds * fs));
    check_config(config, fs, window_len);
    const std::size_t n = mixture.size();
    if (n < window_len)
        throw ShapeError("mixture shorter than one analysis window");

    const std::size_t n_windows = n / window_len;
    ExtractionResult res;
    res.child.sample_rate_hz = fs;
    res.child.samples.assign(n, 0.0);
    std::vector<char> flagged(n_windows, 0);

    const double bin_hz = fs / static_cast<double>(window_len);

    auto process = [&](std::size_t w) {
        const double* first = mixture.samples.data() + w * window_len;
        std::span<const double> slice(first, window_len);

        const auto mags = padded_magnitudes(slice, config);
        const double padded_bin = fs / static_cast<double>(mags.size());
        BandPeak peak = band_peak(mags, padded_bin, config.split_hz,
                                  fs / 2.0 + padded_bin / 2.0);
        if (peak.empty || peak.magnitude == 0.0 ||
            peak.magnitude < 3.0 * peak.median) {
            // silent or ambiguous window: emit zeros, note it
            flagged[w] = 1;
            return;
        }
        const double child_hz = peak.frequency;

        auto spectrum = dft::forward(slice);
        for (std::size_t k = 0; k < window_len; ++k) {
            bool keep = false;
            if (k != 0) {
                const double f = static_cast<double>(std::min(k, window_len - k)) * bin_hz;
                const double h = std::round(f / child_hz);
                keep = h >= 1.0 && h <= static_cast<double>(config.harmonics) &&
                       std::abs(f - h * child_hz) <= bin_hz;
            }
            if (!keep) spectrum[k] = 0.0;
        }
        const auto rebuilt = dft::inverse(spectrum);

        const std::size_t start = (w + 1) * window_len;
        const std::size_t count = start < n ? std::min(window_len, n - start) : 0;
        for (std::size_t i = 0; i < count; ++i)
            res.child.samples[start + i] = rebuilt[i].real();
    };

    if (exec == Exec::parallel) {
        const std::ptrdiff_t pw = static_cast<std::ptrdiff_t>(n_windows);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t w = 0; w < pw; ++w)
            process(static_cast<std::size_t>(w));
    } else {
        for (std::size_t w = 0; w < n_windows; ++w) process(w);
    }

    for (std::size_t w = 0; w < n_windows; ++w)
        if (flagged[w]) res.low_confidence_windows.push_back(w);
    return res;
}

} // namespace ecgsep
