#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "ecgsep/errors.hpp"
#include "ecgsep/spectral.hpp"
#include "ecgsep/synth.hpp"

using namespace ecgsep;

TEST_CASE("the same seed reproduces the recording bit for bit") {
    SynthParams params;
    params.duration_s = 5.0;
    params.seed = 42;
    SynthOutput a = generate(params);
    SynthOutput b = generate(params);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(a.recording.chest[c].samples == b.recording.chest[c].samples);
    for (std::size_t c = 0; c < 5; ++c)
        CHECK(a.recording.abdomen[c].samples == b.recording.abdomen[c].samples);
    CHECK(a.true_child.samples == b.true_child.samples);
    CHECK(a.true_mother.samples == b.true_mother.samples);

    SynthParams other = params;
    other.seed = 43;
    SynthOutput c = generate(other);
    CHECK(c.recording.abdomen[0].samples != a.recording.abdomen[0].samples);
}

TEST_CASE("splitting samples across threads changes nothing") {
    SynthParams params;
    params.duration_s = 5.0;
    params.seed = 7;
    SynthOutput serial = generate(params, Exec::serial);
    SynthOutput parallel = generate(params, Exec::parallel);
    for (std::size_t c = 0; c < 5; ++c)
        CHECK(serial.recording.abdomen[c].samples ==
              parallel.recording.abdomen[c].samples);
    CHECK(serial.true_child.samples == parallel.true_child.samples);
}

TEST_CASE("with one source muted every channel is a scaled copy") {
    SynthParams params;
    params.duration_s = 5.0;
    params.noise_std = 0.0;
    params.child_amplitude = 0.0;
    SynthOutput out = generate(params);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < out.true_mother.size(); ++i)
            CHECK(out.recording.chest[c].samples[i] ==
                  params.gains[c][0] * out.true_mother.samples[i]);
    for (std::size_t c = 0; c < 5; ++c)
        for (std::size_t i = 0; i < out.true_mother.size(); ++i)
            CHECK(out.recording.abdomen[c].samples[i] ==
                  params.gains[c + 3][0] * out.true_mother.samples[i]);

    SynthParams flipped;
    flipped.duration_s = 5.0;
    flipped.noise_std = 0.0;
    flipped.mother_amplitude = 0.0;
    SynthOutput child_only = generate(flipped);
    for (std::size_t i = 0; i < child_only.true_child.size(); ++i)
        CHECK(child_only.recording.abdomen[0].samples[i] ==
              flipped.gains[3][1] * child_only.true_child.samples[i]);
}

TEST_CASE("channels are the stated mix plus the stated noise") {
    SynthParams params;
    params.duration_s = 20.0;
    params.seed = 5;
    SynthOutput out = generate(params);
    const std::size_t n = out.true_child.size();

    double mean = 0.0;
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        residual[i] = out.recording.abdomen[0].samples[i] -
                      params.gains[3][0] * out.true_mother.samples[i] -
                      params.gains[3][1] * out.true_child.samples[i];
        mean += residual[i];
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double r : residual) var += (r - mean) * (r - mean);
    var /= static_cast<double>(n);

    const double want = params.noise_std * params.noise_std;
    CHECK(std::abs(var - want) <= 0.10 * want);
    CHECK(std::abs(mean) <= 5.0 * params.noise_std / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("the pulse trains beat at their configured rates") {
    SynthParams params;
    params.duration_s = 30.0;
    SynthOutput out = generate(params);

    auto count_pulses = [](const Signal& s, double floor_value) {
        std::size_t count = 0;
        for (std::size_t i = 1; i + 1 < s.size(); ++i)
            if (s.samples[i] > floor_value && s.samples[i] > s.samples[i - 1] &&
                s.samples[i] >= s.samples[i + 1])
                ++count;
        return count;
    };
    const auto child_beats = count_pulses(out.true_child, 0.5 * params.child_amplitude);
    const auto mother_beats = count_pulses(out.true_mother, 0.5 * params.mother_amplitude);
    CHECK(std::abs(static_cast<double>(child_beats) - 2.3 * 30.0) <= 1.0);
    CHECK(std::abs(static_cast<double>(mother_beats) - 0.8 * 30.0) <= 1.0);
}

TEST_CASE("the mixture's spectrum shows both heart rates") {
    SynthParams params;
    params.duration_s = 30.0;
    params.seed = 12;
    SynthOutput out = generate(params);

    // Two subtleties make a naive short-window read fail. The pulse trains
    // are all-positive, so the slice carries a mean whose leakage skirt
    // swamps everything below ~0.5 Hz, hence the mean removal. And Gaussian
    // pulses have slowly decaying harmonics, so the window must be long
    // enough (10 s here) to resolve the child fundamental at 2.3 Hz from
    // the mother's third harmonic at 2.4 Hz.
    std::vector<double> window(out.recording.abdomen[0].samples.begin() + 5000,
                               out.recording.abdomen[0].samples.begin() + 10000);
    const double mean = std::accumulate(window.begin(), window.end(), 0.0) /
                        static_cast<double>(window.size());
    for (double& v : window) v -= mean;

    SpectralConfig config;
    config.zero_pad_factor = 2; // 0.05 Hz bins, and both rates sit on centers
    auto [mother, child] = dominant_frequencies(window, 500.0, config);
    CHECK(std::abs(mother - 0.8) <= 0.05);
    CHECK(std::abs(child - 2.3) <= 0.05);
}

TEST_CASE("generation rejects impossible parameters") {
    SynthParams params;

    params.duration_s = 0.0;
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.sample_rate_hz = 0.0;
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.mother_hz = 250.0; // at Nyquist for 500 Hz
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.child_hz = 300.0;
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.mother_amplitude = -1.0;
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.child_pulse_sigma_s = 0.0;
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.rate_drift = 1.0;
    CHECK_THROWS_AS(generate(params), ConfigError);
    params = {};
    params.noise_std = -0.1;
    CHECK_THROWS_AS(generate(params), ConfigError);

    // muting a source entirely is allowed
    params = {};
    params.duration_s = 0.1;
    params.child_amplitude = 0.0;
    CHECK_NOTHROW(generate(params));
}
