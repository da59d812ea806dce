#include "ecgsep/synth.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

#include "ecgsep/errors.hpp"

namespace ecgsep {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// standard normal keyed on (seed, stream, index): same value no matter
// which thread asks, so parallel generation is reproducible
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t idx) {
    const std::uint64_t base =
        mix64(mix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    const std::uint64_t h1 = mix64(base ^ (2 * idx));
    const std::uint64_t h2 = mix64(base ^ (2 * idx + 1));
    const double u1 = static_cast<double>((h1 >> 11) + 1) * 0x1.0p-53; // (0,1]
    const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;      // [0,1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

// unit-height Gaussian bumps at every integer phase
double pulse(double phase, double sigma_phase) {
    const double d = phase - std::round(phase);
    return std::exp(-d * d / (2.0 * sigma_phase * sigma_phase));
}

void validate(const SynthParams& p) {
    if (!(p.duration_s > 0.0)) throw ConfigError("duration_s must be > 0");
    if (!(p.sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be > 0");
    if (!(p.mother_hz > 0.0) || !(p.child_hz > 0.0))
        throw ConfigError("pulse rates must be > 0");
    if (p.mother_hz >= p.sample_rate_hz / 2.0 || p.child_hz >= p.sample_rate_hz / 2.0)
        throw ConfigError("pulse rates must stay below Nyquist");
    if (p.mother_amplitude < 0.0 || p.child_amplitude < 0.0)
        throw ConfigError("amplitudes must be >= 0");
    if (!(p.mother_pulse_sigma_s > 0.0) || !(p.child_pulse_sigma_s > 0.0))
        throw ConfigError("pulse widths must be > 0");
    if (std::abs(p.rate_drift) >= 1.0)
        throw ConfigError("rate_drift must stay inside (-1, 1)");
    if (p.noise_std < 0.0) throw ConfigError("noise_std must be >= 0");
}

} // namespace

SynthOutput generate(const SynthParams& p, Exec exec) {
    validate(p);
    const auto n = static_cast<std::size_t>(
        std::llround(p.duration_s * p.sample_rate_hz));
    if (n == 0) throw ConfigError("duration too short for one sample");

    SynthOutput out;
    std::vector<Signal> chest(3, Signal{std::vector<double>(n), p.sample_rate_hz});
    std::vector<Signal> abdomen(5, Signal{std::vector<double>(n), p.sample_rate_hz});
    out.true_child = Signal{std::vector<double>(n), p.sample_rate_hz};
    out.true_mother = Signal{std::vector<double>(n), p.sample_rate_hz};

    const double T = p.duration_s;
    const double two_pi = 2.0 * std::numbers::pi;
    const double sigma_m = p.mother_hz * p.mother_pulse_sigma_s;
    const double sigma_c = p.child_hz * p.child_pulse_sigma_s;

    auto sample_at = [&](std::size_t i) {
        const double t = static_cast<double>(i) / p.sample_rate_hz;
        // integrates to zero over the full recording, so the pulse
        // count stays rate * duration despite the drift
        const double wobble =
            (T / two_pi) * (1.0 - std::cos(two_pi * t / T)) * p.rate_drift;
        const double m =
            pulse(0.25 + p.mother_hz * (t + wobble), sigma_m);
        const double c =
            pulse(0.61 + p.child_hz * (t - wobble), sigma_c);
        const double tm = p.mother_amplitude * m;
        const double tc = p.child_amplitude * c;
        out.true_mother.samples[i] = tm;
        out.true_child.samples[i] = tc;
        for (std::size_t ch = 0; ch < 8; ++ch) {
            double v = p.gains[ch][0] * tm + p.gains[ch][1] * tc;
            if (p.noise_std != 0.0)
                v += p.noise_std * gaussian(p.seed, ch, i);
            Signal& dest = ch < 3 ? chest[ch] : abdomen[ch - 3];
            dest.samples[i] = v;
        }
    };

    if (exec == Exec::parallel) {
        const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < pn; ++i)
            sample_at(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) sample_at(i);
    }
    out.recording = make_recording(std::move(chest), std::move(abdomen));
    return out;
}

} // namespace ecgsep
