#include "ecgsep/dft.hpp"

#include <cmath>
#include <numbers>

#include "ecgsep/errors.hpp"

namespace ecgsep {
namespace dft {

namespace {

std::vector<std::complex<double>> twiddles(std::size_t n) {
    std::vector<std::complex<double>> tw(n);
    for (std::size_t m = 0; m < n; ++m)
        tw[m] = std::polar(1.0, -2.0 * std::numbers::pi *
                                    static_cast<double>(m) / static_cast<double>(n));
    return tw;
}

// one forward bin; index steps by k mod n without a division
std::complex<double> forward_bin(std::span<const double> x,
                                 std::span<const std::complex<double>> tw,
                                 std::size_t k) {
    const std::size_t n = x.size();
    double re = 0.0, im = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i] * tw[idx].real();
        im += x[i] * tw[idx].imag();
        idx += k;
        if (idx >= n) idx -= n;
    }
    return {re, im};
}

// one inverse sample; conjugated table gives exp(+2*pi*i*k*n/N)
std::complex<double> inverse_sample(std::span<const std::complex<double>> spec,
                                    std::span<const std::complex<double>> tw,
                                    std::size_t s) {
    const std::size_t n = spec.size();
    double re = 0.0, im = 0.0;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double tr = tw[idx].real();
        const double ti = -tw[idx].imag();
        re += spec[k].real() * tr - spec[k].imag() * ti;
        im += spec[k].real() * ti + spec[k].imag() * tr;
        idx += s;
        if (idx >= n) idx -= n;
    }
    const double scale = 1.0 / static_cast<double>(n);
    return {re * scale, im * scale};
}

} // namespace

std::vector<std::complex<double>> forward(std::span<const double> x, Exec exec) {
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("empty input to forward DFT");
    std::vector<std::complex<double>> out(n);
    const auto tw = twiddles(n);
    // real input: compute bins up to Nyquist, mirror the conjugates
    const std::size_t half = n / 2;
    if (exec == Exec::parallel) {
        const std::ptrdiff_t ph = static_cast<std::ptrdiff_t>(half);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k <= ph; ++k)
            out[static_cast<std::size_t>(k)] =
                forward_bin(x, tw, static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k <= half; ++k) out[k] = forward_bin(x, tw, k);
    }
    for (std::size_t k = half + 1; k < n; ++k) out[k] = std::conj(out[n - k]);
    return out;
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum,
                                          Exec exec) {
    const std::size_t n = spectrum.size();
    if (n == 0) throw ShapeError("empty input to inverse DFT");
    std::vector<std::complex<double>> out(n);
    const auto tw = twiddles(n);
    if (exec == Exec::parallel) {
        const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < pn; ++s)
            out[static_cast<std::size_t>(s)] =
                inverse_sample(spectrum, tw, static_cast<std::size_t>(s));
    } else {
        for (std::size_t s = 0; s < n; ++s)
            out[s] = inverse_sample(spectrum, tw, s);
    }
    return out;
}

std::vector<double> magnitudes(std::span<const std::complex<double>> spectrum) {
    std::vector<double> m(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) m[i] = std::abs(spectrum[i]);
    return m;
}

} // namespace dft
} // namespace ecgsep
