#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ecgsep/parallel.hpp"

namespace ecgsep {
namespace dft {

// Plain O(N^2) transforms over a shared twiddle table. Bin k is an
// independent sum, so the parallel variant splits bins across threads
// and matches the serial one bit for bit.

// X[k] = sum_n x[n] exp(-2*pi*i*k*n/N)
std::vector<std::complex<double>> forward(std::span<const double> x,
                                          Exec exec = Exec::serial);

// x[n] = (1/N) sum_k X[k] exp(+2*pi*i*k*n/N)
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum,
                                          Exec exec = Exec::serial);

std::vector<double> magnitudes(std::span<const std::complex<double>> spectrum);

} // namespace dft
} // namespace ecgsep
