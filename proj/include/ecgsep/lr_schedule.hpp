#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ecgsep {

// Delay-data matrix for the learning-rate rule: J+1 rows, L columns,
// row j holds [x(t-j), x(t-j-1), ..., x(t-j-L+1)]. Only its
// autocorrelation trace is ever needed, so the matrix itself exists
// for tests and for callers that want to inspect it.
struct DelayMatrix {
    std::size_t rows = 0; // J + 1
    std::size_t cols = 0; // L
    std::vector<double> values; // row-major

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

// Schedule parameters. Pre-threshold steps use lr = 1/(3 trace),
// post-threshold lr = M/trace; the misadjustment constant M should be
// < 1/3 so the rate only ever drops at the switch.
struct LrSchedule {
    std::size_t window_size = 5;        // J
    double misadjustment = 1e-5;        // M
    std::uint64_t switch_threshold = 15000;
    std::size_t delay_length = 1;       // L, must match the filter it drives
};

// history is the reference signal ordered oldest..newest and must hold
// exactly J+L samples (the newest sample is x(t)). Throws ShapeError
// for any other length, or if L == 0.
DelayMatrix build_delay_matrix(std::span<const double> history,
                               std::size_t window_size,
                               std::size_t delay_length);

// trace(D^T D) = sum of squares of all entries of D; never forms D^T D.
double correlation_trace(const DelayMatrix& d);

// Same value computed straight from the signal tail without
// materializing the matrix: each lag m in [0, J+L) contributes
// x(t-m)^2 once per diagonal of D it lies on. History shorter than
// J+L is treated as zero-padded on the old side, which is how the
// run loop warms up.
double windowed_trace(std::span<const double> history,
                      std::size_t window_size,
                      std::size_t delay_length);

// The rate rule itself. trace <= 0 yields 0 (a no-op step) rather than
// a division by zero. Throws ConfigError for invalid schedules
// (window_size == 0, delay_length == 0, misadjustment <= 0).
double learning_rate(double trace, std::uint64_t iteration,
                     const LrSchedule& schedule);

} // namespace ecgsep
