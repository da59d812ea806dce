#include "ecgsep/lr_schedule.hpp"

#include <algorithm>
#include <string>

#include "ecgsep/errors.hpp"

// The run path never builds the matrix: windowed_trace below computes
// trace(D^T D) straight from the lag structure, padding missing history
// with zeros during warm-up. build_delay_matrix materializes the full
// matrix for callers that want it and requires the exact J+L samples
// it is defined on.

namespace ecgsep {

DelayMatrix build_delay_matrix(std::span<const double> history,
                               std::size_t window_size,
                               std::size_t delay_length) {
    if (delay_length == 0) throw ShapeError("delay_length must be >= 1");
    const std::size_t need = window_size + delay_length;
    if (history.size() != need)
        throw ShapeError("delay matrix needs exactly " + std::to_string(need) +
                         " samples, got " + std::to_string(history.size()));

    DelayMatrix d;
    d.rows = window_size + 1;
    d.cols = delay_length;
    d.values.resize(d.rows * d.cols);
    // newest sample is x(t); entry (r,c) is x(t-r-c)
    const std::size_t t = history.size() - 1;
    for (std::size_t r = 0; r < d.rows; ++r)
        for (std::size_t c = 0; c < d.cols; ++c)
            d.at(r, c) = history[t - r - c];
    return d;
}

double correlation_trace(const DelayMatrix& d) {
    double sum = 0.0;
    for (double v : d.values) sum += v * v;
    return sum;
}

double windowed_trace(std::span<const double> history,
                      std::size_t window_size,
                      std::size_t delay_length) {
    if (delay_length == 0) throw ShapeError("delay_length must be >= 1");
    const std::size_t span = window_size + delay_length;
    const std::size_t n = history.size();
    double sum = 0.0;
    // lag m appears once per diagonal of the matrix that contains it
    for (std::size_t m = 0; m < span && m < n; ++m) {
        std::size_t lo = m + 1 >= delay_length ? m + 1 - delay_length : 0;
        std::size_t count = std::min(m, window_size) - lo + 1;
        double x = history[n - 1 - m];
        sum += static_cast<double>(count) * x * x;
    }
    return sum;
}

double learning_rate(double trace, std::uint64_t iteration,
                     const LrSchedule& schedule) {
    if (schedule.window_size == 0)
        throw ConfigError("schedule window_size must be >= 1");
    if (schedule.delay_length == 0)
        throw ConfigError("schedule delay_length must be >= 1");
    if (!(schedule.misadjustment > 0.0))
        throw ConfigError("schedule misadjustment must be > 0");
    if (trace <= 0.0) return 0.0;
    if (iteration < schedule.switch_threshold) return 1.0 / (3.0 * trace);
    return schedule.misadjustment / trace;
}

} // namespace ecgsep
