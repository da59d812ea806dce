#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ecgsep/cascade.hpp"
#include "ecgsep/parallel.hpp"
#include "ecgsep/signal.hpp"

namespace ecgsep {

// Normalized root-mean-square error of result against target over the
// last min(tail, n) samples: sqrt(mean((result-target)^2) / var(target)),
// variance taken over the same span (population form). 0 means exact
// recovery; 1 is as bad as predicting the target's mean.
// Throws ShapeError (length mismatch, empty) and MetricError (target
// variance is zero over the evaluated span).
double accuracy(const Signal& result, const Signal& target,
                std::size_t tail = 75000);

struct SweepGrid {
    std::vector<std::size_t> delay_lengths; // stage-2 L values
    std::vector<double> misadjustments;     // M values
    std::vector<std::size_t> window_sizes;  // J values
};

struct SweepRow {
    std::size_t delay_length;
    double misadjustment;
    std::size_t window_size;
    double accuracy; // +inf when the run diverged or the metric is non-finite
};

// Full-grid cascade sweep, rows ordered L (outer) x M x J (inner).
// Stage 1 does not depend on the grid, so it runs once; each row runs
// stage 2 with its own schedule. Rows never throw for divergence: a
// diverged or non-finite result is recorded as +inf.
// Throws ConfigError if any grid list is empty.
std::vector<SweepRow> run_sweep(const Recording& rec, const Signal& target,
                                const SweepGrid& grid,
                                const CascadeConfig& base,
                                std::size_t tail = 75000,
                                Exec exec = Exec::parallel);

// "L,M,J,accuracy" with shortest round-trip numbers; non-finite
// accuracy is rendered as the marker "inf".
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& sink);

// Human-readable aligned table (same column order).
void format_sweep_table(const std::vector<SweepRow>& rows, std::ostream& sink);

} // namespace ecgsep
