#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ecgsep/lr_schedule.hpp"
#include "ecgsep/signal.hpp"

namespace ecgsep {

// Adaptive FIR state. weights[i] multiplies the reference sample i
// steps in the past, matching the newest-first window layout.
struct FilterState {
    std::vector<double> weights;
    std::uint64_t iteration = 0;
    bool diverged = false;
};

FilterState make_filter_state(std::size_t delay_length);

struct StepOutput {
    double prediction; // dot(weights, window)
    double child;      // primary - prediction
};

// One LMS update. window is the reference history newest-first:
// [x(t), x(t-1), ..., x(t-L+1)]. The weight update is
// w += 2*lr*child*window; if it would produce a non-finite weight or
// the outputs are non-finite, the state is marked diverged and the
// weights keep their last finite values.
// Throws ShapeError (window size != weight count) and DivergedError
// (state was already diverged on entry).
StepOutput lms_step(FilterState& state, std::span<const double> window,
                    double primary, double lr);

struct CancellerResult {
    Signal child;      // primary minus predicted interference
    Signal prediction; // the filter's interference estimate
    std::vector<double> lr_trace; // one entry per performed adaptive step
    bool diverged = false;
    FilterState state;
};

// Runs the filter across a whole pair of signals with a fixed rate.
// Warm-up: for t < L-1 there is no full window yet, so the output
// passes the primary through unchanged and no step is performed.
// After divergence, stepping stops and the remaining child output is
// the raw primary (so results are always finite; the flag records the
// failure).
// Throws ShapeError (length mismatch, n < L, L == 0).
CancellerResult run_canceller(const Signal& reference, const Signal& primary,
                              std::size_t delay_length, double lr);

// Same, but the rate comes from the trace schedule evaluated on the
// reference history at every step (delay_length taken from the
// schedule).
CancellerResult run_canceller(const Signal& reference, const Signal& primary,
                              const LrSchedule& schedule);

} // namespace ecgsep
