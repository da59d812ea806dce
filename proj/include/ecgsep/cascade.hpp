#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "ecgsep/lms.hpp"
#include "ecgsep/lr_schedule.hpp"
#include "ecgsep/parallel.hpp"
#include "ecgsep/signal.hpp"

namespace ecgsep {

// Two-stage extraction. Stage 1 cancels the mother's signal out of two
// abdominal channels using two chest references at a fixed rate.
// Stage 2 runs the schedule-driven filter across the two stage-1
// residuals and emits its prediction: the component common to both,
// i.e. the fetal signal.
struct CascadeConfig {
    // (chest index, abdomen index) per stage-1 canceller
    std::array<std::pair<std::size_t, std::size_t>, 2> pairs{{{0, 0}, {1, 1}}};
    std::size_t stage1_L = 10;
    double stage1_lr = 600.0;
    std::size_t stage2_L = 1;
    LrSchedule stage2_schedule{.window_size = 5,
                               .misadjustment = 1e-5,
                               .switch_threshold = 15000,
                               .delay_length = 1};
};

struct Stage1Output {
    std::array<Signal, 2> residuals;
    bool diverged = false;
};

// Throws ConfigError (indices out of range, identical pairs,
// stage2_L != stage2_schedule.delay_length, zero sizes) and ShapeError
// via the underlying runs.
Stage1Output run_stage1(const Recording& rec, const CascadeConfig& cfg,
                        Exec exec = Exec::parallel);

// reference = first residual, primary = second; the returned child is
// the stage-2 prediction, zero during warm-up.
ExtractionResult run_stage2(const Signal& residual_a, const Signal& residual_b,
                            const LrSchedule& schedule, bool stage1_diverged);

ExtractionResult run_cascade(const Recording& rec, const CascadeConfig& cfg,
                             Exec exec = Exec::parallel);

} // namespace ecgsep
