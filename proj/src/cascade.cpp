#include "ecgsep/cascade.hpp"

#include <string>

#include "ecgsep/errors.hpp"

namespace ecgsep {

namespace {

void validate(const Recording& rec, const CascadeConfig& cfg) {
    for (const auto& [chest, abd] : cfg.pairs) {
        if (chest >= rec.chest.size())
            throw ConfigError("chest index " + std::to_string(chest) +
                              " out of range (have " +
                              std::to_string(rec.chest.size()) + ")");
        if (abd >= rec.abdomen.size())
            throw ConfigError("abdomen index " + std::to_string(abd) +
                              " out of range (have " +
                              std::to_string(rec.abdomen.size()) + ")");
    }
    if (cfg.pairs[0] == cfg.pairs[1])
        throw ConfigError("stage-1 pairs must differ");
    if (cfg.stage1_L == 0) throw ConfigError("stage1_L must be >= 1");
    if (!(cfg.stage1_lr > 0.0)) throw ConfigError("stage1_lr must be > 0");
    if (cfg.stage2_L != cfg.stage2_schedule.delay_length)
        throw ConfigError("stage2_L (" + std::to_string(cfg.stage2_L) +
                          ") != stage2_schedule.delay_length (" +
                          std::to_string(cfg.stage2_schedule.delay_length) + ")");
}

} // namespace

Stage1Output run_stage1(const Recording& rec, const CascadeConfig& cfg,
                        Exec exec) {
    validate(rec, cfg);

    CancellerResult runs[2];
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(2)
        for (int i = 0; i < 2; ++i) {
            const auto& [chest, abd] = cfg.pairs[static_cast<std::size_t>(i)];
            runs[i] = run_canceller(rec.chest[chest], rec.abdomen[abd],
                                    cfg.stage1_L, cfg.stage1_lr);
        }
    } else {
        for (int i = 0; i < 2; ++i) {
            const auto& [chest, abd] = cfg.pairs[static_cast<std::size_t>(i)];
            runs[i] = run_canceller(rec.chest[chest], rec.abdomen[abd],
                                    cfg.stage1_L, cfg.stage1_lr);
        }
    }

    Stage1Output out;
    out.residuals[0] = std::move(runs[0].child);
    out.residuals[1] = std::move(runs[1].child);
    out.diverged = runs[0].diverged || runs[1].diverged;
    return out;
}

ExtractionResult run_stage2(const Signal& residual_a, const Signal& residual_b,
                            const LrSchedule& schedule, bool stage1_diverged) {
    CancellerResult run = run_canceller(residual_a, residual_b, schedule);

    ExtractionResult res;
    // the prediction is the component of residual_b explained by
    // residual_a: the child, present in both
    res.child = std::move(run.prediction);
    res.stage1_outputs = {residual_a, residual_b};
    res.lr_trace = std::move(run.lr_trace);
    res.diverged = stage1_diverged || run.diverged;
    return res;
}

ExtractionResult run_cascade(const Recording& rec, const CascadeConfig& cfg,
                             Exec exec) {
    Stage1Output s1 = run_stage1(rec, cfg, exec);
    return run_stage2(s1.residuals[0], s1.residuals[1], cfg.stage2_schedule,
                      s1.diverged);
}

} // namespace ecgsep
