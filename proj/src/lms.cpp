#include "ecgsep/lms.hpp"

#include <cmath>
#include <string>

#include "ecgsep/errors.hpp"

namespace ecgsep {

FilterState make_filter_state(std::size_t delay_length) {
    if (delay_length == 0) throw ShapeError("delay_length must be >= 1");
    FilterState s;
    s.weights.assign(delay_length, 0.0);
    return s;
}

StepOutput lms_step(FilterState& state, std::span<const double> window,
                    double primary, double lr) {
    if (state.diverged) throw DivergedError("lms_step on a diverged filter");
    if (window.size() != state.weights.size())
        throw ShapeError("window size " + std::to_string(window.size()) +
                         " != delay length " + std::to_string(state.weights.size()));

    double prediction = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i)
        prediction += state.weights[i] * window[i];
    const double child = primary - prediction;
    ++state.iteration;

    if (!std::isfinite(prediction) || !std::isfinite(child)) {
        state.diverged = true;
        return {prediction, child};
    }

    // zero-magnitude updates are skipped tap by tap so settled weights
    // and quiet-reference steps leave the state bit-identical
    const double gain = 2.0 * lr * child;
    if (child != 0.0 && gain != 0.0) {
        bool overflow = false;
        for (std::size_t i = 0; i < window.size(); ++i) {
            if (!std::isfinite(state.weights[i] + gain * window[i])) {
                overflow = true;
                break;
            }
        }
        if (overflow) {
            // weights keep their last finite values
            state.diverged = true;
        } else {
            for (std::size_t i = 0; i < window.size(); ++i) {
                const double dw = gain * window[i];
                if (dw != 0.0) state.weights[i] += dw;
            }
        }
    }
    return {prediction, child};
}

namespace {

template <typename LrAt>
CancellerResult run_loop(const Signal& reference, const Signal& primary,
                         std::size_t delay_length, LrAt&& lr_at) {
    if (delay_length == 0) throw ShapeError("delay_length must be >= 1");
    if (reference.size() != primary.size())
        throw ShapeError("reference length " + std::to_string(reference.size()) +
                         " != primary length " + std::to_string(primary.size()));
    const std::size_t n = reference.size();
    if (n < delay_length)
        throw ShapeError("need at least delay_length samples, got " +
                         std::to_string(n));

    CancellerResult res;
    res.child.sample_rate_hz = primary.sample_rate_hz;
    res.prediction.sample_rate_hz = primary.sample_rate_hz;
    res.child.samples.resize(n);
    res.prediction.samples.assign(n, 0.0);
    res.state = make_filter_state(delay_length);
    res.lr_trace.reserve(n);

    std::vector<double> window(delay_length);
    const double* ref = reference.samples.data();

    for (std::size_t t = 0; t < n; ++t) {
        // no full window yet, or the filter already blew up: pass through
        if (t + 1 < delay_length || res.state.diverged) {
            res.child.samples[t] = primary.samples[t];
            continue;
        }
        for (std::size_t k = 0; k < delay_length; ++k)
            window[k] = ref[t - k];
        const double lr = lr_at(t, res.state.iteration);
        StepOutput out = lms_step(res.state, window, primary.samples[t], lr);
        res.lr_trace.push_back(lr);
        if (std::isfinite(out.child)) {
            res.child.samples[t] = out.child;
            res.prediction.samples[t] = out.prediction;
        } else {
            res.child.samples[t] = primary.samples[t];
        }
    }
    res.diverged = res.state.diverged;
    return res;
}

} // namespace

CancellerResult run_canceller(const Signal& reference, const Signal& primary,
                              std::size_t delay_length, double lr) {
    return run_loop(reference, primary, delay_length,
                    [lr](std::size_t, std::uint64_t) { return lr; });
}

CancellerResult run_canceller(const Signal& reference, const Signal& primary,
                              const LrSchedule& schedule) {
    const double* ref = reference.samples.data();
    auto lr_at = [&](std::size_t t, std::uint64_t iteration) {
        double trace = windowed_trace({ref, t + 1}, schedule.window_size,
                                      schedule.delay_length);
        return learning_rate(trace, iteration, schedule);
    };
    return run_loop(reference, primary, schedule.delay_length, lr_at);
}

} // namespace ecgsep
