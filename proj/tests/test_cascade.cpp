#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ecgsep/cascade.hpp"
#include "ecgsep/errors.hpp"
#include "ecgsep/metrics.hpp"
#include "ecgsep/synth.hpp"

using namespace ecgsep;

namespace {

Signal tone(std::size_t n, double hz, double amplitude, double phase = 0.0,
            double rate = 500.0) {
    Signal s;
    s.sample_rate_hz = rate;
    s.samples.resize(n);
    for (std::size_t t = 0; t < n; ++t)
        s.samples[t] = amplitude * std::sin(2.0 * std::numbers::pi * hz *
                                                static_cast<double>(t) / rate +
                                            phase);
    return s;
}

double rms(const std::vector<double>& v, std::size_t from) {
    double acc = 0.0;
    for (std::size_t i = from; i < v.size(); ++i) acc += v[i] * v[i];
    return std::sqrt(acc / static_cast<double>(v.size() - from));
}

} // namespace

TEST_CASE("bad cascade configurations are refused") {
    SynthParams params;
    params.duration_s = 2.0;
    Recording rec = generate(params).recording;

    CascadeConfig cfg;
    cfg.pairs = {{{0, 0}, {0, 0}}};
    CHECK_THROWS_AS(run_cascade(rec, cfg), ConfigError);

    cfg = {};
    cfg.pairs = {{{0, 0}, {3, 1}}}; // only 3 chest channels exist
    CHECK_THROWS_AS(run_cascade(rec, cfg), ConfigError);

    cfg = {};
    cfg.pairs = {{{0, 0}, {1, 5}}}; // only 5 abdomen channels exist
    CHECK_THROWS_AS(run_cascade(rec, cfg), ConfigError);

    cfg = {};
    cfg.stage1_L = 0;
    CHECK_THROWS_AS(run_cascade(rec, cfg), ConfigError);

    cfg = {};
    cfg.stage1_lr = 0.0;
    CHECK_THROWS_AS(run_cascade(rec, cfg), ConfigError);

    cfg = {};
    cfg.stage2_L = 2; // disagrees with the schedule's delay length of 1
    CHECK_THROWS_AS(run_cascade(rec, cfg), ConfigError);
}

TEST_CASE("identical chest and abdomen leads cancel almost completely") {
    const std::size_t n = 20000;
    Signal s0 = tone(n, 2.0, 0.01);
    Signal s1 = tone(n, 3.0, 0.01, 0.5);
    Recording rec = make_recording({s0, s1}, {s0, s1});

    ExtractionResult res = run_cascade(rec, CascadeConfig{});
    REQUIRE_FALSE(res.diverged);
    const std::size_t from = 2 * n / 3;
    CHECK(rms(res.child.samples, from) < 0.05 * rms(rec.abdomen[0].samples, from));
}

TEST_CASE("the second stage recovers the component shared by both residuals") {
    const std::size_t n = 12000;
    Signal e = tone(n, 2.3, 1.0);
    LrSchedule sched; // L = 1
    ExtractionResult res = run_stage2(e, e, sched, false);
    REQUIRE_FALSE(res.diverged);
    for (std::size_t t = n - 2000; t < n; ++t)
        CHECK(std::abs(res.child.samples[t] - e.samples[t]) < 1e-3);
    REQUIRE(res.stage1_outputs.size() == 2);
    CHECK(res.stage1_outputs[0].samples == e.samples);
    CHECK_FALSE(res.lr_trace.empty());
}

TEST_CASE("swapping equivalent pairs changes nothing") {
    const std::size_t n = 6000;
    Signal chest = tone(n, 2.0, 0.01);
    Signal abd = tone(n, 2.0, 0.008, 0.3);
    // both pairs see byte-identical inputs, so either order must agree
    Recording rec = make_recording({chest, chest}, {abd, abd});

    CascadeConfig forward_order;
    CascadeConfig swapped;
    swapped.pairs = {{{1, 1}, {0, 0}}};
    ExtractionResult a = run_cascade(rec, forward_order);
    ExtractionResult b = run_cascade(rec, swapped);
    CHECK(a.child.samples == b.child.samples);
    CHECK(a.diverged == b.diverged);
}

TEST_CASE("stage-1 divergence is reported, never thrown") {
    SynthParams params;
    params.duration_s = 4.0;
    params.seed = 3;
    Recording rec = generate(params).recording;

    CascadeConfig cfg;
    cfg.stage1_lr = 1e9;
    ExtractionResult res = run_cascade(rec, cfg);
    CHECK(res.diverged);
    for (double v : res.child.samples) CHECK(std::isfinite(v));
}

TEST_CASE("running the stage-1 pair on threads changes nothing") {
    SynthParams params;
    params.duration_s = 4.0;
    params.seed = 4;
    Recording rec = generate(params).recording;

    ExtractionResult serial = run_cascade(rec, CascadeConfig{}, Exec::serial);
    ExtractionResult parallel = run_cascade(rec, CascadeConfig{}, Exec::parallel);
    CHECK(serial.child.samples == parallel.child.samples);
    CHECK(serial.lr_trace == parallel.lr_trace);
}

TEST_CASE("the full chain beats the raw abdominal lead on synthetic data") {
    SynthParams params;
    params.duration_s = 20.0;
    params.seed = 42;
    SynthOutput data = generate(params);

    ExtractionResult res = run_cascade(data.recording, CascadeConfig{});
    REQUIRE_FALSE(res.diverged);

    // compare each candidate against the true child over the tail
    const std::size_t tail = 5000;
    const double chained = accuracy(res.child, data.true_child, tail);
    const double raw = accuracy(data.recording.abdomen[0], data.true_child, tail);
    CHECK(chained < raw);
}
