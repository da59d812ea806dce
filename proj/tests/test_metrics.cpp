#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "ecgsep/errors.hpp"
#include "ecgsep/metrics.hpp"
#include "ecgsep/synth.hpp"

using namespace ecgsep;

namespace {

Signal integer_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-20, 20);
    Signal s;
    s.samples.resize(n);
    for (double& v : s.samples) v = static_cast<double>(dist(rng));
    return s;
}

} // namespace

TEST_CASE("an exact match scores zero") {
    Signal x = integer_signal(5000, 1);
    CHECK(accuracy(x, x) == 0.0);
}

TEST_CASE("a constant offset scores offset over spread") {
    Signal target = integer_signal(5000, 2);
    const double c = 7.0;
    Signal result = target;
    for (double& v : result.samples) v += c;

    const std::size_t n = target.size();
    double mean = 0.0;
    for (double v : target.samples) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : target.samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);

    const double want = c / std::sqrt(var);
    const double got = accuracy(result, target);
    CHECK(std::abs(got - want) <= 1e-9 * want);
}

TEST_CASE("doubling a centered target scores exactly one") {
    // alternating +-1: the mean is exactly zero, so the error equals
    // the spread and the ratio collapses to 1
    Signal target;
    target.samples.resize(4000);
    for (std::size_t i = 0; i < target.size(); ++i)
        target.samples[i] = i % 2 == 0 ? 1.0 : -1.0;
    Signal result = target;
    for (double& v : result.samples) v *= 2.0;
    CHECK(accuracy(result, target) == 1.0);
}

TEST_CASE("the score ignores the error's sign and any common shift") {
    // power-of-two length keeps the mean division exact, so the shifted
    // variance matches bit for bit instead of merely closely
    Signal target = integer_signal(4096, 3);
    Signal offset = integer_signal(4096, 4);
    Signal plus = target, minus = target;
    for (std::size_t i = 0; i < target.size(); ++i) {
        plus.samples[i] += offset.samples[i];
        minus.samples[i] -= offset.samples[i];
    }
    CHECK(accuracy(plus, target) == accuracy(minus, target));

    Signal target_shift = target, plus_shift = plus;
    for (double& v : target_shift.samples) v += 100.0;
    for (double& v : plus_shift.samples) v += 100.0;
    CHECK(accuracy(plus_shift, target_shift) == accuracy(plus, target));
}

TEST_CASE("only the last 75000 samples count, boundary included") {
    auto run = [](std::size_t n) {
        Signal target;
        target.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            target.samples[i] = i % 2 == 0 ? 1.0 : -1.0;
        Signal result = target;
        result.samples[0] += 5.0; // the only disagreement sits at the front
        return accuracy(result, target);
    };
    CHECK(run(74999) > 0.0);
    CHECK(run(75000) > 0.0);
    CHECK(run(75001) == 0.0); // sample 0 just fell out of the window
}

TEST_CASE("shorter signals use every sample") {
    Signal target = integer_signal(100, 5);
    Signal result = target;
    result.samples[0] += 3.0;
    CHECK(accuracy(result, target) > 0.0);
    CHECK(accuracy(result, target, 50) == 0.0); // now the head is outside
}

TEST_CASE("the metric rejects unusable inputs") {
    Signal a = integer_signal(10, 6);
    Signal b = integer_signal(11, 7);
    CHECK_THROWS_AS(accuracy(a, b), ShapeError);
    Signal none;
    CHECK_THROWS_AS(accuracy(none, none), ShapeError);
    CHECK_THROWS_AS(accuracy(a, a, 0), ConfigError);
    Signal flat;
    flat.samples.assign(10, 4.0);
    CHECK_THROWS_AS(accuracy(flat, flat), MetricError);
}

TEST_CASE("sweep rows reproduce the one-off runs") {
    SynthParams params;
    params.duration_s = 4.0;
    params.seed = 9;
    SynthOutput data = generate(params);

    CascadeConfig base;
    base.stage2_schedule.switch_threshold = 500;
    SweepGrid grid{{1, 2}, {1e-5}, {1, 2}};
    auto rows = run_sweep(data.recording, data.true_child, grid, base, 1000);
    REQUIRE(rows.size() == 4);

    // L is the outer axis, J the inner one
    CHECK(rows[0].delay_length == 1);
    CHECK(rows[0].window_size == 1);
    CHECK(rows[1].delay_length == 1);
    CHECK(rows[1].window_size == 2);
    CHECK(rows[2].delay_length == 2);
    CHECK(rows[3].delay_length == 2);

    for (const SweepRow& row : rows) {
        CascadeConfig cfg = base;
        cfg.stage2_L = row.delay_length;
        cfg.stage2_schedule.delay_length = row.delay_length;
        cfg.stage2_schedule.misadjustment = row.misadjustment;
        cfg.stage2_schedule.window_size = row.window_size;
        ExtractionResult one = run_cascade(data.recording, cfg);
        CHECK(row.accuracy == accuracy(one.child, data.true_child, 1000));
    }
}

TEST_CASE("splitting rows across threads changes nothing") {
    SynthParams params;
    params.duration_s = 4.0;
    params.seed = 10;
    SynthOutput data = generate(params);
    SweepGrid grid{{1, 2, 5}, {1e-5, 1e-7}, {1, 5}};
    auto serial = run_sweep(data.recording, data.true_child, grid,
                            CascadeConfig{}, 1000, Exec::serial);
    auto parallel = run_sweep(data.recording, data.true_child, grid,
                              CascadeConfig{}, 1000, Exec::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].accuracy == parallel[i].accuracy);
        CHECK(serial[i].delay_length == parallel[i].delay_length);
    }
}

TEST_CASE("a sweep full of divergent settings still finishes") {
    SynthParams params;
    params.duration_s = 4.0;
    params.seed = 11;
    SynthOutput data = generate(params);

    CascadeConfig base;
    base.stage1_lr = 1e9; // guaranteed blow-up before stage 2
    SweepGrid grid{{1, 2}, {1e-5}, {1, 2}};
    auto rows = run_sweep(data.recording, data.true_child, grid, base, 1000);
    REQUIRE(rows.size() == 4);
    for (const SweepRow& row : rows)
        CHECK(row.accuracy == std::numeric_limits<double>::infinity());

    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    CHECK(csv.str().find(",inf\n") != std::string::npos);
}

TEST_CASE("sweep inputs are validated before any work happens") {
    SynthParams params;
    params.duration_s = 2.0;
    SynthOutput data = generate(params);
    const Signal& t = data.true_child;
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{}, {1e-5}, {1}}, {}, 100),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{1}, {}, {1}}, {}, 100),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{1}, {1e-5}, {}}, {}, 100),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{0}, {1e-5}, {1}}, {}, 100),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{1}, {-1.0}, {1}}, {}, 100),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{1}, {1e-5}, {0}}, {}, 100),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(data.recording, t, {{1}, {1e-5}, {1}}, {}, 0),
                    ConfigError);
    Signal wrong;
    wrong.samples.assign(t.size() + 1, 0.0);
    CHECK_THROWS_AS(run_sweep(data.recording, wrong, {{1}, {1e-5}, {1}}, {}, 100),
                    ShapeError);
}

TEST_CASE("the sweep table renders aligned right-justified columns") {
    std::vector<SweepRow> rows{
        {1, 1e-5, 5, 0.5},
        {2, 1e6, 1, std::numeric_limits<double>::infinity()}};
    std::ostringstream out;
    format_sweep_table(rows, out);
    CHECK(out.str() ==
          "L      M  J  accuracy\n"
          "1  1e-05  5       0.5\n"
          "2  1e+06  1       inf\n");

    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    CHECK(csv.str() ==
          "L,M,J,accuracy\n"
          "1,1e-05,5,0.5\n"
          "2,1e+06,1,inf\n");
}
