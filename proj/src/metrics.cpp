#include "ecgsep/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "ecgsep/csv.hpp"
#include "ecgsep/errors.hpp"

namespace ecgsep {

double accuracy(const Signal& result, const Signal& target, std::size_t tail) {
    if (tail == 0) throw ConfigError("tail must be >= 1");
    if (result.size() != target.size())
        throw ShapeError("result length " + std::to_string(result.size()) +
                         " != target length " + std::to_string(target.size()));
    const std::size_t n = result.size();
    if (n == 0) throw ShapeError("empty signals");

    const std::size_t span = std::min(tail, n);
    const std::size_t start = n - span;

    double mean = 0.0;
    for (std::size_t i = start; i < n; ++i) mean += target.samples[i];
    mean /= static_cast<double>(span);

    double var = 0.0, mse = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        const double d = target.samples[i] - mean;
        var += d * d;
        const double e = result.samples[i] - target.samples[i];
        mse += e * e;
    }
    var /= static_cast<double>(span);
    mse /= static_cast<double>(span);

    if (var == 0.0)
        throw MetricError("target variance is zero over the evaluated span");
    return std::sqrt(mse / var);
}

namespace {

SweepRow sweep_row(const Stage1Output& s1, const Signal& target,
                   const CascadeConfig& base, std::size_t l, double m,
                   std::size_t j, std::size_t tail) {
    LrSchedule sched;
    sched.window_size = j;
    sched.misadjustment = m;
    sched.switch_threshold = base.stage2_schedule.switch_threshold;
    sched.delay_length = l;

    ExtractionResult r = run_stage2(s1.residuals[0], s1.residuals[1], sched,
                                    s1.diverged);
    double a = accuracy(r.child, target, tail);
    if (r.diverged || !std::isfinite(a))
        a = std::numeric_limits<double>::infinity();
    return {l, m, j, a};
}

} // namespace

std::vector<SweepRow> run_sweep(const Recording& rec, const Signal& target,
                                const SweepGrid& grid,
                                const CascadeConfig& base, std::size_t tail,
                                Exec exec) {
    if (grid.delay_lengths.empty()) throw ConfigError("empty L list");
    if (grid.misadjustments.empty()) throw ConfigError("empty M list");
    if (grid.window_sizes.empty()) throw ConfigError("empty J list");
    for (std::size_t l : grid.delay_lengths)
        if (l == 0) throw ConfigError("L values must be >= 1");
    for (std::size_t j : grid.window_sizes)
        if (j == 0) throw ConfigError("J values must be >= 1");
    for (double m : grid.misadjustments)
        if (!(m > 0.0)) throw ConfigError("M values must be > 0");
    if (tail == 0) throw ConfigError("tail must be >= 1");
    if (target.size() != rec.samples())
        throw ShapeError("target length != recording length");
    const std::size_t max_l =
        *std::max_element(grid.delay_lengths.begin(), grid.delay_lengths.end());
    if (rec.samples() < max_l)
        throw ShapeError("recording shorter than the largest L");

    // stage 1 is grid-independent, run it once
    Stage1Output s1 = run_stage1(rec, base, exec);

    // checked here so rows cannot throw inside the parallel loop
    accuracy(s1.residuals[0], target, tail);

    std::vector<SweepRow> rows(grid.delay_lengths.size() *
                               grid.misadjustments.size() *
                               grid.window_sizes.size());
    const std::size_t nm = grid.misadjustments.size();
    const std::size_t nj = grid.window_sizes.size();

    auto fill = [&](std::size_t idx) {
        const std::size_t il = idx / (nm * nj);
        const std::size_t im = (idx / nj) % nm;
        const std::size_t ij = idx % nj;
        rows[idx] = sweep_row(s1, target, base, grid.delay_lengths[il],
                              grid.misadjustments[im], grid.window_sizes[ij],
                              tail);
    };

    if (exec == Exec::parallel) {
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            fill(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) fill(i);
    }
    return rows;
}

namespace {

std::string render_accuracy(double a) {
    return std::isfinite(a) ? format_double(a) : std::string("inf");
}

} // namespace

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& sink) {
    sink << "L,M,J,accuracy\n";
    for (const SweepRow& r : rows)
        sink << r.delay_length << ',' << format_double(r.misadjustment) << ','
             << r.window_size << ',' << render_accuracy(r.accuracy) << '\n';
    if (!sink) throw IoError("failed writing sweep CSV");
}

void format_sweep_table(const std::vector<SweepRow>& rows, std::ostream& sink) {
    const char* names[4] = {"L", "M", "J", "accuracy"};
    std::vector<std::array<std::string, 4>> cells;
    cells.reserve(rows.size());
    std::size_t width[4];
    for (int c = 0; c < 4; ++c) width[c] = std::string(names[c]).size();
    for (const SweepRow& r : rows) {
        cells.push_back({std::to_string(r.delay_length),
                         format_double(r.misadjustment),
                         std::to_string(r.window_size),
                         render_accuracy(r.accuracy)});
        for (int c = 0; c < 4; ++c)
            width[c] = std::max(width[c], cells.back()[c].size());
    }
    auto pad = [&](const std::string& s, std::size_t w) {
        return std::string(w - s.size(), ' ') + s;
    };
    for (int c = 0; c < 4; ++c)
        sink << (c ? "  " : "") << pad(names[c], width[c]);
    sink << '\n';
    for (const auto& row : cells) {
        for (int c = 0; c < 4; ++c) sink << (c ? "  " : "") << pad(row[c], width[c]);
        sink << '\n';
    }
    if (!sink) throw IoError("failed writing sweep table");
}

} // namespace ecgsep
