#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecgsep/cascade.hpp"
#include "ecgsep/csv.hpp"
#include "ecgsep/errors.hpp"
#include "ecgsep/metrics.hpp"
#include "ecgsep/spectral.hpp"
#include "ecgsep/svg.hpp"
#include "ecgsep/synth.hpp"

namespace {

using namespace ecgsep;

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path + " for reading");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    return f;
}

Recording load_recording_file(const std::string& path, double rate) {
    std::ifstream f = open_in(path);
    std::string header;
    if (!std::getline(f, header)) throw ParseError(path + ": empty input");
    f.seekg(0);
    return load_recording(f, auto_layout(header, rate));
}

std::array<std::pair<std::size_t, std::size_t>, 2> parse_pairs(const std::string& text) {
    std::array<std::pair<std::size_t, std::size_t>, 2> pairs;
    std::size_t n = 0, pos = 0;
    while (pos <= text.size() && n < 3) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(pos, end - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos || n >= 2)
            throw ConfigError("--pairs expects 'chest:abdomen,chest:abdomen'");
        try {
            pairs[n] = {std::stoul(item.substr(0, colon)),
                        std::stoul(item.substr(colon + 1))};
        } catch (const std::exception&) {
            throw ConfigError("--pairs expects 'chest:abdomen,chest:abdomen'");
        }
        ++n;
        pos = end + 1;
        if (end == text.size()) break;
    }
    if (n != 2) throw ConfigError("--pairs expects exactly two pairs");
    return pairs;
}

struct SeparateOpts {
    std::string in = "recording.csv";
    std::string out = "child.csv";
    std::string pairs = "0:0,1:1";
    std::size_t L1 = 10;
    double lr1 = 600.0;
    std::size_t L2 = 1;
    double M = 1e-5;
    std::size_t J = 5;
    std::uint64_t threshold = 15000;
    double rate = 500.0;
    bool serial = false;
};

CascadeConfig to_config(const SeparateOpts& o) {
    CascadeConfig cfg;
    cfg.pairs = parse_pairs(o.pairs);
    cfg.stage1_L = o.L1;
    cfg.stage1_lr = o.lr1;
    cfg.stage2_L = o.L2;
    cfg.stage2_schedule = {o.J, o.M, o.threshold, o.L2};
    return cfg;
}

// past the rate switch the update scales with M, so M >= 1/3 can push the
// per-step factor out of the stable range on strong pulses
void warn_misadjustment(double m) {
    if (m >= 1.0 / 3.0)
        std::cerr << "warning: M = " << format_double(m)
                  << " >= 1/3 risks divergence after the rate switch\n";
}

int run_synth(const SynthParams& params, const std::string& dir) {
    std::filesystem::create_directories(dir);
    SynthOutput out = generate(params);
    {
        auto f = open_out(dir + "/recording.csv");
        write_recording(out.recording, f);
    }
    {
        auto f = open_out(dir + "/true_child.csv");
        write_signal(out.true_child, f);
    }
    {
        auto f = open_out(dir + "/true_mother.csv");
        write_signal(out.true_mother, f);
    }
    return 0;
}

int run_separate(const SeparateOpts& o) {
    warn_misadjustment(o.M);
    Recording rec = load_recording_file(o.in, o.rate);
    ExtractionResult res =
        run_cascade(rec, to_config(o), o.serial ? Exec::serial : Exec::parallel);
    if (res.diverged)
        std::cerr << "warning: filter diverged; output falls back to the raw signals\n";
    auto f = open_out(o.out);
    write_signal(res.child, f);
    return 0;
}

int run_score(const std::string& result_path, const std::string& target_path,
              std::size_t tail, double rate) {
    auto rf = open_in(result_path);
    Signal result = load_signal(rf, "value", rate);
    auto tf = open_in(target_path);
    Signal target = load_signal(tf, "value", rate);
    const double a = accuracy(result, target, tail);
    std::cout << (std::isfinite(a) ? format_double(a) : std::string("inf")) << '\n';
    return 0;
}

int run_sweep_cmd(const SeparateOpts& base_opts, const std::string& target_path,
                  const SweepGrid& grid, std::size_t tail,
                  const std::string& out_path) {
    for (double m : grid.misadjustments)
        if (m >= 1.0 / 3.0) {
            warn_misadjustment(m);
            break;
        }
    Recording rec = load_recording_file(base_opts.in, base_opts.rate);
    auto tf = open_in(target_path);
    Signal target = load_signal(tf, "value", base_opts.rate);
    auto rows = run_sweep(rec, target, grid, to_config(base_opts), tail,
                          base_opts.serial ? Exec::serial : Exec::parallel);
    if (!out_path.empty()) {
        auto f = open_out(out_path);
        write_sweep_csv(rows, f);
    }
    format_sweep_table(rows, std::cout);
    return 0;
}

int run_spectral(const std::string& in, const std::string& out,
                 const std::string& channel, const SpectralConfig& config,
                 double rate, bool serial) {
    if (config.window_seconds < 1.0)
        std::cerr << "warning: windows shorter than 1 s cannot resolve the slow band\n";
    Recording rec = load_recording_file(in, rate);
    const std::size_t colon = channel.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--channel expects 'chest:N' or 'abdomen:N'");
    const std::string role = channel.substr(0, colon);
    std::size_t idx = 0;
    try {
        idx = std::stoul(channel.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("--channel expects 'chest:N' or 'abdomen:N'");
    }
    const std::vector<Signal>* bank = nullptr;
    if (role == "chest") bank = &rec.chest;
    else if (role == "abdomen") bank = &rec.abdomen;
    else throw ConfigError("--channel role must be chest or abdomen");
    if (idx >= bank->size())
        throw ConfigError("channel index " + std::to_string(idx) + " out of range");

    ExtractionResult res = separate_spectral((*bank)[idx], config,
                                             serial ? Exec::serial : Exec::parallel);
    if (!res.low_confidence_windows.empty())
        std::cerr << "warning: " << res.low_confidence_windows.size()
                  << " low-confidence window(s) emitted as silence\n";
    auto f = open_out(out);
    write_signal(res.child, f);
    return 0;
}

int run_plot(const std::vector<std::string>& inputs, const std::string& out,
             const std::string& column, double rate) {
    std::vector<PlotSeries> series;
    for (const std::string& path : inputs) {
        PlotSeries s;
        s.label = std::filesystem::path(path).filename().string();
        {
            auto f = open_in(path);
            s.t = load_signal(f, "t", rate).samples;
        }
        {
            auto f = open_in(path);
            s.v = load_signal(f, column, rate).samples;
        }
        series.push_back(std::move(s));
    }
    auto f = open_out(out);
    write_svg_plot(series, f);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"separate a fetal heartbeat from maternal recordings"};
    app.require_subcommand(1);
    int rc = 0;

    SynthParams synth_params;
    std::string synth_dir = ".";
    auto* synth = app.add_subcommand(
        "synth", "generate a synthetic recording plus ground-truth signals");
    synth->add_option("--seed", synth_params.seed, "noise seed");
    synth->add_option("--duration", synth_params.duration_s, "seconds (default 180)");
    synth->add_option("--rate", synth_params.sample_rate_hz, "sample rate in Hz (default 500)");
    synth->add_option("--noise", synth_params.noise_std, "white noise sigma");
    synth->add_option("--mother-hz", synth_params.mother_hz, "mother pulse rate");
    synth->add_option("--child-hz", synth_params.child_hz, "child pulse rate");
    synth->add_option("--mother-amplitude", synth_params.mother_amplitude);
    synth->add_option("--child-amplitude", synth_params.child_amplitude);
    synth->add_option("--drift", synth_params.rate_drift, "relative rate drift");
    synth->add_option("--out", synth_dir,
                      "output directory for recording.csv, true_child.csv, true_mother.csv");
    synth->callback([&] { rc = run_synth(synth_params, synth_dir); });

    SeparateOpts sep;
    auto add_stage1_flags = [](CLI::App* cmd, SeparateOpts& o) {
        cmd->add_option("--in", o.in, "recording CSV (chest*/abdomen* columns)");
        cmd->add_option("--pairs", o.pairs, "stage-1 chest:abdomen pairs (default 0:0,1:1)");
        cmd->add_option("--L1", o.L1, "stage-1 filter length (default 10)");
        cmd->add_option("--lr1", o.lr1, "stage-1 learning rate (default 600)");
        cmd->add_option("--threshold", o.threshold,
                        "iteration at which the rate rule switches (default 15000)");
        cmd->add_option("--rate", o.rate, "sample rate in Hz (default 500)");
        cmd->add_flag("--serial", o.serial, "disable the parallel paths");
    };
    auto* separate = app.add_subcommand(
        "separate", "extract the child signal with the two-stage adaptive cascade");
    add_stage1_flags(separate, sep);
    separate->add_option("--L2", sep.L2, "stage-2 filter length (default 1)");
    separate->add_option("--M", sep.M, "post-threshold misadjustment constant (default 1e-5)");
    separate->add_option("--J", sep.J, "rate-rule window size (default 5)");
    separate->add_option("--out", sep.out, "child output CSV (default child.csv)");
    separate->callback([&] { rc = run_separate(sep); });

    std::string score_result = "child.csv", score_target = "true_child.csv";
    std::size_t score_tail = 75000;
    double score_rate = 500.0;
    auto* score = app.add_subcommand(
        "score", "normalized RMS error of a result against a target");
    score->add_option("--result", score_result, "extracted CSV (default child.csv)");
    score->add_option("--target", score_target, "truth CSV (default true_child.csv)");
    score->add_option("--tail", score_tail, "evaluate the last N samples (default 75000)");
    score->add_option("--rate", score_rate, "sample rate in Hz (default 500)");
    score->callback([&] { rc = run_score(score_result, score_target, score_tail, score_rate); });

    SeparateOpts sweep_base;
    SweepGrid grid{{1, 2, 5, 10}, {1e-5, 1e-7}, {1, 2, 5, 10}};
    std::string sweep_target = "true_child.csv", sweep_out;
    std::size_t sweep_tail = 75000;
    auto* sweep = app.add_subcommand(
        "sweep", "grid accuracy sweep over stage-2 L, M and J");
    add_stage1_flags(sweep, sweep_base);
    sweep->add_option("--target", sweep_target, "truth CSV (default true_child.csv)");
    sweep->add_option("--L", grid.delay_lengths, "stage-2 filter lengths (default 1,2,5,10)")
        ->delimiter(',');
    sweep->add_option("--M", grid.misadjustments, "misadjustment constants (default 1e-5,1e-7)")
        ->delimiter(',');
    sweep->add_option("--J", grid.window_sizes, "rate-rule window sizes (default 1,2,5,10)")
        ->delimiter(',');
    sweep->add_option("--tail", sweep_tail, "evaluate the last N samples (default 75000)");
    sweep->add_option("--out", sweep_out, "also write the table as CSV");
    sweep->callback([&] {
        rc = run_sweep_cmd(sweep_base, sweep_target, grid, sweep_tail, sweep_out);
    });

    SpectralConfig spec_cfg;
    std::string spec_in = "recording.csv", spec_out = "spectral_child.csv";
    std::string spec_channel = "abdomen:0";
    double spec_rate = 500.0;
    bool spec_serial = false;
    auto* spectral = app.add_subcommand(
        "spectral", "frequency-domain separation of one channel (one-window delay)");
    spectral->add_option("--in", spec_in, "recording CSV");
    spectral->add_option("--out", spec_out, "output CSV (default spectral_child.csv)");
    spectral->add_option("--channel", spec_channel, "chest:N or abdomen:N (default abdomen:0)");
    spectral->add_option("--window", spec_cfg.window_seconds, "analysis window in seconds (default 2)");
    spectral->add_option("--split", spec_cfg.split_hz, "mother/child band split in Hz (default 1.5)");
    spectral->add_option("--pad", spec_cfg.zero_pad_factor, "zero-pad factor for peaks (default 8)");
    spectral->add_option("--harmonics", spec_cfg.harmonics, "child harmonics kept (default 5)");
    spectral->add_flag("--hann", spec_cfg.hann_taper, "Hann taper for peak analysis");
    spectral->add_option("--rate", spec_rate, "sample rate in Hz (default 500)");
    spectral->add_flag("--serial", spec_serial, "disable the parallel paths");
    spectral->callback([&] {
        rc = run_spectral(spec_in, spec_out, spec_channel, spec_cfg, spec_rate, spec_serial);
    });

    std::vector<std::string> plot_in;
    std::string plot_out = "plot.svg", plot_column = "value";
    double plot_rate = 500.0;
    auto* plot = app.add_subcommand("plot", "render t,value CSVs as an SVG line plot");
    plot->add_option("--in", plot_in, "input CSVs")->delimiter(',')->required();
    plot->add_option("--out", plot_out, "SVG path (default plot.svg)");
    plot->add_option("--column", plot_column, "value column name (default value)");
    plot->add_option("--rate", plot_rate, "sample rate in Hz (default 500)");
    plot->callback([&] { rc = run_plot(plot_in, plot_out, plot_column, plot_rate); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const ecgsep::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
