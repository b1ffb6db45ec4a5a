// Copyright 2026 The aev-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// aev: command-line front end of the benchmark harness.
//
//   aev run    --config <file> --out <dir> [--workers N] [--overwrite]
//   aev fit    --records <csv> --window <tmin:tmax> [--mode M] [--observable O]
//   aev plot   --records <csv> --figure fig3|fig4 [--output script.py]
//   aev bounds --t-d <x> --gap <y>
//
// Exit codes: 0 success, 2 configuration / input error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aev/bench/config.hpp"
#include "aev/bench/fit.hpp"
#include "aev/bench/plot.hpp"
#include "aev/bench/records.hpp"
#include "aev/bench/run.hpp"
#include "aev/dephasing.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int cmd_run(const std::string &config_path, const std::string &out_dir, std::optional<unsigned> workers,
            bool overwrite) {
    using namespace aev::bench;
    const RunConfig config = load_config(config_path);
    RunOptions opts;
    opts.out_dir = out_dir;
    opts.workers = workers;
    opts.overwrite = overwrite;
    const RunOutcome outcome = run_sweep(config, opts);

    std::printf("%zu records -> %s\n", outcome.records.size(), outcome.csv_path.string().c_str());
    for (const auto &f : outcome.summary["fits"]) {
        if (f.contains("slope")) {
            std::printf("  %-40s slope %+.3f +- %.3f (%zu points)\n", f["curve"].get<std::string>().c_str(),
                        f["slope"].get<double>(), f["std_error"].get<double>(),
                        f["points"].get<std::size_t>());
        }
    }
    const auto failures = outcome.failures();
    if (!failures.empty()) {
        for (const auto *r : failures) {
            std::fprintf(stderr, "failed grid point #%zu: mode=%s T_ad=%s T_d=%s observable=%s: %s\n", r->index,
                         r->mode.c_str(), format_number(r->t_ad).c_str(), format_number(r->t_d).c_str(),
                         r->observable.c_str(), r->message.c_str());
        }
        return kExitNumerical;
    }
    return 0;
}

int cmd_fit(const std::string &records_path, const std::string &window_text, const std::string &mode,
            const std::string &observable) {
    using namespace aev::bench;
    const FitWindow window = parse_window(window_text);
    std::vector<BenchRecord> records;
    for (auto &r : read_csv(records_path)) {
        if ((mode.empty() || r.mode == mode) && (observable.empty() || r.observable == observable)) {
            records.push_back(std::move(r));
        }
    }
    if (records.empty()) {
        std::fprintf(stderr, "no records match the filters\n");
        return kExitConfig;
    }
    std::size_t fitted = 0;
    for (const auto &cf : fit_curves(records, window)) {
        if (cf.fit) {
            ++fitted;
            std::printf("%-40s slope %+.4f +- %.4f (%zu points)\n", cf.curve.label().c_str(), cf.fit->slope,
                        cf.fit->std_error, cf.fit->points);
            for (const auto &w : cf.fit->warnings) {
                std::fprintf(stderr, "  warning: %s\n", w.c_str());
            }
        } else {
            std::printf("%-40s skipped: %s\n", cf.curve.label().c_str(), cf.skipped.c_str());
        }
    }
    return fitted > 0 ? 0 : kExitConfig;
}

int cmd_plot(const std::string &records_path, const std::string &figure, std::string output) {
    using namespace aev::bench;
    const Figure fig = figure_from_string(figure);
    if (output.empty()) {
        output = (std::filesystem::path(records_path).parent_path() / (figure + ".py")).string();
    }
    emit_plot_script(records_path, fig, output);
    std::printf("wrote %s\n", output.c_str());
    return 0;
}

int cmd_bounds(double t_d, double gap) {
    const double delta = aev::bump_delta_bound(t_d, gap);
    const double t_back = aev::required_dephasing_time(delta, gap);
    const double delta_back = aev::bump_delta_bound(t_back, gap);
    const double measured = std::abs(aev::RandomTimeDistribution::bump(t_d).fourier(gap));
    std::printf("T_d * gap                  %.10g\n", t_d * gap);
    std::printf("envelope delta             %.10g\n", delta);
    std::printf("quadrature |F(gap)|        %.10g\n", measured);
    std::printf("required T_d for delta     %.10g\n", t_back);
    std::printf("envelope at required T_d   %.10g\n", delta_back);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Adiabatic echo verification simulator and benchmark harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    unsigned workers = 0;
    bool overwrite = false;
    auto *run = app.add_subcommand("run", "Evaluate a configured grid and write records");
    run->add_option("--config", config_path, "YAML run configuration")->required();
    run->add_option("--out", out_dir, "Output directory (overrides 'output' in the config)");
    auto *workers_opt = run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--overwrite", overwrite, "Replace records already in the output directory");

    std::string records_path, window_text, mode_filter, observable_filter;
    auto *fit = app.add_subcommand("fit", "Log-log slope fits of error curves");
    fit->add_option("--records", records_path, "records.csv")->required();
    fit->add_option("--window", window_text, "Total sweep time window tmin:tmax")->required();
    fit->add_option("--mode", mode_filter, "Only this mode (qaa, aev, aev-uniform)");
    fit->add_option("--observable", observable_filter, "Only this observable");

    std::string figure, script_out;
    auto *plot = app.add_subcommand("plot", "Write a matplotlib script for a figure");
    plot->add_option("--records", records_path, "records.csv")->required();
    plot->add_option("--figure", figure, "fig3 or fig4")->required()->check(CLI::IsMember({"fig3", "fig4"}));
    plot->add_option("--output", script_out, "Script path (default: next to the records)");

    double t_d = 0.0, gap = 0.0;
    auto *bounds = app.add_subcommand("bounds", "Bump dephasing envelope and its inversion");
    bounds->add_option("--t-d", t_d, "Dephasing time")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--gap", gap, "Spectral gap")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            std::optional<unsigned> w;
            if (workers_opt->count() > 0) {
                w = workers;
            }
            return cmd_run(config_path, out_dir, w, overwrite);
        }
        if (*fit) {
            return cmd_fit(records_path, window_text, mode_filter, observable_filter);
        }
        if (*plot) {
            return cmd_plot(records_path, figure, script_out);
        }
        if (*bounds) {
            return cmd_bounds(t_d, gap);
        }
    } catch (const aev::NumericalError &e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
