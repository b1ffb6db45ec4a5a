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

// Grid runner: evaluates every (T_ad, mode, dephasing, observable) point of a
// RunConfig, in parallel over sweep times, and streams records in grid order.
//
// Grid order: for each T_ad, qaa records (one per observable) and aev records
// (dephasing-major, then observable), following the order of `modes`. All
// points of one T_ad share a single forward and backward sweep.
#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "aev/bench/config.hpp"
#include "aev/bench/fit.hpp"
#include "aev/bench/records.hpp"
#include "aev/echo_verify.hpp"
#include "aev/models.hpp"

namespace aev::bench {

/// Resolved configuration as JSON; its FNV-1a hash identifies the run.
inline nlohmann::json config_to_json(const RunConfig &c) {
    nlohmann::json j;
    j["model"] = {{"name", to_string(c.model.kind)}, {"n", c.model.n},       {"hz", c.model.hz},
                  {"J", c.model.coupling},           {"periodic", c.model.periodic},
                  {"h0", c.model.custom_h0},         {"ht", c.model.custom_ht}};
    j["sweep_times"] = c.sweep_times;
    for (Mode m : c.modes) {
        j["modes"].push_back(to_string(m));
    }
    j["dephasing"] = nlohmann::json::array();
    for (const auto &d : c.dephasing) {
        j["dephasing"].push_back({{"kind", to_string(d.kind)}, {"t_d", d.t_d}});
    }
    for (const auto &o : c.observables) {
        j["observables"].push_back(o.name());
    }
    j["dt"] = c.dt;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["integrator"] = c.integrator == Integrator::Midpoint ? "midpoint" : "euler";
    j["schedule"] = nlohmann::json::array();
    for (const auto &[u, s] : c.schedule_knots) {
        j["schedule"].push_back({u, s});
    }
    if (c.fit_window) {
        j["fit_window"] = {c.fit_window->first, c.fit_window->second};
    }
    return j;
}

inline std::string config_hash(const RunConfig &c) { return fnv1a_hex(config_to_json(c).dump()); }

/// Per-record RNG seed derived from the run seed and the record index.
inline std::uint64_t record_seed(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace detail {

struct GridPoint {
    std::size_t index;
    Mode mode;
    std::optional<DephasingSpec> dephasing;
    std::size_t observable;
};

// Grid points of one sweep time, in record order.
inline std::vector<GridPoint> points_for_time(const RunConfig &c, std::size_t time_index) {
    std::vector<GridPoint> pts;
    std::size_t index = time_index * (c.grid_size() / c.sweep_times.size());
    for (Mode m : c.modes) {
        if (m == Mode::Qaa) {
            for (std::size_t o = 0; o < c.observables.size(); ++o) {
                pts.push_back({index++, m, std::nullopt, o});
            }
        } else {
            for (const auto &d : c.dephasing) {
                for (std::size_t o = 0; o < c.observables.size(); ++o) {
                    pts.push_back({index++, m, d, o});
                }
            }
        }
    }
    return pts;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Shared, read-only state of a run.
struct RunContext {
    const RunConfig &config;
    AdiabaticProblem base;
    std::vector<Matrix> observables;
    std::vector<double> exact;
    Provenance provenance;
};

inline RunContext make_context(const RunConfig &c) {
    auto [h0, ht] = ising_pair(c.model);
    PureState psi0 = initial_state(c.model, h0);
    const double t0 = c.sweep_times.front();
    AdiabaticProblem base(std::move(h0), std::move(ht), c.schedule(t0), c.dt, std::move(psi0), c.integrator);
    RunContext ctx{c, std::move(base), {}, {}, {}};
    const Spectrum &spec = ctx.base.target_spectrum();
    for (const auto &o : c.observables) {
        switch (o.kind) {
        case ObservableSpec::Kind::Reflection:
            ctx.observables.push_back(reflection_observable(spec));
            break;
        case ObservableSpec::Kind::Magnetization:
            ctx.observables.push_back(magnetization(c.model.n).matrix());
            break;
        case ObservableSpec::Kind::Pauli:
            ctx.observables.push_back(PauliOperator(c.model.n, parse_pauli_sum(o.text, c.model.n)).matrix());
            break;
        }
        const Vector e0 = spec.vectors.col(0);
        ctx.exact.push_back(e0.dot(ctx.observables.back() * e0).real());
    }
    ctx.provenance.config_hash = config_hash(c);
    ctx.provenance.seed = c.seed;
    ctx.provenance.dt = c.dt;
    ctx.provenance.samples = c.samples;
    ctx.provenance.integrator = c.integrator == Integrator::Midpoint ? "midpoint" : "euler";
    return ctx;
}

inline BenchRecord blank_record(const RunContext &ctx, const GridPoint &p, double t_ad) {
    BenchRecord r;
    r.index = p.index;
    r.t_ad = t_ad;
    r.observable = ctx.config.observables[p.observable].name();
    r.exact = ctx.exact[p.observable];
    r.provenance = ctx.provenance;
    r.provenance.record_seed = record_seed(ctx.config.seed, p.index);
    if (p.mode == Mode::Qaa) {
        r.mode = "qaa";
        r.total_time = t_ad;
    } else {
        r.mode = p.dephasing->kind == DephasingKind::Uniform ? "aev-uniform" : "aev";
        r.total_time = 2.0 * t_ad;
        r.t_d = p.dephasing->reported_time();
    }
    return r;
}

inline void mark_failed(BenchRecord &r, const std::string &why) {
    r.status = "error";
    r.message = why;
    r.value = kNaN;
    r.abs_error = kNaN;
    r.bound = kNaN;
}

inline std::vector<BenchRecord> evaluate_time(const RunContext &ctx, std::size_t time_index) {
    const RunConfig &c = ctx.config;
    const double t_ad = c.sweep_times[time_index];
    const auto points = points_for_time(c, time_index);
    std::vector<BenchRecord> out;
    out.reserve(points.size());
    for (const auto &p : points) {
        out.push_back(blank_record(ctx, p, t_ad));
    }

    std::optional<AdiabaticProblem> problem;
    SweepPair sweeps;
    double forward_ms = 0.0;
    double backward_ms = 0.0;
    try {
        problem.emplace(ctx.base.with_duration(t_ad));
        auto start = std::chrono::steady_clock::now();
        sweeps.forward = evolve_forward(*problem);
        forward_ms = elapsed_ms(start);
        if (c.has_mode(Mode::Aev)) {
            start = std::chrono::steady_clock::now();
            sweeps.backward = evolve_backward_adjoint(*problem);
            backward_ms = elapsed_ms(start);
        }
    } catch (const std::exception &e) {
        for (auto &r : out) {
            mark_failed(r, std::string("sweep failed: ") + e.what());
        }
        return out;
    }

    for (std::size_t i = 0; i < points.size(); ++i) {
        const GridPoint &p = points[i];
        BenchRecord &r = out[i];
        const auto start = std::chrono::steady_clock::now();
        try {
            const Matrix &o = ctx.observables[p.observable];
            EstimatorResult est;
            if (p.mode == Mode::Qaa) {
                est = qaa_from_sweep(*problem, sweeps.forward, o);
            } else {
                AevOptions opts;
                opts.samples = c.samples;
                opts.seed = r.provenance.record_seed;
                est = aev_from_sweeps(*problem, sweeps, p.dephasing->distribution(), o, opts);
            }
            r.value = est.value;
            r.abs_error = std::abs(r.value - r.exact);
            r.eps_fwd = est.epsilon_forward;
            r.eps_bwd = p.mode == Mode::Qaa ? kNaN : est.epsilon_backward;
            r.delta = p.mode == Mode::Qaa ? kNaN : est.delta;
            r.bound = est.bound.value_or(kNaN);
        } catch (const EstimatorBreakdown &e) {
            mark_failed(r, e.what());
            r.eps_fwd = sweeps.forward.infidelity;
            r.eps_bwd = sweeps.backward.infidelity;
            r.delta = e.delta();
        } catch (const std::exception &e) {
            mark_failed(r, e.what());
        }
        r.runtime_ms = forward_ms + (p.mode == Mode::Aev ? backward_ms : 0.0) + elapsed_ms(start);
    }
    return out;
}

} // namespace detail

using RecordCallback = std::function<void(const BenchRecord &)>;

/// Evaluates the whole grid with `workers` threads. `on_record` sees records
/// in grid order as soon as all earlier records are done.
inline std::vector<BenchRecord> compute_records(const RunConfig &config, unsigned workers,
                                                const RecordCallback &on_record = {}) {
    config.validate();
    const detail::RunContext ctx = detail::make_context(config);
    const std::size_t groups = config.sweep_times.size();
    std::vector<std::optional<std::vector<BenchRecord>>> slots(groups);
    std::vector<BenchRecord> records;
    records.reserve(config.grid_size());

    auto flush = [&](std::vector<BenchRecord> &group) {
        for (auto &r : group) {
            if (on_record) {
                on_record(r);
            }
            records.push_back(std::move(r));
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(groups)));
    if (threads == 1) {
        for (std::size_t g = 0; g < groups; ++g) {
            auto group = detail::evaluate_time(ctx, g);
            flush(group);
        }
        return records;
    }

    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t g = next++; g < groups; g = next++) {
                auto group = detail::evaluate_time(ctx, g);
                {
                    const std::lock_guard lock(mutex);
                    slots[g] = std::move(group);
                }
                ready.notify_one();
            }
        });
    }
    for (std::size_t g = 0; g < groups; ++g) {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return slots[g].has_value(); });
        auto group = std::move(*slots[g]);
        slots[g].reset();
        lock.unlock();
        flush(group);
    }
    return records;
}

struct CurveFit {
    CurveKey curve;
    std::optional<SlopeFit> fit;
    FitWindow window;
    std::string skipped;
};

/// Slope fit of every curve over the window (default: each curve's top
/// half-decade of total sweep time).
inline std::vector<CurveFit> fit_curves(const std::vector<BenchRecord> &records,
                                        std::optional<FitWindow> window = std::nullopt) {
    std::vector<CurveFit> out;
    for (const auto &[key, pts] : group_curves(records)) {
        CurveFit cf{key, std::nullopt, {}, {}};
        std::vector<double> times;
        for (const auto &pt : pts) {
            times.push_back(pt.first);
        }
        cf.window = window ? *window : default_window(times);
        try {
            cf.fit = fit_slope(pts, cf.window);
        } catch (const InsufficientData &e) {
            cf.skipped = e.what();
        }
        out.push_back(std::move(cf));
    }
    return out;
}

inline nlohmann::json summary_json(const RunConfig &config, const std::vector<BenchRecord> &records) {
    nlohmann::json j;
    j["config_hash"] = config_hash(config);
    j["seed"] = config.seed;
    j["dt"] = config.dt;
    j["records"] = records.size();
    j["failures"] = nlohmann::json::array();
    for (const auto &r : records) {
        if (!r.ok()) {
            j["failures"].push_back({{"index", r.index},
                                     {"mode", r.mode},
                                     {"T_ad", r.t_ad},
                                     {"T_d", detail::number_to_json(r.t_d)},
                                     {"observable", r.observable},
                                     {"message", r.message}});
        }
    }
    std::optional<FitWindow> window;
    if (config.fit_window) {
        window = FitWindow{config.fit_window->first, config.fit_window->second};
    }
    j["fits"] = nlohmann::json::array();
    for (const auto &cf : fit_curves(records, window)) {
        nlohmann::json f{{"curve", cf.curve.label()},
                         {"mode", cf.curve.mode},
                         {"T_d", detail::number_to_json(cf.curve.t_d)},
                         {"observable", cf.curve.observable},
                         {"window", {cf.window.t_min, cf.window.t_max}}};
        if (cf.fit) {
            f["slope"] = cf.fit->slope;
            f["std_error"] = cf.fit->std_error;
            f["points"] = cf.fit->points;
            f["warnings"] = cf.fit->warnings;
        } else {
            f["skipped"] = cf.skipped;
        }
        j["fits"].push_back(std::move(f));
    }
    return j;
}

struct RunOptions {
    std::string out_dir;
    std::optional<unsigned> workers; ///< overrides the config
    bool overwrite = false;
};

struct RunOutcome {
    std::vector<BenchRecord> records;
    nlohmann::json summary;
    std::filesystem::path csv_path;
    std::filesystem::path jsonl_path;
    std::filesystem::path summary_path;

    [[nodiscard]] std::vector<const BenchRecord *> failures() const {
        std::vector<const BenchRecord *> out;
        for (const auto &r : records) {
            if (!r.ok()) {
                out.push_back(&r);
            }
        }
        return out;
    }
};

/// Runs the grid and persists records.csv, records.jsonl (with provenance),
/// config.json and summary.json under the output directory. Records are
/// appended and flushed one by one.
inline RunOutcome run_sweep(const RunConfig &config, const RunOptions &options) {
    namespace fs = std::filesystem;
    config.validate();
    const std::string dir = !options.out_dir.empty() ? options.out_dir : config.output;
    if (dir.empty()) {
        throw ConfigError("run: no output directory (set 'output' or pass --out)");
    }
    RunOutcome out;
    out.csv_path = fs::path(dir) / "records.csv";
    out.jsonl_path = fs::path(dir) / "records.jsonl";
    out.summary_path = fs::path(dir) / "summary.json";
    if (!options.overwrite && (fs::exists(out.csv_path) || fs::exists(out.jsonl_path))) {
        throw ConfigError("run: '" + dir + "' already holds records; pass --overwrite or choose another --out");
    }
    fs::create_directories(dir);
    {
        std::ofstream cfg(fs::path(dir) / "config.json");
        cfg << config_to_json(config).dump(2) << '\n';
    }

    std::ofstream csv(out.csv_path, std::ios::trunc);
    std::ofstream jsonl(out.jsonl_path, std::ios::trunc);
    if (!csv || !jsonl) {
        throw ConfigError("run: cannot write into '" + dir + "'");
    }
    csv << csv_header() << '\n' << std::flush;
    out.records = compute_records(config, options.workers.value_or(config.workers), [&](const BenchRecord &r) {
        csv << to_csv_row(r) << '\n' << std::flush;
        jsonl << to_json(r).dump() << '\n' << std::flush;
    });

    out.summary = summary_json(config, out.records);
    std::ofstream summary(out.summary_path, std::ios::trunc);
    summary << out.summary.dump(2) << '\n';
    return out;
}

} // namespace aev::bench
