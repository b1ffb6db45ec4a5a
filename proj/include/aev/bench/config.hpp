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

// Run configuration for the benchmark harness, read from YAML.
//
//   model:        {name: ising-lz, n: 5, hz: 0.2, J: 1.0, periodic: false}
//                 {name: custom, n: 2, h0: "X1 + X2", ht: "-Z1Z2 + 0.3*Z1"}
//   sweep_times:  [10, 20, 40]  or  {start: 10, stop: 800, per_doubling: 2}
//   modes:        [qaa, aev]
//   dephasing:    [{kind: none}, {kind: bump, t_d: 10}, {kind: uniform, t_d: 5}, {kind: ideal}]
//   observables:  [reflection, magnetization, "0.5*Z1Z2"]
//   dt: 0.01   seed: 1   samples: 0   workers: 1
//   integrator:   midpoint | euler
//   schedule:     linear  or  {knots: [[0, 0], [0.5, 0.2], [1, 1]]}
//   fit_window:   [200, 800]         (total sweep time; optional)
//   output:       results/fig3       (optional; --out overrides)
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "aev/adiabatic.hpp"
#include "aev/dephasing.hpp"
#include "aev/models.hpp"
#include "aev/pauli_text.hpp"

namespace aev::bench {

/// Malformed or inconsistent configuration.
class ConfigError : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

enum class Mode { Qaa, Aev };

inline std::string to_string(Mode m) { return m == Mode::Qaa ? "qaa" : "aev"; }

struct DephasingSpec {
    DephasingKind kind = DephasingKind::Ideal;
    double t_d = 0.0;

    [[nodiscard]] RandomTimeDistribution distribution() const {
        switch (kind) {
        case DephasingKind::Uniform:
            return RandomTimeDistribution::uniform(t_d);
        case DephasingKind::Bump:
            return RandomTimeDistribution::bump(t_d);
        case DephasingKind::None:
            return RandomTimeDistribution::none();
        case DephasingKind::Ideal:
            return RandomTimeDistribution::ideal();
        }
        return RandomTimeDistribution::ideal();
    }
    /// T_d as reported in records: 0 for none, inf for ideal.
    [[nodiscard]] double reported_time() const { return distribution().dephasing_time(); }
};

struct ObservableSpec {
    enum class Kind { Reflection, Magnetization, Pauli };
    Kind kind = Kind::Reflection;
    std::string text; ///< name, or the Pauli sum for custom observables

    [[nodiscard]] std::string name() const {
        switch (kind) {
        case Kind::Reflection:
            return "reflection";
        case Kind::Magnetization:
            return "magnetization";
        case Kind::Pauli:
            return text;
        }
        return text;
    }
};

struct RunConfig {
    ModelSpec model;
    std::vector<double> sweep_times;
    std::vector<Mode> modes;
    std::vector<DephasingSpec> dephasing;
    std::vector<ObservableSpec> observables;
    double dt = 0.01;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    Integrator integrator = Integrator::Midpoint;
    std::vector<std::pair<double, double>> schedule_knots; ///< empty = linear
    std::optional<std::pair<double, double>> fit_window;
    std::string output;
    unsigned workers = 1;

    [[nodiscard]] Schedule schedule(double duration) const {
        return schedule_knots.empty() ? Schedule::linear(duration)
                                      : Schedule::table(duration, schedule_knots);
    }

    [[nodiscard]] bool has_mode(Mode m) const {
        return std::find(modes.begin(), modes.end(), m) != modes.end();
    }

    /// Number of records a run produces.
    [[nodiscard]] std::size_t grid_size() const {
        std::size_t per_time = 0;
        for (Mode m : modes) {
            per_time += (m == Mode::Qaa ? 1 : dephasing.size()) * observables.size();
        }
        return per_time * sweep_times.size();
    }

    void validate() const {
        try {
            model.validate();
        } catch (const InvalidArgument &e) {
            throw ConfigError(e.what());
        }
        if (sweep_times.empty()) {
            throw ConfigError("config: sweep_times is empty");
        }
        for (double t : sweep_times) {
            if (!(t > 0.0) || !std::isfinite(t)) {
                throw ConfigError("config: sweep times must be positive and finite");
            }
            if (dt > t) {
                throw ConfigError("config: dt = " + std::to_string(dt) + " exceeds sweep time " +
                                  std::to_string(t));
            }
        }
        if (modes.empty()) {
            throw ConfigError("config: modes is empty");
        }
        if (has_mode(Mode::Aev) && dephasing.empty()) {
            throw ConfigError("config: aev mode needs at least one dephasing entry");
        }
        if (observables.empty()) {
            throw ConfigError("config: observables is empty");
        }
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw ConfigError("config: dt must be positive");
        }
        if (workers < 1) {
            throw ConfigError("config: workers must be >= 1");
        }
        if (fit_window && !(fit_window->first > 0.0 && fit_window->first < fit_window->second)) {
            throw ConfigError("config: fit_window must satisfy 0 < tmin < tmax");
        }
    }
};

namespace detail {

template <class T>
T scalar(const YAML::Node &node, const std::string &key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ConfigError("config: bad value for '" + key + "'");
    }
}

template <class T>
T get_or(const YAML::Node &parent, const std::string &key, T fallback) {
    const YAML::Node n = parent[key];
    return n ? scalar<T>(n, key) : fallback;
}

inline ModelSpec parse_model(const YAML::Node &node) {
    ModelSpec m;
    if (!node) {
        return m;
    }
    if (!node.IsMap()) {
        throw ConfigError("config: 'model' must be a mapping");
    }
    try {
        m.kind = model_kind_from_string(get_or<std::string>(node, "name", "ising-lz"));
    } catch (const InvalidArgument &e) {
        throw ConfigError(e.what());
    }
    m.n = get_or<int>(node, "n", m.n);
    m.hz = get_or<double>(node, "hz", m.hz);
    m.coupling = get_or<double>(node, "J", m.coupling);
    m.periodic = get_or<bool>(node, "periodic", m.periodic);
    m.custom_h0 = get_or<std::string>(node, "h0", "");
    m.custom_ht = get_or<std::string>(node, "ht", "");
    return m;
}

inline std::vector<double> parse_sweep_times(const YAML::Node &node) {
    std::vector<double> out;
    if (!node) {
        throw ConfigError("config: missing 'sweep_times'");
    }
    if (node.IsSequence()) {
        for (const auto &v : node) {
            out.push_back(scalar<double>(v, "sweep_times"));
        }
    } else if (node.IsMap()) {
        const double start = scalar<double>(node["start"], "sweep_times.start");
        const double stop = scalar<double>(node["stop"], "sweep_times.stop");
        const int per = get_or<int>(node, "per_doubling", 1);
        if (!(start > 0.0 && stop >= start) || per < 1) {
            throw ConfigError("config: sweep_times range needs 0 < start <= stop, per_doubling >= 1");
        }
        for (int k = 0;; ++k) {
            const double t = start * std::exp2(static_cast<double>(k) / per);
            if (t > stop * (1.0 + 1e-12)) {
                break;
            }
            out.push_back(t);
        }
    } else {
        throw ConfigError("config: 'sweep_times' must be a list or a {start, stop, per_doubling} map");
    }
    return out;
}

inline ObservableSpec parse_observable(const std::string &s, int n) {
    if (s == "reflection") {
        return {ObservableSpec::Kind::Reflection, s};
    }
    if (s == "magnetization") {
        return {ObservableSpec::Kind::Magnetization, s};
    }
    try {
        (void)parse_pauli_sum(s, n);
    } catch (const InvalidArgument &e) {
        throw ConfigError(std::string("config: observable: ") + e.what());
    }
    return {ObservableSpec::Kind::Pauli, s};
}

} // namespace detail

inline RunConfig parse_config(const YAML::Node &root) {
    if (!root.IsMap()) {
        throw ConfigError("config: top level must be a mapping");
    }
    static const std::set<std::string> known = {
        "model",  "sweep_times", "modes",      "dephasing", "observables", "dt",    "seed",
        "samples", "integrator", "schedule", "fit_window", "output",      "workers"};
    for (const auto &kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key)) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    RunConfig c;
    c.model = detail::parse_model(root["model"]);
    c.sweep_times = detail::parse_sweep_times(root["sweep_times"]);

    const YAML::Node modes = root["modes"];
    if (!modes || !modes.IsSequence()) {
        throw ConfigError("config: 'modes' must be a list");
    }
    for (const auto &m : modes) {
        const auto s = detail::scalar<std::string>(m, "modes");
        if (s == "qaa") {
            c.modes.push_back(Mode::Qaa);
        } else if (s == "aev") {
            c.modes.push_back(Mode::Aev);
        } else {
            throw ConfigError("config: unknown mode '" + s + "' (expected qaa|aev)");
        }
    }

    if (const YAML::Node deph = root["dephasing"]) {
        if (!deph.IsSequence()) {
            throw ConfigError("config: 'dephasing' must be a list");
        }
        for (const auto &d : deph) {
            DephasingSpec spec;
            try {
                spec.kind = dephasing_kind_from_string(detail::get_or<std::string>(d, "kind", ""));
            } catch (const InvalidArgument &e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
            if (spec.kind == DephasingKind::Bump || spec.kind == DephasingKind::Uniform) {
                if (!d["t_d"]) {
                    throw ConfigError("config: dephasing kind '" + to_string(spec.kind) + "' needs t_d");
                }
                spec.t_d = detail::scalar<double>(d["t_d"], "t_d");
                if (!(spec.t_d > 0.0) || !std::isfinite(spec.t_d)) {
                    throw ConfigError("config: t_d must be positive and finite");
                }
            }
            c.dephasing.push_back(spec);
        }
    }

    const YAML::Node obs = root["observables"];
    if (!obs || !obs.IsSequence()) {
        throw ConfigError("config: 'observables' must be a list");
    }
    for (const auto &o : obs) {
        c.observables.push_back(detail::parse_observable(detail::scalar<std::string>(o, "observables"), c.model.n));
    }

    c.dt = detail::get_or<double>(root, "dt", c.dt);
    c.seed = detail::get_or<std::uint64_t>(root, "seed", c.seed);
    c.samples = detail::get_or<std::size_t>(root, "samples", c.samples);
    c.workers = detail::get_or<unsigned>(root, "workers", c.workers);
    c.output = detail::get_or<std::string>(root, "output", "");

    const auto integrator = detail::get_or<std::string>(root, "integrator", "midpoint");
    if (integrator == "midpoint") {
        c.integrator = Integrator::Midpoint;
    } else if (integrator == "euler") {
        c.integrator = Integrator::Euler;
    } else {
        throw ConfigError("config: unknown integrator '" + integrator + "' (expected midpoint|euler)");
    }

    if (const YAML::Node sched = root["schedule"]) {
        if (sched.IsScalar()) {
            if (sched.as<std::string>() != "linear") {
                throw ConfigError("config: schedule must be 'linear' or a {knots: ...} map");
            }
        } else if (sched.IsMap() && sched["knots"] && sched["knots"].IsSequence()) {
            for (const auto &k : sched["knots"]) {
                if (!k.IsSequence() || k.size() != 2) {
                    throw ConfigError("config: schedule knots are [u, s] pairs");
                }
                c.schedule_knots.emplace_back(detail::scalar<double>(k[0], "knots"),
                                              detail::scalar<double>(k[1], "knots"));
            }
            try {
                (void)Schedule::table(1.0, c.schedule_knots);
            } catch (const InvalidArgument &e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        } else {
            throw ConfigError("config: schedule must be 'linear' or a {knots: ...} map");
        }
    }

    if (const YAML::Node w = root["fit_window"]) {
        if (!w.IsSequence() || w.size() != 2) {
            throw ConfigError("config: fit_window is [tmin, tmax]");
        }
        c.fit_window = std::make_pair(detail::scalar<double>(w[0], "fit_window"),
                                      detail::scalar<double>(w[1], "fit_window"));
    }

    c.validate();
    return c;
}

inline RunConfig parse_config_text(const std::string &text) {
    try {
        return parse_config(YAML::Load(text));
    } catch (const YAML::Exception &e) {
        throw ConfigError(std::string("config: YAML error: ") + e.what());
    }
}

inline RunConfig load_config(const std::string &path) {
    try {
        return parse_config(YAML::LoadFile(path));
    } catch (const YAML::BadFile &) {
        throw ConfigError("config: cannot read '" + path + "'");
    } catch (const YAML::Exception &e) {
        throw ConfigError("config: YAML error in '" + path + "': " + e.what());
    }
}

} // namespace aev::bench
