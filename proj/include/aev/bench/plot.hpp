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

// Self-contained matplotlib scripts for the error-scaling figure ("fig3":
// log-log |error| against total sweep time for the reflection observable) and
// the magnetization figure ("fig4": values and |error| panels). The data is
// embedded, so the script runs without the records file.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "aev/bench/fit.hpp"
#include "aev/bench/records.hpp"

namespace aev::bench {

enum class Figure { ErrorScaling, Magnetization };

inline Figure figure_from_string(const std::string &s) {
    if (s == "fig3") {
        return Figure::ErrorScaling;
    }
    if (s == "fig4") {
        return Figure::Magnetization;
    }
    throw InvalidArgument("unknown figure '" + s + "' (expected fig3|fig4)");
}

namespace detail {

inline std::string curve_name(const CurveKey &k) {
    if (k.mode == "qaa") {
        return "QAA";
    }
    const std::string prefix = k.mode == "aev-uniform" ? "AEV uniform" : "AEV";
    if (std::isinf(k.t_d)) {
        return prefix + " ideal";
    }
    return prefix + " T_d=" + format_number(k.t_d);
}

inline std::string py_list(const std::vector<double> &xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + (std::isfinite(xs[i]) ? format_number(xs[i]) : std::string("float('nan')"));
    }
    return out + "]";
}

} // namespace detail

/// Python source reproducing the figure from the records.
inline std::string plot_script(const std::vector<BenchRecord> &records, Figure figure) {
    const std::string wanted = figure == Figure::ErrorScaling ? "reflection" : "magnetization";
    std::map<CurveKey, std::vector<const BenchRecord *>> curves;
    double exact = 0.0;
    for (const auto &r : records) {
        if (r.ok() && r.observable == wanted) {
            curves[CurveKey{r.mode, r.t_d, r.observable}].push_back(&r);
            exact = r.exact;
        }
    }
    if (curves.empty()) {
        throw InvalidArgument("plot: no usable '" + wanted + "' records");
    }

    std::string data = "CURVES = [\n";
    for (auto &[key, rs] : curves) {
        std::sort(rs.begin(), rs.end(), [](auto *a, auto *b) { return a->total_time < b->total_time; });
        std::vector<double> t, v, e;
        for (const auto *r : rs) {
            t.push_back(r->total_time);
            v.push_back(r->value);
            e.push_back(r->abs_error);
        }
        data += "    (\"" + detail::curve_name(key) + "\", " + detail::py_list(t) + ", " +
                detail::py_list(v) + ", " + detail::py_list(e) + "),\n";
    }
    data += "]\nEXACT = " + format_number(exact) + "\n";

    std::string body;
    if (figure == Figure::ErrorScaling) {
        body = R"(fig, ax = plt.subplots(figsize=(6, 4.5))
for name, t, v, e in CURVES:
    pts = [(a, b) for a, b in zip(t, e) if b > 0]
    if pts:
        ax.loglog(*zip(*pts), marker="o", ms=3, label=name)
ax.set_xlabel("total sweep time T")
ax.set_ylabel("|estimate - exact|")
ax.set_title("reflection observable")
ax.legend()
fig.tight_layout()
fig.savefig(OUT, dpi=150)
)";
    } else {
        body = R"(fig, (ax_v, ax_e) = plt.subplots(1, 2, figsize=(11, 4.5))
for name, t, v, e in CURVES:
    ax_v.semilogx(t, v, marker="o", ms=3, label=name)
    pts = [(a, b) for a, b in zip(t, e) if b > 0]
    if pts:
        ax_e.loglog(*zip(*pts), marker="o", ms=3, label=name)
ax_v.axhline(EXACT, color="k", lw=0.8, ls="--", label="ground state")
ax_v.axhline(-EXACT, color="gray", lw=0.8, ls=":")
ax_v.set_xlabel("total sweep time T")
ax_v.set_ylabel("<M>")
ax_v.set_title("(a) expectation values")
ax_v.legend()
ax_e.set_xlabel("total sweep time T")
ax_e.set_ylabel("|estimate - exact|")
ax_e.set_title("(b) absolute error")
fig.tight_layout()
fig.savefig(OUT, dpi=150)
)";
    }

    const std::string stem = figure == Figure::ErrorScaling ? "fig3" : "fig4";
    return "#!/usr/bin/env python3\n"
           "# Generated by `aev plot`; data embedded below.\n"
           "import sys\n\n"
           "import matplotlib\n"
           "matplotlib.use(\"Agg\")\n"
           "import matplotlib.pyplot as plt\n\n" +
           data + "OUT = sys.argv[1] if len(sys.argv) > 1 else \"" + stem + ".png\"\n\n" + body;
}

/// Reads the records CSV and writes the plotting script to `script_path`.
inline void emit_plot_script(const std::string &records_path, Figure figure, const std::string &script_path) {
    const auto records = read_csv(records_path);
    if (records.empty()) {
        throw InvalidArgument("plot: '" + records_path + "' holds no records");
    }
    const std::string script = plot_script(records, figure);
    std::ofstream out(script_path, std::ios::trunc);
    if (!out) {
        throw InvalidArgument("plot: cannot write '" + script_path + "'");
    }
    out << script;
}

} // namespace aev::bench
