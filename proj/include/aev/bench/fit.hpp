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

// Log-log slope fits of error curves.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "aev/bench/records.hpp"

namespace aev::bench {

class InsufficientData : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

struct FitWindow {
    double t_min = 0.0;
    double t_max = 0.0;

    [[nodiscard]] bool contains(double t) const { return t >= t_min * (1 - 1e-12) && t <= t_max * (1 + 1e-12); }
};

struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
    std::vector<std::string> warnings;
};

/// "tmin:tmax" -> window.
inline FitWindow parse_window(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw InvalidArgument("window '" + text + "' is not of the form tmin:tmax");
    }
    FitWindow w{parse_number(text.substr(0, colon)), parse_number(text.substr(colon + 1))};
    if (!(w.t_min > 0.0 && w.t_min < w.t_max)) {
        throw InvalidArgument("window '" + text + "' needs 0 < tmin < tmax");
    }
    return w;
}

/// The top half-decade [t_max / sqrt(10), t_max] of the given times.
inline FitWindow default_window(const std::vector<double> &times) {
    if (times.empty()) {
        throw InsufficientData("default_window: no times");
    }
    const double top = *std::max_element(times.begin(), times.end());
    return {top / std::sqrt(10.0), top};
}

/// Least squares of log|error| against log T over points inside the window.
/// Non-positive or non-finite errors are dropped with a warning.
inline SlopeFit fit_slope(const std::vector<std::pair<double, double>> &points, const FitWindow &window) {
    SlopeFit fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &[t, err] : points) {
        if (!window.contains(t)) {
            continue;
        }
        if (!(err > 0.0) || !std::isfinite(err)) {
            fit.warnings.push_back("excluded T = " + format_number(t) + " with error " + format_number(err));
            continue;
        }
        xs.push_back(std::log(t));
        ys.push_back(std::log(err));
    }
    fit.points = xs.size();
    if (xs.size() < 3) {
        throw InsufficientData("fit_slope: " + std::to_string(xs.size()) +
                               " usable points in window [" + format_number(window.t_min) + ", " +
                               format_number(window.t_max) + "], need >= 3");
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw InsufficientData("fit_slope: all points share one T");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += r * r;
    }
    fit.std_error = std::sqrt(rss / (n - 2.0) / sxx);
    return fit;
}

/// Records grouped into curves: (mode, T_d, observable).
struct CurveKey {
    std::string mode;
    double t_d;
    std::string observable;

    bool operator<(const CurveKey &o) const {
        auto td = [](double x) { return std::isnan(x) ? -1.0 : x; };
        return std::tuple(mode, td(t_d), observable) < std::tuple(o.mode, td(o.t_d), o.observable);
    }

    [[nodiscard]] std::string label() const {
        std::string out = mode;
        if (!std::isnan(t_d)) {
            out += " T_d=" + format_number(t_d);
        }
        return out + " " + observable;
    }
};

/// (T, abs_error) per curve, sorted by T; error records are skipped.
inline std::map<CurveKey, std::vector<std::pair<double, double>>> group_curves(
    const std::vector<BenchRecord> &records) {
    std::map<CurveKey, std::vector<std::pair<double, double>>> out;
    for (const auto &r : records) {
        if (!r.ok()) {
            continue;
        }
        out[CurveKey{r.mode, r.t_d, r.observable}].emplace_back(r.total_time, r.abs_error);
    }
    for (auto &[key, pts] : out) {
        std::sort(pts.begin(), pts.end());
    }
    return out;
}

} // namespace aev::bench
