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

// Benchmark records and their CSV / JSON-lines serializations.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aev/error.hpp"

namespace aev::bench {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Where a record came from; serialized in the JSON form only.
struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::uint64_t record_seed = 0;
    double dt = 0.0;
    std::size_t samples = 0;
    std::string integrator = "midpoint";

    bool operator==(const Provenance &) const = default;
};

struct BenchRecord {
    std::size_t index = 0;
    std::string mode;         ///< qaa | aev | aev-uniform
    double t_ad = kNaN;
    double total_time = kNaN; ///< qaa: T_ad, aev: 2 T_ad
    double t_d = kNaN;        ///< nan for qaa, 0 without dephasing, inf for ideal
    std::string observable;
    double value = kNaN;
    double exact = kNaN;
    double abs_error = kNaN;
    double eps_fwd = kNaN;
    double eps_bwd = kNaN;
    double delta = kNaN;
    double bound = kNaN;
    double runtime_ms = 0.0;
    std::string status = "ok"; ///< ok | error
    std::string message;
    Provenance provenance;

    [[nodiscard]] bool ok() const { return status == "ok"; }
};

inline const std::vector<std::string> &csv_columns() {
    static const std::vector<std::string> cols = {
        "mode",    "T_ad",    "T",     "T_d",   "observable", "value", "exact",
        "abs_error", "eps_fwd", "eps_bwd", "delta", "bound",      "runtime_ms"};
    return cols;
}

inline std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_number(const std::string &s) {
    if (s == "nan") {
        return kNaN;
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw InvalidArgument("records: bad number '" + s + "'");
    }
    if (used != s.size()) {
        throw InvalidArgument("records: bad number '" + s + "'");
    }
    return v;
}

inline std::string csv_header() {
    std::string out;
    for (std::size_t i = 0; i < csv_columns().size(); ++i) {
        out += (i ? "," : "") + csv_columns()[i];
    }
    return out;
}

inline std::string to_csv_row(const BenchRecord &r, bool with_runtime = true) {
    std::string out = r.mode;
    for (double x : {r.t_ad, r.total_time, r.t_d}) {
        out += "," + format_number(x);
    }
    out += "," + r.observable;
    for (double x : {r.value, r.exact, r.abs_error, r.eps_fwd, r.eps_bwd, r.delta, r.bound}) {
        out += "," + format_number(x);
    }
    out += "," + (with_runtime ? format_number(r.runtime_ms) : std::string());
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

inline BenchRecord from_csv_row(const std::string &line) {
    const auto cells = split_csv_line(line);
    if (cells.size() != csv_columns().size()) {
        throw InvalidArgument("records: expected " + std::to_string(csv_columns().size()) +
                              " columns, got " + std::to_string(cells.size()));
    }
    BenchRecord r;
    r.mode = cells[0];
    r.t_ad = parse_number(cells[1]);
    r.total_time = parse_number(cells[2]);
    r.t_d = parse_number(cells[3]);
    r.observable = cells[4];
    r.value = parse_number(cells[5]);
    r.exact = parse_number(cells[6]);
    r.abs_error = parse_number(cells[7]);
    r.eps_fwd = parse_number(cells[8]);
    r.eps_bwd = parse_number(cells[9]);
    r.delta = parse_number(cells[10]);
    r.bound = parse_number(cells[11]);
    r.runtime_ms = cells[12].empty() ? 0.0 : parse_number(cells[12]);
    r.status = std::isnan(r.value) ? "error" : "ok";
    return r;
}

/// Reads a records CSV; checks the header against the fixed column order.
inline std::vector<BenchRecord> read_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("records: cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidArgument("records: '" + path + "' is empty");
    }
    if (line != csv_header()) {
        throw InvalidArgument("records: '" + path + "' has unexpected columns: " + line);
    }
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        out.push_back(from_csv_row(line));
        out.back().index = out.size() - 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

// JSON has no inf/nan; those travel as strings.
inline nlohmann::json number_to_json(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    return format_number(x);
}

inline double number_from_json(const nlohmann::json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return parse_number(j.get<std::string>());
    }
    throw InvalidArgument("records: JSON field is neither a number nor inf/nan");
}

} // namespace detail

inline nlohmann::json to_json(const BenchRecord &r) {
    using detail::number_to_json;
    return nlohmann::json{
        {"index", r.index},
        {"mode", r.mode},
        {"T_ad", number_to_json(r.t_ad)},
        {"T", number_to_json(r.total_time)},
        {"T_d", number_to_json(r.t_d)},
        {"observable", r.observable},
        {"value", number_to_json(r.value)},
        {"exact", number_to_json(r.exact)},
        {"abs_error", number_to_json(r.abs_error)},
        {"eps_fwd", number_to_json(r.eps_fwd)},
        {"eps_bwd", number_to_json(r.eps_bwd)},
        {"delta", number_to_json(r.delta)},
        {"bound", number_to_json(r.bound)},
        {"runtime_ms", number_to_json(r.runtime_ms)},
        {"status", r.status},
        {"message", r.message},
        {"provenance",
         {{"config_hash", r.provenance.config_hash},
          {"seed", r.provenance.seed},
          {"record_seed", r.provenance.record_seed},
          {"dt", r.provenance.dt},
          {"samples", r.provenance.samples},
          {"integrator", r.provenance.integrator}}}};
}

inline BenchRecord record_from_json(const nlohmann::json &j) {
    using detail::number_from_json;
    try {
        BenchRecord r;
        r.index = j.at("index").get<std::size_t>();
        r.mode = j.at("mode").get<std::string>();
        r.t_ad = number_from_json(j.at("T_ad"));
        r.total_time = number_from_json(j.at("T"));
        r.t_d = number_from_json(j.at("T_d"));
        r.observable = j.at("observable").get<std::string>();
        r.value = number_from_json(j.at("value"));
        r.exact = number_from_json(j.at("exact"));
        r.abs_error = number_from_json(j.at("abs_error"));
        r.eps_fwd = number_from_json(j.at("eps_fwd"));
        r.eps_bwd = number_from_json(j.at("eps_bwd"));
        r.delta = number_from_json(j.at("delta"));
        r.bound = number_from_json(j.at("bound"));
        r.runtime_ms = number_from_json(j.at("runtime_ms"));
        r.status = j.at("status").get<std::string>();
        r.message = j.at("message").get<std::string>();
        const auto &p = j.at("provenance");
        r.provenance.config_hash = p.at("config_hash").get<std::string>();
        r.provenance.seed = p.at("seed").get<std::uint64_t>();
        r.provenance.record_seed = p.at("record_seed").get<std::uint64_t>();
        r.provenance.dt = p.at("dt").get<double>();
        r.provenance.samples = p.at("samples").get<std::size_t>();
        r.provenance.integrator = p.at("integrator").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("records: malformed JSON record: ") + e.what());
    }
}

inline std::vector<BenchRecord> read_jsonl(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("records: cannot open '" + path + "'");
    }
    std::vector<BenchRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            try {
                out.push_back(record_from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::parse_error &e) {
                throw InvalidArgument(std::string("records: bad JSON line: ") + e.what());
            }
        }
    }
    return out;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string &data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace aev::bench
