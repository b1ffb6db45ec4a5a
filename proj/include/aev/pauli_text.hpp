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

// Text form of Pauli sums used in config files.
//
//   term  := [sign] [coefficient '*'] factor { factor }
//   factor:= ('I'|'X'|'Y'|'Z') site        (site is 1-based)
//   sum   := term { ('+'|'-') term }
//
// Examples: "0.2*Z3", "-1.0*Z1Z2", "X1 + X2 - 0.5*Z1Z2". Sites not mentioned
// act as identity. A bare number is a multiple of the identity.
#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "aev/linalg.hpp"

namespace aev {

namespace detail {

inline std::string strip_spaces(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out.push_back(c);
        }
    }
    return out;
}

// Parses one term starting at `pos`; stops before the next top-level +/-.
inline PauliTerm parse_term(const std::string &s, std::size_t &pos, int n, std::string_view whole) {
    auto fail = [&](const std::string &why) -> PauliTerm {
        throw InvalidArgument("Pauli string '" + std::string(whole) + "': " + why);
    };

    double sign = 1.0;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') {
            sign = -sign;
        }
        ++pos;
    }
    if (pos >= s.size()) {
        return fail("dangling sign");
    }

    double coefficient = 1.0;
    bool has_number = false;
    if (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.') {
        const char *begin = s.c_str() + pos;
        char *end = nullptr;
        coefficient = std::strtod(begin, &end);
        if (end == begin) {
            return fail("bad coefficient");
        }
        pos += static_cast<std::size_t>(end - begin);
        has_number = true;
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
        } else if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            return fail("expected '*' after coefficient");
        }
    }

    PauliTerm term;
    term.coefficient = sign * coefficient;
    term.string.assign(static_cast<std::size_t>(n), Pauli::I);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool has_factor = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
        const Pauli p = pauli_from_label(s[pos]);
        ++pos;
        std::size_t digits = 0;
        long site = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            site = site * 10 + (s[pos] - '0');
            ++pos;
            ++digits;
            if (site > 1'000'000) {
                return fail("site index too large");
            }
        }
        if (digits == 0) {
            if (p == Pauli::I) { // "c*I" means the identity
                has_factor = true;
                continue;
            }
            return fail("missing site index");
        }
        if (site < 1 || site > n) {
            return fail("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
        }
        const auto q = static_cast<std::size_t>(site - 1);
        if (seen[q]) {
            return fail("site " + std::to_string(site) + " repeated in one term");
        }
        seen[q] = true;
        term.string[q] = p;
        has_factor = true;
    }
    if (!has_factor && !has_number) {
        return fail("empty term");
    }
    return term;
}

} // namespace detail

inline std::vector<PauliTerm> parse_pauli_sum(std::string_view text, int n) {
    if (n < 1) {
        throw InvalidArgument("parse_pauli_sum: qubit count must be >= 1");
    }
    const std::string s = detail::strip_spaces(text);
    if (s.empty()) {
        throw InvalidArgument("Pauli string is empty");
    }
    std::vector<PauliTerm> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
        terms.push_back(detail::parse_term(s, pos, n, text));
    }
    return terms;
}

inline PauliTerm parse_pauli_term(std::string_view text, int n) {
    auto terms = parse_pauli_sum(text, n);
    if (terms.size() != 1) {
        throw InvalidArgument("'" + std::string(text) + "' is not a single Pauli term");
    }
    return terms.front();
}

inline std::string format_pauli_term(const PauliTerm &t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g*", t.coefficient);
    std::string out = buf;
    bool any = false;
    for (std::size_t q = 0; q < t.string.size(); ++q) {
        if (t.string[q] != Pauli::I) {
            out.push_back(pauli_label(t.string[q]));
            out += std::to_string(q + 1);
            any = true;
        }
    }
    if (!any) {
        out.push_back('I');
    }
    return out;
}

inline std::string format_pauli_sum(const std::vector<PauliTerm> &terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) {
            out += " + ";
        }
        out += format_pauli_term(terms[i]);
    }
    return out;
}

} // namespace aev
