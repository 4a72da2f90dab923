/*
 * Copyright 2026 The sasgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sas/error.hpp"

namespace sas::detail {

struct Declaration
{
    std::size_t line;
    std::vector<std::string> tokens;
};

inline bool
all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

inline bool
is_ident(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

inline std::uint64_t
parse_nat(std::string_view s, std::size_t line)
{
    if (!all_digits(s) || s.size() > 18) throw ParseError("expected a natural number, got '" + std::string(s) + "'", line);
    std::uint64_t v = 0;
    for (char c : s) v = v * 10 + static_cast<std::uint64_t>(c - '0');
    return v;
}

inline std::vector<std::string>
split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto p = s.find(sep, start);
        out.emplace_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

/** One declaration per line, terminated by ';'; '#' starts a comment. */
inline std::vector<Declaration>
split_declarations(std::string_view text)
{
    std::vector<Declaration> out;
    std::size_t line = 0, pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        line++;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
        while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
        if (raw.empty()) continue;
        if (raw.back() != ';') throw ParseError("missing ';'", line);
        raw.remove_suffix(1);
        if (raw.find(';') != std::string_view::npos) throw ParseError("one declaration per line", line);
        Declaration d{line, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) i++;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) j++;
            if (j > i) d.tokens.emplace_back(raw.substr(i, j - i));
            i = j;
        }
        if (d.tokens.empty()) throw ParseError("empty declaration", line);
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace sas::detail
