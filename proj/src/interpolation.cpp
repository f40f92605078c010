// SPDX-License-Identifier: Apache-2.0
/*
Copyright (C) 2026 The compose-patterns Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.

*/

#include <cctype>

#include "compose_patterns/compose_model.hpp"

namespace compose_patterns {

namespace {

bool is_name_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string expand_braced(std::string_view inner, const Environment& env, std::set<std::string>& unresolved)
{
    std::size_t name_len = 0;
    while (name_len < inner.size() && is_name_char(inner[name_len]))
        ++name_len;
    const std::string name(inner.substr(0, name_len));
    const std::string_view rest = inner.substr(name_len);
    if (name.empty())
        return "${" + std::string(inner) + "}";

    const auto it = env.find(name);
    const bool set = it != env.end();
    const std::string value = set ? it->second : std::string{};
    const bool non_empty = set && !value.empty();

    if (rest.empty()) {
        if (!set)
            unresolved.insert(name);
        return value;
    }
    if (rest.starts_with(":-"))
        return non_empty ? value : interpolate(rest.substr(2), env, unresolved);
    if (rest.starts_with(":+"))
        return non_empty ? interpolate(rest.substr(2), env, unresolved) : std::string{};
    if (rest.starts_with(":?")) {
        if (!non_empty)
            unresolved.insert(name);
        return value;
    }
    switch (rest.front()) {
    case '-': return set ? value : interpolate(rest.substr(1), env, unresolved);
    case '+': return set ? interpolate(rest.substr(1), env, unresolved) : std::string{};
    case '?':
        if (!set)
            unresolved.insert(name);
        return value;
    default: return "${" + std::string(inner) + "}";
    }
}

} // namespace

std::string interpolate(std::string_view text, const Environment& env, std::set<std::string>& unresolved)
{
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c != '$' || i + 1 == text.size()) {
            out += c;
            ++i;
            continue;
        }
        const char next = text[i + 1];
        if (next == '$') {
            out += '$';
            i += 2;
        } else if (next == '{') {
            std::size_t depth = 1;
            std::size_t j = i + 2;
            for (; j < text.size() && depth > 0; ++j) {
                if (text[j] == '{')
                    ++depth;
                else if (text[j] == '}')
                    --depth;
            }
            if (depth != 0) {
                out.append(text.substr(i));
                break;
            }
            out += expand_braced(text.substr(i + 2, j - 1 - (i + 2)), env, unresolved);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(next)) != 0 || next == '_') {
            std::size_t j = i + 1;
            while (j < text.size() && is_name_char(text[j]))
                ++j;
            const std::string name(text.substr(i + 1, j - i - 1));
            if (const auto it = env.find(name); it != env.end())
                out += it->second;
            else
                unresolved.insert(name);
            i = j;
        } else {
            out += c;
            ++i;
        }
    }
    return out;
}

} // namespace compose_patterns
