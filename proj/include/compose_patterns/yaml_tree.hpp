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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace compose_patterns::yaml {

struct Position {
    int line = 0;   // 1-based, 0 when unknown
    int column = 0; // 1-based, 0 when unknown
};

// Generic YAML value with aliases already expanded. Mappings keep source
// order; keys are always scalars in the compose dialect.
class Node {
public:
    enum class Kind { Null, Scalar, Sequence, Mapping };
    using Entry = std::pair<std::string, Node>;

    Node() = default;

    static Node scalar(std::string text, bool plain = true);
    static Node sequence();
    static Node mapping();

    Kind kind() const noexcept { return kind_; }
    bool is_null() const noexcept { return kind_ == Kind::Null; }
    bool is_scalar() const noexcept { return kind_ == Kind::Scalar; }
    bool is_sequence() const noexcept { return kind_ == Kind::Sequence; }
    bool is_mapping() const noexcept { return kind_ == Kind::Mapping; }

    // Scalar text. Plain scalars were written without quotes in the source.
    const std::string& text() const;
    bool plain() const noexcept { return plain_; }

    const std::vector<Node>& items() const;
    std::vector<Node>& items();
    void push_back(Node value);

    const std::vector<Entry>& entries() const;
    std::vector<Entry>& entries();
    const Node* find(std::string_view key) const;
    Node* find(std::string_view key);
    bool contains(std::string_view key) const { return find(key) != nullptr; }
    // Replaces an existing key in place or appends a new one.
    void set(std::string key, Node value);
    std::size_t size() const noexcept;

    Position position;

    // Structural equality; positions and quoting style are ignored.
    friend bool operator==(const Node& lhs, const Node& rhs);

private:
    Kind kind_ = Kind::Null;
    bool plain_ = true;
    std::string text_;
    std::vector<Node> items_;
    std::vector<Entry> entries_;
};

std::string_view to_string(Node::Kind kind);

// Scalars become JSON strings so no YAML typing is lost or invented.
nlohmann::json to_json(const Node& node);
// Strings become quoted scalars; numbers and booleans become plain scalars.
Node from_json(const nlohmann::json& value);

} // namespace compose_patterns::yaml
