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

#include "compose_patterns/yaml_tree.hpp"

#include "compose_patterns/error.hpp"

namespace compose_patterns {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::YamlSyntaxError: return "YamlSyntaxError";
    case ErrorCode::UndefinedAlias: return "UndefinedAlias";
    case ErrorCode::NotAMapping: return "NotAMapping";
    case ErrorCode::MissingServices: return "MissingServices";
    case ErrorCode::InvalidPort: return "InvalidPort";
    case ErrorCode::InvalidVolumeSpec: return "InvalidVolumeSpec";
    case ErrorCode::InvalidServiceSpec: return "InvalidServiceSpec";
    case ErrorCode::ExtendsTargetMissing: return "ExtendsTargetMissing";
    case ErrorCode::ExtendsFileMissing: return "ExtendsFileMissing";
    case ErrorCode::ExtendsCycle: return "ExtendsCycle";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::OverrideShapeConflict: return "OverrideShapeConflict";
    case ErrorCode::InvalidImageRef: return "InvalidImageRef";
    case ErrorCode::RuleTableError: return "RuleTableError";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::InvalidSupport: return "InvalidSupport";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::UnknownPattern: return "UnknownPattern";
    case ErrorCode::RootNotFound: return "RootNotFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace compose_patterns

namespace compose_patterns::yaml {

namespace {

[[noreturn]] void wrong_kind(std::string_view wanted, Node::Kind actual)
{
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::string(wanted) + " node, found " + std::string(to_string(actual)));
}

} // namespace

Node Node::scalar(std::string text, bool plain)
{
    Node n;
    n.kind_ = Kind::Scalar;
    n.text_ = std::move(text);
    n.plain_ = plain;
    return n;
}

Node Node::sequence()
{
    Node n;
    n.kind_ = Kind::Sequence;
    return n;
}

Node Node::mapping()
{
    Node n;
    n.kind_ = Kind::Mapping;
    return n;
}

const std::string& Node::text() const
{
    if (kind_ != Kind::Scalar)
        wrong_kind("scalar", kind_);
    return text_;
}

const std::vector<Node>& Node::items() const
{
    if (kind_ != Kind::Sequence)
        wrong_kind("sequence", kind_);
    return items_;
}

std::vector<Node>& Node::items()
{
    if (kind_ != Kind::Sequence)
        wrong_kind("sequence", kind_);
    return items_;
}

void Node::push_back(Node value)
{
    items().push_back(std::move(value));
}

const std::vector<Node::Entry>& Node::entries() const
{
    if (kind_ != Kind::Mapping)
        wrong_kind("mapping", kind_);
    return entries_;
}

std::vector<Node::Entry>& Node::entries()
{
    if (kind_ != Kind::Mapping)
        wrong_kind("mapping", kind_);
    return entries_;
}

const Node* Node::find(std::string_view key) const
{
    if (kind_ != Kind::Mapping)
        return nullptr;
    for (const auto& [k, v] : entries_)
        if (k == key)
            return &v;
    return nullptr;
}

Node* Node::find(std::string_view key)
{
    if (kind_ != Kind::Mapping)
        return nullptr;
    for (auto& [k, v] : entries_)
        if (k == key)
            return &v;
    return nullptr;
}

void Node::set(std::string key, Node value)
{
    if (Node* existing = find(key)) {
        *existing = std::move(value);
        return;
    }
    entries().emplace_back(std::move(key), std::move(value));
}

std::size_t Node::size() const noexcept
{
    switch (kind_) {
    case Kind::Sequence: return items_.size();
    case Kind::Mapping: return entries_.size();
    default: return 0;
    }
}

bool operator==(const Node& lhs, const Node& rhs)
{
    if (lhs.kind_ != rhs.kind_)
        return false;
    switch (lhs.kind_) {
    case Node::Kind::Null: return true;
    case Node::Kind::Scalar: return lhs.text_ == rhs.text_;
    case Node::Kind::Sequence: return lhs.items_ == rhs.items_;
    case Node::Kind::Mapping:
        // Mappings are unordered; keys are unique within one mapping.
        if (lhs.entries_.size() != rhs.entries_.size())
            return false;
        for (const auto& [key, value] : lhs.entries_) {
            const Node* other = rhs.find(key);
            if (other == nullptr || !(*other == value))
                return false;
        }
        return true;
    }
    return false;
}

std::string_view to_string(Node::Kind kind)
{
    switch (kind) {
    case Node::Kind::Null: return "null";
    case Node::Kind::Scalar: return "scalar";
    case Node::Kind::Sequence: return "sequence";
    case Node::Kind::Mapping: return "mapping";
    }
    return "unknown";
}

nlohmann::json to_json(const Node& node)
{
    switch (node.kind()) {
    case Node::Kind::Null: return nullptr;
    case Node::Kind::Scalar: return node.text();
    case Node::Kind::Sequence: {
        auto out = nlohmann::json::array();
        for (const auto& item : node.items())
            out.push_back(to_json(item));
        return out;
    }
    case Node::Kind::Mapping: {
        auto out = nlohmann::json::object();
        for (const auto& [k, v] : node.entries())
            out[k] = to_json(v);
        return out;
    }
    }
    return nullptr;
}

Node from_json(const nlohmann::json& value)
{
    if (value.is_null())
        return Node{};
    if (value.is_string())
        return Node::scalar(value.get<std::string>(), false);
    if (value.is_boolean())
        return Node::scalar(value.get<bool>() ? "true" : "false");
    if (value.is_number())
        return Node::scalar(value.dump());
    if (value.is_array()) {
        Node out = Node::sequence();
        for (const auto& item : value)
            out.push_back(from_json(item));
        return out;
    }
    Node out = Node::mapping();
    for (const auto& [k, v] : value.items())
        out.set(k, from_json(v));
    return out;
}

} // namespace compose_patterns::yaml
