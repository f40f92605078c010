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

#include "compose_patterns/compose_parser.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <regex>
#include <sstream>

#include <yaml-cpp/eventhandler.h>
#include <yaml-cpp/exceptions.h>
#include <yaml-cpp/mark.h>
#include <yaml-cpp/parser.h>

#include "compose_patterns/compose_model.hpp"
#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace {

using yaml::Node;
using yaml::Position;

Position to_position(const YAML::Mark& mark)
{
    if (mark.is_null())
        return {};
    return {mark.line + 1, mark.column + 1};
}

std::string at(const Position& pos)
{
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

// Builds a Node tree from yaml-cpp events. Aliases are copied from the
// anchored value; "<<" merge sources are applied when their mapping closes.
class TreeBuilder final : public YAML::EventHandler {
public:
    Node take_root() { return std::move(root_); }
    bool has_root() const { return has_root_; }
    const SyntaxMeta& meta() const { return meta_; }

    void OnDocumentStart(const YAML::Mark&) override {}
    void OnDocumentEnd() override {}

    void OnNull(const YAML::Mark& mark, YAML::anchor_t anchor) override
    {
        Node n;
        n.position = to_position(mark);
        register_anchor(anchor, n);
        add_value(std::move(n));
    }

    void OnAlias(const YAML::Mark& mark, YAML::anchor_t anchor) override
    {
        ++meta_.alias_count;
        auto it = anchors_.find(anchor);
        if (it == anchors_.end())
            throw Error(ErrorCode::YamlSyntaxError,
                        at(to_position(mark)) + ": alias refers to a node that is still being defined");
        Node copy = it->second;
        copy.position = to_position(mark);
        add_value(std::move(copy), /*from_alias=*/true);
    }

    void OnScalar(const YAML::Mark& mark, const std::string& tag, YAML::anchor_t anchor,
                  const std::string& value) override
    {
        // "?" is the non-specific tag of plain scalars; quoted scalars get "!".
        Node n = Node::scalar(value, tag == "?");
        n.position = to_position(mark);
        register_anchor(anchor, n);
        add_value(std::move(n));
    }

    void OnSequenceStart(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                         YAML::EmitterStyle::value) override
    {
        open(Node::sequence(), mark, anchor);
    }

    void OnSequenceEnd() override { close(); }

    void OnMapStart(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                    YAML::EmitterStyle::value) override
    {
        open(Node::mapping(), mark, anchor);
    }

    void OnMapEnd() override { close(); }

    void OnAnchor(const YAML::Mark&, const std::string& name) override
    {
        ++meta_.anchor_count;
        meta_.anchor_names.insert(name);
    }

private:
    struct Frame {
        Node node;
        YAML::anchor_t anchor = 0;
        std::optional<std::string> pending_key;
        bool pending_merge = false;
        std::vector<Node> merge_sources;
    };

    void open(Node node, const YAML::Mark& mark, YAML::anchor_t anchor)
    {
        node.position = to_position(mark);
        stack_.push_back(Frame{std::move(node), anchor, std::nullopt, false, {}});
    }

    void close()
    {
        Frame frame = std::move(stack_.back());
        stack_.pop_back();
        if (frame.node.is_mapping())
            apply_merges(frame);
        register_anchor(frame.anchor, frame.node);
        add_value(std::move(frame.node));
    }

    // Explicit keys win over merged ones; earlier merge sources win over later.
    static void apply_merges(Frame& frame)
    {
        for (const Node& source : frame.merge_sources)
            for (const auto& [key, value] : source.entries())
                if (!frame.node.contains(key))
                    frame.node.entries().emplace_back(key, value);
    }

    void register_anchor(YAML::anchor_t anchor, const Node& node)
    {
        if (anchor != 0)
            anchors_[anchor] = node;
    }

    void add_value(Node value, bool from_alias = false)
    {
        if (stack_.empty()) {
            root_ = std::move(value);
            has_root_ = true;
            return;
        }
        Frame& top = stack_.back();
        if (top.node.is_sequence()) {
            top.node.push_back(std::move(value));
            return;
        }
        if (!top.pending_key) {
            if (value.is_null()) {
                top.pending_key = std::string{};
                return;
            }
            if (!value.is_scalar())
                throw Error(ErrorCode::YamlSyntaxError,
                            at(value.position) + ": only scalar mapping keys are supported");
            top.pending_merge = value.plain() && value.text() == "<<" && !from_alias;
            if (top.pending_merge)
                ++meta_.merge_key_count;
            top.pending_key = value.text();
            return;
        }
        if (top.pending_merge) {
            add_merge_source(top, std::move(value));
        } else {
            top.node.set(std::move(*top.pending_key), std::move(value));
        }
        top.pending_key.reset();
        top.pending_merge = false;
    }

    static void add_merge_source(Frame& frame, Node value)
    {
        if (value.is_mapping()) {
            frame.merge_sources.push_back(std::move(value));
            return;
        }
        if (value.is_sequence()) {
            for (Node& item : value.items()) {
                if (!item.is_mapping())
                    throw Error(ErrorCode::YamlSyntaxError,
                                at(item.position) + ": merge key sequence entries must be mappings");
                frame.merge_sources.push_back(std::move(item));
            }
            return;
        }
        throw Error(ErrorCode::YamlSyntaxError,
                    at(value.position) + ": merge key value must be a mapping or a sequence of mappings");
    }

    std::vector<Frame> stack_;
    std::map<YAML::anchor_t, Node> anchors_;
    Node root_;
    bool has_root_ = false;
    SyntaxMeta meta_;
};

std::string to_lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool has_source(const Node& service)
{
    return service.contains("image") || service.contains("build") || service.contains("extends");
}

bool has_known_key(const Node& service)
{
    if (!service.is_mapping())
        return false;
    return std::any_of(service.entries().begin(), service.entries().end(),
                       [](const Node::Entry& e) { return is_known_service_key(e.first); });
}

} // namespace

RawDocument parse_document(std::string_view text, std::string source_path)
{
    if (trim(text).empty())
        throw Error(ErrorCode::NotAMapping, source_path + ": document is empty");

    std::istringstream input{std::string(text)};
    TreeBuilder builder;
    try {
        YAML::Parser parser(input);
        parser.HandleNextDocument(builder);
    } catch (const YAML::ParserException& e) {
        const Position pos = to_position(e.mark);
        const ErrorCode code = e.msg.find("anchor") != std::string::npos ? ErrorCode::UndefinedAlias
                                                                          : ErrorCode::YamlSyntaxError;
        throw Error(code, source_path + ": " + at(pos) + ": " + e.msg);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::YamlSyntaxError, source_path + ": " + at(to_position(e.mark)) + ": " + e.msg);
    } catch (const Error& e) {
        throw Error(e.code(), source_path + ": " + e.what());
    }

    if (!builder.has_root())
        throw Error(ErrorCode::NotAMapping, source_path + ": document has no content");
    RawDocument raw;
    raw.source_path = std::move(source_path);
    raw.syntax_meta = builder.meta();
    raw.tree = builder.take_root();
    if (!raw.tree.is_mapping())
        throw Error(ErrorCode::NotAMapping, raw.source_path + ": top level is a " +
                                                std::string(yaml::to_string(raw.tree.kind())));
    for (const auto& [key, value] : raw.tree.entries()) {
        raw.top_level_keys.push_back(key);
        if (key == "version" && value.is_scalar())
            raw.yaml_version_key = value.text();
    }
    return raw;
}

std::string_view to_string(FileRole role)
{
    switch (role) {
    case FileRole::Compose: return "Compose";
    case FileRole::OverrideCandidate: return "OverrideCandidate";
    case FileRole::ConfigurationNotCompose: return "ConfigurationNotCompose";
    case FileRole::TemplateForGenerating: return "TemplateForGenerating";
    }
    return "Compose";
}

std::optional<FileRole> parse_file_role(std::string_view name)
{
    for (FileRole r : {FileRole::Compose, FileRole::OverrideCandidate, FileRole::ConfigurationNotCompose,
                       FileRole::TemplateForGenerating})
        if (to_string(r) == name)
            return r;
    return std::nullopt;
}

bool has_template_markers(std::string_view source_text)
{
    return source_text.find("{{") != std::string_view::npos || source_text.find("{%") != std::string_view::npos ||
           source_text.find("<%") != std::string_view::npos;
}

std::vector<std::string> extract_leading_comments(std::string_view source_text, std::size_t limit)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= source_text.size() && out.size() < limit) {
        auto end = source_text.find('\n', start);
        if (end == std::string_view::npos)
            end = source_text.size();
        const auto line = trim(source_text.substr(start, end - start));
        if (!line.empty() && line.front() == '#')
            out.emplace_back(trim(line.substr(1)));
        start = end + 1;
    }
    return out;
}

bool has_generated_marker(const std::vector<std::string>& leading_comments)
{
    static const std::regex marker("generat|do not edit", std::regex::icase);
    return std::any_of(leading_comments.begin(), leading_comments.end(),
                       [](const std::string& c) { return std::regex_search(c, marker); });
}

bool is_override_filename(std::string_view filename)
{
    const std::string base = std::filesystem::path(std::string(filename)).filename().string();
    return to_lower(base).find("override") != std::string::npos;
}

FileRoleResult classify_file_role(const RawDocument* raw, std::string_view filename,
                                  std::string_view source_text,
                                  const std::vector<std::string>& leading_comments)
{
    FileRoleResult result;
    result.auto_generated = has_generated_marker(leading_comments);

    if (has_template_markers(source_text)) {
        result.role = FileRole::TemplateForGenerating;
        result.reason = "template delimiters present";
        return result;
    }
    if (raw == nullptr) {
        result.role = FileRole::ConfigurationNotCompose;
        result.reason = "not parseable as YAML";
        return result;
    }
    const Node* services = raw->tree.find("services");
    if (services == nullptr || !services->is_mapping() || services->size() == 0) {
        result.role = FileRole::ConfigurationNotCompose;
        result.heuristic = true;
        result.reason = "no services mapping";
        return result;
    }
    if (is_override_filename(filename)) {
        result.role = FileRole::OverrideCandidate;
        result.reason = "override file name";
        return result;
    }

    const auto& entries = services->entries();
    const bool any_source =
        std::any_of(entries.begin(), entries.end(), [](const Node::Entry& e) { return has_source(e.second); });
    const bool all_source =
        std::all_of(entries.begin(), entries.end(), [](const Node::Entry& e) { return has_source(e.second); });
    if (!any_source) {
        const bool looks_like_services = std::any_of(entries.begin(), entries.end(),
                                                     [](const Node::Entry& e) { return has_known_key(e.second); });
        if (!looks_like_services) {
            result.role = FileRole::ConfigurationNotCompose;
            result.heuristic = true;
            result.reason = "no service declares image, build, extends or any compose service key";
            return result;
        }
    }
    if (!all_source) {
        result.role = FileRole::OverrideCandidate;
        result.reason = "not self-sufficient: a service has no image, build or extends";
        return result;
    }
    result.role = FileRole::Compose;
    return result;
}

} // namespace compose_patterns
