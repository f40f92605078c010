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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "compose_patterns/yaml_tree.hpp"

namespace compose_patterns {

// Reuse syntax that alias expansion erases from the tree.
struct SyntaxMeta {
    std::size_t anchor_count = 0;
    std::size_t alias_count = 0;
    std::size_t merge_key_count = 0; // plain "<<" keys
    std::set<std::string> anchor_names;

    friend bool operator==(const SyntaxMeta&, const SyntaxMeta&) = default;
};

struct RawDocument {
    std::string source_path;
    std::optional<std::string> yaml_version_key;
    std::vector<std::string> top_level_keys; // source order
    SyntaxMeta syntax_meta;
    yaml::Node tree; // always a mapping, aliases and merge keys expanded
};

// Parses the first YAML document of `text`.
//
// Anchors, aliases and "<<" keys are counted from the parser event stream
// while the tree is built, so the counts survive expansion. Throws Error with
// YamlSyntaxError, UndefinedAlias or NotAMapping.
RawDocument parse_document(std::string_view text, std::string source_path);

enum class FileRole {
    Compose,
    OverrideCandidate,
    ConfigurationNotCompose,
    TemplateForGenerating,
};

std::string_view to_string(FileRole role);
std::optional<FileRole> parse_file_role(std::string_view name);

struct FileRoleResult {
    FileRole role = FileRole::Compose;
    bool auto_generated = false;
    // Set when the role rests on the "no image/build/extends" approximation.
    bool heuristic = false;
    std::string reason;

    friend bool operator==(const FileRoleResult&, const FileRoleResult&) = default;
};

// Jinja/ERB delimiters; compose-native "${VAR}" is not a template marker.
bool has_template_markers(std::string_view source_text);

// First `limit` full-line "#" comments with the marker stripped.
std::vector<std::string> extract_leading_comments(std::string_view source_text, std::size_t limit = 10);

bool has_generated_marker(const std::vector<std::string>& leading_comments);

// Basename mentions "override" (docker-compose.override.yml and friends).
bool is_override_filename(std::string_view filename);

// `raw` is null when the YAML could not be parsed; template detection still
// runs on the source text in that case.
FileRoleResult classify_file_role(const RawDocument* raw, std::string_view filename,
                                  std::string_view source_text,
                                  const std::vector<std::string>& leading_comments);

} // namespace compose_patterns
