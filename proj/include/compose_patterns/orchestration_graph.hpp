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

#include "compose_patterns/compose_model.hpp"
#include "compose_patterns/service_classifier.hpp"

namespace compose_patterns {

enum class EdgeKind { DependsOn, Link, EnvReference, SharedVolume, SharedEnvFile, LabelProxyConfig, DuplicateImage };

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

// Attribute by kind: DependsOn the condition, EnvReference the variable,
// SharedVolume the volume name or host path, SharedEnvFile the normalized
// path, LabelProxyConfig the label prefix, DuplicateImage one of
// "same-command", "different-commands", "different-env". Empty for Link.
struct Edge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::DependsOn;
    std::string attribute;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphFinding {
    std::string kind; // "DanglingReference"
    std::string service;
    std::string target;
    std::string detail; // "depends_on" or "links"

    friend auto operator<=>(const GraphFinding&, const GraphFinding&) = default;
};

inline constexpr std::string_view kExternalProxyNode = "external-proxy";

struct OrchestrationGraph {
    std::vector<ClassifiedService> nodes; // sorted by service name
    std::vector<Edge> edges;              // sorted, unique
    // Endpoints that stand for something outside the file, e.g. a proxy
    // configured by labels but defined elsewhere.
    std::set<std::string> synthetic_nodes;
    std::vector<GraphFinding> findings;
    bool swarm_instructions = false;             // some service has a deploy section
    std::vector<std::string> cluster_env_vars;   // "service.VARIABLE"

    const ClassifiedService* node(std::string_view name) const;
    bool has_edge(const Edge& edge) const;
};

std::vector<Edge> detect_env_references(const ComposeDocument& doc);
std::vector<Edge> detect_shared_volumes(const ComposeDocument& doc);
std::vector<Edge> detect_shared_env_files(const ComposeDocument& doc);
// Adds kExternalProxyNode to `synthetic` when a labelled service has no proxy in the file.
std::vector<Edge> detect_label_proxy_config(const ComposeDocument& doc, const std::vector<ClassifiedService>& classified,
                                            std::set<std::string>* synthetic = nullptr);
std::vector<Edge> detect_duplicate_images(const ComposeDocument& doc);

// `value` mentions `name` delimited by characters outside [A-Za-z0-9_-].
bool mentions_token(std::string_view value, std::string_view name);

// "./.env" and ".env" both become ".env".
std::string normalize_relative_path(std::string_view path);

// Throws InvalidArgument when `classified` does not cover exactly doc's services.
OrchestrationGraph build_graph(const ComposeDocument& doc, const std::vector<ClassifiedService>& classified);

} // namespace compose_patterns
