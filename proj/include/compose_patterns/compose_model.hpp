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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "compose_patterns/compose_parser.hpp"
#include "compose_patterns/yaml_tree.hpp"

namespace compose_patterns {

struct PortBinding {
    std::optional<std::string> host_ip;
    std::optional<int> host_port;      // [1, 65535]
    std::optional<int> host_port_end;  // set for ranges such as "8000-8010"
    int container_port = 0;            // [1, 65535]
    std::optional<int> container_port_end;
    std::string protocol = "tcp";

    // host_ip:host:container/protocol, the dedupe identity used by overrides.
    std::string identity() const;

    friend bool operator==(const PortBinding&, const PortBinding&) = default;
};

enum class VolumeKind { Named, Bind, Anonymous, Tmpfs };

std::string_view to_string(VolumeKind kind);

struct VolumeMount {
    VolumeKind kind = VolumeKind::Anonymous;
    std::optional<std::string> source; // volume name or host path
    std::string target;                // absolute container path
    bool read_only = false;
    std::optional<std::string> mode;   // short-syntax flags other than ro/rw, e.g. "z"

    friend bool operator==(const VolumeMount&, const VolumeMount&) = default;
};

struct BuildContext {
    std::string context = ".";
    std::optional<std::string> dockerfile;

    friend bool operator==(const BuildContext&, const BuildContext&) = default;
};

struct ExtendsRef {
    std::optional<std::string> file;
    std::string service;

    friend bool operator==(const ExtendsRef&, const ExtendsRef&) = default;
};

struct ServiceSpec {
    std::string name;
    std::optional<std::string> image;
    std::optional<BuildContext> build;
    std::vector<PortBinding> ports;
    std::vector<VolumeMount> volumes;
    std::map<std::string, std::string> environment;
    std::vector<std::string> env_files;
    std::map<std::string, std::string> labels;
    std::vector<std::string> depends_on;
    // Condition per depends_on entry; the short list form means "service_started".
    std::map<std::string, std::string> depends_on_conditions;
    std::vector<std::string> links;
    std::optional<std::string> command;
    std::optional<ExtendsRef> extends;
    std::optional<yaml::Node> deploy;
    std::optional<std::string> hostname;
    // Keys outside the modelled set, kept verbatim.
    std::map<std::string, yaml::Node> unknown;

    std::set<std::string> unknown_keys() const;
    // Compose keys carrying a value; empty lists and maps count as absent.
    std::set<std::string> key_set() const;

    friend bool operator==(const ServiceSpec&, const ServiceSpec&) = default;
};

struct ComposeDocument {
    std::string source_path;
    std::map<std::string, ServiceSpec> services;
    std::set<std::string> named_volumes;
    std::set<std::string> networks;
    SyntaxMeta syntax_meta;
    // Variables referenced by ${...} with no value in the supplied environment.
    std::set<std::string> unresolved_variables;
};

using Environment = std::map<std::string, std::string>;

// Applies ${VAR}, ${VAR:-default}, ${VAR-default}, ${VAR:+alt}, ${VAR+alt},
// ${VAR:?err}, ${VAR?err}, $VAR and "$$" escapes. Unknown names expand to
// empty text and are added to `unresolved`.
std::string interpolate(std::string_view text, const Environment& env, std::set<std::string>& unresolved);

// Normalizes a parsed tree into services. Throws Error with MissingServices,
// InvalidPort, InvalidVolumeSpec or InvalidServiceSpec.
ComposeDocument resolve_document(const RawDocument& raw, const Environment& env = {});

PortBinding parse_port(const yaml::Node& node);
VolumeMount parse_volume(const yaml::Node& node);

bool is_known_service_key(std::string_view key);

// Canonical JSON form: long syntax everywhere, sorted keys, strings only.
// Feeding it back through parse/resolve yields an equal document.
nlohmann::json to_canonical_json(const ComposeDocument& doc);
nlohmann::json to_canonical_json(const ServiceSpec& service);

// Canonical JSON back to a tree that resolve_document accepts.
RawDocument raw_from_canonical_json(const nlohmann::json& canonical, std::string source_path);

bool same_content(const ComposeDocument& lhs, const ComposeDocument& rhs);

} // namespace compose_patterns
