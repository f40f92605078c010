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

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "compose_patterns/compose_model.hpp"

namespace compose_patterns {

enum class MergeKind { Extends, Override };

struct MergeStep {
    MergeKind kind = MergeKind::Override;
    std::string target_service;
    // "self" for in-file extends, otherwise the contributing file path.
    std::string source;
    std::set<std::string> keys_overridden;
    std::set<std::string> keys_inherited;
    // The fragment laid over the target; replaying it reproduces the merge.
    ServiceSpec overlay;
};

struct MergeTrace {
    std::vector<MergeStep> steps;
    std::set<std::string> added_volumes;
    std::set<std::string> added_networks;
};

// Returns nullopt when the file does not exist.
using DocumentLoader = std::function<std::optional<ComposeDocument>(const std::filesystem::path&)>;

inline constexpr int kDefaultExtendsDepth = 10;

// Field-level merge used by both extends and overrides: scalars replaced,
// environment/labels merged per key, ports/volumes/env_file concatenated and
// deduplicated, depends_on/links unioned, unmodelled keys deep-merged.
ServiceSpec merge_service(const ServiceSpec& base, const ServiceSpec& overlay);

// Inlines every extends record. Relative extends paths are resolved against
// the directory of doc.source_path before the loader is called. Throws Error
// with ExtendsTargetMissing, ExtendsFileMissing, ExtendsCycle or DepthExceeded.
std::pair<ComposeDocument, MergeTrace> resolve_extends(const ComposeDocument& doc, const DocumentLoader& loader,
                                                       int max_depth = kDefaultExtendsDepth);

// Equivalent of `docker compose -f base -f override`. Throws Error with
// OverrideShapeConflict when an unmodelled key changes shape.
std::pair<ComposeDocument, MergeTrace> apply_override(const ComposeDocument& base, const ComposeDocument& override_doc);

// Rebuilds an override result from the base and the trace alone.
ComposeDocument replay_trace(const ComposeDocument& base, const MergeTrace& trace);

// Every service names an image, a build or an extends source.
bool is_self_sufficient(const ComposeDocument& doc);

} // namespace compose_patterns
