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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "compose_patterns/report.hpp"

namespace compose_patterns {

struct ScanOptions {
    std::filesystem::path root;
    bool follow_extends_outside_filter = true;
    // Tables read before the bundled one is extended, e.g. from COMPOSE_PATTERNS_RULES.
    std::vector<std::string> prepend_rules_paths;
    std::vector<std::string> rules_paths;
    double min_support = kDefaultMinSupport;
    StrictnessOption strictness = StrictnessOption::Both;
    OutputFormat format = OutputFormat::Json;
    Environment env_overrides;
    std::optional<std::set<PatternId>> patterns_filter;
    // Any .yml/.yaml with a services mapping, not only docker-compose names.
    bool loose = false;
    bool include_unclassified = false;
    // Extra -f chains, paths relative to root, applied left to right.
    std::vector<std::vector<std::string>> merge_chains;
};

// Basename contains "docker-compose" (any case) and has a YAML extension,
// possibly followed by a template suffix such as ".yml.j2".
bool is_compose_filename(std::string_view basename);

// Prepended tables, then the bundled table, then --rules tables. Throws RuleTableError.
RuleSet build_rule_set(const ScanOptions& opts);

// Lines of READMEs and build scripts under root that mention compose, as
// "<relative path>:<line number>: <text>".
RepoContext collect_repo_context(const std::filesystem::path& root, const std::vector<std::pair<std::string, FileRole>>& compose_files);

// Throws RootNotFound; problems with single files become warnings.
CorpusReport scan_path(const ScanOptions& opts);

} // namespace compose_patterns
