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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "compose_patterns/compose_merge.hpp"
#include "compose_patterns/compose_parser.hpp"
#include "compose_patterns/orchestration_graph.hpp"

namespace compose_patterns {

enum class PatternId {
    AutoGeneration,
    YamlAnchorAlias,
    ServiceInheritance,
    OverrideUseCase,
    CertificateGenerationMapping,
    ContainerManagement,
    DatabaseInitWithDatabase,
    DatabaseAdminWithDatabase,
    LabelsConfigureReverseProxy,
    MailServiceTesting,
    AppWithDatabase,
    AppWithDatabaseAndCaching,
    HttpReverseProxy,
    DuplicateServiceReuse,
};

inline constexpr std::array<PatternId, 14> kAllPatterns = {
    PatternId::AutoGeneration,
    PatternId::YamlAnchorAlias,
    PatternId::ServiceInheritance,
    PatternId::OverrideUseCase,
    PatternId::CertificateGenerationMapping,
    PatternId::ContainerManagement,
    PatternId::DatabaseInitWithDatabase,
    PatternId::DatabaseAdminWithDatabase,
    PatternId::LabelsConfigureReverseProxy,
    PatternId::MailServiceTesting,
    PatternId::AppWithDatabase,
    PatternId::AppWithDatabaseAndCaching,
    PatternId::HttpReverseProxy,
    PatternId::DuplicateServiceReuse,
};

// "HttpReverseProxy"
std::string_view to_string(PatternId id);
// "HTTP_REVERSE_PROXY"
std::string pattern_code(PatternId id);
// Accepts either spelling, case-insensitively.
std::optional<PatternId> parse_pattern_id(std::string_view text);

enum class Strictness { CoOccurrence, Structural };

std::string_view to_string(Strictness strictness);
std::optional<Strictness> parse_strictness(std::string_view text);

// Evidence items are "<clause>:<payload>" strings:
//   role:auto-generated            role:OverrideCandidate
//   pair:<base>|<override>         script:<line>
//   syntax:alias_count=<n>         syntax:merge_key_count=<n>
//   extends:<service>|<source>     type:<service>=<ServiceType>
//   absent:<ServiceType>           edge:<Kind>:<from>-><to>|<attribute>
//   port:<service>:<host port>     mount:<service>:<target>
//   flag:<name>
struct PatternFinding {
    PatternId pattern = PatternId::AutoGeneration;
    std::string file;
    std::vector<std::string> services_involved; // sorted, unique
    std::vector<std::string> evidence;
    Strictness strictness = Strictness::CoOccurrence;

    friend bool operator==(const PatternFinding&, const PatternFinding&) = default;
};

struct RepoContext {
    std::string root;
    std::vector<std::pair<std::string, FileRole>> compose_files; // paths relative to root
    std::vector<std::string> readme_hits;
    std::vector<std::string> script_hits;
};

// Everything the detectors look at for one file.
struct FileAnalysis {
    std::string file;
    FileRoleResult role;
    ComposeDocument document; // extends already inlined
    MergeTrace extends_trace;
    OrchestrationGraph graph;
};

// (base, override) pairs by the "<name>.override.<ext>" convention, same directory.
std::vector<std::pair<std::string, std::string>> find_override_pairs(const std::vector<std::string>& paths);

// Script lines that write a compose file from a generator or template.
bool script_generates(std::string_view line, std::string_view compose_file);

std::string edge_evidence(const Edge& edge);

std::optional<PatternFinding> detect(PatternId id, const FileAnalysis& analysis, const RepoContext& ctx);

// Sorted by (pattern, file, first service).
std::vector<PatternFinding> detect_all(const FileAnalysis& analysis, const RepoContext& ctx);

} // namespace compose_patterns
