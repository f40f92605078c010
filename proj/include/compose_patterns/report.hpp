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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "compose_patterns/itemset_miner.hpp"
#include "compose_patterns/orchestration_graph.hpp"
#include "compose_patterns/pattern_engine.hpp"

namespace compose_patterns {

enum class StrictnessOption { CoOccurrence, Structural, Both };
enum class OutputFormat { Json, Text };

std::string_view to_string(StrictnessOption option); // "co", "structural", "both"
std::optional<StrictnessOption> parse_strictness_option(std::string_view text);

struct ServiceRecord {
    std::string name;
    std::optional<std::string> image;
    ServiceType type = ServiceType::Unclassified;
    Confidence confidence = Confidence::Unknown;
    std::optional<std::string> matched_rule; // ClassificationRule::describe()

    friend bool operator==(const ServiceRecord&, const ServiceRecord&) = default;
};

enum class RecordKind { File, Merged };

struct FileRecord {
    std::string path;                  // relative to the scan root; merged records join sources with '+'
    RecordKind kind = RecordKind::File;
    std::vector<std::string> sources;  // merged records: files in -f order
    FileRoleResult role;
    std::optional<std::string> error;  // set when the file could not be analyzed
    SyntaxMeta syntax_meta;
    std::vector<std::string> unresolved_variables;
    std::vector<ServiceRecord> services;
    std::vector<Edge> edges;
    std::vector<std::string> synthetic_nodes;
    std::vector<GraphFinding> graph_findings;
    bool swarm_instructions = false;
    std::vector<std::string> cluster_env_vars;
    std::vector<PatternFinding> findings;
    std::vector<std::string> notes; // e.g. a merge whose base cannot run alone

    // Enters the histogram, itemsets and pattern counts.
    bool counted() const;

    friend bool operator==(const FileRecord&, const FileRecord&) = default;
};

struct CorpusReport {
    std::string root;
    StrictnessOption strictness = StrictnessOption::Both;
    double min_support = kDefaultMinSupport;
    bool include_unclassified = false;
    std::vector<FileRecord> files; // sorted by path
    std::map<ServiceType, std::size_t> histogram;
    std::size_t transaction_count = 0;
    std::vector<ItemsetResult> itemsets;
    std::map<PatternId, std::size_t> pattern_counts;            // files with >= 1 finding
    std::map<PatternId, std::size_t> structural_pattern_counts; // filled for StrictnessOption::Both
    std::vector<std::string> warnings;

    friend bool operator==(const CorpusReport&, const CorpusReport&) = default;
};

nlohmann::json to_json(const CorpusReport& report);
// Throws InvalidArgument on malformed input.
CorpusReport report_from_json(const nlohmann::json& json);

std::string render_report(const CorpusReport& report, OutputFormat format);

std::string render_itemsets_text(const std::vector<ItemsetResult>& itemsets, double min_support,
                                 std::size_t transaction_count);

} // namespace compose_patterns
