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

#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "compose_patterns/compose_model.hpp"
#include "compose_patterns/service_types.hpp"

namespace compose_patterns {

enum class MatchKind { Exact, Prefix, Regex };

std::string_view to_string(MatchKind kind);

// Image reference reduced to what the rules look at.
struct CanonicalImage {
    std::string namespace_name; // penultimate path segment, empty when absent
    std::string name;           // final path segment

    // "namespace/name" or just "name".
    std::string qualified() const;

    friend bool operator==(const CanonicalImage&, const CanonicalImage&) = default;
};

// Lowercases, drops the registry host, tag, digest and the "library"
// namespace. Throws InvalidImageRef when nothing is left.
CanonicalImage canonicalize_image(std::string_view image_ref);

struct ClassificationRule {
    MatchKind match_kind = MatchKind::Exact;
    std::string pattern;
    ServiceType target = ServiceType::Unclassified;
    int priority = 0;
    // Generic runtime image; the service name picks Frontend or Backend.
    bool application = false;
    std::string origin; // "file:line"
    std::shared_ptr<const std::regex> compiled; // set for Regex rules

    bool matches(const CanonicalImage& image) const;
    // "exact:postgres->Database@10"
    std::string describe() const;

    friend bool operator==(const ClassificationRule& a, const ClassificationRule& b)
    {
        return a.match_kind == b.match_kind && a.pattern == b.pattern && a.target == b.target &&
               a.priority == b.priority && a.application == b.application;
    }
};

// Builds a rule, compiling regex patterns. Throws RuleTableError.
ClassificationRule make_rule(MatchKind kind, std::string pattern, ServiceType target, int priority,
                             bool application = false);

// Throws RuleTableError naming origin and line.
std::vector<ClassificationRule> parse_rule_table(std::string_view text, std::string_view origin = "<rules>");
std::vector<ClassificationRule> load_rule_file(const std::string& path);
const std::vector<ClassificationRule>& default_rules();

// Priority, then pattern, kind, target.
bool rule_precedes(const ClassificationRule& a, const ClassificationRule& b);

// Rules held in evaluation order.
class RuleSet {
  public:
    RuleSet() = default;
    explicit RuleSet(std::vector<ClassificationRule> rules);

    const std::vector<ClassificationRule>& rules() const { return rules_; }
    const ClassificationRule* first_match(const CanonicalImage& image) const;

  private:
    std::vector<ClassificationRule> rules_;
};

struct ImageClassification {
    ServiceType type = ServiceType::Unclassified;
    std::optional<ClassificationRule> rule;
};

// Application rules report Frontend here; classify_service refines them.
ImageClassification classify_image(std::string_view image_ref, const RuleSet& rules);
ImageClassification classify_image(std::string_view image_ref, const std::vector<ClassificationRule>& rules);

enum class Confidence { RuleMatch, NameHeuristic, DockerfileBase, Unknown };

std::string_view to_string(Confidence confidence);
std::optional<Confidence> parse_confidence(std::string_view text);

struct ClassifiedService {
    ServiceSpec service;
    ServiceType service_type = ServiceType::Unclassified;
    Confidence confidence = Confidence::Unknown;
    std::optional<ClassificationRule> matched_rule;
};

// Backend when the name mentions api, backend, server or worker.
ServiceType application_type_for(std::string_view service_name);

// Name-only heuristics for services no rule covers (migrations, cron jobs...).
std::optional<ServiceType> type_from_service_name(std::string_view service_name);

ClassifiedService classify_service(const ServiceSpec& service, const RuleSet& rules,
                                   const std::optional<std::string>& dockerfile_base = std::nullopt);

std::vector<ClassifiedService> classify_document(const ComposeDocument& doc, const RuleSet& rules);

// Mail images meant for catching mail during development.
bool is_test_mail_image(std::string_view image_ref);

std::map<ServiceType, std::size_t> type_histogram(const std::vector<std::vector<ClassifiedService>>& files);

} // namespace compose_patterns
