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

// Re-checks each evidence clause of a finding against the analysis it came
// from, independently of the detectors.

#include <algorithm>
#include <regex>
#include <string>
#include <vector>

#include "compose_patterns/pattern_engine.hpp"

namespace test_support {

struct ReplayResult {
    bool ok = true;
    std::vector<std::string> failures;
};

inline bool edge_present(const compose_patterns::OrchestrationGraph& g, const std::string& payload)
{
    static const std::regex edge_form(R"(^([A-Za-z]+):(.+?)->(.+?)\|(.*)$)");
    std::smatch m;
    if (!std::regex_match(payload, m, edge_form))
        return false;
    const auto kind = compose_patterns::parse_edge_kind(m[1].str());
    return kind && g.has_edge({m[2].str(), m[3].str(), *kind, m[4].str()});
}

inline bool binds(const compose_patterns::ServiceSpec& s, int port)
{
    return std::any_of(s.ports.begin(), s.ports.end(), [port](const compose_patterns::PortBinding& p) {
        return p.host_port && *p.host_port <= port && port <= p.host_port_end.value_or(*p.host_port);
    });
}

inline bool replay_clause(const std::string& clause, const compose_patterns::FileAnalysis& a,
                          const compose_patterns::RepoContext& ctx)
{
    using namespace compose_patterns;
    const auto colon = clause.find(':');
    if (colon == std::string::npos)
        return false;
    const std::string head = clause.substr(0, colon);
    const std::string body = clause.substr(colon + 1);
    const OrchestrationGraph& g = a.graph;

    if (head == "role") {
        if (body == "auto-generated")
            return a.role.auto_generated;
        return parse_file_role(body) == a.role.role;
    }
    if (head == "pair") {
        const auto bar = body.find('|');
        if (bar == std::string::npos)
            return false;
        std::vector<std::string> paths;
        for (const auto& [p, r] : ctx.compose_files)
            paths.push_back(p);
        const std::pair<std::string, std::string> pair{body.substr(0, bar), body.substr(bar + 1)};
        const auto pairs = find_override_pairs(paths);
        return std::find(pairs.begin(), pairs.end(), pair) != pairs.end() && (a.file == pair.first || a.file == pair.second);
    }
    if (head == "script")
        return std::find(ctx.script_hits.begin(), ctx.script_hits.end(), body) != ctx.script_hits.end();
    if (head == "syntax") {
        const SyntaxMeta& m = a.document.syntax_meta;
        return body == "alias_count=" + std::to_string(m.alias_count) ||
               body == "merge_key_count=" + std::to_string(m.merge_key_count);
    }
    if (head == "extends") {
        return std::any_of(a.extends_trace.steps.begin(), a.extends_trace.steps.end(), [&](const MergeStep& s) {
            return s.kind == MergeKind::Extends && body == s.target_service + "|" + s.source;
        });
    }
    if (head == "type") {
        const auto eq = body.rfind('=');
        if (eq == std::string::npos)
            return false;
        const ClassifiedService* n = g.node(body.substr(0, eq));
        return n != nullptr && to_string(n->service_type) == body.substr(eq + 1);
    }
    if (head == "absent") {
        const auto t = parse_service_type(body);
        return t && std::none_of(g.nodes.begin(), g.nodes.end(),
                                 [&](const ClassifiedService& c) { return c.service_type == *t; });
    }
    if (head == "edge")
        return edge_present(g, body);
    if (head == "port" || head == "mount") {
        const auto sep = body.rfind(':');
        if (sep == std::string::npos)
            return false;
        const ClassifiedService* n = g.node(body.substr(0, sep));
        if (n == nullptr)
            return false;
        const std::string rest = body.substr(sep + 1);
        if (head == "port")
            return binds(n->service, std::stoi(rest));
        return std::any_of(n->service.volumes.begin(), n->service.volumes.end(),
                           [&](const VolumeMount& v) { return v.target == rest; });
    }
    if (head == "flag") {
        bool test_mail = false;
        bool any_mail = false;
        for (const auto& c : g.nodes)
            if (c.service_type == ServiceType::Mail) {
                any_mail = true;
                test_mail = test_mail || (c.service.image && is_test_mail_image(*c.service.image));
            }
        if (body == "test-oriented")
            return test_mail;
        if (body == "general-mail")
            return any_mail && !test_mail;
    }
    return false;
}

// Clauses that prove structure rather than mere type presence.
inline bool structural_clause(const std::string& clause)
{
    for (const char* head : {"edge:", "syntax:", "extends:", "role:", "pair:", "script:", "port:"})
        if (clause.starts_with(head))
            return true;
    return false;
}

inline ReplayResult replay(const compose_patterns::PatternFinding& f, const compose_patterns::FileAnalysis& a,
                           const compose_patterns::RepoContext& ctx)
{
    ReplayResult r;
    auto fail = [&](std::string why) {
        r.ok = false;
        r.failures.push_back(std::string(compose_patterns::to_string(f.pattern)) + ": " + std::move(why));
    };
    if (f.evidence.empty())
        fail("empty evidence");
    if (f.file != a.file)
        fail("file mismatch");
    for (const auto& clause : f.evidence)
        if (!replay_clause(clause, a, ctx))
            fail("clause does not hold: " + clause);
    for (const auto& s : f.services_involved)
        if (a.graph.node(s) == nullptr)
            fail("unknown service: " + s);
    if (!std::is_sorted(f.services_involved.begin(), f.services_involved.end()) ||
        std::adjacent_find(f.services_involved.begin(), f.services_involved.end()) != f.services_involved.end())
        fail("services_involved not sorted and unique");
    const bool has_structure = std::any_of(f.evidence.begin(), f.evidence.end(), structural_clause);
    if (f.strictness == compose_patterns::Strictness::Structural && !has_structure)
        fail("structural finding without a structural clause");
    if (f.strictness == compose_patterns::Strictness::CoOccurrence &&
        std::any_of(f.evidence.begin(), f.evidence.end(),
                    [](const std::string& c) { return c.starts_with("edge:") || c.starts_with("syntax:"); }))
        fail("co-occurrence finding carries edge or syntax proof");
    return r;
}

} // namespace test_support
