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

#include "compose_patterns/report.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

using nlohmann::json;

namespace {

json optional_text(const std::optional<std::string>& value)
{
    return value ? json(*value) : json(nullptr);
}

std::optional<std::string> read_optional_text(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<std::string>();
}

template <typename T, typename Parse>
T parse_or_throw(const std::string& text, Parse parse, const char* what)
{
    auto value = parse(text);
    if (!value)
        throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + text + "'");
    return *value;
}

json pattern_counts_json(const std::map<PatternId, std::size_t>& counts)
{
    json out = json::object();
    for (const auto& [id, n] : counts)
        out[pattern_code(id)] = n;
    return out;
}

std::map<PatternId, std::size_t> pattern_counts_from(const json& j)
{
    std::map<PatternId, std::size_t> out;
    for (const auto& [code, n] : j.items())
        out[parse_or_throw<PatternId>(code, parse_pattern_id, "pattern")] = n.get<std::size_t>();
    return out;
}

json file_json(const FileRecord& f)
{
    json services = json::array();
    for (const auto& s : f.services)
        services.push_back({{"name", s.name},
                            {"image", optional_text(s.image)},
                            {"type", to_string(s.type)},
                            {"category", to_string(category_of(s.type))},
                            {"confidence", to_string(s.confidence)},
                            {"matched_rule", optional_text(s.matched_rule)}});

    json edges = json::array();
    for (const auto& e : f.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}, {"attribute", e.attribute}});
    json graph_findings = json::array();
    for (const auto& g : f.graph_findings)
        graph_findings.push_back({{"kind", g.kind}, {"service", g.service}, {"target", g.target}, {"detail", g.detail}});

    json findings = json::array();
    for (const auto& p : f.findings)
        findings.push_back({{"pattern", pattern_code(p.pattern)},
                            {"file", p.file},
                            {"services", p.services_involved},
                            {"evidence", p.evidence},
                            {"strictness", to_string(p.strictness)}});

    return {
        {"path", f.path},
        {"kind", f.kind == RecordKind::File ? "file" : "merged"},
        {"sources", f.sources},
        {"role", to_string(f.role.role)},
        {"auto_generated", f.role.auto_generated},
        {"role_heuristic", f.role.heuristic},
        {"role_reason", f.role.reason},
        {"error", optional_text(f.error)},
        {"syntax_meta",
         {{"anchor_count", f.syntax_meta.anchor_count},
          {"alias_count", f.syntax_meta.alias_count},
          {"merge_key_count", f.syntax_meta.merge_key_count},
          {"anchor_names", f.syntax_meta.anchor_names}}},
        {"unresolved_variables", f.unresolved_variables},
        {"services", services},
        {"graph",
         {{"edges", edges},
          {"synthetic_nodes", f.synthetic_nodes},
          {"findings", graph_findings},
          {"swarm_instructions", f.swarm_instructions},
          {"cluster_env_vars", f.cluster_env_vars}}},
        {"findings", findings},
        {"notes", f.notes},
    };
}

FileRecord file_from_json(const json& j)
{
    FileRecord f;
    f.path = j.at("path").get<std::string>();
    f.kind = j.at("kind").get<std::string>() == "merged" ? RecordKind::Merged : RecordKind::File;
    f.sources = j.at("sources").get<std::vector<std::string>>();
    f.role.role = parse_or_throw<FileRole>(j.at("role").get<std::string>(), parse_file_role, "file role");
    f.role.auto_generated = j.at("auto_generated").get<bool>();
    f.role.heuristic = j.at("role_heuristic").get<bool>();
    f.role.reason = j.at("role_reason").get<std::string>();
    f.error = read_optional_text(j, "error");

    const json& meta = j.at("syntax_meta");
    f.syntax_meta.anchor_count = meta.at("anchor_count").get<std::size_t>();
    f.syntax_meta.alias_count = meta.at("alias_count").get<std::size_t>();
    f.syntax_meta.merge_key_count = meta.at("merge_key_count").get<std::size_t>();
    f.syntax_meta.anchor_names = meta.at("anchor_names").get<std::set<std::string>>();
    f.unresolved_variables = j.at("unresolved_variables").get<std::vector<std::string>>();

    for (const auto& s : j.at("services")) {
        ServiceRecord r;
        r.name = s.at("name").get<std::string>();
        r.image = read_optional_text(s, "image");
        r.type = parse_or_throw<ServiceType>(s.at("type").get<std::string>(), parse_service_type, "service type");
        r.confidence = parse_or_throw<Confidence>(s.at("confidence").get<std::string>(), parse_confidence, "confidence");
        r.matched_rule = read_optional_text(s, "matched_rule");
        f.services.push_back(std::move(r));
    }

    const json& graph = j.at("graph");
    for (const auto& e : graph.at("edges"))
        f.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                           parse_or_throw<EdgeKind>(e.at("kind").get<std::string>(), parse_edge_kind, "edge kind"),
                           e.at("attribute").get<std::string>()});
    f.synthetic_nodes = graph.at("synthetic_nodes").get<std::vector<std::string>>();
    for (const auto& g : graph.at("findings"))
        f.graph_findings.push_back({g.at("kind").get<std::string>(), g.at("service").get<std::string>(),
                                    g.at("target").get<std::string>(), g.at("detail").get<std::string>()});
    f.swarm_instructions = graph.at("swarm_instructions").get<bool>();
    f.cluster_env_vars = graph.at("cluster_env_vars").get<std::vector<std::string>>();

    for (const auto& p : j.at("findings")) {
        PatternFinding finding;
        finding.pattern = parse_or_throw<PatternId>(p.at("pattern").get<std::string>(), parse_pattern_id, "pattern");
        finding.file = p.at("file").get<std::string>();
        finding.services_involved = p.at("services").get<std::vector<std::string>>();
        finding.evidence = p.at("evidence").get<std::vector<std::string>>();
        finding.strictness =
            parse_or_throw<Strictness>(p.at("strictness").get<std::string>(), parse_strictness, "strictness");
        f.findings.push_back(std::move(finding));
    }
    f.notes = j.at("notes").get<std::vector<std::string>>();
    return f;
}

std::string itemset_label(const std::vector<ServiceType>& items)
{
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += display_name(items[i]);
    }
    return out + ")";
}

// Descending count, ties in taxonomy order.
std::vector<std::pair<ServiceType, std::size_t>> histogram_rows(const std::map<ServiceType, std::size_t>& histogram)
{
    std::vector<std::pair<ServiceType, std::size_t>> rows(histogram.begin(), histogram.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return rows;
}

} // namespace

bool FileRecord::counted() const
{
    return kind == RecordKind::File && !error &&
           (role.role == FileRole::Compose || role.role == FileRole::OverrideCandidate);
}

std::string_view to_string(StrictnessOption option)
{
    switch (option) {
    case StrictnessOption::CoOccurrence: return "co";
    case StrictnessOption::Structural: return "structural";
    case StrictnessOption::Both: return "both";
    }
    return "both";
}

std::optional<StrictnessOption> parse_strictness_option(std::string_view text)
{
    for (auto o : {StrictnessOption::CoOccurrence, StrictnessOption::Structural, StrictnessOption::Both})
        if (to_string(o) == text)
            return o;
    return std::nullopt;
}

json to_json(const CorpusReport& report)
{
    json files = json::array();
    for (const auto& f : report.files)
        files.push_back(file_json(f));

    json histogram = json::object();
    for (const auto& [type, n] : report.histogram)
        histogram[std::string(to_string(type))] = n;

    json itemsets = json::array();
    for (const auto& r : report.itemsets) {
        json names = json::array();
        for (ServiceType t : r.items)
            names.push_back(to_string(t));
        itemsets.push_back({{"items", names}, {"support", r.support_text()}, {"count", r.count}, {"total", r.total}});
    }

    return {
        {"root", report.root},
        {"strictness", to_string(report.strictness)},
        {"min_support", report.min_support},
        {"include_unclassified", report.include_unclassified},
        {"file_count", report.files.size()},
        {"files", files},
        {"histogram", histogram},
        {"transaction_count", report.transaction_count},
        {"itemsets", itemsets},
        {"pattern_counts", pattern_counts_json(report.pattern_counts)},
        {"structural_pattern_counts", pattern_counts_json(report.structural_pattern_counts)},
        {"warnings", report.warnings},
    };
}

CorpusReport report_from_json(const json& j)
{
    try {
        CorpusReport r;
        r.root = j.at("root").get<std::string>();
        r.strictness =
            parse_or_throw<StrictnessOption>(j.at("strictness").get<std::string>(), parse_strictness_option, "strictness");
        r.min_support = j.at("min_support").get<double>();
        r.include_unclassified = j.at("include_unclassified").get<bool>();
        for (const auto& f : j.at("files"))
            r.files.push_back(file_from_json(f));
        for (const auto& [name, n] : j.at("histogram").items())
            r.histogram[parse_or_throw<ServiceType>(name, parse_service_type, "service type")] = n.get<std::size_t>();
        r.transaction_count = j.at("transaction_count").get<std::size_t>();
        for (const auto& i : j.at("itemsets")) {
            ItemsetResult item;
            for (const auto& name : i.at("items"))
                item.items.push_back(parse_or_throw<ServiceType>(name.get<std::string>(), parse_service_type, "service type"));
            item.count = i.at("count").get<std::size_t>();
            item.total = i.at("total").get<std::size_t>();
            r.itemsets.push_back(std::move(item));
        }
        r.pattern_counts = pattern_counts_from(j.at("pattern_counts"));
        r.structural_pattern_counts = pattern_counts_from(j.at("structural_pattern_counts"));
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed report: ") + e.what());
    }
}

std::string render_itemsets_text(const std::vector<ItemsetResult>& itemsets, double min_support,
                                 std::size_t transaction_count)
{
    std::string out = fmt::format("Frequent itemsets (min support {}, {} files)\n", min_support, transaction_count);
    out += fmt::format("  {:<70} {}\n", "Itemset", "Support");
    for (const auto& r : itemsets)
        out += fmt::format("  {:<70} {}\n", itemset_label(r.items), r.support_text());
    if (itemsets.empty())
        out += "  (none)\n";
    return out;
}

std::string render_report(const CorpusReport& report, OutputFormat format)
{
    if (format == OutputFormat::Json)
        return to_json(report).dump(2) + "\n";

    std::map<FileRole, std::size_t> roles;
    std::size_t merged = 0;
    for (const auto& f : report.files) {
        if (f.kind == RecordKind::Merged)
            ++merged;
        else
            ++roles[f.role.role];
    }

    std::string out = fmt::format("Scanned {} ({} records)\n", report.root, report.files.size());
    for (FileRole role : {FileRole::Compose, FileRole::OverrideCandidate, FileRole::ConfigurationNotCompose,
                          FileRole::TemplateForGenerating})
        out += fmt::format("  {:<26} {}\n", to_string(role), roles[role]);
    out += fmt::format("  {:<26} {}\n", "Merged", merged);
    out += "Only Compose and OverrideCandidate files enter the statistics below.\n\n";

    out += "Files\n";
    out += fmt::format("  {:<48} {:<24} {:>8}  {}\n", "Path", "Role", "Services", "Patterns");
    for (const auto& f : report.files) {
        std::string patterns;
        for (const auto& p : f.findings)
            patterns += (patterns.empty() ? "" : ",") + pattern_code(p.pattern);
        out += fmt::format("  {:<48} {:<24} {:>8}  {}\n", f.path, f.error ? "error" : to_string(f.role.role),
                           f.services.size(), patterns.empty() ? "-" : patterns);
    }
    out += "\n";

    out += "Service types\n";
    out += fmt::format("  {:<34} {:>6}\n", "Type", "Count");
    for (const auto& [type, n] : histogram_rows(report.histogram))
        out += fmt::format("  {:<34} {:>6}\n", display_name(type), n);
    if (report.histogram.empty())
        out += "  (none)\n";
    out += "\n";

    out += render_itemsets_text(report.itemsets, report.min_support, report.transaction_count);
    out += "\n";

    const bool with_structural = report.strictness == StrictnessOption::Both;
    out += fmt::format("Patterns (strictness {})\n", to_string(report.strictness));
    out += with_structural ? fmt::format("  {:<34} {:>6} {:>11}\n", "Pattern", "Files", "Structural")
                           : fmt::format("  {:<34} {:>6}\n", "Pattern", "Files");
    bool any = false;
    for (const auto& [id, n] : report.pattern_counts) {
        if (n == 0)
            continue;
        any = true;
        if (with_structural) {
            const auto it = report.structural_pattern_counts.find(id);
            out += fmt::format("  {:<34} {:>6} {:>11}\n", pattern_code(id), n,
                               it == report.structural_pattern_counts.end() ? 0 : it->second);
        } else {
            out += fmt::format("  {:<34} {:>6}\n", pattern_code(id), n);
        }
    }
    if (!any)
        out += "  (none)\n";

    std::string notes;
    for (const auto& f : report.files)
        for (const auto& n : f.notes)
            notes += "  " + f.path + ": " + n + "\n";
    if (!notes.empty())
        out += "\nNotes\n" + notes;

    if (!report.warnings.empty()) {
        out += "\nWarnings\n";
        for (const auto& w : report.warnings)
            out += "  " + w + "\n";
    }
    return out;
}

} // namespace compose_patterns
