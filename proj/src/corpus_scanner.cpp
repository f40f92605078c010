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

#include "compose_patterns/corpus_scanner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "compose_patterns/compose_merge.hpp"
#include "compose_patterns/error.hpp"

namespace fs = std::filesystem;

namespace compose_patterns {

namespace {

constexpr std::uintmax_t kMaxTextFile = 4u << 20;

std::string lower(std::string_view text)
{
    std::string out(text);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::optional<std::string> read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool skipped_directory(const fs::path& dir)
{
    const std::string name = dir.filename().string();
    return name == ".git" || name == "node_modules" || name == ".hg" || name == ".svn";
}

// Regular files under root, relative and sorted.
std::vector<std::string> list_files(const fs::path& root)
{
    std::vector<std::string> out;
    std::error_code ec;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (it->is_directory(ec) && skipped_directory(it->path())) {
            it.disable_recursion_pending();
            continue;
        }
        if (it->is_regular_file(ec))
            out.push_back(it->path().lexically_relative(root).generic_string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_yaml_name(std::string_view basename)
{
    const std::string name = lower(basename);
    return name.ends_with(".yml") || name.ends_with(".yaml");
}

bool is_readme(std::string_view basename)
{
    return lower(basename).starts_with("readme");
}

bool is_script(std::string_view basename)
{
    const std::string name = lower(basename);
    return name == "makefile" || name == "gnumakefile" || name == "justfile" || name.ends_with(".sh") ||
           name.ends_with(".bash") || name.ends_with(".mk") || name.ends_with(".ps1");
}

bool mentions_compose(std::string_view line)
{
    return line.find("docker-compose") != std::string_view::npos ||
           line.find("docker compose") != std::string_view::npos;
}

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

struct Candidate {
    std::string rel;
    std::string text;
    std::optional<RawDocument> raw;
    FileRoleResult role;
    std::optional<std::string> error;
};

class Scanner {
  public:
    explicit Scanner(const ScanOptions& opts) : opts_(opts), rules_(build_rule_set(opts)) {}

    CorpusReport run()
    {
        std::error_code ec;
        if (!fs::exists(opts_.root, ec))
            throw Error(ErrorCode::RootNotFound, "scan root " + opts_.root.string() + " does not exist");

        std::vector<std::string> files;
        if (fs::is_regular_file(opts_.root, ec)) {
            base_ = opts_.root.parent_path();
            files.push_back(opts_.root.filename().generic_string());
        } else {
            base_ = opts_.root;
            files = list_files(base_);
        }

        report_.root = opts_.root.generic_string();
        report_.strictness = opts_.strictness;
        report_.min_support = opts_.min_support;
        report_.include_unclassified = opts_.include_unclassified;

        for (const auto& rel : files)
            consider(rel);
        for (const auto& c : candidates_)
            selected_.insert(c.rel);

        std::vector<std::pair<std::string, FileRole>> roles;
        for (const auto& c : candidates_)
            roles.emplace_back(c.rel, c.role.role);
        ctx_ = collect_repo_context(base_, roles);

        for (auto& c : candidates_)
            report_.files.push_back(analyze_candidate(c));

        std::vector<std::vector<std::string>> chains;
        std::vector<std::string> rels(selected_.begin(), selected_.end());
        for (const auto& [base, over] : find_override_pairs(rels))
            chains.push_back({base, over});
        for (const auto& chain : opts_.merge_chains)
            if (std::find(chains.begin(), chains.end(), chain) == chains.end())
                chains.push_back(chain);
        for (const auto& chain : chains)
            merge_chain(chain);

        std::sort(report_.files.begin(), report_.files.end(),
                  [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; });
        aggregate();
        return std::move(report_);
    }

  private:
    void warn(const std::string& where, const std::string& message) { report_.warnings.push_back(where + ": " + message); }

    void consider(const std::string& rel)
    {
        const std::string basename = fs::path(rel).filename().string();
        const bool by_name = is_compose_filename(basename);
        if (!by_name && !(opts_.loose && is_yaml_name(basename)))
            return;

        Candidate c;
        c.rel = rel;
        std::error_code ec;
        const fs::path full = base_ / rel;
        if (fs::file_size(full, ec) > kMaxTextFile) {
            if (!by_name)
                return;
            c.error = "file larger than 4 MiB";
        } else if (auto text = read_text(full)) {
            c.text = std::move(*text);
        } else {
            c.error = "cannot read file";
        }

        if (!c.error) {
            try {
                c.raw = parse_document(c.text, full.generic_string());
            } catch (const Error& e) {
                c.error = e.what();
            }
        }
        if (!by_name) {
            const yaml::Node* services = c.raw ? c.raw->tree.find("services") : nullptr;
            if (services == nullptr || !services->is_mapping())
                return;
        }
        c.role = classify_file_role(c.raw ? &*c.raw : nullptr, basename, c.text, extract_leading_comments(c.text));
        candidates_.push_back(std::move(c));
    }

    std::optional<ComposeDocument> load_for_extends(const fs::path& path)
    {
        const std::string key = path.lexically_normal().generic_string();
        if (auto it = extends_cache_.find(key); it != extends_cache_.end())
            return it->second;
        if (!opts_.follow_extends_outside_filter) {
            const std::string rel = fs::path(key).lexically_relative(base_).generic_string();
            if (!selected_.contains(rel))
                return std::nullopt;
        }
        auto text = read_text(path);
        if (!text)
            return std::nullopt;
        ComposeDocument doc = resolve_document(parse_document(*text, key), opts_.env_overrides);
        extends_cache_[key] = doc;
        return doc;
    }

    // Resolved document with extends inlined. Throws Error.
    std::pair<ComposeDocument, MergeTrace> resolve(const RawDocument& raw)
    {
        ComposeDocument doc = resolve_document(raw, opts_.env_overrides);
        return resolve_extends(doc, [this](const fs::path& p) { return load_for_extends(p); });
    }

    FileRecord analyze_candidate(const Candidate& c)
    {
        FileRecord record;
        record.path = c.rel;
        record.role = c.role;
        record.error = c.error;
        if (c.raw)
            record.syntax_meta = c.raw->syntax_meta;

        const bool template_file = c.role.role == FileRole::TemplateForGenerating;
        if (c.error) {
            if (!template_file)
                warn(c.rel, *c.error);
            return record;
        }
        if (c.role.role != FileRole::Compose && c.role.role != FileRole::OverrideCandidate)
            return record;

        try {
            auto [doc, trace] = resolve(*c.raw);
            resolved_[c.rel] = doc;
            fill(record, c.rel, c.role, doc, trace);
        } catch (const Error& e) {
            record.error = e.what();
            warn(c.rel, e.what());
        }
        return record;
    }

    std::optional<ComposeDocument> resolved_for_merge(const std::string& rel)
    {
        if (auto it = resolved_.find(rel); it != resolved_.end())
            return it->second;
        if (selected_.contains(rel))
            return std::nullopt; // selected but failed; its own warning already explains why
        auto text = read_text(base_ / rel);
        if (!text) {
            warn(rel, "cannot read file named in a merge chain");
            return std::nullopt;
        }
        try {
            auto doc = resolve(parse_document(*text, (base_ / rel).generic_string())).first;
            resolved_[rel] = doc;
            return doc;
        } catch (const Error& e) {
            warn(rel, e.what());
            return std::nullopt;
        }
    }

    void merge_chain(const std::vector<std::string>& chain)
    {
        if (chain.size() < 2)
            return;
        std::string joined;
        for (const auto& rel : chain)
            joined += (joined.empty() ? "" : "+") + rel;

        std::optional<ComposeDocument> merged = resolved_for_merge(chain.front());
        const bool base_runs_alone = merged && is_self_sufficient(*merged);
        MergeTrace trace;
        for (std::size_t i = 1; merged && i < chain.size(); ++i) {
            auto next = resolved_for_merge(chain[i]);
            if (!next) {
                merged.reset();
                break;
            }
            try {
                auto [doc, step_trace] = apply_override(*merged, *next);
                merged = std::move(doc);
                trace.steps.insert(trace.steps.end(), step_trace.steps.begin(), step_trace.steps.end());
            } catch (const Error& e) {
                warn(joined, e.what());
                merged.reset();
            }
        }
        if (!merged)
            return;

        FileRecord record;
        record.path = joined;
        record.kind = RecordKind::Merged;
        record.sources = chain;
        FileRoleResult role;
        role.reason = "merged with -f semantics";
        record.role = role;
        // Extends steps were already applied per file, so only overrides remain in the trace.
        fill(record, joined, role, *merged, MergeTrace{});
        if (!base_runs_alone && is_self_sufficient(*merged))
            record.notes.push_back("reversed override: " + chain.front() +
                                   " cannot run alone, the merged result can");
        report_.files.push_back(std::move(record));
    }

    void fill(FileRecord& record, const std::string& rel, const FileRoleResult& role, const ComposeDocument& doc,
              const MergeTrace& trace)
    {
        record.syntax_meta = doc.syntax_meta;
        record.unresolved_variables.assign(doc.unresolved_variables.begin(), doc.unresolved_variables.end());

        const std::vector<ClassifiedService> classified = classify_document(doc, rules_);
        OrchestrationGraph graph = build_graph(doc, classified);
        for (const auto& node : graph.nodes)
            record.services.push_back({node.service.name, node.service.image, node.service_type, node.confidence,
                                       node.matched_rule ? std::optional(node.matched_rule->describe()) : std::nullopt});
        record.edges = graph.edges;
        record.synthetic_nodes.assign(graph.synthetic_nodes.begin(), graph.synthetic_nodes.end());
        record.graph_findings = graph.findings;
        record.swarm_instructions = graph.swarm_instructions;
        record.cluster_env_vars = graph.cluster_env_vars;

        FileAnalysis analysis{rel, role, doc, trace, std::move(graph)};
        for (auto& finding : detect_all(analysis, ctx_)) {
            if (opts_.strictness == StrictnessOption::Structural && finding.strictness != Strictness::Structural)
                continue;
            if (opts_.patterns_filter && !opts_.patterns_filter->contains(finding.pattern))
                continue;
            record.findings.push_back(std::move(finding));
        }
    }

    void aggregate()
    {
        for (PatternId id : kAllPatterns) {
            report_.pattern_counts[id] = 0;
            if (opts_.strictness == StrictnessOption::Both)
                report_.structural_pattern_counts[id] = 0;
        }

        std::vector<Transaction> transactions;
        for (const auto& f : report_.files) {
            if (!f.counted())
                continue;
            Transaction t{f.path, {}};
            for (const auto& s : f.services) {
                ++report_.histogram[s.type];
                if (opts_.include_unclassified || s.type != ServiceType::Unclassified)
                    t.items.insert(s.type);
            }
            transactions.push_back(std::move(t));

            std::set<PatternId> seen;
            std::set<PatternId> structural;
            for (const auto& finding : f.findings) {
                seen.insert(finding.pattern);
                if (finding.strictness == Strictness::Structural)
                    structural.insert(finding.pattern);
            }
            for (PatternId id : seen)
                ++report_.pattern_counts[id];
            if (opts_.strictness == StrictnessOption::Both)
                for (PatternId id : structural)
                    ++report_.structural_pattern_counts[id];
        }

        report_.transaction_count = transactions.size();
        if (!transactions.empty())
            report_.itemsets = mine_frequent_itemsets(transactions, opts_.min_support);
    }

    const ScanOptions& opts_;
    RuleSet rules_;
    fs::path base_;
    CorpusReport report_;
    RepoContext ctx_;
    std::vector<Candidate> candidates_;
    std::set<std::string> selected_;
    std::map<std::string, ComposeDocument> resolved_;
    std::map<std::string, ComposeDocument> extends_cache_;
};

} // namespace

bool is_compose_filename(std::string_view basename)
{
    const std::string name = lower(basename);
    if (name.find("docker-compose") == std::string::npos)
        return false;
    return name.ends_with(".yml") || name.ends_with(".yaml") || name.find(".yml.") != std::string::npos ||
           name.find(".yaml.") != std::string::npos;
}

RuleSet build_rule_set(const ScanOptions& opts)
{
    std::vector<ClassificationRule> all;
    for (const auto& path : opts.prepend_rules_paths) {
        auto rules = load_rule_file(path);
        all.insert(all.end(), rules.begin(), rules.end());
    }
    const auto& bundled = default_rules();
    all.insert(all.end(), bundled.begin(), bundled.end());
    for (const auto& path : opts.rules_paths) {
        auto rules = load_rule_file(path);
        all.insert(all.end(), rules.begin(), rules.end());
    }
    return RuleSet(std::move(all));
}

RepoContext collect_repo_context(const fs::path& root, const std::vector<std::pair<std::string, FileRole>>& compose_files)
{
    RepoContext ctx;
    ctx.root = root.generic_string();
    ctx.compose_files = compose_files;

    std::error_code ec;
    if (!fs::is_directory(root, ec))
        return ctx;
    for (const auto& rel : list_files(root)) {
        const std::string basename = fs::path(rel).filename().string();
        const bool readme = is_readme(basename);
        if (!readme && !is_script(basename))
            continue;
        if (fs::file_size(root / rel, ec) > kMaxTextFile)
            continue;
        const auto text = read_text(root / rel);
        if (!text)
            continue;
        std::istringstream lines(*text);
        std::string line;
        for (std::size_t no = 1; std::getline(lines, line); ++no) {
            const bool hit = mentions_compose(line) ||
                             (!readme && line.find("-f ") != std::string::npos && line.find("compose") != std::string::npos);
            if (!hit)
                continue;
            (readme ? ctx.readme_hits : ctx.script_hits).push_back(rel + ":" + std::to_string(no) + ": " + trim(line));
        }
    }
    return ctx;
}

CorpusReport scan_path(const ScanOptions& opts)
{
    if (!(opts.min_support > 0.0) || opts.min_support > 1.0)
        throw Error(ErrorCode::InvalidSupport, "min_support must be in (0, 1]");
    return Scanner(opts).run();
}

} // namespace compose_patterns
