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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "compose_patterns/corpus_scanner.hpp"
#include "compose_patterns/corpus_stats.hpp"
#include "compose_patterns/error.hpp"
#include "compose_patterns/pattern_catalog.hpp"

using namespace compose_patterns;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRootNotFound = 2;
constexpr int kExitPatternFound = 3;

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, sep))
        if (!part.empty())
            out.push_back(part);
    return out;
}

std::vector<std::string> env_rule_tables()
{
    const char* value = std::getenv("COMPOSE_PATTERNS_RULES");
    return value ? split(value, ':') : std::vector<std::string>{};
}

std::vector<double> read_sample(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::vector<double> out;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(line.substr(first), &used));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("{}:{}: not a number", path, no));
        }
    }
    return out;
}

struct ScanArgs {
    std::string root;
    std::string format = "json";
    std::vector<std::string> rules;
    double min_support = kDefaultMinSupport;
    std::string strictness = "both";
    bool loose = false;
    bool no_follow_extends = false;
    bool include_unclassified = false;
    std::vector<std::string> merges;
    std::vector<std::string> fail_on;
    std::vector<std::string> only_patterns;
    std::vector<std::string> env;
};

void add_scan_options(CLI::App* cmd, ScanArgs& args, bool full)
{
    cmd->add_option("root", args.root, "Directory (or single file) to scan")->required();
    cmd->add_option("--min-support", args.min_support, "Minimum itemset support in (0, 1]")->capture_default_str();
    cmd->add_option("--rules", args.rules, "Extra rule table, appended after the bundled one (repeatable)");
    cmd->add_flag("--loose", args.loose, "Also scan any .yml/.yaml that has a services mapping");
    cmd->add_flag("--include-unclassified", args.include_unclassified, "Keep Unclassified in itemset transactions");
    cmd->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    cmd->add_option("--env", args.env, "KEY=VALUE used for ${VAR} interpolation (repeatable)");
    if (!full)
        return;
    cmd->add_option("--strictness", args.strictness, "Which findings to keep")
        ->check(CLI::IsMember({"co", "structural", "both"}))
        ->capture_default_str();
    cmd->add_option("--merge", args.merges, "Comma-separated -f chain relative to root, e.g. base.yml,prod.yml (repeatable)");
    cmd->add_option("--fail-on-pattern", args.fail_on, "Exit with status 3 when this pattern is found (repeatable)");
    cmd->add_option("--pattern", args.only_patterns, "Only report these patterns (repeatable)");
    cmd->add_flag("--no-follow-extends", args.no_follow_extends,
                  "Do not follow extends into files outside the filename filter");
}

ScanOptions to_scan_options(const ScanArgs& args)
{
    ScanOptions opts;
    opts.root = args.root;
    opts.prepend_rules_paths = env_rule_tables();
    opts.rules_paths = args.rules;
    opts.min_support = args.min_support;
    opts.strictness = *parse_strictness_option(args.strictness);
    opts.format = args.format == "text" ? OutputFormat::Text : OutputFormat::Json;
    opts.loose = args.loose;
    opts.include_unclassified = args.include_unclassified;
    opts.follow_extends_outside_filter = !args.no_follow_extends;
    for (const auto& chain : args.merges)
        opts.merge_chains.push_back(split(chain, ','));
    for (const auto& kv : args.env) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::InvalidArgument, "--env expects KEY=VALUE, got '" + kv + "'");
        opts.env_overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (!args.only_patterns.empty()) {
        opts.patterns_filter.emplace();
        for (const auto& name : args.only_patterns) {
            const auto id = parse_pattern_id(name);
            if (!id)
                throw Error(ErrorCode::UnknownPattern, "unknown pattern '" + name + "'");
            opts.patterns_filter->insert(*id);
        }
    }
    return opts;
}

int run_scan(const ScanArgs& args)
{
    std::vector<PatternId> fail_on;
    for (const auto& name : args.fail_on) {
        const auto id = parse_pattern_id(name);
        if (!id)
            throw Error(ErrorCode::UnknownPattern, "unknown pattern '" + name + "'");
        fail_on.push_back(*id);
    }
    const ScanOptions opts = to_scan_options(args);
    const CorpusReport report = scan_path(opts);
    std::cout << render_report(report, opts.format);
    for (PatternId id : fail_on)
        if (auto it = report.pattern_counts.find(id); it != report.pattern_counts.end() && it->second > 0)
            return kExitPatternFound;
    return kExitOk;
}

int run_mine(const ScanArgs& args)
{
    const ScanOptions opts = to_scan_options(args);
    const CorpusReport report = scan_path(opts);
    if (opts.format == OutputFormat::Text) {
        std::cout << render_itemsets_text(report.itemsets, report.min_support, report.transaction_count);
        return kExitOk;
    }
    nlohmann::json itemsets = to_json(report).at("itemsets");
    nlohmann::json out = {{"min_support", report.min_support},
                          {"transaction_count", report.transaction_count},
                          {"itemsets", itemsets}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_classify(const std::string& image, const std::string& name, const std::vector<std::string>& rules_paths,
                 const std::string& format)
{
    ScanOptions opts;
    opts.prepend_rules_paths = env_rule_tables();
    opts.rules_paths = rules_paths;
    const RuleSet rules = build_rule_set(opts);
    canonicalize_image(image); // rejects references with no name

    ServiceSpec service;
    service.name = name.empty() ? "service" : name;
    service.image = image;
    const ClassifiedService c = classify_service(service, rules);
    const CanonicalImage canonical = canonicalize_image(image);
    if (format == "json") {
        nlohmann::json out = {{"image", image},
                              {"canonical", canonical.qualified()},
                              {"type", to_string(c.service_type)},
                              {"display_name", display_name(c.service_type)},
                              {"category", to_string(category_of(c.service_type))},
                              {"confidence", to_string(c.confidence)},
                              {"matched_rule", c.matched_rule ? nlohmann::json(c.matched_rule->describe()) : nlohmann::json(nullptr)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << fmt::format("{}\t{}\t{}\t{}\n", canonical.qualified(), to_string(c.service_type),
                                 to_string(c.confidence), c.matched_rule ? c.matched_rule->describe() : "-");
    }
    return kExitOk;
}

int run_stats(const std::string& file_a, const std::string& file_b, const std::string& alternative_name,
              const std::string& format)
{
    const std::vector<double> a = read_sample(file_a);
    const std::vector<double> b = read_sample(file_b);
    const Alternative alternative = *parse_alternative(alternative_name);
    const StatsResult test = mann_whitney_u(a, b, alternative);
    const EffectSize effect = cliffs_delta(a, b);
    const Summary sa = summarize(a);
    const Summary sb = summarize(b);

    auto summary_json = [](const Summary& s) {
        return nlohmann::json{{"n", s.n}, {"min", s.min}, {"q1", s.q1}, {"median", s.median}, {"q3", s.q3}, {"max", s.max}};
    };
    if (format == "json") {
        nlohmann::json out = {{"mann_whitney",
                               {{"u_statistic", test.u_statistic},
                                {"p_value", test.p_value},
                                {"method", to_string(test.method)},
                                {"alternative", to_string(test.alternative)}}},
                              {"cliffs_delta", {{"delta", effect.delta}, {"magnitude", to_string(effect.magnitude)}}},
                              {"summary_a", summary_json(sa)},
                              {"summary_b", summary_json(sb)}};
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << fmt::format("Mann-Whitney U ({}): U = {:g}, p = {:.6g}, method {}\n", to_string(test.alternative),
                             test.u_statistic, test.p_value, to_string(test.method));
    std::cout << fmt::format("Cliff's delta: {:.6f} ({})\n", effect.delta, to_string(effect.magnitude));
    for (const auto& [label, s] : {std::pair{"A", sa}, std::pair{"B", sb}})
        std::cout << fmt::format("{}: n={} min={:g} q1={:g} median={:g} q3={:g} max={:g}\n", label, s.n, s.min, s.q1,
                                 s.median, s.q3, s.max);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Detects service types and orchestration patterns in Docker Compose files"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "Analyze every compose file under a directory");
    add_scan_options(scan, scan_args, true);

    ScanArgs mine_args;
    auto* mine = app.add_subcommand("mine", "Mine frequent service-type itemsets");
    add_scan_options(mine, mine_args, false);

    std::string image;
    std::string service_name;
    std::vector<std::string> classify_rules;
    std::string classify_format = "text";
    auto* classify = app.add_subcommand("classify", "Classify one image reference");
    classify->add_option("image", image, "Image reference, e.g. postgres:13")->required();
    classify->add_option("--name", service_name, "Service name used for Frontend/Backend disambiguation");
    classify->add_option("--rules", classify_rules, "Extra rule table (repeatable)");
    classify->add_option("--format", classify_format)->check(CLI::IsMember({"json", "text"}));

    std::string file_a;
    std::string file_b;
    std::string alternative = "two-sided";
    std::string stats_format = "text";
    auto* stats = app.add_subcommand("stats", "Compare two numeric samples");
    stats->add_option("fileA", file_a, "Newline-delimited numbers")->required();
    stats->add_option("fileB", file_b, "Newline-delimited numbers")->required();
    stats->add_option("--alternative", alternative)
        ->check(CLI::IsMember({"two-sided", "greater", "less"}))
        ->capture_default_str();
    stats->add_option("--format", stats_format)->check(CLI::IsMember({"json", "text"}));

    std::string pattern;
    auto* explain_cmd = app.add_subcommand("explain", "Describe a pattern");
    explain_cmd->add_option("pattern", pattern, "Pattern id, e.g. HTTP_REVERSE_PROXY")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*scan)
            return run_scan(scan_args);
        if (*mine)
            return run_mine(mine_args);
        if (*classify)
            return run_classify(image, service_name, classify_rules, classify_format);
        if (*stats)
            return run_stats(file_a, file_b, alternative, stats_format);
        if (*explain_cmd) {
            std::cout << explain(std::string_view(pattern));
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "compose-patterns: " << e.what() << "\n";
        return e.code() == ErrorCode::RootNotFound ? kExitRootNotFound : kExitUsage;
    }
    return kExitUsage;
}
