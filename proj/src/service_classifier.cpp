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

#include "compose_patterns/service_classifier.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace detail {
extern const std::string_view kDefaultRuleTable;
}

namespace {

std::string lower(std::string_view text)
{
    std::string out(text);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::optional<MatchKind> parse_match_kind(std::string_view text)
{
    const std::string folded = lower(text);
    if (folded == "exact")
        return MatchKind::Exact;
    if (folded == "prefix")
        return MatchKind::Prefix;
    if (folded == "regex")
        return MatchKind::Regex;
    return std::nullopt;
}

bool search(const char* pattern, const std::string& text)
{
    return std::regex_search(text, std::regex(pattern));
}

} // namespace

std::string_view to_string(MatchKind kind)
{
    switch (kind) {
    case MatchKind::Exact: return "exact";
    case MatchKind::Prefix: return "prefix";
    case MatchKind::Regex: return "regex";
    }
    return "exact";
}

std::string CanonicalImage::qualified() const
{
    return namespace_name.empty() ? name : namespace_name + "/" + name;
}

CanonicalImage canonicalize_image(std::string_view image_ref)
{
    std::string ref = lower(trim(image_ref));
    if (const auto at = ref.find('@'); at != std::string::npos)
        ref.resize(at);

    std::vector<std::string> parts;
    for (std::string_view part : split(ref, '/'))
        if (!part.empty())
            parts.emplace_back(part);

    if (parts.size() > 1) {
        const std::string& head = parts.front();
        if (head.find('.') != std::string::npos || head.find(':') != std::string::npos || head == "localhost")
            parts.erase(parts.begin());
    }
    if (!parts.empty()) {
        std::string& last = parts.back();
        if (const auto colon = last.find(':'); colon != std::string::npos)
            last.resize(colon);
    }
    if (parts.size() == 2 && parts.front() == "library")
        parts.erase(parts.begin());

    if (parts.empty() || parts.back().empty())
        throw Error(ErrorCode::InvalidImageRef, "image reference '" + std::string(image_ref) + "' has no name");

    CanonicalImage out;
    out.name = parts.back();
    if (parts.size() > 1)
        out.namespace_name = parts[parts.size() - 2];
    return out;
}

bool ClassificationRule::matches(const CanonicalImage& image) const
{
    const std::string full = image.qualified();
    switch (match_kind) {
    case MatchKind::Exact:
        return image.name == pattern || full == pattern;
    case MatchKind::Prefix:
        return image.name.starts_with(pattern) || full.starts_with(pattern);
    case MatchKind::Regex:
        if (!compiled)
            return false;
        return std::regex_match(image.name, *compiled) || std::regex_match(full, *compiled);
    }
    return false;
}

std::string ClassificationRule::describe() const
{
    std::string out(to_string(match_kind));
    out += ':' + pattern + "->";
    out += application ? std::string("Application") : std::string(to_string(target));
    out += '@' + std::to_string(priority);
    return out;
}

ClassificationRule make_rule(MatchKind kind, std::string pattern, ServiceType target, int priority, bool application)
{
    ClassificationRule rule;
    rule.match_kind = kind;
    rule.pattern = lower(pattern);
    rule.target = application ? ServiceType::Frontend : target;
    rule.priority = priority;
    rule.application = application;
    if (rule.pattern.empty())
        throw Error(ErrorCode::RuleTableError, "empty rule pattern");
    if (kind == MatchKind::Regex) {
        try {
            rule.compiled = std::make_shared<const std::regex>(rule.pattern);
        } catch (const std::regex_error& e) {
            throw Error(ErrorCode::RuleTableError, "regex '" + rule.pattern + "' does not compile: " + e.what());
        }
    }
    return rule;
}

std::vector<ClassificationRule> parse_rule_table(std::string_view text, std::string_view origin)
{
    std::vector<ClassificationRule> rules;
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        const std::string_view content = trim(line);
        if (content.empty() || content.front() == '#')
            continue;

        auto fields = split(content, '\t');
        if (fields.size() != 4)
            throw Error(ErrorCode::RuleTableError,
                        where + ": expected 4 tab-separated fields, found " + std::to_string(fields.size()));
        for (auto& f : fields)
            f = trim(f);

        const auto kind = parse_match_kind(fields[0]);
        if (!kind)
            throw Error(ErrorCode::RuleTableError, where + ": unknown match kind '" + std::string(fields[0]) + "'");

        bool application = lower(fields[2]) == "application";
        ServiceType target = ServiceType::Frontend;
        if (!application) {
            const auto parsed = parse_service_type(fields[2]);
            if (!parsed || *parsed == ServiceType::Unclassified)
                throw Error(ErrorCode::RuleTableError, where + ": unknown service type '" + std::string(fields[2]) + "'");
            target = *parsed;
        }

        int priority = 0;
        const auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), priority);
        if (ec != std::errc() || ptr != fields[3].data() + fields[3].size())
            throw Error(ErrorCode::RuleTableError, where + ": priority '" + std::string(fields[3]) + "' is not an integer");

        try {
            ClassificationRule rule = make_rule(*kind, std::string(fields[1]), target, priority, application);
            rule.origin = where;
            rules.push_back(std::move(rule));
        } catch (const Error& e) {
            throw Error(ErrorCode::RuleTableError, where + ": " + e.what());
        }
    }
    return rules;
}

std::vector<ClassificationRule> load_rule_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::RuleTableError, "cannot read rule table " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_rule_table(buffer.str(), path);
}

const std::vector<ClassificationRule>& default_rules()
{
    static const std::vector<ClassificationRule> rules = parse_rule_table(detail::kDefaultRuleTable, "default_rules.tsv");
    return rules;
}

bool rule_precedes(const ClassificationRule& a, const ClassificationRule& b)
{
    return std::tie(a.priority, a.pattern, a.match_kind, a.target, a.application) <
           std::tie(b.priority, b.pattern, b.match_kind, b.target, b.application);
}

RuleSet::RuleSet(std::vector<ClassificationRule> rules) : rules_(std::move(rules))
{
    std::stable_sort(rules_.begin(), rules_.end(), rule_precedes);
}

const ClassificationRule* RuleSet::first_match(const CanonicalImage& image) const
{
    for (const auto& rule : rules_)
        if (rule.matches(image))
            return &rule;
    return nullptr;
}

ImageClassification classify_image(std::string_view image_ref, const RuleSet& rules)
{
    if (trim(image_ref).empty())
        throw Error(ErrorCode::InvalidImageRef, "empty image reference");
    const CanonicalImage image = canonicalize_image(image_ref);
    ImageClassification out;
    if (const ClassificationRule* rule = rules.first_match(image)) {
        out.type = rule->target;
        out.rule = *rule;
    }
    return out;
}

ImageClassification classify_image(std::string_view image_ref, const std::vector<ClassificationRule>& rules)
{
    return classify_image(image_ref, RuleSet(rules));
}

std::string_view to_string(Confidence confidence)
{
    switch (confidence) {
    case Confidence::RuleMatch: return "RuleMatch";
    case Confidence::NameHeuristic: return "NameHeuristic";
    case Confidence::DockerfileBase: return "DockerfileBase";
    case Confidence::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::optional<Confidence> parse_confidence(std::string_view text)
{
    for (Confidence c : {Confidence::RuleMatch, Confidence::NameHeuristic, Confidence::DockerfileBase, Confidence::Unknown})
        if (to_string(c) == text)
            return c;
    return std::nullopt;
}

ServiceType application_type_for(std::string_view service_name)
{
    return search("api|backend|server|worker", lower(service_name)) ? ServiceType::Backend : ServiceType::Frontend;
}

std::optional<ServiceType> type_from_service_name(std::string_view service_name)
{
    static const std::vector<std::pair<std::regex, ServiceType>> heuristics = [] {
        std::vector<std::pair<std::regex, ServiceType>> table;
        table.emplace_back("migrat|seed|(db|database|sql)[-_]?(init|setup)|init[-_]?(db|database)|flyway|liquibase",
                           ServiceType::DatabaseInit);
        table.emplace_back("cron", ServiceType::Cron);
        table.emplace_back("scheduler|celery[-_]?beat", ServiceType::JobScheduling);
        table.emplace_back("(^|[-_])(zip|unzip|compress)", ServiceType::Zipping);
        table.emplace_back("(^|[-_])(setup|install|bootstrap|init)($|[-_])", ServiceType::Setup);
        table.emplace_back("^(db|database|postgres|postgresql|mysql|mariadb|mongo|mongodb)$", ServiceType::Database);
        table.emplace_back("^(redis|cache|memcached)$", ServiceType::Caching);
        table.emplace_back("^(proxy|reverse[-_]?proxy|nginx|traefik|caddy)$", ServiceType::ReverseProxy);
        return table;
    }();
    const std::string name = lower(service_name);
    for (const auto& [pattern, type] : heuristics)
        if (std::regex_search(name, pattern))
            return type;
    return std::nullopt;
}

ClassifiedService classify_service(const ServiceSpec& service, const RuleSet& rules,
                                   const std::optional<std::string>& dockerfile_base)
{
    ClassifiedService out;
    out.service = service;

    auto try_ref = [&](const std::optional<std::string>& ref, Confidence grade) {
        if (!ref)
            return false;
        ImageClassification hit;
        try {
            hit = classify_image(*ref, rules);
        } catch (const Error&) {
            return false;
        }
        if (!hit.rule)
            return false;
        out.service_type = hit.rule->application ? application_type_for(service.name) : hit.type;
        out.confidence = grade;
        out.matched_rule = hit.rule;
        return true;
    };

    if (try_ref(service.image, Confidence::RuleMatch) || try_ref(dockerfile_base, Confidence::DockerfileBase))
        return out;

    if (const auto by_name = type_from_service_name(service.name)) {
        out.service_type = *by_name;
        out.confidence = Confidence::NameHeuristic;
        return out;
    }
    if (service.build) {
        out.service_type = application_type_for(service.name);
        out.confidence = Confidence::NameHeuristic;
        return out;
    }
    return out;
}

std::vector<ClassifiedService> classify_document(const ComposeDocument& doc, const RuleSet& rules)
{
    std::vector<ClassifiedService> out;
    out.reserve(doc.services.size());
    for (const auto& [name, spec] : doc.services)
        out.push_back(classify_service(spec, rules));
    return out;
}

bool is_test_mail_image(std::string_view image_ref)
{
    static const std::vector<std::string> names = {"mailhog", "smtp4dev", "mailcatcher", "mailpit", "maildev"};
    try {
        const CanonicalImage image = canonicalize_image(image_ref);
        return std::find(names.begin(), names.end(), image.name) != names.end();
    } catch (const Error&) {
        return false;
    }
}

std::map<ServiceType, std::size_t> type_histogram(const std::vector<std::vector<ClassifiedService>>& files)
{
    std::map<ServiceType, std::size_t> counts;
    for (const auto& file : files)
        for (const auto& service : file)
            ++counts[service.service_type];
    return counts;
}

} // namespace compose_patterns
