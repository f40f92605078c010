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

#include "compose_patterns/pattern_engine.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <functional>
#include <map>
#include <regex>
#include <set>

namespace compose_patterns {

namespace {

std::string upper_snake(std::string_view camel)
{
    std::string out;
    for (std::size_t i = 0; i < camel.size(); ++i) {
        const char c = camel[i];
        if (i > 0 && std::isupper(static_cast<unsigned char>(c)) != 0)
            out += '_';
        out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string fold(std::string_view text)
{
    std::string out;
    for (char c : text)
        if (c != '_' && c != '-')
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

using Services = std::vector<const ClassifiedService*>;

Services of_type(const OrchestrationGraph& graph, std::initializer_list<ServiceType> types)
{
    Services out;
    for (const auto& node : graph.nodes)
        if (std::find(types.begin(), types.end(), node.service_type) != types.end())
            out.push_back(&node);
    return out;
}

std::string type_evidence(const ClassifiedService& c)
{
    return "type:" + c.service.name + "=" + std::string(to_string(c.service_type));
}

std::vector<const Edge*> edges_between(const OrchestrationGraph& graph, const std::string& from, const std::string& to,
                                       std::initializer_list<EdgeKind> kinds)
{
    std::vector<const Edge*> out;
    for (const auto& e : graph.edges)
        if (e.from == from && e.to == to && std::find(kinds.begin(), kinds.end(), e.kind) != kinds.end())
            out.push_back(&e);
    return out;
}

bool binds_host_port(const PortBinding& p, int port)
{
    if (!p.host_port)
        return false;
    const int last = p.host_port_end.value_or(*p.host_port);
    return *p.host_port <= port && port <= last;
}

class FindingBuilder {
  public:
    FindingBuilder(PatternId id, const FileAnalysis& analysis)
    {
        finding_.pattern = id;
        finding_.file = analysis.file;
    }

    void add(std::string evidence) { finding_.evidence.push_back(std::move(evidence)); }
    void involve(const std::string& service) { services_.insert(service); }
    void involve(const Services& services)
    {
        for (const auto* s : services) {
            involve(s->service.name);
            add(type_evidence(*s));
        }
    }
    void structural() { finding_.strictness = Strictness::Structural; }

    std::optional<PatternFinding> done()
    {
        if (finding_.evidence.empty())
            return std::nullopt;
        finding_.services_involved.assign(services_.begin(), services_.end());
        std::vector<std::string> unique;
        for (auto& e : finding_.evidence)
            if (std::find(unique.begin(), unique.end(), e) == unique.end())
                unique.push_back(std::move(e));
        finding_.evidence = std::move(unique);
        return finding_;
    }

  private:
    PatternFinding finding_;
    std::set<std::string> services_;
};

std::optional<PatternFinding> auto_generation(const FileAnalysis& a, const RepoContext& ctx)
{
    FindingBuilder f(PatternId::AutoGeneration, a);
    if (a.role.auto_generated)
        f.add("role:auto-generated");
    // Hits look like "<script path>:<line>: <text>"; a script only speaks for
    // compose files in its own directory tree.
    static const std::regex hit_format(R"(^(.*?):(\d+): (.*)$)");
    const std::string base = std::filesystem::path(a.file).filename().string();
    for (const auto& line : ctx.script_hits) {
        std::smatch m;
        std::string text = line;
        if (std::regex_match(line, m, hit_format)) {
            const std::string dir = std::filesystem::path(m[1].str()).parent_path().generic_string();
            if (!dir.empty() && !a.file.starts_with(dir + "/"))
                continue;
            text = m[3].str();
        }
        if (script_generates(text, base))
            f.add("script:" + line);
    }
    f.structural();
    return f.done();
}

std::optional<PatternFinding> yaml_anchor_alias(const FileAnalysis& a, const RepoContext&)
{
    FindingBuilder f(PatternId::YamlAnchorAlias, a);
    const SyntaxMeta& meta = a.document.syntax_meta;
    if (meta.alias_count == 0)
        return std::nullopt;
    f.add("syntax:alias_count=" + std::to_string(meta.alias_count));
    if (meta.merge_key_count > 0)
        f.add("syntax:merge_key_count=" + std::to_string(meta.merge_key_count));
    f.structural();
    return f.done();
}

std::optional<PatternFinding> service_inheritance(const FileAnalysis& a, const RepoContext&)
{
    FindingBuilder f(PatternId::ServiceInheritance, a);
    for (const auto& step : a.extends_trace.steps) {
        if (step.kind != MergeKind::Extends)
            continue;
        f.involve(step.target_service);
        f.add("extends:" + step.target_service + "|" + step.source);
    }
    f.structural();
    return f.done();
}

std::optional<PatternFinding> override_use_case(const FileAnalysis& a, const RepoContext& ctx)
{
    FindingBuilder f(PatternId::OverrideUseCase, a);
    if (a.role.role == FileRole::OverrideCandidate)
        f.add("role:OverrideCandidate");
    std::vector<std::string> paths;
    for (const auto& [path, role] : ctx.compose_files)
        paths.push_back(path);
    for (const auto& [base, over] : find_override_pairs(paths))
        if (a.file == base || a.file == over)
            f.add("pair:" + base + "|" + over);
    f.structural();
    return f.done();
}

std::optional<PatternFinding> certificate_mapping(const FileAnalysis& a, const RepoContext&)
{
    const auto certs = of_type(a.graph, {ServiceType::Certificate});
    if (certs.empty())
        return std::nullopt;
    const auto proxies = of_type(a.graph, {ServiceType::ReverseProxy});
    const auto partners = of_type(a.graph, {ServiceType::ReverseProxy, ServiceType::Frontend, ServiceType::Backend});

    FindingBuilder f(PatternId::CertificateGenerationMapping, a);
    f.involve(certs);
    bool structural = false;
    for (const auto* c : certs) {
        for (const auto* p : partners) {
            auto shared = edges_between(a.graph, c->service.name, p->service.name, {EdgeKind::SharedVolume});
            auto back = edges_between(a.graph, p->service.name, c->service.name, {EdgeKind::SharedVolume});
            shared.insert(shared.end(), back.begin(), back.end());
            for (const Edge* e : shared) {
                structural = true;
                f.involve(p->service.name);
                f.add(type_evidence(*p));
                f.add(edge_evidence(*e));
            }
        }
    }
    if (structural) {
        f.structural();
        return f.done();
    }
    if (proxies.empty())
        return std::nullopt;
    f.involve(proxies);
    return f.done();
}

std::optional<PatternFinding> container_management(const FileAnalysis& a, const RepoContext&)
{
    const auto managers = of_type(a.graph, {ServiceType::ContainerManagement});
    if (managers.empty())
        return std::nullopt;
    FindingBuilder f(PatternId::ContainerManagement, a);
    f.involve(managers);
    for (const auto* m : managers)
        for (const auto& v : m->service.volumes)
            if (v.source && v.source->ends_with("docker.sock"))
                f.add("mount:" + m->service.name + ":" + v.target);
    return f.done();
}

// Type co-occurrence, upgraded to Structural by edges from `left` to `right`.
std::optional<PatternFinding> pair_with_database(PatternId id, ServiceType left_type, const FileAnalysis& a,
                                                 std::initializer_list<EdgeKind> kinds)
{
    const auto left = of_type(a.graph, {left_type});
    const auto dbs = of_type(a.graph, {ServiceType::Database});
    if (left.empty() || dbs.empty())
        return std::nullopt;
    FindingBuilder f(id, a);
    f.involve(left);
    f.involve(dbs);
    for (const auto* l : left)
        for (const auto* d : dbs)
            for (const Edge* e : edges_between(a.graph, l->service.name, d->service.name, kinds)) {
                f.add(edge_evidence(*e));
                f.structural();
            }
    return f.done();
}

std::optional<PatternFinding> labels_configure_proxy(const FileAnalysis& a, const RepoContext&)
{
    FindingBuilder f(PatternId::LabelsConfigureReverseProxy, a);
    for (const auto& e : a.graph.edges) {
        if (e.kind != EdgeKind::LabelProxyConfig)
            continue;
        f.add(edge_evidence(e));
        f.involve(e.from);
        if (a.graph.node(e.to))
            f.involve(e.to);
    }
    f.structural();
    return f.done();
}

std::optional<PatternFinding> mail_service_testing(const FileAnalysis& a, const RepoContext&)
{
    const auto mail = of_type(a.graph, {ServiceType::Mail});
    if (mail.empty())
        return std::nullopt;
    FindingBuilder f(PatternId::MailServiceTesting, a);
    f.involve(mail);
    const bool test_oriented = std::any_of(mail.begin(), mail.end(), [](const ClassifiedService* m) {
        return m->service.image && is_test_mail_image(*m->service.image);
    });
    f.add(test_oriented ? "flag:test-oriented" : "flag:general-mail");
    return f.done();
}

void storage_evidence(FindingBuilder& f, const Services& services)
{
    for (const auto* s : services) {
        for (const auto& v : s->service.volumes)
            f.add("mount:" + s->service.name + ":" + v.target);
        for (const auto& p : s->service.ports)
            if (p.host_port)
                f.add("port:" + s->service.name + ":" + std::to_string(*p.host_port));
    }
}

std::optional<PatternFinding> app_with_database(PatternId id, const FileAnalysis& a)
{
    const bool with_cache = id == PatternId::AppWithDatabaseAndCaching;
    const auto apps = of_type(a.graph, {ServiceType::Frontend, ServiceType::Backend});
    const auto dbs = of_type(a.graph, {ServiceType::Database});
    const auto caches = of_type(a.graph, {ServiceType::Caching});
    if (apps.empty() || dbs.empty())
        return std::nullopt;
    if (with_cache == caches.empty())
        return std::nullopt;

    FindingBuilder f(id, a);
    f.involve(apps);
    f.involve(dbs);
    if (with_cache)
        f.involve(caches);
    else
        f.add("absent:Caching");

    const auto targets = with_cache ? [&] {
        Services all = dbs;
        all.insert(all.end(), caches.begin(), caches.end());
        return all;
    }() : dbs;
    for (const auto* app : apps)
        for (const auto* t : targets)
            for (const Edge* e : edges_between(a.graph, app->service.name, t->service.name,
                                               {EdgeKind::DependsOn, EdgeKind::Link, EdgeKind::EnvReference})) {
                f.add(edge_evidence(*e));
                f.structural();
            }
    storage_evidence(f, targets);
    return f.done();
}

std::optional<PatternFinding> http_reverse_proxy(const FileAnalysis& a, const RepoContext&)
{
    const auto proxies = of_type(a.graph, {ServiceType::ReverseProxy});
    if (proxies.empty())
        return std::nullopt;
    FindingBuilder f(PatternId::HttpReverseProxy, a);
    f.involve(proxies);
    for (const auto* p : proxies)
        for (const auto& port : p->service.ports)
            for (int web_port : {80, 443})
                if (binds_host_port(port, web_port)) {
                    f.add("port:" + p->service.name + ":" + std::to_string(web_port));
                    f.structural();
                }
    return f.done();
}

std::optional<PatternFinding> duplicate_service_reuse(const FileAnalysis& a, const RepoContext&)
{
    FindingBuilder f(PatternId::DuplicateServiceReuse, a);
    bool any = false;
    for (const auto& e : a.graph.edges) {
        if (e.kind != EdgeKind::DuplicateImage)
            continue;
        any = true;
        f.add(edge_evidence(e));
        f.involve(e.from);
        f.involve(e.to);
    }
    if (!any)
        return std::nullopt;
    if (a.document.syntax_meta.alias_count > 0)
        f.add("syntax:alias_count=" + std::to_string(a.document.syntax_meta.alias_count));
    for (const auto& step : a.extends_trace.steps)
        if (step.kind == MergeKind::Extends)
            f.add("extends:" + step.target_service + "|" + step.source);
    f.structural();
    return f.done();
}

} // namespace

std::string_view to_string(PatternId id)
{
    switch (id) {
    case PatternId::AutoGeneration: return "AutoGeneration";
    case PatternId::YamlAnchorAlias: return "YamlAnchorAlias";
    case PatternId::ServiceInheritance: return "ServiceInheritance";
    case PatternId::OverrideUseCase: return "OverrideUseCase";
    case PatternId::CertificateGenerationMapping: return "CertificateGenerationMapping";
    case PatternId::ContainerManagement: return "ContainerManagement";
    case PatternId::DatabaseInitWithDatabase: return "DatabaseInitWithDatabase";
    case PatternId::DatabaseAdminWithDatabase: return "DatabaseAdminWithDatabase";
    case PatternId::LabelsConfigureReverseProxy: return "LabelsConfigureReverseProxy";
    case PatternId::MailServiceTesting: return "MailServiceTesting";
    case PatternId::AppWithDatabase: return "AppWithDatabase";
    case PatternId::AppWithDatabaseAndCaching: return "AppWithDatabaseAndCaching";
    case PatternId::HttpReverseProxy: return "HttpReverseProxy";
    case PatternId::DuplicateServiceReuse: return "DuplicateServiceReuse";
    }
    return "AutoGeneration";
}

std::string pattern_code(PatternId id)
{
    return upper_snake(to_string(id));
}

std::optional<PatternId> parse_pattern_id(std::string_view text)
{
    const std::string wanted = fold(text);
    for (PatternId id : kAllPatterns)
        if (fold(to_string(id)) == wanted)
            return id;
    return std::nullopt;
}

std::string_view to_string(Strictness strictness)
{
    return strictness == Strictness::Structural ? "Structural" : "CoOccurrence";
}

std::optional<Strictness> parse_strictness(std::string_view text)
{
    if (text == "Structural")
        return Strictness::Structural;
    if (text == "CoOccurrence")
        return Strictness::CoOccurrence;
    return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> find_override_pairs(const std::vector<std::string>& paths)
{
    static const std::regex override_name(R"((.*)\.override\.(ya?ml))", std::regex::icase);
    std::set<std::string> present(paths.begin(), paths.end());
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& path : paths) {
        const std::filesystem::path p(path);
        const std::string name = p.filename().string();
        std::smatch m;
        if (!std::regex_match(name, m, override_name))
            continue;
        for (const char* ext : {"yml", "yaml", "YML", "YAML"}) {
            const std::string base = (p.parent_path() / (m[1].str() + "." + ext)).generic_string();
            if (present.contains(base)) {
                pairs.emplace_back(base, path);
                break;
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

bool script_generates(std::string_view line, std::string_view compose_file)
{
    if (compose_file.empty() || line.find(compose_file) == std::string_view::npos)
        return false;
    static const std::regex generator(
        R"((>|\btee\b|(^|\s)-o\s|--output|\benvsubst\b|\bkompose\b|\bgomplate\b|\bj2\b|\bjinja|\bytt\b|\bmustache\b))");
    return std::regex_search(std::string(line), generator);
}

std::string edge_evidence(const Edge& edge)
{
    return "edge:" + std::string(to_string(edge.kind)) + ":" + edge.from + "->" + edge.to + "|" + edge.attribute;
}

std::optional<PatternFinding> detect(PatternId id, const FileAnalysis& analysis, const RepoContext& ctx)
{
    switch (id) {
    case PatternId::AutoGeneration: return auto_generation(analysis, ctx);
    case PatternId::YamlAnchorAlias: return yaml_anchor_alias(analysis, ctx);
    case PatternId::ServiceInheritance: return service_inheritance(analysis, ctx);
    case PatternId::OverrideUseCase: return override_use_case(analysis, ctx);
    case PatternId::CertificateGenerationMapping: return certificate_mapping(analysis, ctx);
    case PatternId::ContainerManagement: return container_management(analysis, ctx);
    case PatternId::DatabaseInitWithDatabase:
        return pair_with_database(id, ServiceType::DatabaseInit, analysis, {EdgeKind::EnvReference});
    case PatternId::DatabaseAdminWithDatabase:
        return pair_with_database(id, ServiceType::DatabaseAdministration, analysis,
                                  {EdgeKind::DependsOn, EdgeKind::Link, EdgeKind::EnvReference});
    case PatternId::LabelsConfigureReverseProxy: return labels_configure_proxy(analysis, ctx);
    case PatternId::MailServiceTesting: return mail_service_testing(analysis, ctx);
    case PatternId::AppWithDatabase:
    case PatternId::AppWithDatabaseAndCaching: return app_with_database(id, analysis);
    case PatternId::HttpReverseProxy: return http_reverse_proxy(analysis, ctx);
    case PatternId::DuplicateServiceReuse: return duplicate_service_reuse(analysis, ctx);
    }
    return std::nullopt;
}

std::vector<PatternFinding> detect_all(const FileAnalysis& analysis, const RepoContext& ctx)
{
    std::vector<PatternFinding> out;
    for (PatternId id : kAllPatterns)
        if (auto finding = detect(id, analysis, ctx))
            out.push_back(std::move(*finding));
    std::sort(out.begin(), out.end(), [](const PatternFinding& a, const PatternFinding& b) {
        const std::string none;
        const auto& fa = a.services_involved.empty() ? none : a.services_involved.front();
        const auto& fb = b.services_involved.empty() ? none : b.services_involved.front();
        return std::tie(a.pattern, a.file, fa) < std::tie(b.pattern, b.file, fb);
    });
    return out;
}

} // namespace compose_patterns
