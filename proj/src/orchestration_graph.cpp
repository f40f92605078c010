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

#include "compose_patterns/orchestration_graph.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <regex>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace {

bool is_token_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

std::string bind_identity(const std::string& source)
{
    if (source.starts_with("~"))
        return source;
    std::string normal = std::filesystem::path(source).lexically_normal().generic_string();
    while (normal.size() > 1 && normal.ends_with('/'))
        normal.pop_back();
    if (!normal.starts_with("/") && !normal.starts_with(".."))
        normal = normal == "." ? "." : "./" + normal;
    return normal;
}

void add_pairwise(std::vector<Edge>& out, const std::set<std::string>& members, EdgeKind kind, const std::string& attribute)
{
    for (auto a = members.begin(); a != members.end(); ++a)
        for (auto b = std::next(a); b != members.end(); ++b)
            out.push_back({*a, *b, kind, attribute});
}

void sort_unique(std::vector<Edge>& edges)
{
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::string lower(std::string_view text)
{
    std::string out(text);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Label or environment prefixes that reverse proxies read, with the keyword
// used to pick the matching proxy.
struct ProxyPrefix {
    std::string_view prefix;
    std::string_view keyword;
    bool environment;
};

constexpr ProxyPrefix kProxyPrefixes[] = {
    {"traefik.", "traefik", false},
    {"caddy", "caddy", false},
    {"VIRTUAL_HOST", "nginx", true},
};

bool label_has_prefix(const std::string& key, const ProxyPrefix& p)
{
    if (p.prefix == "caddy")
        return key == "caddy" || key.starts_with("caddy.") || key.starts_with("caddy_");
    return key.starts_with(p.prefix);
}

const std::regex& cluster_key_pattern()
{
    static const std::regex pattern(
        "cluster|peers?($|_)|seeds?($|_)|members($|_)|join|replica_?set|seed_hosts|initial_master_nodes",
        std::regex::icase);
    return pattern;
}

} // namespace

std::string_view to_string(EdgeKind kind)
{
    switch (kind) {
    case EdgeKind::DependsOn: return "DependsOn";
    case EdgeKind::Link: return "Link";
    case EdgeKind::EnvReference: return "EnvReference";
    case EdgeKind::SharedVolume: return "SharedVolume";
    case EdgeKind::SharedEnvFile: return "SharedEnvFile";
    case EdgeKind::LabelProxyConfig: return "LabelProxyConfig";
    case EdgeKind::DuplicateImage: return "DuplicateImage";
    }
    return "DependsOn";
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text)
{
    for (EdgeKind k : {EdgeKind::DependsOn, EdgeKind::Link, EdgeKind::EnvReference, EdgeKind::SharedVolume,
                       EdgeKind::SharedEnvFile, EdgeKind::LabelProxyConfig, EdgeKind::DuplicateImage})
        if (to_string(k) == text)
            return k;
    return std::nullopt;
}

const ClassifiedService* OrchestrationGraph::node(std::string_view name) const
{
    for (const auto& n : nodes)
        if (n.service.name == name)
            return &n;
    return nullptr;
}

bool OrchestrationGraph::has_edge(const Edge& edge) const
{
    return std::binary_search(edges.begin(), edges.end(), edge);
}

bool mentions_token(std::string_view value, std::string_view name)
{
    if (name.empty())
        return false;
    for (auto pos = value.find(name); pos != std::string_view::npos; pos = value.find(name, pos + 1)) {
        const bool left = pos == 0 || !is_token_char(value[pos - 1]);
        const auto end = pos + name.size();
        const bool right = end == value.size() || !is_token_char(value[end]);
        if (left && right)
            return true;
    }
    return false;
}

std::string normalize_relative_path(std::string_view path)
{
    std::string normal = std::filesystem::path(std::string(path)).lexically_normal().generic_string();
    while (normal.starts_with("./"))
        normal.erase(0, 2);
    while (normal.size() > 1 && normal.ends_with('/'))
        normal.pop_back();
    return normal;
}

std::vector<Edge> detect_env_references(const ComposeDocument& doc)
{
    std::vector<Edge> out;
    for (const auto& [source, spec] : doc.services) {
        for (const auto& [key, value] : spec.environment) {
            for (const auto& [target, other] : doc.services) {
                if (target == source)
                    continue;
                bool hit = mentions_token(value, target);
                if (!hit && other.hostname)
                    hit = mentions_token(value, *other.hostname);
                if (!hit) {
                    if (auto it = other.unknown.find("container_name");
                        it != other.unknown.end() && it->second.kind() == yaml::Node::Kind::Scalar)
                        hit = mentions_token(value, it->second.text());
                }
                if (hit)
                    out.push_back({source, target, EdgeKind::EnvReference, key});
            }
        }
    }
    sort_unique(out);
    return out;
}

std::vector<Edge> detect_shared_volumes(const ComposeDocument& doc)
{
    // (is_bind, identity) -> services
    std::map<std::pair<bool, std::string>, std::set<std::string>> users;
    for (const auto& [name, spec] : doc.services) {
        for (const auto& mount : spec.volumes) {
            if (!mount.source || mount.source->empty())
                continue;
            if (mount.kind == VolumeKind::Named)
                users[{false, *mount.source}].insert(name);
            else if (mount.kind == VolumeKind::Bind)
                users[{true, bind_identity(*mount.source)}].insert(name);
        }
    }
    std::vector<Edge> out;
    for (const auto& [key, members] : users)
        add_pairwise(out, members, EdgeKind::SharedVolume, key.second);
    sort_unique(out);
    return out;
}

std::vector<Edge> detect_shared_env_files(const ComposeDocument& doc)
{
    std::map<std::string, std::set<std::string>> users;
    for (const auto& [name, spec] : doc.services)
        for (const auto& file : spec.env_files)
            users[normalize_relative_path(file)].insert(name);
    std::vector<Edge> out;
    for (const auto& [file, members] : users)
        add_pairwise(out, members, EdgeKind::SharedEnvFile, file);
    sort_unique(out);
    return out;
}

std::vector<Edge> detect_label_proxy_config(const ComposeDocument& doc, const std::vector<ClassifiedService>& classified,
                                            std::set<std::string>* synthetic)
{
    std::vector<const ClassifiedService*> proxies;
    for (const auto& c : classified)
        if (c.service_type == ServiceType::ReverseProxy)
            proxies.push_back(&c);

    std::vector<Edge> out;
    for (const auto& [name, spec] : doc.services) {
        for (const auto& p : kProxyPrefixes) {
            bool uses = false;
            if (p.environment)
                uses = spec.environment.contains(std::string(p.prefix));
            else
                uses = std::any_of(spec.labels.begin(), spec.labels.end(),
                                   [&](const auto& kv) { return label_has_prefix(kv.first, p); });
            if (!uses)
                continue;

            std::vector<std::string> candidates;
            std::vector<std::string> preferred;
            for (const ClassifiedService* proxy : proxies) {
                if (proxy->service.name == name)
                    continue;
                candidates.push_back(proxy->service.name);
                const std::string haystack = lower(proxy->service.name + " " + proxy->service.image.value_or(""));
                if (haystack.find(p.keyword) != std::string::npos)
                    preferred.push_back(proxy->service.name);
            }
            const bool self_is_proxy = std::any_of(proxies.begin(), proxies.end(),
                                                   [&](const ClassifiedService* c) { return c->service.name == name; });
            const auto& targets = preferred.empty() ? candidates : preferred;
            if (targets.empty()) {
                if (self_is_proxy)
                    continue;
                out.push_back({name, std::string(kExternalProxyNode), EdgeKind::LabelProxyConfig, std::string(p.prefix)});
                if (synthetic)
                    synthetic->insert(std::string(kExternalProxyNode));
                continue;
            }
            for (const auto& target : targets)
                out.push_back({name, target, EdgeKind::LabelProxyConfig, std::string(p.prefix)});
        }
    }
    sort_unique(out);
    return out;
}

std::vector<Edge> detect_duplicate_images(const ComposeDocument& doc)
{
    std::map<std::string, std::set<std::string>> groups;
    for (const auto& [name, spec] : doc.services) {
        if (spec.image)
            groups["image:" + *spec.image].insert(name);
        else if (spec.build)
            groups["build:" + normalize_relative_path(spec.build->context) + "|" + spec.build->dockerfile.value_or("Dockerfile")]
                .insert(name);
    }
    std::vector<Edge> out;
    for (const auto& [key, members] : groups) {
        for (auto a = members.begin(); a != members.end(); ++a) {
            for (auto b = std::next(a); b != members.end(); ++b) {
                const ServiceSpec& x = doc.services.at(*a);
                const ServiceSpec& y = doc.services.at(*b);
                std::string attribute = "same-command";
                if (x.command != y.command)
                    attribute = "different-commands";
                else if (x.environment != y.environment)
                    attribute = "different-env";
                out.push_back({*a, *b, EdgeKind::DuplicateImage, attribute});
            }
        }
    }
    sort_unique(out);
    return out;
}

OrchestrationGraph build_graph(const ComposeDocument& doc, const std::vector<ClassifiedService>& classified)
{
    std::set<std::string> covered;
    for (const auto& c : classified)
        covered.insert(c.service.name);
    std::set<std::string> expected;
    for (const auto& [name, spec] : doc.services)
        expected.insert(name);
    if (covered != expected || classified.size() != doc.services.size())
        throw Error(ErrorCode::InvalidArgument, "classified services do not match the document's services");

    OrchestrationGraph graph;
    graph.nodes = classified;
    std::sort(graph.nodes.begin(), graph.nodes.end(),
              [](const ClassifiedService& a, const ClassifiedService& b) { return a.service.name < b.service.name; });

    for (const auto& [name, spec] : doc.services) {
        for (const auto& target : spec.depends_on) {
            if (!doc.services.contains(target)) {
                graph.findings.push_back({"DanglingReference", name, target, "depends_on"});
                continue;
            }
            auto cond = spec.depends_on_conditions.find(target);
            graph.edges.push_back({name, target, EdgeKind::DependsOn,
                                   cond == spec.depends_on_conditions.end() ? "service_started" : cond->second});
        }
        for (const auto& target : spec.links) {
            if (!doc.services.contains(target)) {
                graph.findings.push_back({"DanglingReference", name, target, "links"});
                continue;
            }
            graph.edges.push_back({name, target, EdgeKind::Link, ""});
        }
        if (spec.deploy)
            graph.swarm_instructions = true;
        for (const auto& [key, value] : spec.environment)
            if (std::regex_search(key, cluster_key_pattern()))
                graph.cluster_env_vars.push_back(name + "." + key);
    }

    for (auto&& part : {detect_env_references(doc), detect_shared_volumes(doc), detect_shared_env_files(doc),
                        detect_label_proxy_config(doc, classified, &graph.synthetic_nodes),
                        detect_duplicate_images(doc)})
        graph.edges.insert(graph.edges.end(), part.begin(), part.end());

    sort_unique(graph.edges);
    std::sort(graph.findings.begin(), graph.findings.end());
    std::sort(graph.cluster_env_vars.begin(), graph.cluster_env_vars.end());
    return graph;
}

} // namespace compose_patterns
