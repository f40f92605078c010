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

#include "compose_patterns/compose_merge.hpp"

#include <algorithm>
#include <map>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace fs = std::filesystem;

namespace {

using yaml::Node;

bool is_mapping_like(const Node& n) { return n.is_mapping(); }

Node deep_merge(const Node& base, const Node& overlay, const std::string& path)
{
    if (overlay.is_null())
        return base;
    if (base.is_null())
        return overlay;
    if (base.is_mapping() && overlay.is_mapping()) {
        Node out = base;
        for (const auto& [key, value] : overlay.entries()) {
            if (const Node* existing = out.find(key))
                out.set(key, deep_merge(*existing, value, path + "." + key));
            else
                out.set(key, value);
        }
        return out;
    }
    if (base.is_sequence() && overlay.is_sequence()) {
        Node out = base;
        for (const auto& item : overlay.items())
            out.push_back(item);
        return out;
    }
    if (is_mapping_like(base) != is_mapping_like(overlay))
        throw Error(ErrorCode::OverrideShapeConflict,
                    path + ": cannot merge a " + std::string(yaml::to_string(overlay.kind())) + " over a " +
                        std::string(yaml::to_string(base.kind())));
    return overlay;
}

// Concatenates and deduplicates by `identity`: first position, last value.
template <typename T, typename KeyFn>
std::vector<T> merge_unique(const std::vector<T>& base, const std::vector<T>& overlay, KeyFn identity)
{
    std::vector<T> out;
    std::map<std::string, std::size_t> index;
    auto add = [&](const T& item) {
        const std::string key = identity(item);
        if (auto it = index.find(key); it != index.end()) {
            out[it->second] = item;
        } else {
            index.emplace(key, out.size());
            out.push_back(item);
        }
    };
    for (const auto& item : base)
        add(item);
    for (const auto& item : overlay)
        add(item);
    return out;
}

std::vector<std::string> sorted_union(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string normalize_relative(const std::string& p)
{
    std::string out = fs::path(p).lexically_normal().generic_string();
    while (out.starts_with("./"))
        out.erase(0, 2);
    return out;
}

std::set<std::string> intersect(const std::set<std::string>& a, const std::set<std::string>& b)
{
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

std::set<std::string> difference(const std::set<std::string>& a, const std::set<std::string>& b)
{
    std::set<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

std::string file_key(const std::string& source_path)
{
    return fs::path(source_path).lexically_normal().generic_string();
}

class ExtendsResolver {
public:
    ExtendsResolver(const DocumentLoader& loader, int max_depth) : loader_(loader), max_depth_(max_depth) {}

    ServiceSpec resolve(const ComposeDocument& doc, const std::string& name, int depth)
    {
        const ServiceSpec& spec = doc.services.at(name);
        if (!spec.extends)
            return spec;

        const auto key = std::make_pair(file_key(doc.source_path), name);
        if (std::find(chain_.begin(), chain_.end(), key) != chain_.end())
            throw Error(ErrorCode::ExtendsCycle, "service '" + name + "' in " + key.first + " extends itself");
        if (depth >= max_depth_)
            throw Error(ErrorCode::DepthExceeded, "extends chain from '" + name + "' exceeds depth " +
                                                      std::to_string(max_depth_));
        chain_.push_back(key);

        const ExtendsRef& ref = *spec.extends;
        const ComposeDocument* target = &doc;
        std::string source = "self";
        if (ref.file) {
            const fs::path path = (fs::path(doc.source_path).parent_path() / *ref.file).lexically_normal();
            target = &load(path);
            source = path.generic_string();
        }
        if (!target->services.contains(ref.service))
            throw Error(ErrorCode::ExtendsTargetMissing,
                        "service '" + name + "' extends missing service '" + ref.service + "' in " +
                            (ref.file ? source : doc.source_path));

        const ServiceSpec base = resolve(*target, ref.service, depth + 1);
        ServiceSpec local = spec;
        local.extends.reset();
        ServiceSpec merged = merge_service(base, local);
        merged.name = name;
        merged.extends.reset();

        const auto base_keys = base.key_set();
        const auto local_keys = local.key_set();
        trace_.steps.push_back(MergeStep{MergeKind::Extends, name, source, intersect(local_keys, base_keys),
                                         difference(base_keys, local_keys), local});
        chain_.pop_back();
        return merged;
    }

    MergeTrace take_trace() { return std::move(trace_); }

private:
    const ComposeDocument& load(const fs::path& path)
    {
        const std::string key = path.generic_string();
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        std::optional<ComposeDocument> loaded = loader_ ? loader_(path) : std::nullopt;
        if (!loaded)
            throw Error(ErrorCode::ExtendsFileMissing, "cannot load extends file " + key);
        loaded->source_path = key;
        return cache_.emplace(key, std::move(*loaded)).first->second;
    }

    const DocumentLoader& loader_;
    int max_depth_;
    std::vector<std::pair<std::string, std::string>> chain_;
    std::map<std::string, ComposeDocument> cache_;
    MergeTrace trace_;
};

} // namespace

ServiceSpec merge_service(const ServiceSpec& base, const ServiceSpec& overlay)
{
    ServiceSpec out = base;
    if (out.name.empty())
        out.name = overlay.name;
    if (overlay.image)
        out.image = overlay.image;
    if (overlay.build) {
        std::optional<std::string> dockerfile = overlay.build->dockerfile;
        if (!dockerfile && base.build)
            dockerfile = base.build->dockerfile;
        out.build = BuildContext{overlay.build->context, dockerfile};
    }
    out.ports = merge_unique(base.ports, overlay.ports, [](const PortBinding& p) { return p.identity(); });
    out.volumes = merge_unique(base.volumes, overlay.volumes, [](const VolumeMount& v) { return v.target; });
    for (const auto& [k, v] : overlay.environment)
        out.environment[k] = v;
    out.env_files = merge_unique(base.env_files, overlay.env_files, normalize_relative);
    for (const auto& [k, v] : overlay.labels)
        out.labels[k] = v;
    out.depends_on = sorted_union(base.depends_on, overlay.depends_on);
    for (const auto& [k, v] : overlay.depends_on_conditions)
        out.depends_on_conditions[k] = v;
    out.links = sorted_union(base.links, overlay.links);
    if (overlay.command)
        out.command = overlay.command;
    if (overlay.extends)
        out.extends = overlay.extends;
    if (overlay.deploy)
        out.deploy = base.deploy ? deep_merge(*base.deploy, *overlay.deploy, out.name + ".deploy") : *overlay.deploy;
    if (overlay.hostname)
        out.hostname = overlay.hostname;
    for (const auto& [k, v] : overlay.unknown) {
        if (auto it = out.unknown.find(k); it != out.unknown.end())
            it->second = deep_merge(it->second, v, out.name + "." + k);
        else
            out.unknown.emplace(k, v);
    }
    return out;
}

std::pair<ComposeDocument, MergeTrace> resolve_extends(const ComposeDocument& doc, const DocumentLoader& loader,
                                                       int max_depth)
{
    if (max_depth < 1)
        throw Error(ErrorCode::InvalidArgument, "max_depth must be positive");
    ExtendsResolver resolver(loader, max_depth);
    ComposeDocument out = doc;
    for (const auto& [name, spec] : doc.services)
        if (spec.extends)
            out.services[name] = resolver.resolve(doc, name, 0);
    return {std::move(out), resolver.take_trace()};
}

std::pair<ComposeDocument, MergeTrace> apply_override(const ComposeDocument& base, const ComposeDocument& override_doc)
{
    ComposeDocument out = base;
    MergeTrace trace;
    if (out.source_path.empty())
        out.source_path = override_doc.source_path;

    for (const auto& [name, over] : override_doc.services) {
        auto it = out.services.find(name);
        if (it == out.services.end()) {
            out.services.emplace(name, over);
            trace.steps.push_back(MergeStep{MergeKind::Override, name, override_doc.source_path, {}, {}, over});
            continue;
        }
        const auto base_keys = it->second.key_set();
        const auto over_keys = over.key_set();
        it->second = merge_service(it->second, over);
        trace.steps.push_back(MergeStep{MergeKind::Override, name, override_doc.source_path,
                                        intersect(over_keys, base_keys), difference(base_keys, over_keys), over});
    }
    for (const auto& v : override_doc.named_volumes)
        if (out.named_volumes.insert(v).second)
            trace.added_volumes.insert(v);
    for (const auto& n : override_doc.networks)
        if (out.networks.insert(n).second)
            trace.added_networks.insert(n);

    out.syntax_meta.anchor_count += override_doc.syntax_meta.anchor_count;
    out.syntax_meta.alias_count += override_doc.syntax_meta.alias_count;
    out.syntax_meta.merge_key_count += override_doc.syntax_meta.merge_key_count;
    out.syntax_meta.anchor_names.insert(override_doc.syntax_meta.anchor_names.begin(),
                                        override_doc.syntax_meta.anchor_names.end());
    out.unresolved_variables.insert(override_doc.unresolved_variables.begin(),
                                    override_doc.unresolved_variables.end());
    return {std::move(out), std::move(trace)};
}

ComposeDocument replay_trace(const ComposeDocument& base, const MergeTrace& trace)
{
    ComposeDocument out = base;
    for (const auto& step : trace.steps) {
        if (step.kind != MergeKind::Override)
            continue;
        if (auto it = out.services.find(step.target_service); it != out.services.end())
            it->second = merge_service(it->second, step.overlay);
        else
            out.services.emplace(step.target_service, step.overlay);
    }
    out.named_volumes.insert(trace.added_volumes.begin(), trace.added_volumes.end());
    out.networks.insert(trace.added_networks.begin(), trace.added_networks.end());
    return out;
}

bool is_self_sufficient(const ComposeDocument& doc)
{
    if (doc.services.empty())
        return false;
    return std::all_of(doc.services.begin(), doc.services.end(), [](const auto& entry) {
        const ServiceSpec& s = entry.second;
        return s.image.has_value() || s.build.has_value() || s.extends.has_value();
    });
}

} // namespace compose_patterns
