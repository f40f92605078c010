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

#include "compose_patterns/compose_model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace {

using yaml::Node;
using json = nlohmann::json;

constexpr std::array kKnownServiceKeys = {
    "annotations", "attach", "blkio_config", "build", "cap_add", "cap_drop", "cgroup", "cgroup_parent",
    "command", "configs", "container_name", "cpu_count", "cpu_percent", "cpu_period", "cpu_quota",
    "cpu_rt_period", "cpu_rt_runtime", "cpu_shares", "cpus", "cpuset", "credential_spec", "depends_on",
    "deploy", "develop", "device_cgroup_rules", "devices", "dns", "dns_opt", "dns_search", "domainname",
    "entrypoint", "env_file", "environment", "expose", "extends", "external_links", "extra_hosts",
    "group_add", "healthcheck", "hostname", "image", "init", "ipc", "isolation", "labels", "links",
    "logging", "mac_address", "mem_limit", "mem_reservation", "mem_swappiness", "memswap_limit",
    "network_mode", "networks", "oom_kill_disable", "oom_score_adj", "pid", "pids_limit", "platform",
    "ports", "privileged", "profiles", "pull_policy", "read_only", "restart", "runtime", "scale",
    "secrets", "security_opt", "shm_size", "stdin_open", "stop_grace_period", "stop_signal", "storage_opt",
    "sysctls", "tmpfs", "tty", "ulimits", "user", "userns_mode", "uts", "volumes", "volumes_from",
    "working_dir",
};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void invalid_service(const std::string& service, const std::string& what)
{
    throw Error(ErrorCode::InvalidServiceSpec, "service '" + service + "': " + what);
}

bool is_null_scalar(const Node& n)
{
    if (n.is_null())
        return true;
    if (!n.is_scalar() || !n.plain())
        return false;
    const auto& t = n.text();
    return t.empty() || t == "~" || t == "null" || t == "Null" || t == "NULL";
}

bool is_true_scalar(const Node& n)
{
    if (!n.is_scalar())
        return false;
    const auto& t = n.text();
    return t == "true" || t == "True" || t == "TRUE" || t == "yes" || t == "Yes" || t == "on";
}

std::optional<std::string> scalar_text(const Node& n, const std::string& service, std::string_view key)
{
    if (is_null_scalar(n))
        return std::nullopt;
    if (!n.is_scalar())
        invalid_service(service, std::string(key) + " must be a scalar");
    return n.text();
}

// Interpolates every scalar value; mapping keys are left untouched.
void interpolate_tree(Node& node, const Environment& env, std::set<std::string>& unresolved)
{
    switch (node.kind()) {
    case Node::Kind::Scalar: {
        std::string expanded = interpolate(node.text(), env, unresolved);
        if (expanded != node.text()) {
            const auto pos = node.position;
            node = Node::scalar(std::move(expanded), node.plain());
            node.position = pos;
        }
        break;
    }
    case Node::Kind::Sequence:
        for (auto& item : node.items())
            interpolate_tree(item, env, unresolved);
        break;
    case Node::Kind::Mapping:
        for (auto& [k, v] : node.entries())
            interpolate_tree(v, env, unresolved);
        break;
    case Node::Kind::Null: break;
    }
}

int parse_port_number(std::string_view text, std::string_view spec)
{
    int value = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw Error(ErrorCode::InvalidPort, "'" + std::string(spec) + "': '" + std::string(text) + "' is not a number");
    if (value < 1 || value > 65535)
        throw Error(ErrorCode::InvalidPort,
                    "'" + std::string(spec) + "': " + std::to_string(value) + " is outside [1, 65535]");
    return value;
}

// "8000" or "8000-8010".
std::pair<int, std::optional<int>> parse_port_range(std::string_view text, std::string_view spec)
{
    const auto dash = text.find('-');
    if (dash == std::string_view::npos)
        return {parse_port_number(text, spec), std::nullopt};
    const int first = parse_port_number(text.substr(0, dash), spec);
    const int last = parse_port_number(text.substr(dash + 1), spec);
    if (last < first)
        throw Error(ErrorCode::InvalidPort, "'" + std::string(spec) + "': descending range");
    return {first, last};
}

std::string range_text(int first, const std::optional<int>& last)
{
    return last ? std::to_string(first) + "-" + std::to_string(*last) : std::to_string(first);
}

std::string volume_type_name(const VolumeMount& v)
{
    switch (v.kind) {
    case VolumeKind::Bind: return "bind";
    case VolumeKind::Tmpfs: return "tmpfs";
    default: return "volume";
    }
}

bool looks_like_host_path(std::string_view source)
{
    return source.starts_with('/') || source.starts_with('.') || source.starts_with('~');
}

std::map<std::string, std::string> parse_key_values(const Node& node, const std::string& service,
                                                    std::string_view key)
{
    std::map<std::string, std::string> out;
    if (is_null_scalar(node))
        return out;
    if (node.is_mapping()) {
        for (const auto& [k, v] : node.entries()) {
            if (is_null_scalar(v))
                out[k] = "";
            else if (v.is_scalar())
                out[k] = v.text();
            else
                invalid_service(service, std::string(key) + "." + k + " must be a scalar");
        }
        return out;
    }
    if (node.is_sequence()) {
        for (const auto& item : node.items()) {
            if (!item.is_scalar())
                invalid_service(service, std::string(key) + " entries must be KEY=VALUE strings");
            const auto& text = item.text();
            const auto eq = text.find('=');
            if (eq == std::string::npos)
                out[text] = "";
            else
                out[text.substr(0, eq)] = text.substr(eq + 1);
        }
        return out;
    }
    invalid_service(service, std::string(key) + " must be a mapping or a list");
}

std::vector<std::string> parse_string_list(const Node& node, const std::string& service, std::string_view key)
{
    std::vector<std::string> out;
    if (is_null_scalar(node))
        return out;
    if (node.is_scalar()) {
        out.push_back(node.text());
        return out;
    }
    if (!node.is_sequence())
        invalid_service(service, std::string(key) + " must be a string or a list");
    for (const auto& item : node.items()) {
        if (item.is_scalar()) {
            out.push_back(item.text());
        } else if (const Node* path = item.find("path"); path != nullptr && path->is_scalar()) {
            out.push_back(path->text());
        } else {
            invalid_service(service, std::string(key) + " entries must be strings");
        }
    }
    return out;
}

void sort_unique(std::vector<std::string>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

ServiceSpec parse_service(const std::string& name, const Node& node)
{
    ServiceSpec spec;
    spec.name = name;
    if (is_null_scalar(node))
        return spec;
    if (!node.is_mapping())
        invalid_service(name, "definition must be a mapping");

    for (const auto& [key, value] : node.entries()) {
        if (key == "image") {
            auto text = scalar_text(value, name, key);
            if (text && !trim(*text).empty())
                spec.image = trim(*text);
        } else if (key == "build") {
            if (is_null_scalar(value))
                continue;
            BuildContext build;
            if (value.is_scalar()) {
                build.context = value.text();
            } else if (value.is_mapping()) {
                if (const Node* ctx = value.find("context"); ctx && !is_null_scalar(*ctx))
                    build.context = scalar_text(*ctx, name, "build.context").value_or(".");
                if (const Node* df = value.find("dockerfile"); df)
                    build.dockerfile = scalar_text(*df, name, "build.dockerfile");
            } else {
                invalid_service(name, "build must be a string or a mapping");
            }
            spec.build = std::move(build);
        } else if (key == "ports") {
            if (is_null_scalar(value))
                continue;
            if (!value.is_sequence())
                invalid_service(name, "ports must be a list");
            for (const auto& item : value.items())
                spec.ports.push_back(parse_port(item));
        } else if (key == "volumes") {
            if (is_null_scalar(value))
                continue;
            if (!value.is_sequence())
                invalid_service(name, "volumes must be a list");
            for (const auto& item : value.items())
                spec.volumes.push_back(parse_volume(item));
        } else if (key == "environment") {
            spec.environment = parse_key_values(value, name, key);
        } else if (key == "env_file") {
            spec.env_files = parse_string_list(value, name, key);
        } else if (key == "labels") {
            spec.labels = parse_key_values(value, name, key);
        } else if (key == "depends_on") {
            if (is_null_scalar(value))
                continue;
            if (value.is_sequence()) {
                for (const auto& item : value.items()) {
                    if (!item.is_scalar())
                        invalid_service(name, "depends_on entries must be service names");
                    spec.depends_on.push_back(item.text());
                    spec.depends_on_conditions[item.text()] = "service_started";
                }
            } else if (value.is_mapping()) {
                for (const auto& [dep, options] : value.entries()) {
                    spec.depends_on.push_back(dep);
                    std::string condition = "service_started";
                    if (const Node* c = options.find("condition"); c && c->is_scalar())
                        condition = c->text();
                    spec.depends_on_conditions[dep] = condition;
                }
            } else {
                invalid_service(name, "depends_on must be a list or a mapping");
            }
            sort_unique(spec.depends_on);
        } else if (key == "links") {
            for (const auto& link : parse_string_list(value, name, key))
                spec.links.push_back(link.substr(0, link.find(':')));
            sort_unique(spec.links);
        } else if (key == "command") {
            if (is_null_scalar(value))
                continue;
            if (value.is_scalar()) {
                spec.command = value.text();
            } else if (value.is_sequence()) {
                std::string joined;
                for (const auto& item : value.items()) {
                    if (!item.is_scalar())
                        invalid_service(name, "command entries must be strings");
                    if (!joined.empty())
                        joined += ' ';
                    joined += item.text();
                }
                spec.command = joined;
            } else {
                invalid_service(name, "command must be a string or a list");
            }
        } else if (key == "extends") {
            if (is_null_scalar(value))
                continue;
            ExtendsRef ref;
            if (value.is_scalar()) {
                ref.service = value.text();
            } else if (value.is_mapping()) {
                const Node* svc = value.find("service");
                if (svc == nullptr || !svc->is_scalar())
                    invalid_service(name, "extends requires a service name");
                ref.service = svc->text();
                if (const Node* file = value.find("file"); file)
                    ref.file = scalar_text(*file, name, "extends.file");
            } else {
                invalid_service(name, "extends must be a string or a mapping");
            }
            spec.extends = std::move(ref);
        } else if (key == "deploy") {
            if (!is_null_scalar(value))
                spec.deploy = value;
        } else if (key == "hostname") {
            spec.hostname = scalar_text(value, name, key);
        } else {
            spec.unknown[key] = value;
        }
    }
    return spec;
}

std::set<std::string> mapping_keys(const Node* node)
{
    std::set<std::string> out;
    if (node != nullptr && node->is_mapping())
        for (const auto& [k, v] : node->entries())
            out.insert(k);
    return out;
}

json escape_dollars(const json& value)
{
    if (value.is_string()) {
        std::string out;
        for (char c : value.get<std::string>()) {
            out += c;
            if (c == '$')
                out += '$';
        }
        return out;
    }
    if (value.is_array()) {
        json out = json::array();
        for (const auto& item : value)
            out.push_back(escape_dollars(item));
        return out;
    }
    if (value.is_object()) {
        json out = json::object();
        for (const auto& [k, v] : value.items())
            out[k] = escape_dollars(v);
        return out;
    }
    return value;
}

} // namespace

std::string PortBinding::identity() const
{
    std::string out = host_ip.value_or("");
    out += ':';
    if (host_port)
        out += range_text(*host_port, host_port_end);
    out += ':';
    out += range_text(container_port, container_port_end);
    out += '/';
    out += protocol;
    return out;
}

std::string_view to_string(VolumeKind kind)
{
    switch (kind) {
    case VolumeKind::Named: return "named";
    case VolumeKind::Bind: return "bind";
    case VolumeKind::Anonymous: return "anonymous";
    case VolumeKind::Tmpfs: return "tmpfs";
    }
    return "anonymous";
}

PortBinding parse_port(const Node& node)
{
    PortBinding port;
    if (node.is_mapping()) {
        const Node* target = node.find("target");
        if (target == nullptr || !target->is_scalar())
            throw Error(ErrorCode::InvalidPort, "long-syntax port requires a target");
        std::tie(port.container_port, port.container_port_end) = parse_port_range(trim(target->text()), target->text());
        if (const Node* published = node.find("published"); published && published->is_scalar()) {
            const std::string text = trim(published->text());
            if (!text.empty()) {
                auto [first, last] = parse_port_range(text, text);
                port.host_port = first;
                port.host_port_end = last;
            }
        }
        if (const Node* ip = node.find("host_ip"); ip && ip->is_scalar() && !ip->text().empty())
            port.host_ip = ip->text();
        if (const Node* proto = node.find("protocol"); proto && proto->is_scalar() && !proto->text().empty())
            port.protocol = proto->text();
        return port;
    }
    if (!node.is_scalar())
        throw Error(ErrorCode::InvalidPort, "port entry must be a string or a mapping");

    const std::string spec = trim(node.text());
    std::string rest = spec;
    if (const auto slash = rest.rfind('/'); slash != std::string::npos) {
        port.protocol = rest.substr(slash + 1);
        rest = rest.substr(0, slash);
        if (port.protocol.empty())
            throw Error(ErrorCode::InvalidPort, "'" + spec + "': empty protocol");
    }
    if (rest.starts_with('[')) {
        const auto close = rest.find("]:");
        if (close == std::string::npos)
            throw Error(ErrorCode::InvalidPort, "'" + spec + "': malformed IPv6 host address");
        port.host_ip = rest.substr(1, close - 1);
        rest = rest.substr(close + 2);
    }
    auto parts = split(rest, ':');
    if (parts.size() == 3 && !port.host_ip) {
        port.host_ip = parts[0];
        parts.erase(parts.begin());
    }
    if (parts.size() == 1) {
        std::tie(port.container_port, port.container_port_end) = parse_port_range(parts[0], spec);
    } else if (parts.size() == 2) {
        if (!parts[0].empty()) {
            auto [first, last] = parse_port_range(parts[0], spec);
            port.host_port = first;
            port.host_port_end = last;
        }
        std::tie(port.container_port, port.container_port_end) = parse_port_range(parts[1], spec);
    } else {
        throw Error(ErrorCode::InvalidPort, "'" + spec + "': too many ':' separators");
    }
    if (port.host_ip && port.host_ip->empty())
        port.host_ip.reset();
    return port;
}

VolumeMount parse_volume(const Node& node)
{
    VolumeMount mount;
    if (node.is_mapping()) {
        std::string type = "volume";
        if (const Node* t = node.find("type"); t && t->is_scalar())
            type = t->text();
        if (const Node* s = node.find("source"); s && s->is_scalar() && !s->text().empty())
            mount.source = s->text();
        const Node* target = node.find("target");
        if (target == nullptr || !target->is_scalar())
            throw Error(ErrorCode::InvalidVolumeSpec, "long-syntax volume requires a target");
        mount.target = target->text();
        if (const Node* ro = node.find("read_only"); ro)
            mount.read_only = is_true_scalar(*ro);
        if (const Node* mode = node.find("mode"); mode && mode->is_scalar())
            mount.mode = mode->text();
        if (type == "bind")
            mount.kind = VolumeKind::Bind;
        else if (type == "tmpfs")
            mount.kind = VolumeKind::Tmpfs;
        else
            mount.kind = mount.source ? VolumeKind::Named : VolumeKind::Anonymous;
    } else if (node.is_scalar()) {
        const std::string spec = trim(node.text());
        const auto parts = split(spec, ':');
        if (parts.size() > 3)
            throw Error(ErrorCode::InvalidVolumeSpec, "'" + spec + "': too many ':' separators");
        if (parts.size() == 1) {
            mount.kind = VolumeKind::Anonymous;
            mount.target = parts[0];
        } else {
            if (parts[0].empty())
                throw Error(ErrorCode::InvalidVolumeSpec, "'" + spec + "': empty source");
            mount.source = parts[0];
            mount.target = parts[1];
            mount.kind = looks_like_host_path(parts[0]) ? VolumeKind::Bind : VolumeKind::Named;
            if (parts.size() == 3) {
                std::string flags;
                for (const auto& flag : split(parts[2], ',')) {
                    if (flag == "ro") {
                        mount.read_only = true;
                    } else if (flag != "rw" && !flag.empty()) {
                        if (!flags.empty())
                            flags += ',';
                        flags += flag;
                    }
                }
                if (!flags.empty())
                    mount.mode = flags;
            }
        }
    } else {
        throw Error(ErrorCode::InvalidVolumeSpec, "volume entry must be a string or a mapping");
    }
    if (mount.target.empty() || mount.target.front() != '/')
        throw Error(ErrorCode::InvalidVolumeSpec, "container target '" + mount.target + "' is not an absolute path");
    return mount;
}

bool is_known_service_key(std::string_view key)
{
    return std::find(kKnownServiceKeys.begin(), kKnownServiceKeys.end(), key) != kKnownServiceKeys.end();
}

std::set<std::string> ServiceSpec::unknown_keys() const
{
    std::set<std::string> out;
    for (const auto& [k, v] : unknown)
        out.insert(k);
    return out;
}

std::set<std::string> ServiceSpec::key_set() const
{
    std::set<std::string> out = unknown_keys();
    if (image) out.insert("image");
    if (build) out.insert("build");
    if (!ports.empty()) out.insert("ports");
    if (!volumes.empty()) out.insert("volumes");
    if (!environment.empty()) out.insert("environment");
    if (!env_files.empty()) out.insert("env_file");
    if (!labels.empty()) out.insert("labels");
    if (!depends_on.empty()) out.insert("depends_on");
    if (!links.empty()) out.insert("links");
    if (command) out.insert("command");
    if (extends) out.insert("extends");
    if (deploy) out.insert("deploy");
    if (hostname) out.insert("hostname");
    return out;
}

ComposeDocument resolve_document(const RawDocument& raw, const Environment& env)
{
    ComposeDocument doc;
    doc.source_path = raw.source_path;
    doc.syntax_meta = raw.syntax_meta;

    Node tree = raw.tree;
    interpolate_tree(tree, env, doc.unresolved_variables);

    const Node* services = tree.find("services");
    if (services == nullptr || is_null_scalar(*services))
        throw Error(ErrorCode::MissingServices, raw.source_path + ": no top-level services mapping");
    if (!services->is_mapping())
        throw Error(ErrorCode::MissingServices, raw.source_path + ": services is not a mapping");
    if (services->size() == 0)
        throw Error(ErrorCode::MissingServices, raw.source_path + ": services mapping is empty");

    for (const auto& [name, node] : services->entries())
        doc.services[name] = parse_service(name, node);
    doc.named_volumes = mapping_keys(tree.find("volumes"));
    doc.networks = mapping_keys(tree.find("networks"));
    return doc;
}

json to_canonical_json(const ServiceSpec& s)
{
    json out = json::object();
    for (const auto& [k, v] : s.unknown)
        out[k] = yaml::to_json(v);
    if (s.image)
        out["image"] = *s.image;
    if (s.build) {
        json b = {{"context", s.build->context}};
        if (s.build->dockerfile)
            b["dockerfile"] = *s.build->dockerfile;
        out["build"] = b;
    }
    if (!s.ports.empty()) {
        json ports = json::array();
        for (const auto& p : s.ports) {
            json e = {{"target", range_text(p.container_port, p.container_port_end)}, {"protocol", p.protocol}};
            if (p.host_port)
                e["published"] = range_text(*p.host_port, p.host_port_end);
            if (p.host_ip)
                e["host_ip"] = *p.host_ip;
            ports.push_back(e);
        }
        out["ports"] = ports;
    }
    if (!s.volumes.empty()) {
        json vols = json::array();
        for (const auto& v : s.volumes) {
            json e = {{"type", volume_type_name(v)}, {"target", v.target}};
            if (v.source)
                e["source"] = *v.source;
            if (v.read_only)
                e["read_only"] = "true";
            if (v.mode)
                e["mode"] = *v.mode;
            vols.push_back(e);
        }
        out["volumes"] = vols;
    }
    if (!s.environment.empty())
        out["environment"] = s.environment;
    if (!s.env_files.empty()) {
        json files = json::array();
        for (const auto& f : s.env_files) {
            std::string normal = std::filesystem::path(f).lexically_normal().generic_string();
            while (normal.starts_with("./"))
                normal.erase(0, 2);
            files.push_back(normal);
        }
        out["env_file"] = files;
    }
    if (!s.labels.empty())
        out["labels"] = s.labels;
    if (!s.depends_on.empty()) {
        json deps = json::object();
        for (const auto& d : s.depends_on) {
            const auto it = s.depends_on_conditions.find(d);
            deps[d] = {{"condition", it == s.depends_on_conditions.end() ? "service_started" : it->second}};
        }
        out["depends_on"] = deps;
    }
    if (!s.links.empty())
        out["links"] = s.links;
    if (s.command)
        out["command"] = *s.command;
    if (s.extends) {
        json e = {{"service", s.extends->service}};
        if (s.extends->file)
            e["file"] = *s.extends->file;
        out["extends"] = e;
    }
    if (s.deploy)
        out["deploy"] = yaml::to_json(*s.deploy);
    if (s.hostname)
        out["hostname"] = *s.hostname;
    return escape_dollars(out);
}

json to_canonical_json(const ComposeDocument& doc)
{
    json services = json::object();
    for (const auto& [name, spec] : doc.services)
        services[name] = to_canonical_json(spec);
    json out = {{"services", services}};
    if (!doc.named_volumes.empty()) {
        json vols = json::object();
        for (const auto& v : doc.named_volumes)
            vols[v] = json::object();
        out["volumes"] = vols;
    }
    if (!doc.networks.empty()) {
        json nets = json::object();
        for (const auto& n : doc.networks)
            nets[n] = json::object();
        out["networks"] = nets;
    }
    return out;
}

RawDocument raw_from_canonical_json(const json& canonical, std::string source_path)
{
    RawDocument raw;
    raw.source_path = std::move(source_path);
    raw.tree = yaml::from_json(canonical);
    if (!raw.tree.is_mapping())
        throw Error(ErrorCode::NotAMapping, raw.source_path + ": canonical document is not an object");
    for (const auto& [k, v] : raw.tree.entries())
        raw.top_level_keys.push_back(k);
    return raw;
}

bool same_content(const ComposeDocument& lhs, const ComposeDocument& rhs)
{
    return lhs.services == rhs.services && lhs.named_volumes == rhs.named_volumes && lhs.networks == rhs.networks;
}

} // namespace compose_patterns
