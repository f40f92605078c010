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

#include "compose_patterns/service_types.hpp"

#include <cctype>
#include <string>

namespace compose_patterns {

namespace {

struct TypeInfo {
    ServiceType type;
    std::string_view id;
    std::string_view label;
    ServiceCategory category;
};

constexpr std::array<TypeInfo, kTaxonomySize + 1> kTypeInfo = {{
    {ServiceType::Database, "Database", "Database service", ServiceCategory::Data},
    {ServiceType::Frontend, "Frontend", "Frontend service", ServiceCategory::Core},
    {ServiceType::Backend, "Backend", "Backend service", ServiceCategory::Core},
    {ServiceType::Caching, "Caching", "Caching service", ServiceCategory::Data},
    {ServiceType::Testing, "Testing", "Testing service", ServiceCategory::Reliability},
    {ServiceType::ReverseProxy, "ReverseProxy", "Reverse proxy service", ServiceCategory::Networking},
    {ServiceType::Mail, "Mail", "Mail service", ServiceCategory::Miscellaneous},
    {ServiceType::Search, "Search", "Search service", ServiceCategory::Miscellaneous},
    {ServiceType::DatabaseAdministration, "DatabaseAdministration", "Database administration service",
     ServiceCategory::Data},
    {ServiceType::ObjectStorage, "ObjectStorage", "Object storage service", ServiceCategory::Data},
    {ServiceType::Identity, "Identity", "Identity service", ServiceCategory::Miscellaneous},
    {ServiceType::Visualization, "Visualization", "Visualization service", ServiceCategory::Miscellaneous},
    {ServiceType::JobScheduling, "JobScheduling", "Job scheduling service", ServiceCategory::Scheduling},
    {ServiceType::ContainerManagement, "ContainerManagement", "Container management service",
     ServiceCategory::Reliability},
    {ServiceType::EventMonitoring, "EventMonitoring", "Event monitoring service", ServiceCategory::Reliability},
    {ServiceType::Certificate, "Certificate", "Certificate service", ServiceCategory::Miscellaneous},
    {ServiceType::DatabaseInit, "DatabaseInit", "Database init service", ServiceCategory::Setup},
    {ServiceType::Zipping, "Zipping", "Zipping service", ServiceCategory::Miscellaneous},
    {ServiceType::MessageBroker, "MessageBroker", "Message broker service", ServiceCategory::Miscellaneous},
    {ServiceType::Dns, "Dns", "DNS service", ServiceCategory::Networking},
    {ServiceType::Tracing, "Tracing", "Tracing service", ServiceCategory::Reliability},
    {ServiceType::ImageRecognition, "ImageRecognition", "Image recognition service", ServiceCategory::Miscellaneous},
    {ServiceType::Cron, "Cron", "Cron service", ServiceCategory::Scheduling},
    {ServiceType::Chat, "Chat", "Chat service", ServiceCategory::Miscellaneous},
    {ServiceType::Office, "Office", "Office service", ServiceCategory::Miscellaneous},
    {ServiceType::Setup, "Setup", "Setup service", ServiceCategory::Setup},
    {ServiceType::Workflow, "Workflow", "Workflow service", ServiceCategory::Scheduling},
    {ServiceType::LinuxUtilities, "LinuxUtilities", "Linux utilities service", ServiceCategory::Miscellaneous},
    {ServiceType::Secrets, "Secrets", "Secrets service", ServiceCategory::Miscellaneous},
    {ServiceType::HttpAccelerator, "HttpAccelerator", "HTTP accelerator service", ServiceCategory::Networking},
    {ServiceType::HelloWorld, "HelloWorld", "Hello world service", ServiceCategory::Miscellaneous},
    {ServiceType::Discovery, "Discovery", "Discovery service", ServiceCategory::Networking},
    {ServiceType::DataStreaming, "DataStreaming", "Data streaming service", ServiceCategory::Data},
    {ServiceType::Unclassified, "Unclassified", "Unclassified", ServiceCategory::None},
}};

const TypeInfo& info(ServiceType type)
{
    return kTypeInfo[static_cast<std::size_t>(type)];
}

// Lowercase with separators and a trailing "service" removed.
std::string fold(std::string_view text)
{
    std::string out;
    for (char c : text)
        if (std::isalnum(static_cast<unsigned char>(c)) != 0)
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (out.size() > 7 && out.ends_with("service"))
        out.resize(out.size() - 7);
    return out;
}

} // namespace

std::string_view to_string(ServiceType type) { return info(type).id; }

std::string_view display_name(ServiceType type) { return info(type).label; }

ServiceCategory category_of(ServiceType type) { return info(type).category; }

std::string_view to_string(ServiceCategory category)
{
    switch (category) {
    case ServiceCategory::Core: return "Core";
    case ServiceCategory::Networking: return "Networking";
    case ServiceCategory::Reliability: return "Reliability";
    case ServiceCategory::Setup: return "Setup";
    case ServiceCategory::Data: return "Data";
    case ServiceCategory::Scheduling: return "Scheduling";
    case ServiceCategory::Miscellaneous: return "Miscellaneous";
    case ServiceCategory::None: return "None";
    }
    return "None";
}

std::optional<ServiceType> parse_service_type(std::string_view text)
{
    const std::string wanted = fold(text);
    if (wanted.empty())
        return std::nullopt;
    for (const auto& entry : kTypeInfo)
        if (fold(entry.id) == wanted || fold(entry.label) == wanted)
            return entry.type;
    return std::nullopt;
}

} // namespace compose_patterns
