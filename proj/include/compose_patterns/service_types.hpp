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

#include <array>
#include <optional>
#include <string_view>

namespace compose_patterns {

// Service purposes observed in open-source compose files, in descending order
// of how often they occur. Unclassified is the fallback and is not a taxonomy
// member.
enum class ServiceType {
    Database,
    Frontend,
    Backend,
    Caching,
    Testing,
    ReverseProxy,
    Mail,
    Search,
    DatabaseAdministration,
    ObjectStorage,
    Identity,
    Visualization,
    JobScheduling,
    ContainerManagement,
    EventMonitoring,
    Certificate,
    DatabaseInit,
    Zipping,
    MessageBroker,
    Dns,
    Tracing,
    ImageRecognition,
    Cron,
    Chat,
    Office,
    Setup,
    Workflow,
    LinuxUtilities,
    Secrets,
    HttpAccelerator,
    HelloWorld,
    Discovery,
    DataStreaming,
    Unclassified,
};

inline constexpr std::size_t kTaxonomySize = 33;

inline constexpr std::array<ServiceType, kTaxonomySize> kTaxonomy = {
    ServiceType::Database,        ServiceType::Frontend,         ServiceType::Backend,
    ServiceType::Caching,         ServiceType::Testing,          ServiceType::ReverseProxy,
    ServiceType::Mail,            ServiceType::Search,           ServiceType::DatabaseAdministration,
    ServiceType::ObjectStorage,   ServiceType::Identity,         ServiceType::Visualization,
    ServiceType::JobScheduling,   ServiceType::ContainerManagement, ServiceType::EventMonitoring,
    ServiceType::Certificate,     ServiceType::DatabaseInit,     ServiceType::Zipping,
    ServiceType::MessageBroker,   ServiceType::Dns,              ServiceType::Tracing,
    ServiceType::ImageRecognition, ServiceType::Cron,            ServiceType::Chat,
    ServiceType::Office,          ServiceType::Setup,            ServiceType::Workflow,
    ServiceType::LinuxUtilities,  ServiceType::Secrets,          ServiceType::HttpAccelerator,
    ServiceType::HelloWorld,      ServiceType::Discovery,        ServiceType::DataStreaming,
};

enum class ServiceCategory { Core, Networking, Reliability, Setup, Data, Scheduling, Miscellaneous, None };

// Canonical identifier, e.g. "ReverseProxy".
std::string_view to_string(ServiceType type);
// Human label, e.g. "Reverse proxy service".
std::string_view display_name(ServiceType type);
std::string_view to_string(ServiceCategory category);
// None only for Unclassified.
ServiceCategory category_of(ServiceType type);

// Accepts the canonical identifier, the display name, or snake/kebab case,
// case-insensitively ("reverse_proxy", "Reverse proxy service").
std::optional<ServiceType> parse_service_type(std::string_view text);

} // namespace compose_patterns
