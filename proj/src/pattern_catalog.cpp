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

#include "compose_patterns/pattern_catalog.hpp"

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace {

const CatalogEntry kEntries[] = {
    // AutoGeneration
    {"Generated compose file",
     "Large stacks are easier to keep consistent when the compose file is produced from a higher-level description.",
     "Projects that ship installers, templating scripts or converters which write docker-compose files.",
     "The file header carries a generated/do-not-edit marker, or a build script redirects generator output into the file.",
     "One source of truth drives every variant of the deployment.",
     "Hand edits to the generated file are silently lost on the next run."},
    // YamlAnchorAlias
    {"YAML anchors and aliases",
     "Services often repeat the same logging, restart or environment blocks.",
     "Files with several services sharing configuration fragments.",
     "The YAML event stream contains at least one alias (*name); merge keys (<<) are reported alongside.",
     "Shared fragments are written once and stay in sync.",
     "Readers must expand anchors mentally, and merge keys behave differently across YAML versions."},
    // ServiceInheritance
    {"Service inheritance with extends",
     "A base service definition can be specialised per environment or per role.",
     "Repositories with a common service description reused from the same or another file.",
     "At least one service carried an extends key before resolution.",
     "Common settings live in one place while each service adds what it needs.",
     "Definitions are spread across files, so the effective configuration is only visible after merging."},
    // OverrideUseCase
    {"Override files",
     "Local development, CI and production need different settings on top of one base stack.",
     "Directories holding docker-compose.yml next to docker-compose.override.yml, or partial files meant for -f chains.",
     "The file is not self-sufficient or is named as an override, or a base/override pair exists in the repository.",
     "Environment-specific tweaks stay out of the base file.",
     "The -f command that combines the files is usually not recorded in the repository."},
    // CertificateGenerationMapping
    {"Certificate generation next to a proxy",
     "TLS certificates must be issued and renewed without manual steps.",
     "Stacks that terminate HTTPS in a reverse proxy or in the application itself.",
     "A certificate service exists; structurally it shares a volume with a proxy or application service, otherwise a proxy is merely present.",
     "Renewal runs beside the services that consume the certificates.",
     "The shared volume couples both containers, and renewal failures surface only at the proxy."},
    // ContainerManagement
    {"Container management service",
     "Running containers need updates, inspection or an administrative UI.",
     "Self-hosted stacks kept up to date by a watcher or managed through a web console.",
     "A service classified as container management is present; mounts of the Docker socket are listed as evidence.",
     "Image updates and restarts happen without operator action.",
     "Access to the Docker socket grants the service control over the host."},
    // DatabaseInitWithDatabase
    {"Database initialisation service",
     "Schemas and seed data must exist before the application starts.",
     "Stacks with a one-shot migration or seeding container next to the database.",
     "Database-init and database services co-occur; an environment reference from the init service to the database makes it structural.",
     "Migrations run in a reproducible container instead of by hand.",
     "Start-up ordering must be handled, or the init job races the database."},
    // DatabaseAdminWithDatabase
    {"Database administration UI",
     "Developers want to browse and edit data without installing client tools.",
     "Development stacks that bundle adminer, phpMyAdmin, pgAdmin or similar tools.",
     "Database-administration and database services co-occur; edges between them make it structural.",
     "Inspection tools come up with the stack.",
     "An exposed admin UI is a risk when the same file reaches production."},
    // LabelsConfigureReverseProxy
    {"Labels configure the reverse proxy",
     "Routing rules belong next to the service they route to.",
     "Stacks fronted by Traefik, caddy-docker-proxy or nginx-proxy.",
     "A service carries traefik./caddy labels or a VIRTUAL_HOST variable that a proxy in the file (or an external one) reads.",
     "Adding a service and its route is a single edit.",
     "Routing is scattered over many services and tied to one proxy's label dialect."},
    // MailServiceTesting
    {"Mail service",
     "Applications send mail, and developers need to see it without delivering it.",
     "Stacks with a local SMTP catcher or a full mail server.",
     "A mail service is present; known catcher images are flagged test-oriented, everything else general-mail.",
     "Outgoing mail can be checked locally.",
     "A catcher left in a production file swallows real mail."},
    // AppWithDatabase
    {"Application with database",
     "Most web applications persist state in one database.",
     "Files with a frontend or backend service and a database but no cache.",
     "Frontend/Backend and Database present while Caching is absent; depends_on, link or environment edges from the app to the database make it structural.",
     "The whole application starts with one command.",
     "Data lives in a container volume that needs its own backup story."},
    // AppWithDatabaseAndCaching
    {"Application with database and cache",
     "A cache in front of the database takes read load and holds sessions.",
     "Files with a frontend or backend service, a database and a cache.",
     "Frontend/Backend, Database and Caching present; edges from the app to either store make it structural.",
     "Performance-sensitive setups are reproducible in development.",
     "Two stateful services must be configured, secured and kept consistent."},
    // HttpReverseProxy
    {"HTTP reverse proxy container",
     "One entry point should route external traffic to internal services.",
     "Stacks exposing several web services behind one host.",
     "A reverse-proxy service is present; binding host port 80 or 443 makes it structural.",
     "TLS termination and routing are handled in one place.",
     "The proxy becomes a single point of failure and must track every backend."},
    // DuplicateServiceReuse
    {"Duplicate service reuse",
     "One application image often runs in several roles such as web, worker and scheduler.",
     "Files where two or more services share an image or build context.",
     "At least one pair of services shares an image or build; the attribute tells whether commands or environments differ.",
     "One build serves every role, so versions cannot drift apart.",
     "Repeated blocks invite copy-paste drift unless anchors or extends factor them out."},
};

static_assert(std::size(kEntries) == kAllPatterns.size());

} // namespace

const CatalogEntry& catalog_entry(PatternId id)
{
    return kEntries[static_cast<std::size_t>(id)];
}

std::string explain(PatternId id)
{
    const CatalogEntry& e = catalog_entry(id);
    std::string out;
    out += pattern_code(id) + " - " + std::string(e.title) + "\n\n";
    out += "Motivation:    " + std::string(e.motivation) + "\n";
    out += "Applicability: " + std::string(e.applicability) + "\n";
    out += "Detection:     " + std::string(e.detection) + "\n";
    out += "Advantages:    " + std::string(e.advantages) + "\n";
    out += "Issues:        " + std::string(e.issues) + "\n";
    return out;
}

std::string explain(std::string_view pattern_name)
{
    if (auto id = parse_pattern_id(pattern_name))
        return explain(*id);
    std::string valid;
    for (PatternId id : kAllPatterns)
        valid += (valid.empty() ? "" : ", ") + pattern_code(id);
    throw Error(ErrorCode::UnknownPattern, "unknown pattern '" + std::string(pattern_name) + "'; valid ids: " + valid);
}

} // namespace compose_patterns
