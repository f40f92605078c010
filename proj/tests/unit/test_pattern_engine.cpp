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

#include <doctest.h>

#include <random>
#include <string>

#include "compose_patterns/pattern_engine.hpp"
#include "evidence_replay.hpp"
#include "test_support.hpp"

using namespace compose_patterns;
using test_support::analyze;

namespace {

const RepoContext empty_ctx{};

std::optional<PatternFinding> run(PatternId id, std::string_view yaml, const RepoContext& ctx = empty_ctx,
                                  std::string file = "docker-compose.yml")
{
    const FileAnalysis a = analyze(yaml, std::move(file));
    auto f = detect(id, a, ctx);
    if (f) {
        const auto r = test_support::replay(*f, a, ctx);
        for (const auto& why : r.failures)
            MESSAGE(why);
        CHECK(r.ok);
    }
    return f;
}

bool has(const PatternFinding& f, std::string_view clause)
{
    return std::find(f.evidence.begin(), f.evidence.end(), clause) != f.evidence.end();
}

// Service snippets for generated documents.
const std::vector<std::pair<std::string, std::string>> kPool = {
    {"web", "    image: node:20\n    depends_on: [db]\n"},
    {"api", "    build: ./api\n    environment:\n      DB: postgres://db:5432/x\n"},
    {"db", "    image: postgres:16\n    volumes: [\"pg:/var/lib/postgresql/data\"]\n"},
    {"cache", "    image: redis:7\n"},
    {"proxy", "    image: nginx\n    ports: [\"80:80\"]\n"},
    {"traefik", "    image: traefik\n"},
    {"labelled", "    image: example/site\n    labels: [\"traefik.enable=true\"]\n"},
    {"mailhog", "    image: mailhog/mailhog\n"},
    {"adminer", "    image: adminer\n    depends_on: [db]\n"},
    {"migrate", "    image: migrate/migrate\n"},
    {"certbot", "    image: certbot/certbot\n"},
    {"watchtower", "    image: containrrr/watchtower\n"},
    {"worker", "    image: node:20\n    command: worker\n"},
};

std::string document_from(const std::vector<std::size_t>& picks)
{
    std::string yaml = "services:\n";
    for (std::size_t i : picks)
        yaml += "  " + kPool[i].first + ":\n" + kPool[i].second;
    return yaml;
}

} // namespace

TEST_SUITE("pattern-engine")
{
    TEST_CASE("fourteen pattern ids with stable spellings")
    {
        CHECK(kAllPatterns.size() == 14);
        std::set<std::string> codes;
        for (PatternId id : kAllPatterns) {
            codes.insert(pattern_code(id));
            CHECK(parse_pattern_id(to_string(id)) == id);
            CHECK(parse_pattern_id(pattern_code(id)) == id);
        }
        CHECK(codes.size() == 14);
        CHECK(pattern_code(PatternId::HttpReverseProxy) == "HTTP_REVERSE_PROXY");
        CHECK(pattern_code(PatternId::AppWithDatabaseAndCaching) == "APP_WITH_DATABASE_AND_CACHING");
        CHECK(parse_pattern_id("http_reverse_proxy") == PatternId::HttpReverseProxy);
        CHECK_FALSE(parse_pattern_id("NOT_A_PATTERN").has_value());
    }

    TEST_CASE("fig1 yields no findings")
    {
        const FileAnalysis a = analyze(test_support::read_file(test_support::fixture("fig1/docker-compose.yml")));
        CHECK(detect_all(a, empty_ctx).empty());
    }

    TEST_CASE("labels configure a reverse proxy")
    {
        const auto f = run(PatternId::LabelsConfigureReverseProxy, R"(services:
  traefik:
    image: traefik
  app:
    image: example/app
    labels:
      traefik.http.routers.app.rule: Host(`x`)
)");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK(f->services_involved == std::vector<std::string>{"app", "traefik"});
        CHECK(has(*f, "edge:LabelProxyConfig:app->traefik|traefik."));
    }

    TEST_CASE("labels towards an external proxy")
    {
        const auto f = run(PatternId::LabelsConfigureReverseProxy,
                           "services:\n  app:\n    image: example/app\n    labels: [\"traefik.enable=true\"]\n");
        REQUIRE(f.has_value());
        CHECK(f->services_involved == std::vector<std::string>{"app"});
    }

    TEST_CASE("app with database and caching carries depends_on evidence")
    {
        const std::string yaml = R"(services:
  app:
    image: node:20
    depends_on: [postgres, redis]
  postgres:
    image: postgres:16
  redis:
    image: redis:7
)";
        const auto f = run(PatternId::AppWithDatabaseAndCaching, yaml);
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK(has(*f, "edge:DependsOn:app->postgres|service_started"));
        CHECK(has(*f, "edge:DependsOn:app->redis|service_started"));
        CHECK_FALSE(run(PatternId::AppWithDatabase, yaml).has_value());
    }

    TEST_CASE("app with database without caching")
    {
        const auto f = run(PatternId::AppWithDatabase,
                           "services:\n  web:\n    image: php:8-apache\n  db:\n    image: mysql\n    ports: [\"3306:3306\"]\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::CoOccurrence);
        CHECK(has(*f, "absent:Caching"));
        CHECK(has(*f, "port:db:3306"));
    }

    TEST_CASE("http reverse proxy tiers")
    {
        auto f = run(PatternId::HttpReverseProxy, "services:\n  proxy:\n    image: nginx\n    ports: [\"443:443\"]\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK(has(*f, "port:proxy:443"));
        f = run(PatternId::HttpReverseProxy, "services:\n  proxy:\n    image: nginx\n    ports: [\"8080:80\"]\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::CoOccurrence);
        f = run(PatternId::HttpReverseProxy, "services:\n  proxy:\n    image: haproxy\n    ports: [\"79-81:79-81\"]\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK_FALSE(run(PatternId::HttpReverseProxy, "services:\n  app:\n    image: node\n").has_value());
    }

    TEST_CASE("anchors and aliases")
    {
        const auto f = run(PatternId::YamlAnchorAlias,
                           "x-base: &base\n  image: app\nservices:\n  a:\n    <<: *base\n  b:\n    <<: *base\n");
        REQUIRE(f.has_value());
        CHECK(has(*f, "syntax:alias_count=2"));
        CHECK(has(*f, "syntax:merge_key_count=2"));
        CHECK_FALSE(run(PatternId::YamlAnchorAlias, "x-base: &base\n  image: app\nservices:\n  a:\n    image: b\n").has_value());
    }

    TEST_CASE("service inheritance in file")
    {
        const auto f = run(PatternId::ServiceInheritance,
                           "services:\n  base:\n    image: x\n  child:\n    extends: {service: base}\n");
        REQUIRE(f.has_value());
        CHECK(has(*f, "extends:child|self"));
        CHECK(f->services_involved == std::vector<std::string>{"child"});
    }

    TEST_CASE("auto generation from a marker and from scripts")
    {
        auto f = run(PatternId::AutoGeneration, "# Generated by kompose\nservices:\n  a:\n    image: x\n");
        REQUIRE(f.has_value());
        CHECK(has(*f, "role:auto-generated"));

        RepoContext ctx;
        ctx.script_hits = {"build.sh:3: envsubst < tpl > docker-compose.yml", "sub/gen.sh:1: j2 t.j2 > docker-compose.yml",
                           "Makefile:2: docker-compose up"};
        f = run(PatternId::AutoGeneration, "services:\n  a:\n    image: x\n", ctx);
        REQUIRE(f.has_value());
        CHECK(f->evidence == std::vector<std::string>{"script:build.sh:3: envsubst < tpl > docker-compose.yml"});

        CHECK(script_generates("envsubst < t > docker-compose.yml", "docker-compose.yml"));
        CHECK(script_generates("python gen.py --output docker-compose.prod.yml", "docker-compose.prod.yml"));
        CHECK_FALSE(script_generates("docker-compose -f docker-compose.yml up", "docker-compose.yml"));
        CHECK_FALSE(script_generates("cat x > other.yml", "docker-compose.yml"));
    }

    TEST_CASE("override pairs and partial files")
    {
        CHECK(find_override_pairs({"a/docker-compose.yml", "a/docker-compose.override.yml", "b/docker-compose.override.yml"}) ==
              std::vector<std::pair<std::string, std::string>>{{"a/docker-compose.yml", "a/docker-compose.override.yml"}});
        CHECK(find_override_pairs({"docker-compose.yaml", "docker-compose.override.yaml"}).size() == 1);

        RepoContext ctx;
        ctx.compose_files = {{"docker-compose.yml", FileRole::Compose}, {"docker-compose.override.yml", FileRole::OverrideCandidate}};
        auto f = run(PatternId::OverrideUseCase, "services:\n  a:\n    image: x\n", ctx, "docker-compose.yml");
        REQUIRE(f.has_value());
        CHECK(has(*f, "pair:docker-compose.yml|docker-compose.override.yml"));

        f = run(PatternId::OverrideUseCase, "services:\n  a:\n    ports: [\"80:80\"]\n", empty_ctx, "docker-compose.dev.yml");
        REQUIRE(f.has_value());
        CHECK(has(*f, "role:OverrideCandidate"));
        CHECK_FALSE(run(PatternId::OverrideUseCase, "services:\n  a:\n    image: x\n").has_value());
    }

    TEST_CASE("certificate generation tiers")
    {
        const std::string structural = test_support::read_file(
            test_support::fixture("patterns/certificate_generation_mapping/positive_structural/docker-compose.yml"));
        auto f = run(PatternId::CertificateGenerationMapping, structural);
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK(has(*f, "edge:SharedVolume:certbot->nginx|certbot-etc"));

        f = run(PatternId::CertificateGenerationMapping,
                "services:\n  traefik:\n    image: traefik\n  pebble:\n    image: letsencrypt/pebble\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::CoOccurrence);
        CHECK_FALSE(run(PatternId::CertificateGenerationMapping, "services:\n  certbot:\n    image: certbot/certbot\n").has_value());
    }

    TEST_CASE("container management notes the docker socket")
    {
        const auto f = run(PatternId::ContainerManagement,
                           "services:\n  watchtower:\n    image: containrrr/watchtower\n    volumes: [\"/var/run/docker.sock:/var/run/docker.sock\"]\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::CoOccurrence);
        CHECK(has(*f, "mount:watchtower:/var/run/docker.sock"));
    }

    TEST_CASE("database init tiers")
    {
        auto f = run(PatternId::DatabaseInitWithDatabase,
                     test_support::read_file(test_support::fixture("patterns/database_init_with_database/positive/docker-compose.yml")));
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK(has(*f, "edge:EnvReference:migrate->db|DATABASE_URL"));
        f = run(PatternId::DatabaseInitWithDatabase,
                "services:\n  mysql:\n    image: mysql\n  db-seed:\n    build: ./seed\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::CoOccurrence);
        CHECK_FALSE(run(PatternId::DatabaseInitWithDatabase, "services:\n  migrate:\n    image: migrate/migrate\n").has_value());
    }

    TEST_CASE("database admin with database")
    {
        auto f = run(PatternId::DatabaseAdminWithDatabase,
                     "services:\n  db:\n    image: mariadb\n  pma:\n    image: phpmyadmin\n    links: [db]\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::Structural);
        CHECK(has(*f, "edge:Link:pma->db|"));
        f = run(PatternId::DatabaseAdminWithDatabase, "services:\n  db:\n    image: mariadb\n  adminer:\n    image: adminer\n");
        REQUIRE(f.has_value());
        CHECK(f->strictness == Strictness::CoOccurrence);
        CHECK_FALSE(run(PatternId::DatabaseAdminWithDatabase, "services:\n  adminer:\n    image: adminer\n").has_value());
    }

    TEST_CASE("mail flags")
    {
        auto f = run(PatternId::MailServiceTesting, "services:\n  mail:\n    image: mailhog/mailhog\n");
        REQUIRE(f.has_value());
        CHECK(has(*f, "flag:test-oriented"));
        f = run(PatternId::MailServiceTesting, "services:\n  smtp:\n    image: boky/postfix\n");
        REQUIRE(f.has_value());
        CHECK(has(*f, "flag:general-mail"));
    }

    TEST_CASE("duplicate service reuse")
    {
        const auto f = run(PatternId::DuplicateServiceReuse, R"(services:
  web:
    image: tootsuite/mastodon
    command: bundle exec puma
  sidekiq:
    image: tootsuite/mastodon
    command: bundle exec sidekiq
)");
        REQUIRE(f.has_value());
        CHECK(has(*f, "edge:DuplicateImage:sidekiq->web|different-commands"));
        CHECK_FALSE(run(PatternId::DuplicateServiceReuse, "services:\n  a:\n    image: x\n  b:\n    image: y\n").has_value());
    }

    TEST_CASE("findings are sorted and deterministic")
    {
        const std::string yaml = document_from({0, 1, 2, 4, 6, 7, 8, 9, 10, 11, 12});
        const FileAnalysis a = analyze(yaml);
        const auto first = detect_all(a, empty_ctx);
        CHECK(first == detect_all(analyze(yaml), empty_ctx));
        CHECK(std::is_sorted(first.begin(), first.end(),
                             [](const PatternFinding& x, const PatternFinding& y) { return x.pattern < y.pattern; }));
    }

    TEST_CASE("random documents: replay, mutual exclusion, monotonicity")
    {
        std::mt19937 rng(20260101);
        for (int round = 0; round < 200; ++round) {
            std::vector<std::size_t> picks;
            for (std::size_t i = 0; i < kPool.size(); ++i)
                if (rng() % 3 == 0)
                    picks.push_back(i);
            if (picks.empty())
                picks.push_back(rng() % kPool.size());
            const std::string yaml = document_from(picks);
            CAPTURE(yaml);
            const FileAnalysis a = analyze(yaml);
            const auto findings = detect_all(a, empty_ctx);
            std::set<PatternId> fired;
            for (const auto& f : findings) {
                const auto r = test_support::replay(f, a, empty_ctx);
                for (const auto& why : r.failures)
                    MESSAGE(why);
                CHECK(r.ok);
                fired.insert(f.pattern);
            }
            CHECK_FALSE((fired.contains(PatternId::AppWithDatabase) && fired.contains(PatternId::AppWithDatabaseAndCaching)));

            std::vector<std::size_t> missing;
            for (std::size_t i = 0; i < kPool.size(); ++i)
                if (std::find(picks.begin(), picks.end(), i) == picks.end())
                    missing.push_back(i);
            if (missing.empty())
                continue;
            std::vector<std::size_t> grown = picks;
            grown.push_back(missing[rng() % missing.size()]);
            std::sort(grown.begin(), grown.end());
            std::set<PatternId> after;
            for (const auto& f : detect_all(analyze(document_from(grown)), empty_ctx))
                after.insert(f.pattern);
            for (PatternId id : fired) {
                if (id == PatternId::AppWithDatabase)
                    continue;
                CAPTURE(to_string(id));
                CHECK(after.contains(id));
            }
        }
    }
}
