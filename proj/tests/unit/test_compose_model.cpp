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

#include <string>

#include "compose_patterns/compose_model.hpp"
#include "compose_patterns/error.hpp"
#include "test_support.hpp"

using namespace compose_patterns;
using test_support::load;

namespace {

ErrorCode resolve_error_code(std::string_view text)
{
    try {
        (void)load(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

PortBinding port(std::string_view text)
{
    return parse_port(*parse_document(std::string("p: ") + std::string(text) + "\n", "p.yml").tree.find("p"));
}

VolumeMount volume(std::string_view text)
{
    return parse_volume(*parse_document(std::string("v: ") + std::string(text) + "\n", "v.yml").tree.find("v"));
}

} // namespace

TEST_SUITE("compose-model")
{
    TEST_CASE("fig1 resolves to the documented services")
    {
        const ComposeDocument doc = load(test_support::read_file(test_support::fixture("fig1/docker-compose.yml")));
        REQUIRE(doc.services.size() == 2);
        const ServiceSpec& web = doc.services.at("web");
        CHECK(web.image == "ubuntu");
        REQUIRE(web.ports.size() == 1);
        CHECK(web.ports[0].host_port == 80);
        CHECK(web.ports[0].container_port == 8000);
        CHECK(web.ports[0].protocol == "tcp");
        REQUIRE(web.volumes.size() == 1);
        CHECK(web.volumes[0].kind == VolumeKind::Named);
        CHECK(web.volumes[0].source == "web-logs");
        CHECK(web.volumes[0].target == "/var/log/web");
        REQUIRE(web.deploy.has_value());
        CHECK(web.deploy->contains("replicas"));
        const ServiceSpec& db = doc.services.at("db");
        CHECK(db.image == "postgres:13");
        CHECK(db.hostname == "db");
        CHECK(is_self_sufficient(doc));
    }

    TEST_CASE("resolve errors")
    {
        CHECK(resolve_error_code("services: {}\n") == ErrorCode::MissingServices);
        CHECK(resolve_error_code("volumes: {}\n") == ErrorCode::MissingServices);
        CHECK(resolve_error_code("services:\n  a:\n    image: x\n    ports: [\"70000:80\"]\n") == ErrorCode::InvalidPort);
        CHECK(resolve_error_code("services:\n  a:\n    image: x\n    ports: [\"abc\"]\n") == ErrorCode::InvalidPort);
        CHECK(resolve_error_code("services:\n  a:\n    image: x\n    ports: [\"0:80\"]\n") == ErrorCode::InvalidPort);
        CHECK(resolve_error_code("services:\n  a:\n    image: x\n    volumes: [\"data:relative\"]\n") ==
              ErrorCode::InvalidVolumeSpec);
    }

    TEST_CASE("environment list becomes a mapping")
    {
        const ComposeDocument doc = load("services:\n  a:\n    image: x\n    environment:\n      - A=1\n      - B=2\n");
        CHECK(doc.services.at("a").environment == std::map<std::string, std::string>{{"A", "1"}, {"B", "2"}});
    }

    TEST_CASE("environment value with equals and bare names")
    {
        const ComposeDocument doc = load("services:\n  a:\n    image: x\n    environment:\n      - URL=a=b\n      - BARE\n");
        CHECK(doc.services.at("a").environment.at("URL") == "a=b");
        CHECK(doc.services.at("a").environment.at("BARE") == "");
    }

    TEST_CASE("short port syntax")
    {
        PortBinding p = port("\"127.0.0.1:8080:80/udp\"");
        CHECK(p.host_ip == "127.0.0.1");
        CHECK(p.host_port == 8080);
        CHECK(p.container_port == 80);
        CHECK(p.protocol == "udp");

        p = port("\"3000\"");
        CHECK_FALSE(p.host_port.has_value());
        CHECK(p.container_port == 3000);

        p = port("\"8000-8010:9000-9010\"");
        CHECK(p.host_port == 8000);
        CHECK(p.host_port_end == 8010);
        CHECK(p.container_port == 9000);
        CHECK(p.container_port_end == 9010);

        p = port("5432");
        CHECK(p.container_port == 5432);
    }

    TEST_CASE("long port syntax")
    {
        const ComposeDocument doc =
            load("services:\n  a:\n    image: x\n    ports:\n      - target: 80\n        published: \"8080\"\n        protocol: tcp\n");
        const PortBinding& p = doc.services.at("a").ports.at(0);
        CHECK(p.host_port == 8080);
        CHECK(p.container_port == 80);
    }

    TEST_CASE("short volume syntax")
    {
        VolumeMount v = volume("\"data:/var/lib/data:ro\"");
        CHECK(v.kind == VolumeKind::Named);
        CHECK(v.source == "data");
        CHECK(v.target == "/var/lib/data");
        CHECK(v.read_only);

        v = volume("\"./conf:/etc/conf\"");
        CHECK(v.kind == VolumeKind::Bind);
        CHECK(v.source == "./conf");

        v = volume("\"/var/run/docker.sock:/var/run/docker.sock\"");
        CHECK(v.kind == VolumeKind::Bind);

        v = volume("\"/cache\"");
        CHECK(v.kind == VolumeKind::Anonymous);
        CHECK_FALSE(v.source.has_value());
        CHECK(v.target == "/cache");

        v = volume("\"./x:/x:z\"");
        CHECK(v.mode == "z");
        CHECK_FALSE(v.read_only);
    }

    TEST_CASE("long volume syntax")
    {
        const ComposeDocument doc = load(
            "services:\n  a:\n    image: x\n    volumes:\n      - type: tmpfs\n        target: /tmp\n      - type: bind\n        source: ./src\n        target: /src\n        read_only: true\n");
        const auto& v = doc.services.at("a").volumes;
        REQUIRE(v.size() == 2);
        CHECK(v[0].kind == VolumeKind::Tmpfs);
        CHECK(v[1].kind == VolumeKind::Bind);
        CHECK(v[1].read_only);
    }

    TEST_CASE("depends_on in both forms")
    {
        const ComposeDocument doc = load(R"(services:
  a:
    image: x
    depends_on: [b]
  b:
    image: y
    depends_on:
      c:
        condition: service_healthy
  c:
    image: z
)");
        CHECK(doc.services.at("a").depends_on == std::vector<std::string>{"b"});
        CHECK(doc.services.at("a").depends_on_conditions.at("b") == "service_started");
        CHECK(doc.services.at("b").depends_on == std::vector<std::string>{"c"});
        CHECK(doc.services.at("b").depends_on_conditions.at("c") == "service_healthy");
    }

    TEST_CASE("build forms")
    {
        const ComposeDocument doc = load("services:\n  a:\n    build: ./app\n  b:\n    build:\n      context: ./b\n      dockerfile: Dockerfile.dev\n");
        CHECK(doc.services.at("a").build->context == "./app");
        CHECK_FALSE(doc.services.at("a").build->dockerfile.has_value());
        CHECK(doc.services.at("b").build->dockerfile == "Dockerfile.dev");
    }

    TEST_CASE("unknown keys are preserved")
    {
        const ComposeDocument doc = load("services:\n  a:\n    image: x\n    restart: always\n    x-custom: 1\n");
        CHECK(doc.services.at("a").unknown_keys() == std::set<std::string>{"restart", "x-custom"});
        CHECK(doc.services.at("a").key_set() == std::set<std::string>{"image", "restart", "x-custom"});
        CHECK(is_known_service_key("image"));
        CHECK(is_known_service_key("restart"));
    }

    TEST_CASE("interpolation")
    {
        std::set<std::string> unresolved;
        const Environment env{{"HOST", "db"}, {"EMPTY", ""}};
        CHECK(interpolate("${HOST}:5432", env, unresolved) == "db:5432");
        CHECK(interpolate("$HOST", env, unresolved) == "db");
        CHECK(interpolate("${MISSING:-fallback}", env, unresolved) == "fallback");
        CHECK(interpolate("${EMPTY:-fallback}", env, unresolved) == "fallback");
        CHECK(interpolate("${EMPTY-fallback}", env, unresolved) == "");
        CHECK(interpolate("$$HOST", env, unresolved) == "$HOST");
        CHECK(unresolved.empty());
        CHECK(interpolate("${NOPE}", env, unresolved) == "");
        CHECK(unresolved == std::set<std::string>{"NOPE"});
    }

    TEST_CASE("unresolved variables are recorded on the document")
    {
        const ComposeDocument doc = load("services:\n  a:\n    image: app:${TAG}\n    environment:\n      DB: ${DB_HOST:-db}\n");
        CHECK(doc.services.at("a").image == "app:");
        CHECK(doc.services.at("a").environment.at("DB") == "db");
        CHECK(doc.unresolved_variables == std::set<std::string>{"TAG"});

        const ComposeDocument with_env =
            resolve_document(parse_document("services:\n  a:\n    image: app:${TAG}\n", "t.yml"), {{"TAG", "1.0"}});
        CHECK(with_env.services.at("a").image == "app:1.0");
        CHECK(with_env.unresolved_variables.empty());
    }

    TEST_CASE("top level volumes and networks")
    {
        const ComposeDocument doc = load("services:\n  a:\n    image: x\nvolumes:\n  data: {}\n  logs:\nnetworks:\n  front: {}\n");
        CHECK(doc.named_volumes == std::set<std::string>{"data", "logs"});
        CHECK(doc.networks == std::set<std::string>{"front"});
    }

    TEST_CASE("self sufficiency")
    {
        CHECK_FALSE(is_self_sufficient(load("services:\n  web:\n    ports: [\"80:80\"]\n")));
        CHECK(is_self_sufficient(load("services:\n  web:\n    extends:\n      file: common.yml\n      service: base\n")));
        CHECK(is_self_sufficient(load("services:\n  web:\n    build: .\n")));
    }

    TEST_CASE("canonical form round trips and normalization is idempotent")
    {
        for (const char* rel : {"fig1/docker-compose.yml", "merge/03-ports-dedupe/base.yml", "merge/04-volumes-by-target/base.yml",
                                "merge/09-deploy-deep-merge/base.yml", "patterns/app_with_database_and_caching/positive/docker-compose.yml",
                                "patterns/labels_configure_reverse_proxy/positive/docker-compose.yml"}) {
            const std::string name = rel;
            CAPTURE(name);
            const ComposeDocument doc = load(test_support::read_file(test_support::fixture(rel)));
            const nlohmann::json canonical = to_canonical_json(doc);
            const ComposeDocument again = resolve_document(raw_from_canonical_json(canonical, "canonical"));
            CHECK(same_content(doc, again));
            CHECK(to_canonical_json(again) == canonical);
        }
    }

    TEST_CASE("canonical form escapes dollars so re-resolution is stable")
    {
        const ComposeDocument doc = load("services:\n  a:\n    image: x\n    command: echo $$HOME\n");
        CHECK(doc.services.at("a").command == "echo $HOME");
        const ComposeDocument again = resolve_document(raw_from_canonical_json(to_canonical_json(doc), "c"));
        CHECK(again.services.at("a").command == "echo $HOME");
        CHECK(again.unresolved_variables.empty());
    }

    TEST_CASE("port identity")
    {
        CHECK(port("\"8080:80\"").identity() == port("\"8080:80/tcp\"").identity());
        CHECK(port("\"8080:80\"").identity() != port("\"8080:80/udp\"").identity());
    }
}
