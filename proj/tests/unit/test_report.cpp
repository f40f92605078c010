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

#include <filesystem>
#include <string>

#include "compose_patterns/corpus_scanner.hpp"
#include "compose_patterns/error.hpp"
#include "compose_patterns/pattern_catalog.hpp"
#include "compose_patterns/report.hpp"
#include "test_support.hpp"

using namespace compose_patterns;
namespace fs = std::filesystem;

namespace {

CorpusReport scan(const fs::path& root, ScanOptions opts = {})
{
    opts.root = root;
    return scan_path(opts);
}

const FileRecord* record(const CorpusReport& r, std::string_view path)
{
    for (const auto& f : r.files)
        if (f.path == path)
            return &f;
    return nullptr;
}

bool fired(const FileRecord& f, PatternId id)
{
    return std::any_of(f.findings.begin(), f.findings.end(), [id](const PatternFinding& p) { return p.pattern == id; });
}

ErrorCode scan_error(const ScanOptions& opts)
{
    try {
        (void)scan_path(opts);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

void copy_tree(const fs::path& from, const fs::path& to)
{
    fs::create_directories(to);
    fs::copy(from, to, fs::copy_options::recursive);
}

} // namespace

TEST_SUITE("cli-report")
{
    TEST_CASE("compose filename filter")
    {
        CHECK(is_compose_filename("docker-compose.yml"));
        CHECK(is_compose_filename("Docker-Compose.Prod.YML"));
        CHECK(is_compose_filename("docker-compose.override.yaml"));
        CHECK(is_compose_filename("docker-compose.yml.j2"));
        CHECK_FALSE(is_compose_filename("compose.yaml"));
        CHECK_FALSE(is_compose_filename("docker-compose.md"));
        CHECK_FALSE(is_compose_filename("docker-compose"));
    }

    TEST_CASE("corpus scan selects, pairs and isolates problems")
    {
        const CorpusReport r = scan(test_support::fixture("corpus"));
        REQUIRE(record(r, "project-b/Docker-Compose.Prod.YML") != nullptr);
        CHECK(record(r, "project-f/compose.yaml") == nullptr);

        const FileRecord* base = record(r, "project-a/docker-compose.yml");
        const FileRecord* over = record(r, "project-a/docker-compose.override.yml");
        const FileRecord* merged = record(r, "project-a/docker-compose.yml+project-a/docker-compose.override.yml");
        REQUIRE(base != nullptr);
        REQUIRE(over != nullptr);
        REQUIRE(merged != nullptr);
        CHECK(fired(*base, PatternId::OverrideUseCase));
        CHECK(fired(*over, PatternId::OverrideUseCase));
        CHECK(merged->kind == RecordKind::Merged);
        CHECK(merged->sources == std::vector<std::string>{"project-a/docker-compose.yml", "project-a/docker-compose.override.yml"});
        CHECK(merged->services.size() == 4);
        CHECK_FALSE(merged->counted());

        const FileRecord* broken = record(r, "project-c/docker-compose.yml");
        REQUIRE(broken != nullptr);
        CHECK(broken->error.has_value());
        CHECK(r.warnings.size() == 1);
        CHECK(r.warnings[0].starts_with("project-c/docker-compose.yml: "));

        const FileRecord* tmpl = record(r, "project-d/docker-compose.yml.j2");
        REQUIRE(tmpl != nullptr);
        CHECK(tmpl->role.role == FileRole::TemplateForGenerating);
        const FileRecord* settings = record(r, "project-e/docker-compose.settings.yml");
        REQUIRE(settings != nullptr);
        CHECK(settings->role.role == FileRole::ConfigurationNotCompose);
        CHECK_FALSE(settings->counted());

        CHECK(r.transaction_count == 3);
        CHECK(r.pattern_counts.size() == 14);
        CHECK(r.pattern_counts.at(PatternId::OverrideUseCase) == 2);
        CHECK(std::is_sorted(r.files.begin(), r.files.end(),
                             [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; }));
    }

    TEST_CASE("loose mode picks up other yaml with services")
    {
        ScanOptions opts;
        opts.loose = true;
        const CorpusReport r = scan(test_support::fixture("corpus"), opts);
        CHECK(record(r, "project-f/compose.yaml") != nullptr);
    }

    TEST_CASE("empty directory")
    {
        test_support::TempDir dir;
        const CorpusReport r = scan(dir.path());
        CHECK(r.files.empty());
        CHECK(r.histogram.empty());
        CHECK(r.itemsets.empty());
        CHECK(r.transaction_count == 0);
        CHECK(r.warnings.empty());
    }

    TEST_CASE("scan errors")
    {
        ScanOptions opts;
        opts.root = "/definitely/not/here";
        CHECK(scan_error(opts) == ErrorCode::RootNotFound);
        opts.root = test_support::fixture("corpus");
        opts.min_support = 0.0;
        CHECK(scan_error(opts) == ErrorCode::InvalidSupport);
        opts.min_support = 1.5;
        CHECK(scan_error(opts) == ErrorCode::InvalidSupport);
    }

    TEST_CASE("scan is deterministic")
    {
        const CorpusReport a = scan(test_support::fixture("patterns"));
        const CorpusReport b = scan(test_support::fixture("patterns"));
        CHECK(render_report(a, OutputFormat::Json) == render_report(b, OutputFormat::Json));
        CHECK(render_report(a, OutputFormat::Text) == render_report(b, OutputFormat::Text));
    }

    TEST_CASE("pattern counts count files")
    {
        const CorpusReport r = scan(test_support::fixture("patterns"));
        std::size_t counted = 0;
        std::map<PatternId, std::size_t> per_file;
        for (const auto& f : r.files) {
            if (!f.counted())
                continue;
            ++counted;
            std::set<PatternId> seen;
            for (const auto& p : f.findings)
                seen.insert(p.pattern);
            for (PatternId id : seen)
                ++per_file[id];
            CHECK_FALSE((seen.contains(PatternId::AppWithDatabase) && seen.contains(PatternId::AppWithDatabaseAndCaching)));
        }
        for (const auto& [id, n] : r.pattern_counts) {
            CAPTURE(pattern_code(id));
            CHECK(n == (per_file.contains(id) ? per_file.at(id) : 0));
            CHECK(n <= counted);
            CHECK(r.structural_pattern_counts.at(id) <= n);
        }
    }

    TEST_CASE("corrupting one file changes only its record and adds one warning")
    {
        test_support::TempDir dir;
        copy_tree(test_support::fixture("patterns"), dir.path() / "patterns");
        const CorpusReport before = scan(dir.path());
        const std::string victim = "patterns/http_reverse_proxy/positive/docker-compose.yml";
        dir.write(victim, "services:\n  proxy: [unclosed\n");
        const CorpusReport after = scan(dir.path());

        REQUIRE(before.files.size() == after.files.size());
        for (std::size_t i = 0; i < before.files.size(); ++i) {
            CAPTURE(before.files[i].path);
            if (before.files[i].path == victim)
                CHECK(after.files[i].error.has_value());
            else
                CHECK(before.files[i] == after.files[i]);
        }
        CHECK(after.warnings.size() == before.warnings.size() + 1);
    }

    TEST_CASE("json round trip and canonical re-render")
    {
        ScanOptions opts;
        opts.loose = true;
        for (const fs::path root : {test_support::fixture("corpus"), test_support::fixture("patterns")}) {
            const CorpusReport r = scan(root, opts);
            const std::string json = render_report(r, OutputFormat::Json);
            const CorpusReport back = report_from_json(nlohmann::json::parse(json));
            CHECK(back == r);
            CHECK(render_report(back, OutputFormat::Json) == json);
        }
        CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{\"files\": 3}")), Error);
    }

    TEST_CASE("json carries canonical names and six decimal supports")
    {
        const CorpusReport r = scan(test_support::fixture("corpus"));
        const nlohmann::json j = to_json(r);
        CHECK(j.at("pattern_counts").contains("OVERRIDE_USE_CASE"));
        CHECK(j.at("histogram").contains("Database"));
        for (const auto& item : j.at("itemsets"))
            CHECK(item.at("support").get<std::string>().size() == 8);
        CHECK(j.at("warnings").size() == 1);
    }

    TEST_CASE("text rendering")
    {
        CorpusReport r;
        r.root = "demo";
        r.pattern_counts[PatternId::HttpReverseProxy] = 3;
        r.pattern_counts[PatternId::AutoGeneration] = 0;
        r.structural_pattern_counts[PatternId::HttpReverseProxy] = 2;
        std::string text = render_report(r, OutputFormat::Text);
        CHECK(text.find("HTTP_REVERSE_PROXY") != std::string::npos);
        CHECK(text.find("AUTO_GENERATION") == std::string::npos);
        CHECK(text.find("Warnings") == std::string::npos);

        r.warnings.push_back("x.yml: YamlSyntaxError: bad");
        text = render_report(r, OutputFormat::Text);
        CHECK(text.find("Warnings") != std::string::npos);
        CHECK(text.find("x.yml: YamlSyntaxError: bad") != std::string::npos);
        CHECK(render_report(r, OutputFormat::Json).find("x.yml: YamlSyntaxError: bad") != std::string::npos);
    }

    TEST_CASE("strictness and pattern filters")
    {
        ScanOptions opts;
        opts.strictness = StrictnessOption::Structural;
        const CorpusReport structural = scan(test_support::fixture("patterns"), opts);
        CHECK(structural.structural_pattern_counts.empty());
        for (const auto& f : structural.files)
            for (const auto& p : f.findings)
                CHECK(p.strictness == Strictness::Structural);

        opts.strictness = StrictnessOption::CoOccurrence;
        opts.patterns_filter = std::set<PatternId>{PatternId::MailServiceTesting};
        const CorpusReport only_mail = scan(test_support::fixture("patterns"), opts);
        for (const auto& [id, n] : only_mail.pattern_counts)
            CHECK((n == 0 || id == PatternId::MailServiceTesting));
        CHECK(only_mail.pattern_counts.at(PatternId::MailServiceTesting) == 2);
    }

    TEST_CASE("explicit merge chains and reversed overrides")
    {
        test_support::TempDir dir;
        dir.write("docker-compose.yml", "services:\n  server:\n    ports: [\"32887:32887/udp\"]\n");
        dir.write("docker-compose.image.yml", "services:\n  server:\n    image: piqueserver/piqueserver\n");
        ScanOptions opts;
        opts.merge_chains = {{"docker-compose.yml", "docker-compose.image.yml"}};
        const CorpusReport r = scan(dir.path(), opts);
        const FileRecord* merged = record(r, "docker-compose.yml+docker-compose.image.yml");
        REQUIRE(merged != nullptr);
        REQUIRE(merged->notes.size() == 1);
        CHECK(merged->notes[0].starts_with("reversed override"));
        CHECK(render_report(r, OutputFormat::Text).find("Notes") != std::string::npos);
    }

    TEST_CASE("extends outside the filename filter")
    {
        const fs::path root = test_support::fixture("patterns/service_inheritance/positive_file");
        const CorpusReport followed = scan(root);
        const FileRecord* f = record(followed, "docker-compose.yml");
        REQUIRE(f != nullptr);
        CHECK_FALSE(f->error.has_value());
        CHECK(fired(*f, PatternId::ServiceInheritance));

        ScanOptions opts;
        opts.follow_extends_outside_filter = false;
        const CorpusReport strict = scan(root, opts);
        REQUIRE(record(strict, "docker-compose.yml") != nullptr);
        CHECK(record(strict, "docker-compose.yml")->error.has_value());
        CHECK(strict.warnings.size() == 1);
    }

    TEST_CASE("repository context")
    {
        const fs::path root = test_support::fixture("corpus/project-a");
        const RepoContext ctx = collect_repo_context(root, {{"docker-compose.yml", FileRole::Compose}});
        REQUIRE(ctx.readme_hits.size() == 1);
        CHECK(ctx.readme_hits[0].starts_with("README.md:3: "));
        const RepoContext scripts = collect_repo_context(test_support::fixture("patterns/auto_generation/positive_script"), {});
        CHECK(scripts.script_hits.size() >= 1);
    }

    TEST_CASE("prepended and appended rule tables")
    {
        test_support::TempDir dir;
        dir.write("first.tsv", "exact\tpostgres\tBackend\t10\n");
        dir.write("last.tsv", "exact\tunknowncorp/customthing\tChat\t10\n");
        ScanOptions opts;
        opts.prepend_rules_paths = {(dir.path() / "first.tsv").string()};
        opts.rules_paths = {(dir.path() / "last.tsv").string()};
        const RuleSet set = build_rule_set(opts);
        CHECK(classify_image("postgres", set).type == ServiceType::Backend);
        CHECK(classify_image("unknowncorp/customthing", set).type == ServiceType::Chat);

        dir.write("bad.tsv", "exact\tpostgres\n");
        opts.rules_paths = {(dir.path() / "bad.tsv").string()};
        CHECK_THROWS_AS(build_rule_set(opts), Error);
    }

    TEST_CASE("include unclassified")
    {
        ScanOptions opts;
        opts.include_unclassified = true;
        opts.min_support = 0.3;
        const CorpusReport r = scan(test_support::fixture("corpus"), opts);
        bool seen = false;
        for (const auto& it : r.itemsets)
            seen = seen || std::find(it.items.begin(), it.items.end(), ServiceType::Unclassified) != it.items.end();
        CHECK(seen);
    }

    TEST_CASE("catalog entries")
    {
        std::set<std::string> texts;
        for (PatternId id : kAllPatterns) {
            const std::string text = explain(id);
            CHECK(text.starts_with(pattern_code(id) + " - "));
            CHECK(text.size() > 200);
            texts.insert(text);
            CHECK(explain(pattern_code(id)) == text);
        }
        CHECK(texts.size() == 14);
        try {
            (void)explain(std::string_view("NOT_A_PATTERN"));
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnknownPattern);
            CHECK(std::string(e.what()).find("HTTP_REVERSE_PROXY") != std::string::npos);
        }
    }
}
