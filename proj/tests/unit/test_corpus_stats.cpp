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

#include <cmath>
#include <numeric>
#include <random>

#include "compose_patterns/corpus_stats.hpp"
#include "compose_patterns/error.hpp"
#include "oracles.hpp"

using namespace compose_patterns;

namespace {

std::vector<double> random_sample(std::mt19937& rng, std::size_t n, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<double> out(n);
    for (auto& x : out)
        x = dist(rng);
    return out;
}

// Distinct values drawn without replacement from a shared pool.
std::pair<std::vector<double>, std::vector<double>> tie_free(std::mt19937& rng, std::size_t n, std::size_t m, double shift)
{
    std::vector<double> pool(1000);
    std::iota(pool.begin(), pool.end(), 0.0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<double> a(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> b(pool.begin() + static_cast<std::ptrdiff_t>(n), pool.begin() + static_cast<std::ptrdiff_t>(n + m));
    for (auto& x : a)
        x += shift + 0.5;
    return {a, b};
}

} // namespace

TEST_SUITE("corpus-stats")
{
    TEST_CASE("mann whitney examples")
    {
        StatsResult r = mann_whitney_u({1, 2}, {3, 4});
        CHECK(r.u_statistic == 0.0);
        CHECK(r.method == StatsMethod::ExactEnumeration);
        CHECK(std::abs(r.p_value - 1.0 / 3.0) < 1e-12);

        r = mann_whitney_u({5}, {5});
        CHECK(r.u_statistic == 0.5);
        CHECK(r.p_value == 1.0);

        r = mann_whitney_u({10, 11, 12}, {1, 2, 3}, Alternative::Greater);
        CHECK(r.u_statistic == 9.0);
        CHECK(std::abs(r.p_value - 0.05) < 1e-12);
        CHECK(r.alternative == Alternative::Greater);

        r = mann_whitney_u({10, 11, 12}, {1, 2, 3}, Alternative::Less);
        CHECK(r.p_value == doctest::Approx(1.0));
    }

    TEST_CASE("empty samples")
    {
        CHECK_THROWS_AS(mann_whitney_u({}, {1}), Error);
        CHECK_THROWS_AS(cliffs_delta({1}, {}), Error);
        CHECK_THROWS_AS(summarize({}), Error);
    }

    TEST_CASE("exact p equals split enumeration, with and without ties")
    {
        std::mt19937 rng(3);
        for (int round = 0; round < 60; ++round) {
            const std::size_t n = 1 + rng() % 6;
            const std::size_t m = 1 + rng() % 6;
            const auto a = random_sample(rng, n, 0, 6);
            const auto b = random_sample(rng, m, 0, 6);
            const auto oracle = test_support::brute_force_mann_whitney(a, b);
            const StatsResult g = mann_whitney_u(a, b, Alternative::Greater, MethodChoice::Exact);
            const StatsResult l = mann_whitney_u(a, b, Alternative::Less, MethodChoice::Exact);
            const StatsResult t = mann_whitney_u(a, b, Alternative::TwoSided, MethodChoice::Exact);
            CHECK(g.u_statistic == oracle.u);
            CHECK(g.p_value == doctest::Approx(oracle.p_greater).epsilon(1e-12));
            CHECK(l.p_value == doctest::Approx(oracle.p_less).epsilon(1e-12));
            CHECK(t.p_value == doctest::Approx(std::min(1.0, 2.0 * std::min(oracle.p_greater, oracle.p_less))).epsilon(1e-12));
        }
    }

    TEST_CASE("exact and normal approximation agree on tie-free samples")
    {
        std::mt19937 rng(11);
        for (int round = 0; round < 50; ++round) {
            const std::size_t n = 8 + rng() % 8;
            const std::size_t m = 8 + rng() % 8;
            const auto [a, b] = tie_free(rng, n, m, 0.0);
            const double exact = mann_whitney_u(a, b, Alternative::TwoSided, MethodChoice::Exact).p_value;
            const double approx = mann_whitney_u(a, b, Alternative::TwoSided, MethodChoice::Asymptotic).p_value;
            CHECK(std::abs(exact - approx) <= 0.02);
        }
    }

    TEST_CASE("method selection")
    {
        std::mt19937 rng(5);
        auto [a, b] = tie_free(rng, 8, 8, 0.0);
        CHECK(mann_whitney_u(a, b).method == StatsMethod::ExactEnumeration);
        auto [c, d] = tie_free(rng, 30, 30, 0.0);
        const StatsResult big = mann_whitney_u(c, d);
        CHECK(big.method == StatsMethod::NormalApproxTieCorrected);
        CHECK(big.p_value >= 0.0);
        CHECK(big.p_value <= 1.0);
        CHECK(binomial(4, 2) == 6.0);
        CHECK(binomial(60, 30) > kExactCombinationLimit);
        CHECK(binomial(3, 5) == 0.0);
    }

    TEST_CASE("p values stay in range and shifting drives greater p toward zero")
    {
        std::mt19937 rng(9);
        double previous = 1.0;
        for (double shift : {0.0, 50.0, 200.0, 2000.0}) {
            auto [a, b] = tie_free(rng, 20, 20, 0.0);
            for (auto& x : a)
                x += shift;
            const StatsResult r = mann_whitney_u(a, b, Alternative::Greater);
            CHECK(r.p_value >= 0.0);
            CHECK(r.p_value <= 1.0);
            if (shift >= 2000.0) {
                CHECK(r.p_value <= previous);
                CHECK(r.p_value < 1e-6);
                CHECK(cliffs_delta(a, b).delta == 1.0);
            }
            previous = std::min(previous, r.p_value);
        }
    }

    TEST_CASE("cliffs delta examples")
    {
        EffectSize e = cliffs_delta({1, 2, 3}, {1, 2, 3});
        CHECK(e.delta == 0.0);
        CHECK(e.magnitude == Magnitude::Negligible);
        e = cliffs_delta({4, 5}, {1, 2});
        CHECK(e.delta == 1.0);
        CHECK(e.magnitude == Magnitude::Large);
        CHECK(cliffs_delta({1, 3}, {2}).delta == 0.0);
    }

    TEST_CASE("magnitude thresholds")
    {
        CHECK(magnitude_of(0.0) == Magnitude::Negligible);
        CHECK(magnitude_of(0.146) == Magnitude::Negligible);
        CHECK(magnitude_of(0.147) == Magnitude::Small);
        CHECK(magnitude_of(-0.33) == Magnitude::Medium);
        CHECK(magnitude_of(0.473) == Magnitude::Medium);
        CHECK(magnitude_of(0.474) == Magnitude::Large);
        CHECK(magnitude_of(-0.474) == Magnitude::Large);
        CHECK(magnitude_of(0.82) == Magnitude::Large);
        CHECK(to_string(Magnitude::Large) == "large");
    }

    TEST_CASE("delta equals pairwise brute force and is antisymmetric")
    {
        std::mt19937 rng(1);
        for (int round = 0; round < 200; ++round) {
            const auto a = random_sample(rng, 1 + rng() % 40, -20, 20);
            const auto b = random_sample(rng, 1 + rng() % 40, -20, 20);
            const double d = cliffs_delta(a, b).delta;
            CHECK(d == test_support::brute_force_delta(a, b));
            CHECK(cliffs_delta(b, a).delta == -d);
            CHECK(std::abs(d) <= 1.0);
            CHECK((cliffs_delta(a, b).magnitude == Magnitude::Large) == (std::abs(d) >= 0.474));
        }
    }

    TEST_CASE("summaries")
    {
        Summary s = summarize({1, 2, 3, 4, 5});
        CHECK(s.median == 3.0);
        CHECK(s.q1 == 2.0);
        CHECK(s.q3 == 4.0);
        CHECK(s.n == 5);
        s = summarize({7});
        CHECK(s.min == 7.0);
        CHECK(s.q1 == 7.0);
        CHECK(s.median == 7.0);
        CHECK(s.q3 == 7.0);
        CHECK(s.max == 7.0);
        s = summarize({4, 1, 3, 2});
        CHECK(s.median == 2.5);
        CHECK(s.q1 == 1.75);
        CHECK(s.q3 == 3.25);
        CHECK(s.min == 1.0);
        CHECK(s.max == 4.0);
    }

    TEST_CASE("alternative names")
    {
        for (Alternative a : {Alternative::TwoSided, Alternative::Greater, Alternative::Less})
            CHECK(parse_alternative(to_string(a)) == a);
        CHECK(to_string(Alternative::TwoSided) == "two-sided");
        CHECK_FALSE(parse_alternative("sideways").has_value());
    }
}
