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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace compose_patterns {

enum class Alternative { TwoSided, Greater, Less };
enum class StatsMethod { ExactEnumeration, NormalApproxTieCorrected };
// Auto picks exact when C(n+m, n) <= kExactCombinationLimit.
enum class MethodChoice { Auto, Exact, Asymptotic };

inline constexpr double kExactCombinationLimit = 200000.0;

std::string_view to_string(Alternative alternative);   // "two-sided", "greater", "less"
std::string_view to_string(StatsMethod method);
std::optional<Alternative> parse_alternative(std::string_view text);

struct StatsResult {
    double u_statistic = 0.0; // for sample a: R_a - n(n+1)/2
    double p_value = 1.0;
    StatsMethod method = StatsMethod::ExactEnumeration;
    Alternative alternative = Alternative::TwoSided;
};

// "greater" tests whether a tends to exceed b. Throws EmptySample.
StatsResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                           Alternative alternative = Alternative::TwoSided, MethodChoice method = MethodChoice::Auto);

enum class Magnitude { Negligible, Small, Medium, Large };

std::string_view to_string(Magnitude magnitude);
// |d| < 0.147 negligible, < 0.33 small, < 0.474 medium, otherwise large.
Magnitude magnitude_of(double delta);

struct EffectSize {
    double delta = 0.0;
    Magnitude magnitude = Magnitude::Negligible;
};

// Throws EmptySample.
EffectSize cliffs_delta(const std::vector<double>& a, const std::vector<double>& b);

struct Summary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

// Quartiles interpolate linearly between order statistics at (n-1)p.
// Throws EmptySample.
Summary summarize(const std::vector<double>& sample);

// C(n, k) as a double, saturating at infinity.
double binomial(std::size_t n, std::size_t k);

} // namespace compose_patterns
