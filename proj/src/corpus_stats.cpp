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

#include "compose_patterns/corpus_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace {

void require_non_empty(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.empty() || b.empty())
        throw Error(ErrorCode::EmptySample, "both samples must be non-empty");
}

struct Ranking {
    std::vector<long long> doubled_ranks; // 2 * midrank, so ties stay integral
    double tie_term = 0.0;                // sum of t^3 - t over tie groups
};

Ranking rank_pooled(const std::vector<double>& pooled)
{
    std::vector<std::size_t> order(pooled.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });

    Ranking r;
    r.doubled_ranks.assign(pooled.size(), 0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]])
            ++j;
        // Positions i..j share the midrank ((i+1) + (j+1)) / 2.
        const long long doubled = static_cast<long long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k)
            r.doubled_ranks[order[k]] = doubled;
        const double t = static_cast<double>(j - i + 1);
        r.tie_term += t * t * t - t;
        i = j + 1;
    }
    return r;
}

// Tail counts of the doubled rank sum over all n-subsets.
struct TailCounts {
    double at_most = 0.0;
    double at_least = 0.0;
    double total = 0.0;
};

void enumerate(const std::vector<long long>& ranks, std::size_t start, std::size_t remaining, long long sum,
               long long observed, TailCounts& out)
{
    if (remaining == 0) {
        out.total += 1.0;
        if (sum <= observed)
            out.at_most += 1.0;
        if (sum >= observed)
            out.at_least += 1.0;
        return;
    }
    for (std::size_t i = start; i + remaining <= ranks.size(); ++i)
        enumerate(ranks, i + 1, remaining - 1, sum + ranks[i], observed, out);
}

// Same counts by dynamic programming over (chosen, sum); used when the number
// of subsets is too large to walk one by one.
TailCounts count_by_table(const std::vector<long long>& ranks, std::size_t n, long long observed)
{
    const long long max_sum = std::accumulate(ranks.begin(), ranks.end(), 0LL);
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        const auto r = static_cast<std::size_t>(ranks[i]);
        for (std::size_t k = std::min(n, i + 1); k >= 1; --k)
            for (std::size_t s = max_sum; s + 1 > r; --s)
                ways[k][s] += ways[k - 1][s - r];
    }
    TailCounts out;
    for (std::size_t s = 0; s <= static_cast<std::size_t>(max_sum); ++s) {
        const double w = ways[n][s];
        out.total += w;
        if (static_cast<long long>(s) <= observed)
            out.at_most += w;
        if (static_cast<long long>(s) >= observed)
            out.at_least += w;
    }
    return out;
}

double normal_sf(double z)
{
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double clamp01(double p)
{
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

std::string_view to_string(Alternative alternative)
{
    switch (alternative) {
    case Alternative::TwoSided: return "two-sided";
    case Alternative::Greater: return "greater";
    case Alternative::Less: return "less";
    }
    return "two-sided";
}

std::string_view to_string(StatsMethod method)
{
    return method == StatsMethod::ExactEnumeration ? "ExactEnumeration" : "NormalApproxTieCorrected";
}

std::optional<Alternative> parse_alternative(std::string_view text)
{
    for (Alternative a : {Alternative::TwoSided, Alternative::Greater, Alternative::Less})
        if (to_string(a) == text)
            return a;
    return std::nullopt;
}

double binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
        if (!std::isfinite(result))
            return std::numeric_limits<double>::infinity();
    }
    return std::round(result);
}

StatsResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b, Alternative alternative,
                           MethodChoice method)
{
    require_non_empty(a, b);
    const std::size_t n = a.size();
    const std::size_t m = b.size();

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const Ranking ranking = rank_pooled(pooled);

    long long doubled_rank_sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        doubled_rank_sum += ranking.doubled_ranks[i];

    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    StatsResult result;
    result.alternative = alternative;
    result.u_statistic = static_cast<double>(doubled_rank_sum) / 2.0 - nd * (nd + 1.0) / 2.0;

    const double subsets = binomial(n + m, n);
    const bool exact = method == MethodChoice::Exact ||
                       (method == MethodChoice::Auto && subsets <= kExactCombinationLimit);

    if (exact) {
        result.method = StatsMethod::ExactEnumeration;
        TailCounts tails;
        if (subsets <= 2.0e6)
            enumerate(ranking.doubled_ranks, 0, n, 0, doubled_rank_sum, tails);
        else
            tails = count_by_table(ranking.doubled_ranks, n, doubled_rank_sum);
        const double lower = tails.at_most / tails.total;
        const double upper = tails.at_least / tails.total;
        switch (alternative) {
        case Alternative::Greater: result.p_value = upper; break;
        case Alternative::Less: result.p_value = lower; break;
        case Alternative::TwoSided: result.p_value = std::min(1.0, 2.0 * std::min(lower, upper)); break;
        }
        result.p_value = clamp01(result.p_value);
        return result;
    }

    result.method = StatsMethod::NormalApproxTieCorrected;
    const double big_n = nd + md;
    const double mean = nd * md / 2.0;
    const double variance = nd * md / 12.0 * ((big_n + 1.0) - ranking.tie_term / (big_n * (big_n - 1.0)));
    if (!(variance > 0.0)) {
        result.p_value = 1.0;
        return result;
    }
    const double sd = std::sqrt(variance);
    const double u = result.u_statistic;
    switch (alternative) {
    case Alternative::Greater: result.p_value = normal_sf((u - mean - 0.5) / sd); break;
    case Alternative::Less: result.p_value = 1.0 - normal_sf((u - mean + 0.5) / sd); break;
    case Alternative::TwoSided: result.p_value = 2.0 * normal_sf((std::abs(u - mean) - 0.5) / sd); break;
    }
    result.p_value = clamp01(result.p_value);
    return result;
}

std::string_view to_string(Magnitude magnitude)
{
    switch (magnitude) {
    case Magnitude::Negligible: return "negligible";
    case Magnitude::Small: return "small";
    case Magnitude::Medium: return "medium";
    case Magnitude::Large: return "large";
    }
    return "negligible";
}

Magnitude magnitude_of(double delta)
{
    const double d = std::abs(delta);
    if (d < 0.147)
        return Magnitude::Negligible;
    if (d < 0.33)
        return Magnitude::Small;
    if (d < 0.474)
        return Magnitude::Medium;
    return Magnitude::Large;
}

EffectSize cliffs_delta(const std::vector<double>& a, const std::vector<double>& b)
{
    require_non_empty(a, b);
    std::vector<double> sorted_b(b);
    std::sort(sorted_b.begin(), sorted_b.end());
    long long greater = 0;
    long long less = 0;
    for (double x : a) {
        greater += std::lower_bound(sorted_b.begin(), sorted_b.end(), x) - sorted_b.begin();
        less += sorted_b.end() - std::upper_bound(sorted_b.begin(), sorted_b.end(), x);
    }
    EffectSize out;
    out.delta = static_cast<double>(greater - less) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    out.magnitude = magnitude_of(out.delta);
    return out;
}

Summary summarize(const std::vector<double>& sample)
{
    if (sample.empty())
        throw Error(ErrorCode::EmptySample, "sample is empty");
    std::vector<double> x(sample);
    std::sort(x.begin(), x.end());
    auto quantile = [&](double p) {
        const double h = static_cast<double>(x.size() - 1) * p;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        if (lo + 1 >= x.size())
            return x.back();
        return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
    };
    return Summary{x.front(), quantile(0.25), quantile(0.5), quantile(0.75), x.back(), x.size()};
}

} // namespace compose_patterns
