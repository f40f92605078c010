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

#include "compose_patterns/itemset_miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "compose_patterns/error.hpp"

namespace compose_patterns {

namespace {

using Itemset = std::vector<ServiceType>; // ascending enum order while mining

bool contains_all(const std::set<ServiceType>& haystack, const Itemset& items)
{
    return std::all_of(items.begin(), items.end(), [&](ServiceType t) { return haystack.contains(t); });
}

bool meets(std::size_t count, std::size_t total, double min_support)
{
    return static_cast<double>(count) / static_cast<double>(total) + 1e-12 >= min_support;
}

std::vector<std::string> names_of(const std::vector<ServiceType>& items)
{
    std::vector<std::string> out;
    for (ServiceType t : items)
        out.emplace_back(to_string(t));
    return out;
}

} // namespace

double ItemsetResult::support() const
{
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
}

std::string ItemsetResult::support_text() const
{
    return format_fraction(count, total);
}

std::string format_fraction(std::size_t count, std::size_t total)
{
    if (total == 0)
        return "0.000000";
    const unsigned long long scaled =
        (static_cast<unsigned long long>(count) * 2000000ULL + total) / (2ULL * total);
    std::string fraction = std::to_string(scaled % 1000000ULL);
    fraction.insert(0, 6 - fraction.size(), '0');
    return std::to_string(scaled / 1000000ULL) + "." + fraction;
}

Transaction make_transaction(std::string file, const std::vector<ClassifiedService>& services, bool include_unclassified)
{
    Transaction t{std::move(file), {}};
    for (const auto& s : services)
        if (include_unclassified || s.service_type != ServiceType::Unclassified)
            t.items.insert(s.service_type);
    return t;
}

std::vector<ServiceType> sorted_by_name(const std::set<ServiceType>& items)
{
    std::vector<ServiceType> out(items.begin(), items.end());
    std::sort(out.begin(), out.end(), [](ServiceType a, ServiceType b) { return to_string(a) < to_string(b); });
    return out;
}

std::size_t support_count(const std::set<ServiceType>& items, const std::vector<Transaction>& transactions)
{
    if (transactions.empty())
        throw Error(ErrorCode::EmptyCorpus, "no transactions");
    const Itemset wanted(items.begin(), items.end());
    return static_cast<std::size_t>(std::count_if(transactions.begin(), transactions.end(),
                                                  [&](const Transaction& t) { return contains_all(t.items, wanted); }));
}

double support(const std::set<ServiceType>& items, const std::vector<Transaction>& transactions)
{
    const std::size_t count = support_count(items, transactions);
    return static_cast<double>(count) / static_cast<double>(transactions.size());
}

bool itemset_precedes(const ItemsetResult& a, const ItemsetResult& b)
{
    // Cross-multiplied so results from different totals still compare exactly.
    const auto lhs = static_cast<unsigned long long>(a.count) * b.total;
    const auto rhs = static_cast<unsigned long long>(b.count) * a.total;
    if (lhs != rhs)
        return lhs < rhs;
    return names_of(a.items) < names_of(b.items);
}

std::vector<ItemsetResult> mine_frequent_itemsets(const std::vector<Transaction>& transactions, double min_support)
{
    if (transactions.empty())
        throw Error(ErrorCode::EmptyCorpus, "no transactions to mine");
    if (!(min_support > 0.0) || min_support > 1.0)
        throw Error(ErrorCode::InvalidSupport, "min_support must be in (0, 1], got " + std::to_string(min_support));

    const std::size_t total = transactions.size();
    std::vector<ItemsetResult> results;

    std::map<ServiceType, std::size_t> singles;
    for (const auto& t : transactions)
        for (ServiceType item : t.items)
            ++singles[item];

    std::vector<Itemset> level;
    for (const auto& [item, count] : singles) {
        if (!meets(count, total, min_support))
            continue;
        level.push_back({item});
        results.push_back({{item}, count, total});
    }

    while (!level.empty()) {
        std::set<Itemset> frequent(level.begin(), level.end());
        std::vector<Itemset> candidates;
        for (std::size_t i = 0; i < level.size(); ++i) {
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const Itemset& a = level[i];
                const Itemset& b = level[j];
                if (!std::equal(a.begin(), a.end() - 1, b.begin()))
                    continue;
                Itemset joined = a;
                joined.push_back(b.back());
                std::sort(joined.begin(), joined.end());
                // Downward closure: every (k-1)-subset must itself be frequent.
                bool keep = true;
                for (std::size_t drop = 0; keep && drop < joined.size(); ++drop) {
                    Itemset subset;
                    for (std::size_t k = 0; k < joined.size(); ++k)
                        if (k != drop)
                            subset.push_back(joined[k]);
                    keep = frequent.contains(subset);
                }
                if (keep)
                    candidates.push_back(std::move(joined));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::vector<Itemset> next;
        for (const auto& candidate : candidates) {
            std::size_t count = 0;
            for (const auto& t : transactions)
                if (contains_all(t.items, candidate))
                    ++count;
            if (!meets(count, total, min_support))
                continue;
            next.push_back(candidate);
            results.push_back({candidate, count, total});
        }
        level = std::move(next);
    }

    for (auto& r : results)
        std::sort(r.items.begin(), r.items.end(), [](ServiceType a, ServiceType b) { return to_string(a) < to_string(b); });
    std::sort(results.begin(), results.end(), itemset_precedes);
    return results;
}

} // namespace compose_patterns
