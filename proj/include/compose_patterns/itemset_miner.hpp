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
#include <set>
#include <string>
#include <vector>

#include "compose_patterns/service_classifier.hpp"

namespace compose_patterns {

struct Transaction {
    std::string file;
    std::set<ServiceType> items;
};

struct ItemsetResult {
    std::vector<ServiceType> items; // ordered by type name
    std::size_t count = 0;          // transactions containing every item
    std::size_t total = 0;

    double support() const;
    // Six decimals, rounded half up from the exact fraction: "0.529412".
    std::string support_text() const;

    friend bool operator==(const ItemsetResult&, const ItemsetResult&) = default;
};

inline constexpr double kDefaultMinSupport = 0.05;

std::string format_fraction(std::size_t count, std::size_t total);

// One transaction per file; Unclassified dropped unless asked for.
Transaction make_transaction(std::string file, const std::vector<ClassifiedService>& services,
                             bool include_unclassified = false);

// Orders by type name.
std::vector<ServiceType> sorted_by_name(const std::set<ServiceType>& items);

// Throws EmptyCorpus.
std::size_t support_count(const std::set<ServiceType>& items, const std::vector<Transaction>& transactions);
double support(const std::set<ServiceType>& items, const std::vector<Transaction>& transactions);

// Level-wise Apriori. Sorted by ascending support, then items by name.
// Throws EmptyCorpus or InvalidSupport.
std::vector<ItemsetResult> mine_frequent_itemsets(const std::vector<Transaction>& transactions, double min_support);

// Ascending support, then lexicographic type names.
bool itemset_precedes(const ItemsetResult& a, const ItemsetResult& b);

} // namespace compose_patterns
