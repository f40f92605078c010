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

#include <string>
#include <string_view>

#include "compose_patterns/pattern_engine.hpp"

namespace compose_patterns {

struct CatalogEntry {
    std::string_view title;
    std::string_view motivation;
    std::string_view applicability;
    std::string_view detection;
    std::string_view advantages;
    std::string_view issues;
};

const CatalogEntry& catalog_entry(PatternId id);

std::string explain(PatternId id);
// Throws UnknownPattern listing the valid ids.
std::string explain(std::string_view pattern_name);

} // namespace compose_patterns
