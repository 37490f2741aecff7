// Copyright 2026 The ulc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference implementations used as test oracles.

#ifndef ULC_TESTS_ORACLES_H_
#define ULC_TESTS_ORACLES_H_

#include <string>
#include <vector>

#include "ulc/types.h"

namespace ulc::oracle {

/// Subtyping read off the rules as a derivation search: contexts are
/// compared by trying every permutation of the larger one.
bool declarative_subtype(const Type& sub, const Type& super);

bool declarative_subtype_ctx(const NameContext& sub, const NameContext& super);

/// Every type of exactly `nodes` nodes (constructors plus context entries)
/// whose name contexts use each of `names` at most once, in sorted order.
std::vector<Type> types_of_size(int nodes, const std::vector<std::string>& names);

/// All types of at most `max_nodes` nodes.
std::vector<Type> types_up_to(int max_nodes, const std::vector<std::string>& names);

}  // namespace ulc::oracle

#endif  // ULC_TESTS_ORACLES_H_
