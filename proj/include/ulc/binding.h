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

#ifndef ULC_BINDING_H_
#define ULC_BINDING_H_

#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ulc/syntax.h"

namespace ulc {

using VarSet = std::set<Variable>;

VarSet free_vars(const Term& t);
VarSet free_vars(const RebindingMap& s);

/// Simultaneous substitution: a finite map from variables to terms.
class Substitution {
 public:
  struct Entry {
    Variable var;
    Term term;
  };

  Substitution() = default;
  /// Throws std::invalid_argument on a repeated variable.
  explicit Substitution(std::vector<Entry> entries);
  Substitution(Variable v, Term t) : entries_{{std::move(v), std::move(t)}} {}

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  const Term* find(const Variable& v) const;

  /// Union of the free variables of the range terms.
  VarSet range_free_vars() const;

  /// sigma \ S
  Substitution without(const VarSet& vars) const;
  Substitution without(const Variable& v) const;

  /// Entries whose variable is in `vars`.
  Substitution restricted_to(const VarSet& vars) const;

 private:
  std::vector<Entry> entries_;
};

/// Deterministic supply of fresh variables: fresh(x, avoid) is `x#k` for the
/// smallest k >= 1 not in `avoid`, where x is stripped of any `#k` suffix.
class FreshSupply {
 public:
  Variable fresh(const Variable& base, const VarSet& avoid);

  /// Number of renamings performed so far.
  std::size_t renamings() const { return renamings_; }

 private:
  std::size_t renamings_ = 0;
};

/// Where a literal substitution failed its side condition.
struct SubstClash {
  Term node;
  Variable var;
};

using RawSubstResult = std::variant<Term, SubstClash>;

/// Literal partial substitution: no renaming, undefined whenever a binder or
/// unbinder occurs free in the substitution being pushed under it.
RawSubstResult subst_raw(const Term& t, const Substitution& sigma);

/// Capture-avoiding substitution. Renames an abstraction binder or an
/// unbinder only when it would capture a free variable of the substitution;
/// coincides with subst_raw wherever the latter is defined.
Term subst(const Term& t, const Substitution& sigma, FreshSupply& supply);

/// Equality up to consistent renaming of variables bound by abstractions and
/// unbinding maps. Names are compared exactly.
bool alpha_equiv(const Term& a, const Term& b);

/// All variables occurring in `t`, bound or free, including binders.
VarSet all_vars(const Term& t);

namespace testing_hooks {
/// When set, subst() ignores the capture side conditions entirely. Only
/// used by mutation tests; never set in production paths.
extern thread_local bool disable_capture_avoidance;
}  // namespace testing_hooks

}  // namespace ulc

#endif  // ULC_BINDING_H_
