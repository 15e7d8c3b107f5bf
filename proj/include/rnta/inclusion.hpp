#pragma once

#include <optional>

#include "rnta/automaton.hpp"
#include "rnta/semantics.hpp"

namespace rnta {

// Plain names for cutting an automaton down to a finite alphabet:
// degree * (maximal arity) + 1 of them, plus the dummy when the automaton
// uses it.  Any set of that size works; this one is deterministic.
NameSet restriction_set(const RntaSpec& a);

struct IncludeResult {
  bool holds = false;
  std::optional<Term> witness;       // a term only the left side accepts
  std::optional<Term> witness_data;  // data tree separating the two data
                                     // tree languages (absent for Alphatic)
};

// Language inclusion of a in b under the chosen semantics: the alphatic
// languages for Alphatic, Global and Branchwise (the latter two agree with
// the former on inclusion), the data tree languages for Local.  Both
// automata must be valid and share one signature.
IncludeResult include(const RntaSpec& a, const RntaSpec& b,
                      SemanticsKind kind);

}  // namespace rnta
