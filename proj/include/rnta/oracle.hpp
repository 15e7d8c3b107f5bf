#pragma once

#include <vector>

#include "rnta/automaton.hpp"

// Slow, obviously-correct reference procedures used to cross-check the
// decision pipeline at small scale.  Everything here works by exhaustive
// enumeration over all terms with names in a fixed finite set S and bounded
// depth; nothing in this header calls into the restriction, name-dropping or
// inclusion machinery.

namespace rnta::oracle {

// All terms over sig with names in S and depth <= depth, ordered by depth,
// then label kind (free before bound), name id, symbol id, and children.
// The dummy name is never bound.  Returned sequences are cached and stay
// valid for the process lifetime.
const std::vector<Term>& enum_terms(const Signature& sig, const NameSet& S,
                                    int depth);

// Canonical representative of the alpha-class of t: binders are renamed
// top-down to reserved level names, so alpha_canon(t) == alpha_canon(s)
// exactly when alpha_eq(t, s).
Term alpha_canon(Term t);

// Canonical representative ids aligned with enum_terms(sig, S, depth).
const std::vector<uint32_t>& canon_ids(const Signature& sig, const NameSet& S,
                                       int depth);

// { t in enum_terms(a.sig, S, depth) : accepts(a, t) }, in enumeration
// order.  Computed bottom-up over the shared subterm structure, which keeps
// desk-scale language sweeps affordable.
std::vector<Term> brute_language(const RntaSpec& a, const NameSet& S,
                                 int depth);

// { s in enum_terms(sig, S, depth) : some t in L with alpha_eq(t, s) }
std::vector<Term> alpha_close(const std::vector<Term>& L, const Signature& sig,
                              const NameSet& S, int depth);

}  // namespace rnta::oracle
