#pragma once

#include <string>
#include <vector>

#include "rnta/automaton.hpp"

namespace rnta {

// A classical bottom-up nondeterministic finite tree automaton whose
// alphabet is pairs of a node label (name or binder) and a symbol.
struct NftaRule {
  int state;  // the state reached at this node
  Label label;
  Symbol symbol;
  std::vector<int> children;
  bool operator==(const NftaRule&) const = default;
};

struct Nfta {
  Signature sig;
  std::vector<std::string> state_names;
  std::vector<NftaRule> rules;
  int initial = -1;

  int add_state(std::string name);
};

// Restriction to the names in S: one state per concrete state whose
// register values come from S, one rule per rule instance over those
// states.  Accepts exactly the members of the source language all of
// whose names lie in S.
Nfta restrict_to(const RntaSpec& a, const NameSet& S);

// Adds, for every rule reading a binder, the rule reading the same name
// free.  The result accepts every term obtained from an accepted one by
// removing some binders.
Nfta down_close(const Nfta& n);

bool nfta_member(const Nfta& n, Term t);

struct NftaInclusionResult {
  bool holds = false;
  Term witness;  // valid iff !holds: accepted by the left side only
};

// Antichain-based test for L(a) subset of L(b).  Negative answers carry a
// witness that is re-checked against both automata before being returned.
NftaInclusionResult nfta_inclusion(const Nfta& a, const Nfta& b);

}  // namespace rnta
