#pragma once

#include "rnta/automaton.hpp"

namespace rnta {

// The name-dropping modification.  For every orbit with registers 1..k the
// result has one orbit per subset D of live registers; rules are lifted to
// all register subsets a child can still afford once the source forgets the
// rest.  The literal language of the result is the alpha-closure of the
// literal language of a, at the price of an orbit factor of at most 2^degree.
// Rejects specs that are already name-dropped.
RntaSpec name_drop(const RntaSpec& a);

// True when every rule of a reappears in b on the orbits with all registers
// live.  With b = name_drop(a) this witnesses that the modification only
// adds rules; with b = a it is the identity embedding.
bool check_subautomaton(const RntaSpec& a, const RntaSpec& b);

// Orbit id used for the subset D of base orbit id, e.g. "q1@{1,3}".
std::string dropped_orbit_id(const std::string& base,
                             const std::vector<int>& subset);

}  // namespace rnta
