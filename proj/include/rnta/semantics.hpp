#pragma once

#include <optional>
#include <string_view>

#include "rnta/automaton.hpp"

namespace rnta {

// How a data tree is matched against the accepted terms: Alphatic works on
// terms directly (alpha-closure of the literal language); the other three
// read data trees and differ in how fresh the names instantiating binders
// must be (globally, per branch, or only where a free occurrence below
// blocks renaming).
enum class SemanticsKind { Alphatic, Global, Branchwise, Local };

const char* semantics_name(SemanticsKind kind);
std::optional<SemanticsKind> parse_semantics(std::string_view s);

struct MemberOptions {
  // Global and Branchwise enumerate binder annotations of the input, two
  // choices per node that carries a plain name; inputs with more such
  // nodes than this are rejected with std::length_error.
  size_t max_annotation_nodes = 20;
};

// t is alpha-equivalent to some accepted term
bool member_alphatic(const RntaSpec& a, Term t);

// s lies in the data tree language of a under the given freshness
// discipline; s must be a data tree and kind must not be Alphatic
bool member_data(const RntaSpec& a, Term s, SemanticsKind kind,
                 const MemberOptions& opts = {});

// dispatcher: Alphatic takes any term, the rest take data trees
bool member(const RntaSpec& a, Term t, SemanticsKind kind,
            const MemberOptions& opts = {});

// every way of turning plain names of s into binders; used by the
// Global/Branchwise membership test and exposed for the test suite
std::vector<Term> binder_annotations(Term s, size_t max_nodes);

}  // namespace rnta
