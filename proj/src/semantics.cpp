#include "rnta/semantics.hpp"

#include <stdexcept>

#include "rnta/namedrop.hpp"

namespace rnta {

const char* semantics_name(SemanticsKind kind) {
  switch (kind) {
    case SemanticsKind::Alphatic: return "alphatic";
    case SemanticsKind::Global: return "global";
    case SemanticsKind::Branchwise: return "branchwise";
    case SemanticsKind::Local: return "local";
  }
  return "?";
}

std::optional<SemanticsKind> parse_semantics(std::string_view s) {
  if (s == "alphatic") return SemanticsKind::Alphatic;
  if (s == "global") return SemanticsKind::Global;
  if (s == "branchwise") return SemanticsKind::Branchwise;
  if (s == "local") return SemanticsKind::Local;
  return std::nullopt;
}

bool member_alphatic(const RntaSpec& a, Term t) {
  if (a.name_dropped) return accepts(a, t);
  return accepts(name_drop(a), t);
}

namespace {

size_t annotatable_nodes(Term s) {
  size_t n = s.label().kind == LabelKind::Free && !s.label().name.is_dummy();
  for (size_t i = 0; i < s.arity(); ++i) n += annotatable_nodes(s.child(i));
  return n;
}

// rebuild s with the mask deciding, per annotatable node in preorder,
// whether its name becomes bound
Term annotate(Term s, uint64_t mask, size_t& pos) {
  Label l = s.label();
  if (l.kind == LabelKind::Free && !l.name.is_dummy()) {
    if (mask & (uint64_t(1) << pos)) l = Label::bound(l.name);
    ++pos;
  }
  std::vector<Term> kids(s.arity());
  for (size_t i = 0; i < s.arity(); ++i) kids[i] = annotate(s.child(i), mask, pos);
  return Term::make(l, s.symbol(), kids);
}

}  // namespace

std::vector<Term> binder_annotations(Term s, size_t max_nodes) {
  size_t k = annotatable_nodes(s);
  if (k > max_nodes || k >= 63)
    throw std::length_error("too many nodes for annotation enumeration");
  std::vector<Term> out;
  out.reserve(size_t(1) << k);
  for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
    size_t pos = 0;
    out.push_back(annotate(s, mask, pos));
  }
  return out;
}

bool member_data(const RntaSpec& a, Term s, SemanticsKind kind,
                 const MemberOptions& opts) {
  if (kind == SemanticsKind::Alphatic)
    throw std::invalid_argument("alphatic semantics reads terms, not data trees");
  if (!is_data_tree(s)) throw std::invalid_argument("data tree expected");

  const RntaSpec* dropped = &a;
  RntaSpec storage;
  if (!a.name_dropped) {
    storage = name_drop(a);
    dropped = &storage;
  }

  if (kind == SemanticsKind::Local) return accepts_down(*dropped, s);

  size_t k = annotatable_nodes(s);
  if (k > opts.max_annotation_nodes || k >= 63)
    throw std::length_error("too many nodes for annotation enumeration");
  for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
    size_t pos = 0;
    Term t = annotate(s, mask, pos);
    bool admissible = kind == SemanticsKind::Global ? is_clean(t)
                                                    : is_non_shadowing(t);
    if (admissible && accepts(*dropped, t)) return true;
  }
  return false;
}

bool member(const RntaSpec& a, Term t, SemanticsKind kind,
            const MemberOptions& opts) {
  if (kind == SemanticsKind::Alphatic) return member_alphatic(a, t);
  return member_data(a, t, kind, opts);
}

}  // namespace rnta
