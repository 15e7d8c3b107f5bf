#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnta/names.hpp"

namespace rnta {

// An interned operation symbol.  Like names, symbols live in a process-global
// table; a Signature assigns arities to the symbols an automaton may use.
class Symbol {
 public:
  Symbol() : id_(UINT32_MAX) {}

  static Symbol intern(std::string_view spelling);

  uint32_t id() const { return id_; }
  const std::string& str() const;
  bool valid() const { return id_ != UINT32_MAX; }

  auto operator<=>(const Symbol&) const = default;

 private:
  explicit Symbol(uint32_t id) : id_(id) {}
  friend struct SymbolAccess;
  uint32_t id_;
};

class Signature {
 public:
  void add(Symbol f, int arity);
  std::optional<int> arity(Symbol f) const;
  bool contains(Symbol f) const { return arity(f).has_value(); }

  int max_arity() const;
  bool has_constant() const;

  // declaration order
  const std::vector<std::pair<Symbol, int>>& entries() const {
    return entries_;
  }

  // order-insensitive comparison, used when two automata must agree
  bool same_symbols(const Signature& other) const;

 private:
  std::vector<std::pair<Symbol, int>> entries_;
};

enum class LabelKind : uint8_t { Free, Bound };

// The label of a node: either a plain (free) name "a." or a binder "nu a.".
// Unlabelled nodes carry the free dummy name.
struct Label {
  LabelKind kind = LabelKind::Free;
  Name name;

  static Label free(Name a) { return {LabelKind::Free, a}; }
  static Label bound(Name a) { return {LabelKind::Bound, a}; }

  bool is_bound() const { return kind == LabelKind::Bound; }
  bool operator==(const Label&) const = default;
};

// An immutable tree over labelled symbols.  Terms are hash-consed into a
// global arena: equal structure means equal handle, so operator== is literal
// structural equality (never alpha-aware) at pointer cost.  Handles stay
// valid for the lifetime of the process.
class Term {
 public:
  Term() : idx_(UINT32_MAX) {}

  static Term make(Label label, Symbol symbol, const std::vector<Term>& children);
  static Term leaf(Label label, Symbol symbol) { return make(label, symbol, {}); }

  bool valid() const { return idx_ != UINT32_MAX; }
  Label label() const;
  Symbol symbol() const;
  size_t arity() const;
  Term child(size_t i) const;
  // height of the tree; a leaf has depth 1
  int depth() const;

  // arena index: a dense id usable as a hash or map key
  uint32_t id() const { return idx_; }

  bool operator==(const Term&) const = default;
  // arena order; for the display order see term_display_less
  bool operator<(const Term& o) const { return idx_ < o.idx_; }

 private:
  explicit Term(uint32_t idx) : idx_(idx) {}
  friend struct TermAccess;
  uint32_t idx_;
};

// number of term nodes currently interned (monotone; used for scratch sizing)
size_t term_arena_size();

NameSet free_names(Term t);
NameSet all_names(Term t);
size_t node_count(Term t);

// permutation action: renames free and bound occurrences alike
Term act(const Permutation& p, Term t);

// alpha-equivalence via the fresh-swap characterization of name abstraction
bool alpha_eq(Term t, Term s);

// every bound name is bound once, and no bound name occurs free in t
bool is_clean(Term t);
// the same, but distinctness is only required along each root-to-leaf branch
bool is_non_shadowing(Term t);

// forgets the binders: nu a.f(...) becomes a.f(...)
Term denu(Term t);
bool is_data_tree(Term t);

// alpha-equivalent clean variant: every binder is renamed to a name that
// occurs nowhere else in the result
Term clean_variant(Term t);

// t arises from s by removing some binders (pointwise label order)
bool flat_leq(Term t, Term s);

// total order used for printed listings: by depth, then label kind, name id,
// symbol id, then children lexicographically
bool term_display_less(Term a, Term b);

}  // namespace rnta
