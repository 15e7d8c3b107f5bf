#include "rnta/term.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace rnta {

struct SymbolAccess {
  static Symbol make(uint32_t id) { return Symbol(id); }
};

namespace {

struct SymbolPool {
  std::deque<std::string> spellings;
  std::unordered_map<std::string_view, uint32_t> index;
  std::mutex mu;
};

SymbolPool& symbol_pool() {
  static SymbolPool p;
  return p;
}

}  // namespace

Symbol Symbol::intern(std::string_view spelling) {
  if (spelling.empty()) throw std::invalid_argument("empty symbol spelling");
  SymbolPool& p = symbol_pool();
  std::lock_guard<std::mutex> lock(p.mu);
  auto it = p.index.find(spelling);
  if (it != p.index.end()) return SymbolAccess::make(it->second);
  uint32_t id = static_cast<uint32_t>(p.spellings.size());
  p.spellings.emplace_back(spelling);
  p.index.emplace(p.spellings.back(), id);
  return SymbolAccess::make(id);
}

const std::string& Symbol::str() const {
  SymbolPool& p = symbol_pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return p.spellings.at(id_);
}

void Signature::add(Symbol f, int arity) {
  if (arity < 0) throw std::invalid_argument("negative arity");
  for (auto& [g, n] : entries_) {
    if (g == f) {
      if (n != arity)
        throw std::invalid_argument("symbol " + f.str() +
                                    " redeclared with different arity");
      return;
    }
  }
  entries_.emplace_back(f, arity);
}

std::optional<int> Signature::arity(Symbol f) const {
  for (auto& [g, n] : entries_)
    if (g == f) return n;
  return std::nullopt;
}

int Signature::max_arity() const {
  int m = 0;
  for (auto& [g, n] : entries_) m = std::max(m, n);
  return m;
}

bool Signature::has_constant() const {
  for (auto& [g, n] : entries_)
    if (n == 0) return true;
  return false;
}

bool Signature::same_symbols(const Signature& other) const {
  auto a = entries_, b = other.entries_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// ---------------- term arena ----------------

namespace {

struct TermNode {
  Label label;
  Symbol symbol;
  uint32_t child_off;
  uint16_t child_count;
  uint16_t depth;
};

struct Arena {
  std::vector<TermNode> nodes;
  std::vector<uint32_t> child_pool;
  std::vector<uint32_t> table;  // open addressing, entry = node index + 1
  size_t used = 0;

  Arena() { table.assign(1 << 16, 0); }

  uint64_t hash_of(Label label, Symbol symbol, const uint32_t* kids,
                   size_t n) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(label.kind));
    mix(label.name.id());
    mix(symbol.id());
    mix(n);
    for (size_t i = 0; i < n; ++i) mix(kids[i]);
    return h;
  }

  bool equal(uint32_t idx, Label label, Symbol symbol, const uint32_t* kids,
             size_t n) const {
    const TermNode& nd = nodes[idx];
    if (nd.label != label || nd.symbol != symbol || nd.child_count != n)
      return false;
    const uint32_t* stored = child_pool.data() + nd.child_off;
    return std::equal(stored, stored + n, kids);
  }

  void grow() {
    std::vector<uint32_t> fresh(table.size() * 2, 0);
    size_t mask = fresh.size() - 1;
    for (uint32_t idx = 0; idx < nodes.size(); ++idx) {
      const TermNode& nd = nodes[idx];
      uint64_t h = hash_of(nd.label, nd.symbol, child_pool.data() + nd.child_off,
                           nd.child_count);
      size_t pos = h & mask;
      while (fresh[pos]) pos = (pos + 1) & mask;
      fresh[pos] = idx + 1;
    }
    table = std::move(fresh);
  }

  uint32_t intern(Label label, Symbol symbol, const uint32_t* kids, size_t n) {
    uint64_t h = hash_of(label, symbol, kids, n);
    size_t mask = table.size() - 1;
    size_t pos = h & mask;
    while (table[pos]) {
      uint32_t idx = table[pos] - 1;
      if (equal(idx, label, symbol, kids, n)) return idx;
      pos = (pos + 1) & mask;
    }
    if (nodes.size() >= UINT32_MAX - 1) throw std::length_error("term arena full");
    uint16_t depth = 1;
    for (size_t i = 0; i < n; ++i)
      depth = std::max<uint16_t>(depth, nodes[kids[i]].depth + 1);
    uint32_t idx = static_cast<uint32_t>(nodes.size());
    TermNode nd;
    nd.label = label;
    nd.symbol = symbol;
    nd.child_off = static_cast<uint32_t>(child_pool.size());
    nd.child_count = static_cast<uint16_t>(n);
    nd.depth = depth;
    child_pool.insert(child_pool.end(), kids, kids + n);
    nodes.push_back(nd);
    table[pos] = idx + 1;
    if (++used * 10 > table.size() * 7) grow();
    return idx;
  }
};

// Terms are not synchronized: construction and traversal are confined to one
// thread per process run.
Arena& arena() {
  static Arena a;
  return a;
}

}  // namespace

struct TermAccess {
  static Term make(uint32_t idx) { return Term(idx); }
};

Term Term::make(Label label, Symbol symbol, const std::vector<Term>& children) {
  if (!symbol.valid()) throw std::invalid_argument("term without symbol");
  if (children.size() > UINT16_MAX) throw std::length_error("arity too large");
  std::vector<uint32_t> kids(children.size());
  for (size_t i = 0; i < children.size(); ++i) {
    if (!children[i].valid()) throw std::invalid_argument("invalid child term");
    kids[i] = children[i].idx_;
  }
  return TermAccess::make(
      arena().intern(label, symbol, kids.data(), kids.size()));
}

Label Term::label() const { return arena().nodes[idx_].label; }
Symbol Term::symbol() const { return arena().nodes[idx_].symbol; }
size_t Term::arity() const { return arena().nodes[idx_].child_count; }

Term Term::child(size_t i) const {
  const TermNode& nd = arena().nodes[idx_];
  assert(i < nd.child_count);
  return TermAccess::make(arena().child_pool[nd.child_off + i]);
}

int Term::depth() const { return arena().nodes[idx_].depth; }

size_t term_arena_size() { return arena().nodes.size(); }

// ---------------- term operations ----------------

namespace {

void collect_names(Term t, std::vector<Name>& free_acc,
                   std::vector<Name>* bound_acc,
                   std::vector<Name>& scope) {
  Label l = t.label();
  if (l.is_bound()) {
    if (bound_acc) bound_acc->push_back(l.name);
    scope.push_back(l.name);
  } else {
    if (std::find(scope.begin(), scope.end(), l.name) == scope.end())
      free_acc.push_back(l.name);
  }
  for (size_t i = 0; i < t.arity(); ++i)
    collect_names(t.child(i), free_acc, bound_acc, scope);
  if (l.is_bound()) scope.pop_back();
}

}  // namespace

NameSet free_names(Term t) {
  std::vector<Name> acc, scope;
  collect_names(t, acc, nullptr, scope);
  return NameSet(std::move(acc));
}

NameSet all_names(Term t) {
  std::vector<Name> fr, bd, scope;
  collect_names(t, fr, &bd, scope);
  fr.insert(fr.end(), bd.begin(), bd.end());
  return NameSet(std::move(fr));
}

size_t node_count(Term t) {
  size_t n = 1;
  for (size_t i = 0; i < t.arity(); ++i) n += node_count(t.child(i));
  return n;
}

Term act(const Permutation& p, Term t) {
  if (p.is_identity()) return t;
  Label l = t.label();
  l.name = p(l.name);
  std::vector<Term> kids(t.arity());
  for (size_t i = 0; i < t.arity(); ++i) kids[i] = act(p, t.child(i));
  return Term::make(l, t.symbol(), kids);
}

bool alpha_eq(Term t, Term s) {
  if (t == s) return true;
  Label lt = t.label(), ls = s.label();
  if (lt.kind != ls.kind || t.symbol() != s.symbol() || t.arity() != s.arity())
    return false;
  size_t n = t.arity();
  if (!lt.is_bound() || lt.name == ls.name) {
    if (lt.name != ls.name) return false;
    for (size_t i = 0; i < n; ++i)
      if (!alpha_eq(t.child(i), s.child(i))) return false;
    return true;
  }
  // <a>(t1..tn) = <b>(s1..sn)  iff  (c a).ti = (c b).si for c fresh
  NameSet avoid = all_names(t).union_with(all_names(s));
  Name c = fresh_for(avoid);
  Permutation ca = Permutation::swap(c, lt.name);
  Permutation cb = Permutation::swap(c, ls.name);
  for (size_t i = 0; i < n; ++i)
    if (!alpha_eq(act(ca, t.child(i)), act(cb, s.child(i)))) return false;
  return true;
}

namespace {

void bound_multiplicity(Term t, std::unordered_map<uint32_t, int>& counts) {
  Label l = t.label();
  if (l.is_bound()) counts[l.name.id()]++;
  for (size_t i = 0; i < t.arity(); ++i) bound_multiplicity(t.child(i), counts);
}

bool branches_non_shadowing(Term t, std::vector<Name>& path) {
  Label l = t.label();
  if (l.is_bound()) {
    if (std::find(path.begin(), path.end(), l.name) != path.end()) return false;
    path.push_back(l.name);
  }
  for (size_t i = 0; i < t.arity(); ++i)
    if (!branches_non_shadowing(t.child(i), path)) return false;
  if (l.is_bound()) path.pop_back();
  return true;
}

}  // namespace

bool is_clean(Term t) {
  std::unordered_map<uint32_t, int> counts;
  bound_multiplicity(t, counts);
  NameSet fn = free_names(t);
  for (auto& [id, n] : counts) {
    if (n > 1) return false;
    if (fn.contains(Name::from_id(id))) return false;
  }
  return true;
}

bool is_non_shadowing(Term t) {
  NameSet fn = free_names(t);
  std::unordered_map<uint32_t, int> counts;
  bound_multiplicity(t, counts);
  for (auto& [id, n] : counts)
    if (fn.contains(Name::from_id(id))) return false;
  std::vector<Name> path;
  return branches_non_shadowing(t, path);
}

Term denu(Term t) {
  Label l = Label::free(t.label().name);
  std::vector<Term> kids(t.arity());
  for (size_t i = 0; i < t.arity(); ++i) kids[i] = denu(t.child(i));
  return Term::make(l, t.symbol(), kids);
}

bool is_data_tree(Term t) {
  if (t.label().is_bound()) return false;
  for (size_t i = 0; i < t.arity(); ++i)
    if (!is_data_tree(t.child(i))) return false;
  return true;
}

namespace {

Term clean_rec(Term t, NameSet& used,
               std::vector<std::pair<Name, Name>>& env) {
  Label l = t.label();
  std::vector<Term> kids(t.arity());
  if (l.is_bound()) {
    Name fresh = fresh_for(used);
    used.insert(fresh);
    env.emplace_back(l.name, fresh);
    for (size_t i = 0; i < t.arity(); ++i)
      kids[i] = clean_rec(t.child(i), used, env);
    env.pop_back();
    return Term::make(Label::bound(fresh), t.symbol(), kids);
  }
  Name n = l.name;
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == n) {
      n = it->second;
      break;
    }
  }
  for (size_t i = 0; i < t.arity(); ++i)
    kids[i] = clean_rec(t.child(i), used, env);
  return Term::make(Label::free(n), t.symbol(), kids);
}

}  // namespace

Term clean_variant(Term t) {
  NameSet used = all_names(t);
  std::vector<std::pair<Name, Name>> env;
  return clean_rec(t, used, env);
}

bool flat_leq(Term t, Term s) {
  Label lt = t.label(), ls = s.label();
  if (lt.name != ls.name || t.symbol() != s.symbol() || t.arity() != s.arity())
    return false;
  if (lt.is_bound() && !ls.is_bound()) return false;
  for (size_t i = 0; i < t.arity(); ++i)
    if (!flat_leq(t.child(i), s.child(i))) return false;
  return true;
}

namespace {

int display_cmp(Term a, Term b) {
  if (a == b) return 0;
  if (int d = a.depth() - b.depth()) return d;
  Label la = a.label(), lb = b.label();
  if (la.kind != lb.kind) return la.kind == LabelKind::Free ? -1 : 1;
  if (la.name != lb.name) return la.name < lb.name ? -1 : 1;
  if (a.symbol() != b.symbol()) return a.symbol() < b.symbol() ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (size_t i = 0; i < a.arity(); ++i)
    if (int d = display_cmp(a.child(i), b.child(i))) return d;
  return 0;
}

}  // namespace

bool term_display_less(Term a, Term b) { return display_cmp(a, b) < 0; }

}  // namespace rnta
