#include "rnta/nfta.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rnta {

int Nfta::add_state(std::string name) {
  state_names.push_back(std::move(name));
  return static_cast<int>(state_names.size()) - 1;
}

namespace {

void injective_tuples(const std::vector<Name>& avail, size_t want,
                      std::vector<Name>& acc, std::vector<char>& taken,
                      std::vector<std::vector<Name>>& out) {
  if (acc.size() == want) {
    out.push_back(acc);
    return;
  }
  for (size_t i = 0; i < avail.size(); ++i) {
    if (taken[i]) continue;
    taken[i] = 1;
    acc.push_back(avail[i]);
    injective_tuples(avail, want, acc, taken, out);
    acc.pop_back();
    taken[i] = 0;
  }
}

std::string concrete_state_name(const Orbit& o, const std::vector<Name>& values) {
  if (values.empty()) return o.id;
  std::ostringstream s;
  s << o.id << '(';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s << ',';
    s << values[i].str();
  }
  s << ')';
  return s.str();
}

}  // namespace

Nfta restrict_to(const RntaSpec& a, const NameSet& S) {
  Nfta n;
  n.sig = a.sig;

  std::vector<Name> avail;  // possible register values: registers never
  for (Name x : S)          // hold the dummy
    if (!x.is_dummy()) avail.push_back(x);

  // states: per orbit, every injective assignment to the live registers
  std::vector<std::map<std::vector<Name>, int>> state_of(a.orbits.size());
  for (size_t oi = 0; oi < a.orbits.size(); ++oi) {
    size_t want = a.orbits[oi].live.size();
    if (want > avail.size()) continue;
    std::vector<std::vector<Name>> tuples;
    std::vector<Name> acc;
    std::vector<char> taken(avail.size(), 0);
    injective_tuples(avail, want, acc, taken, tuples);
    for (const std::vector<Name>& values : tuples)
      state_of[oi].emplace(values,
                           n.add_state(concrete_state_name(a.orbits[oi], values)));
  }
  if (auto it = state_of[a.initial].find({}); it != state_of[a.initial].end())
    n.initial = it->second;

  auto live_pos = [&](int orbit, int reg) {
    const std::vector<int>& live = a.orbits[orbit].live;
    return std::lower_bound(live.begin(), live.end(), reg) - live.begin();
  };

  for (const SymbolicRule& r : a.rules) {
    for (auto& [values, src_id] : state_of[r.source]) {
      const std::vector<Name>& rho = values;
      // child states under the rule's register maps; fails only when a
      // value tuple falls outside S, which cannot happen here
      auto pull = [&](Name fresh) {
        std::vector<int> children;
        for (const ChildSpec& cs : r.children) {
          std::vector<Name> cv(cs.regs.size());
          for (size_t k = 0; k < cs.regs.size(); ++k)
            cv[k] = cs.regs[k].source_reg == kFreshReg
                        ? fresh
                        : rho[live_pos(r.source, cs.regs[k].source_reg)];
          auto it = state_of[cs.orbit].find(cv);
          if (it == state_of[cs.orbit].end()) return std::vector<int>();
          children.push_back(it->second);
        }
        return children;
      };

      if (r.kind == RuleKind::Free) {
        Name letter = r.letter_reg == kDummyReg
                          ? Name::dummy()
                          : rho[live_pos(r.source, r.letter_reg)];
        if (letter.is_dummy() && !S.contains(letter)) continue;
        std::vector<int> children = pull(Name());
        if (children.size() != r.children.size()) continue;
        n.rules.push_back({src_id, Label::free(letter), r.symbol, children});
      } else {
        NameSet inherited;
        for (const ChildSpec& cs : r.children)
          for (const RegisterAssign& ra : cs.regs)
            if (ra.source_reg != kFreshReg)
              inherited.insert(rho[live_pos(r.source, ra.source_reg)]);
        for (Name letter : avail) {
          if (inherited.contains(letter)) continue;
          std::vector<int> children = pull(letter);
          if (children.size() != r.children.size()) continue;
          n.rules.push_back({src_id, Label::bound(letter), r.symbol, children});
        }
      }
    }
  }
  return n;
}

Nfta down_close(const Nfta& n) {
  Nfta out = n;
  auto seen = [&](const NftaRule& r) {
    return std::find(out.rules.begin(), out.rules.end(), r) != out.rules.end();
  };
  for (const NftaRule& r : n.rules) {
    if (!r.label.is_bound()) continue;
    NftaRule flat{r.state, Label::free(r.label.name), r.symbol, r.children};
    if (!seen(flat)) out.rules.push_back(std::move(flat));
  }
  return out;
}

namespace {

struct RuleIndex {
  // rules grouped by (label, symbol)
  std::map<std::pair<uint64_t, uint32_t>, std::vector<const NftaRule*>> buckets;

  explicit RuleIndex(const Nfta& n) {
    for (const NftaRule& r : n.rules) buckets[key(r.label, r.symbol)].push_back(&r);
  }

  static std::pair<uint64_t, uint32_t> key(Label l, Symbol f) {
    uint64_t packed = (static_cast<uint64_t>(l.kind) << 32) | l.name.id();
    return {packed, f.id()};
  }

  const std::vector<const NftaRule*>* find(Label l, Symbol f) const {
    auto it = buckets.find(key(l, f));
    return it == buckets.end() ? nullptr : &it->second;
  }
};

}  // namespace

bool nfta_member(const Nfta& n, Term t) {
  RuleIndex index(n);
  if (n.initial < 0) return false;

  // bottom-up: the set of states accepting each distinct subterm
  std::unordered_map<uint32_t, std::vector<char>> memo;
  auto states_of = [&](auto&& self, Term u) -> const std::vector<char>& {
    auto it = memo.find(u.id());
    if (it != memo.end()) return it->second;
    std::vector<char> acc(n.state_names.size(), 0);
    if (const auto* bucket = index.find(u.label(), u.symbol())) {
      for (const NftaRule* r : *bucket) {
        if (r->children.size() != u.arity()) continue;
        bool fire = true;
        for (size_t i = 0; fire && i < u.arity(); ++i)
          if (!self(self, u.child(i))[r->children[i]]) fire = false;
        if (fire) acc[r->state] = 1;
      }
    }
    return memo.emplace(u.id(), std::move(acc)).first->second;
  };
  return states_of(states_of, t)[n.initial] != 0;
}

namespace {

// Bottom-up reachable pairs (s, T): s a left state reachable by some term
// t, T the exact set of right states accepting t.  Inclusion fails iff a
// pair with s initial and T missing the right initial state is reachable.
// Pairs whose T is a superset of another pair's T for the same s are
// pruned; pruned pairs stay in the pool so provenance links stay valid.
struct InclusionSearch {
  const Nfta& a;
  const Nfta& b;
  RuleIndex b_index;

  std::vector<std::vector<uint64_t>> tsets;
  std::map<std::vector<uint64_t>, int> tset_ids;
  size_t words;

  struct Pair {
    int state;
    int tset;
    int rule;                      // index into a.rules
    std::vector<int> child_pairs;  // provenance
  };
  std::vector<Pair> pairs;
  std::vector<char> active;
  std::vector<std::vector<int>> active_by_state;  // per a-state
  std::deque<int> work;

  // rule positions mentioning a given a-state
  std::vector<std::vector<std::pair<int, int>>> uses;  // (rule, position)

  std::map<std::pair<std::pair<uint64_t, uint32_t>, std::vector<int>>, int>
      t_memo;

  InclusionSearch(const Nfta& a_, const Nfta& b_)
      : a(a_), b(b_), b_index(b_), words((b_.state_names.size() + 63) / 64) {
    active_by_state.resize(a.state_names.size());
    uses.resize(a.state_names.size());
    for (size_t ri = 0; ri < a.rules.size(); ++ri)
      for (size_t pos = 0; pos < a.rules[ri].children.size(); ++pos)
        uses[a.rules[ri].children[pos]].emplace_back(static_cast<int>(ri),
                                                     static_cast<int>(pos));
  }

  int intern(const std::vector<uint64_t>& bits) {
    auto [it, added] = tset_ids.emplace(bits, static_cast<int>(tsets.size()));
    if (added) tsets.push_back(bits);
    return it->second;
  }

  bool has(int tset, int state) const {
    return tsets[tset][state >> 6] & (1ull << (state & 63));
  }

  bool subset(int x, int y) const {
    for (size_t w = 0; w < words; ++w)
      if (tsets[x][w] & ~tsets[y][w]) return false;
    return true;
  }

  // exact right-state set for a node over children with the given T sets
  int t_of(Label l, Symbol f, const std::vector<int>& child_tsets) {
    auto key = std::pair(RuleIndex::key(l, f), child_tsets);
    auto it = t_memo.find(key);
    if (it != t_memo.end()) return it->second;
    std::vector<uint64_t> bits(words, 0);
    if (const auto* bucket = b_index.find(l, f)) {
      for (const NftaRule* r : *bucket) {
        if (r->children.size() != child_tsets.size()) continue;
        bool fire = true;
        for (size_t i = 0; fire && i < r->children.size(); ++i)
          if (!has(child_tsets[i], r->children[i])) fire = false;
        if (fire) bits[r->state >> 6] |= 1ull << (r->state & 63);
      }
    }
    int id = intern(bits);
    t_memo.emplace(std::move(key), id);
    return id;
  }

  // returns the id of a violating pair, or -1
  int add(int state, int tset, int rule, std::vector<int> child_pairs) {
    for (int pid : active_by_state[state])
      if (subset(pairs[pid].tset, tset)) return -1;  // subsumed

    int pid = static_cast<int>(pairs.size());
    pairs.push_back({state, tset, rule, std::move(child_pairs)});
    active.push_back(1);

    std::vector<int>& bucket = active_by_state[state];
    bucket.erase(std::remove_if(bucket.begin(), bucket.end(),
                                [&](int old) {
                                  if (!subset(tset, pairs[old].tset))
                                    return false;
                                  active[old] = 0;
                                  return true;
                                }),
                 bucket.end());
    bucket.push_back(pid);
    work.push_back(pid);

    if (state == a.initial && (b.initial < 0 || !has(tset, b.initial)))
      return pid;
    return -1;
  }

  // the term a pair's provenance spells out
  Term witness(int pid) const {
    const Pair& p = pairs[pid];
    const NftaRule& r = a.rules[p.rule];
    std::vector<Term> kids(p.child_pairs.size());
    for (size_t i = 0; i < kids.size(); ++i) kids[i] = witness(p.child_pairs[i]);
    return Term::make(r.label, r.symbol, kids);
  }

  int run() {
    for (size_t ri = 0; ri < a.rules.size(); ++ri) {
      const NftaRule& r = a.rules[ri];
      if (!r.children.empty()) continue;
      int v = add(r.state, t_of(r.label, r.symbol, {}),
                  static_cast<int>(ri), {});
      if (v >= 0) return v;
    }

    std::vector<int> pick_pair;
    std::vector<int> child_ts;
    while (!work.empty()) {
      int pid = work.front();
      work.pop_front();
      if (!active[pid]) continue;

      for (auto [ri, pos] : uses[pairs[pid].state]) {
        const NftaRule& r = a.rules[static_cast<size_t>(ri)];
        size_t n = r.children.size();
        pick_pair.assign(n, -1);
        pick_pair[pos] = pid;

        // every combination of active pairs at the other positions
        std::vector<size_t> idx(n, 0);
        int v = -1;
        auto descend = [&](auto&& self, size_t i) -> void {
          if (v >= 0) return;
          if (i == n) {
            child_ts.resize(n);
            for (size_t j = 0; j < n; ++j)
              child_ts[j] = pairs[pick_pair[j]].tset;
            v = add(r.state, t_of(r.label, r.symbol, child_ts), ri, pick_pair);
            return;
          }
          if (i == static_cast<size_t>(pos)) {
            self(self, i + 1);
            return;
          }
          // snapshot: additions while iterating would invalidate iterators
          std::vector<int> options = active_by_state[r.children[i]];
          for (int opt : options) {
            if (!active[opt]) continue;
            pick_pair[i] = opt;
            self(self, i + 1);
            if (v >= 0) return;
          }
        };
        descend(descend, 0);
        if (v >= 0) return v;
        if (!active[pid]) break;  // got subsumed by one of its own products
      }
    }
    return -1;
  }
};

}  // namespace

NftaInclusionResult nfta_inclusion(const Nfta& a, const Nfta& b) {
  if (a.initial < 0) return {true, Term()};

  InclusionSearch search(a, b);
  int violation = search.run();
  if (violation < 0) return {true, Term()};

  Term w = search.witness(violation);
  if (!nfta_member(a, w) || nfta_member(b, w))
    throw std::logic_error("inclusion counterexample failed re-check");
  return {false, w};
}

}  // namespace rnta
