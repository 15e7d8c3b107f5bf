#include "rnta/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace rnta::oracle {

namespace {

// ---------------- universe cache ----------------

struct Universe {
  std::vector<Term> terms;
  std::vector<size_t> depth_end;     // terms[0 .. depth_end[d]) have depth <= d
  std::vector<uint32_t> canon;       // lazy
  std::unordered_map<uint32_t, uint32_t> pos;  // term id -> index, lazy
};

std::string universe_key(const Signature& sig, const NameSet& S, int depth) {
  std::ostringstream k;
  k << depth << ';';
  for (Name a : S) k << a.id() << ',';
  k << ';';
  std::vector<std::pair<Symbol, int>> entries = sig.entries();
  std::sort(entries.begin(), entries.end());
  for (auto& [f, n] : entries) k << f.id() << ':' << n << ',';
  return k.str();
}

Universe build_universe(const Signature& sig, const NameSet& S, int depth) {
  Universe u;
  u.depth_end.assign(1, 0);
  if (depth < 1) return u;

  std::vector<Label> labels;
  for (Name a : S) labels.push_back(Label::free(a));
  for (Name a : S)
    if (!a.is_dummy()) labels.push_back(Label::bound(a));

  std::vector<std::pair<Symbol, int>> symbols = sig.entries();
  std::sort(symbols.begin(), symbols.end());

  for (Label l : labels)
    for (auto& [f, n] : symbols)
      if (n == 0) u.terms.push_back(Term::leaf(l, f));
  u.depth_end.push_back(u.terms.size());

  for (int d = 2; d <= depth; ++d) {
    size_t below = u.depth_end[d - 1];      // children of depth <= d-1
    size_t inner = u.depth_end[d - 2];      // strictly smaller depth
    for (Label l : labels) {
      for (auto& [f, n] : symbols) {
        if (n == 0) continue;
        std::vector<size_t> pick(n, 0);
        std::vector<Term> kids(n);
        while (true) {
          bool tall = false;
          for (int i = 0; i < n; ++i)
            if (pick[i] >= inner) tall = true;
          if (tall) {
            for (int i = 0; i < n; ++i) kids[i] = u.terms[pick[i]];
            u.terms.push_back(Term::make(l, f, kids));
          }
          int i = n - 1;
          while (i >= 0 && ++pick[i] == below) pick[i--] = 0;
          if (i < 0) break;
        }
      }
    }
    u.depth_end.push_back(u.terms.size());
  }
  return u;
}

Universe& universe(const Signature& sig, const NameSet& S, int depth) {
  static std::map<std::string, std::unique_ptr<Universe>> cache;
  std::string key = universe_key(sig, S, depth);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto u = std::make_unique<Universe>(build_universe(sig, S, depth));
    it = cache.emplace(key, std::move(u)).first;
  }
  return *it->second;
}

// ---------------- canonical alpha-representatives ----------------

Name level_name(int level) {
  static std::vector<Name> names;
  while (static_cast<int>(names.size()) < level)
    names.push_back(
        intern_reserved("$" + std::to_string(names.size() + 1)));
  return names[level - 1];
}

Term canon_rec(Term t, int level, std::vector<std::pair<Name, Name>>& env) {
  Label l = t.label();
  std::vector<Term> kids(t.arity());
  if (l.is_bound()) {
    Name fresh = level_name(level);
    env.emplace_back(l.name, fresh);
    for (size_t i = 0; i < t.arity(); ++i)
      kids[i] = canon_rec(t.child(i), level + 1, env);
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
    kids[i] = canon_rec(t.child(i), level, env);
  return Term::make(Label::free(n), t.symbol(), kids);
}

// ---------------- bottom-up language sweep ----------------

struct StateTable {
  // per orbit: live register values, aligned with Orbit::live, in a fixed
  // enumeration order; ids are global across orbits
  std::vector<std::pair<int, std::vector<Name>>> states;
  std::vector<std::map<std::vector<Name>, int>> index;  // per orbit

  int find(int orbit, const std::vector<Name>& values) const {
    auto it = index[orbit].find(values);
    return it == index[orbit].end() ? -1 : it->second;
  }
};

void enumerate_assignments(const std::vector<Name>& avail, size_t want,
                           std::vector<Name>& acc,
                           std::vector<char>& taken,
                           const std::function<void(const std::vector<Name>&)>& emit) {
  if (acc.size() == want) {
    emit(acc);
    return;
  }
  for (size_t i = 0; i < avail.size(); ++i) {
    if (taken[i]) continue;
    taken[i] = 1;
    acc.push_back(avail[i]);
    enumerate_assignments(avail, want, acc, taken, emit);
    acc.pop_back();
    taken[i] = 0;
  }
}

struct Transition {
  uint32_t src;
  std::vector<uint32_t> children;
};

struct LabelKey {
  Label label;
  Symbol symbol;
  bool operator<(const LabelKey& o) const {
    if (label.kind != o.label.kind) return label.kind < o.label.kind;
    if (label.name != o.label.name) return label.name < o.label.name;
    return symbol < o.symbol;
  }
};

struct Sweep {
  std::vector<std::vector<uint64_t>> sets;  // interned state sets
  std::map<std::vector<uint64_t>, uint16_t> set_ids;
  size_t words = 0;

  uint16_t intern(const std::vector<uint64_t>& bits) {
    auto [it, added] = set_ids.emplace(bits, static_cast<uint16_t>(sets.size()));
    if (added) {
      if (sets.size() >= 0xFFFE) throw std::length_error("state set overflow");
      sets.push_back(bits);
    }
    return it->second;
  }

  bool member(uint16_t set, uint32_t state) const {
    return sets[set][state >> 6] & (1ull << (state & 63));
  }
};

}  // namespace

const std::vector<Term>& enum_terms(const Signature& sig, const NameSet& S,
                                    int depth) {
  return universe(sig, S, depth).terms;
}

Term alpha_canon(Term t) {
  std::vector<std::pair<Name, Name>> env;
  return canon_rec(t, 1, env);
}

const std::vector<uint32_t>& canon_ids(const Signature& sig, const NameSet& S,
                                       int depth) {
  Universe& u = universe(sig, S, depth);
  if (u.canon.size() != u.terms.size()) {
    u.canon.resize(u.terms.size());
    u.pos.reserve(u.terms.size());
    for (size_t i = 0; i < u.terms.size(); ++i) {
      u.canon[i] = alpha_canon(u.terms[i]).id();
      u.pos.emplace(u.terms[i].id(), static_cast<uint32_t>(i));
    }
  }
  return u.canon;
}

std::vector<Term> brute_language(const RntaSpec& a, const NameSet& S,
                                 int depth) {
  const std::vector<Term>& terms = enum_terms(a.sig, S, depth);

  // concrete states with register values in S; registers never hold the
  // dummy, and no rule ever binds it
  std::vector<Name> avail;
  for (Name n : S)
    if (!n.is_dummy()) avail.push_back(n);

  StateTable st;
  st.index.resize(a.orbits.size());
  for (size_t oi = 0; oi < a.orbits.size(); ++oi) {
    size_t want = a.orbits[oi].live.size();
    if (want > avail.size()) continue;
    std::vector<Name> acc;
    std::vector<char> taken(avail.size(), 0);
    enumerate_assignments(avail, want, acc, taken,
                          [&](const std::vector<Name>& values) {
                            int id = static_cast<int>(st.states.size());
                            st.states.emplace_back(static_cast<int>(oi), values);
                            st.index[oi].emplace(values, id);
                          });
  }
  size_t nstates = st.states.size();

  int initial = st.find(a.initial, {});
  if (initial < 0) return {};

  // instantiate the rule schemas
  auto live_pos = [&](int orbit, int reg) {
    const std::vector<int>& live = a.orbits[orbit].live;
    return std::lower_bound(live.begin(), live.end(), reg) - live.begin();
  };

  std::map<LabelKey, std::vector<Transition>> buckets;
  for (const SymbolicRule& r : a.rules) {
    for (auto& [oi, values] : st.states) {
      if (oi != r.source) continue;
      const std::vector<Name>& rho = values;
      auto pull = [&](Name fresh, bool* ok) {
        std::vector<uint32_t> children;
        for (const ChildSpec& cs : r.children) {
          std::vector<Name> cv(cs.regs.size());
          for (size_t k = 0; k < cs.regs.size(); ++k) {
            const RegisterAssign& ra = cs.regs[k];
            cv[k] = ra.source_reg == kFreshReg
                        ? fresh
                        : rho[live_pos(r.source, ra.source_reg)];
          }
          int cid = st.find(cs.orbit, cv);
          if (cid < 0) {
            *ok = false;
            return children;
          }
          children.push_back(static_cast<uint32_t>(cid));
        }
        *ok = true;
        return children;
      };
      uint32_t src_id = static_cast<uint32_t>(st.find(oi, values));
      if (r.kind == RuleKind::Free) {
        Name letter = r.letter_reg == kDummyReg
                          ? Name::dummy()
                          : rho[live_pos(r.source, r.letter_reg)];
        bool ok = false;
        std::vector<uint32_t> children = pull(Name(), &ok);
        if (!ok) continue;
        buckets[{Label::free(letter), r.symbol}].push_back({src_id, children});
      } else {
        NameSet inherited;
        for (const ChildSpec& cs : r.children)
          for (const RegisterAssign& ra : cs.regs)
            if (ra.source_reg != kFreshReg)
              inherited.insert(rho[live_pos(r.source, ra.source_reg)]);
        for (Name letter : avail) {
          if (inherited.contains(letter)) continue;
          bool ok = false;
          std::vector<uint32_t> children = pull(letter, &ok);
          if (!ok) continue;
          buckets[{Label::bound(letter), r.symbol}].push_back(
              {src_id, children});
        }
      }
    }
  }

  // sweep the universe bottom-up; children precede parents in the order
  Sweep sw;
  sw.words = (nstates + 63) / 64;
  sw.intern(std::vector<uint64_t>(sw.words, 0));  // id 0 = empty

  std::vector<uint16_t> bid(term_arena_size(), 0xFFFF);
  std::map<LabelKey, std::unordered_map<uint64_t, uint16_t>> memo;
  std::vector<Term> accepted;

  for (Term t : terms) {
    LabelKey key{t.label(), t.symbol()};
    size_t n = t.arity();
    uint16_t result;
    auto bucket_it = buckets.find(key);
    if (bucket_it == buckets.end()) {
      result = 0;
    } else if (n <= 4) {
      uint64_t packed = 0;
      for (size_t i = 0; i < n; ++i) {
        uint16_t cb = bid[t.child(i).id()];
        assert(cb != 0xFFFF);
        packed = (packed << 16) | cb;
      }
      auto& m = memo[key];
      auto mit = m.find(packed);
      if (mit != m.end()) {
        result = mit->second;
      } else {
        std::vector<uint64_t> bits(sw.words, 0);
        for (const Transition& tr : bucket_it->second) {
          bool fire = true;
          for (size_t i = 0; i < n; ++i)
            if (!sw.member(bid[t.child(i).id()], tr.children[i])) {
              fire = false;
              break;
            }
          if (fire) bits[tr.src >> 6] |= 1ull << (tr.src & 63);
        }
        result = sw.intern(bits);
        m.emplace(packed, result);
      }
    } else {
      std::vector<uint64_t> bits(sw.words, 0);
      for (const Transition& tr : bucket_it->second) {
        bool fire = true;
        for (size_t i = 0; i < n; ++i)
          if (!sw.member(bid[t.child(i).id()], tr.children[i])) {
            fire = false;
            break;
          }
        if (fire) bits[tr.src >> 6] |= 1ull << (tr.src & 63);
      }
      result = sw.intern(bits);
    }
    bid[t.id()] = result;
    if (sw.member(result, static_cast<uint32_t>(initial)))
      accepted.push_back(t);
  }
  return accepted;
}

std::vector<Term> alpha_close(const std::vector<Term>& L, const Signature& sig,
                              const NameSet& S, int depth) {
  const std::vector<Term>& terms = enum_terms(sig, S, depth);
  const std::vector<uint32_t>& canon = canon_ids(sig, S, depth);
  const Universe& u = universe(sig, S, depth);
  std::unordered_set<uint32_t> classes;
  for (Term t : L) {
    auto it = u.pos.find(t.id());
    classes.insert(it != u.pos.end() ? canon[it->second]
                                     : alpha_canon(t).id());
  }
  std::vector<Term> out;
  for (size_t i = 0; i < terms.size(); ++i)
    if (classes.count(canon[i])) out.push_back(terms[i]);
  return out;
}

}  // namespace rnta::oracle
