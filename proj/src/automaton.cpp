#include "rnta/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace rnta {

Orbit Orbit::full(std::string id, int registers) {
  Orbit o;
  o.id = std::move(id);
  o.registers = registers;
  o.live.resize(registers);
  std::iota(o.live.begin(), o.live.end(), 1);
  return o;
}

bool Orbit::is_live(int reg) const {
  return std::binary_search(live.begin(), live.end(), reg);
}

int RntaSpec::orbit_index(const std::string& id) const {
  for (size_t i = 0; i < orbits.size(); ++i)
    if (orbits[i].id == id) return static_cast<int>(i);
  return -1;
}

Name ConcreteState::value(int reg) const {
  for (auto& [r, n] : regs)
    if (r == reg) return n;
  throw std::out_of_range("register not assigned");
}

bool ConcreteState::has(int reg) const {
  for (auto& [r, n] : regs)
    if (r == reg) return true;
  return false;
}

std::vector<std::string> validate(const RntaSpec& a) {
  std::vector<std::string> out;
  auto fail = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (a.sig.entries().empty()) fail("signature is empty");
  if (!a.sig.has_constant() && !a.sig.entries().empty())
    fail("signature has no constant symbol");

  if (a.orbits.empty()) fail("no orbits declared");
  for (size_t i = 0; i < a.orbits.size(); ++i) {
    const Orbit& o = a.orbits[i];
    if (o.id.empty()) fail("orbit " + std::to_string(i) + " has empty id");
    for (size_t j = 0; j < i; ++j)
      if (a.orbits[j].id == o.id) fail("duplicate orbit id " + o.id);
    if (o.registers < 0) fail("orbit " + o.id + ": negative register count");
    if (!std::is_sorted(o.live.begin(), o.live.end()) ||
        std::adjacent_find(o.live.begin(), o.live.end()) != o.live.end())
      fail("orbit " + o.id + ": live registers not sorted/unique");
    for (int r : o.live)
      if (r < 1 || r > o.registers)
        fail("orbit " + o.id + ": live register " + std::to_string(r) +
             " out of range");
    if (!a.name_dropped &&
        static_cast<int>(o.live.size()) != o.registers)
      fail("orbit " + o.id + ": partial register block outside a name-dropped spec");
  }

  if (a.initial < 0 || a.initial >= static_cast<int>(a.orbits.size())) {
    fail("initial orbit missing");
  } else if (!a.orbits[a.initial].live.empty()) {
    fail("initial orbit " + a.orbits[a.initial].id + " must have no registers");
  }

  for (size_t ri = 0; ri < a.rules.size(); ++ri) {
    const SymbolicRule& r = a.rules[ri];
    std::string where = "rule " + std::to_string(ri);
    if (r.source < 0 || r.source >= static_cast<int>(a.orbits.size())) {
      fail(where + ": unknown source orbit");
      continue;
    }
    const Orbit& src = a.orbits[r.source];
    where += " (" + src.id + ")";
    auto ar = a.sig.arity(r.symbol);
    if (!ar) {
      fail(where + ": symbol " + r.symbol.str() + " not in signature");
      continue;
    }
    if (static_cast<int>(r.children.size()) != *ar)
      fail(where + ": " + std::to_string(r.children.size()) +
           " children for arity " + std::to_string(*ar));
    if (r.kind == RuleKind::Free) {
      if (r.letter_reg == kDummyReg) {
        if (!a.uses_dummy)
          fail(where + ": dummy letter register in a spec without uses_dummy");
      } else if (!src.is_live(r.letter_reg)) {
        fail(where + ": letter register " + std::to_string(r.letter_reg) +
             " not live in source orbit");
      }
    }
    for (const ChildSpec& cs : r.children) {
      if (cs.orbit < 0 || cs.orbit >= static_cast<int>(a.orbits.size())) {
        fail(where + ": unknown child orbit");
        continue;
      }
      const Orbit& dst = a.orbits[cs.orbit];
      std::vector<int> covered;
      std::vector<int> sources;
      int fresh_uses = 0;
      for (const RegisterAssign& ra : cs.regs) {
        if (!covered.empty() && ra.child_reg == covered.back())
          fail(where + ": child register assigned twice");
        else if (!covered.empty() && ra.child_reg < covered.back())
          fail(where + ": child register assignments not in register order");
        covered.push_back(ra.child_reg);
        if (!dst.is_live(ra.child_reg))
          fail(where + ": assigns register " + std::to_string(ra.child_reg) +
               " that is not live in orbit " + dst.id);
        if (ra.source_reg == kFreshReg) {
          ++fresh_uses;
          if (r.kind == RuleKind::Free)
            fail(where + ": fresh source register in a free rule");
        } else {
          if (!src.is_live(ra.source_reg))
            fail(where + ": reads register " + std::to_string(ra.source_reg) +
                 " that is not live in orbit " + src.id);
          sources.push_back(ra.source_reg);
        }
      }
      std::sort(covered.begin(), covered.end());
      if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
        fail(where + ": child register assigned twice");
      if (covered != dst.live)
        fail(where + ": child orbit " + dst.id +
             " needs every live register assigned exactly once");
      std::sort(sources.begin(), sources.end());
      if (std::adjacent_find(sources.begin(), sources.end()) != sources.end())
        fail(where + ": source register read twice for one child");
      if (fresh_uses > 1)
        fail(where + ": fresh name wired into two registers of one child");
    }
  }
  return out;
}

int degree(const RntaSpec& a) {
  int d = 0;
  for (const Orbit& o : a.orbits)
    d = std::max(d, static_cast<int>(o.live.size()));
  return d;
}

int max_arity(const RntaSpec& a) { return a.sig.max_arity(); }

ConcreteState initial_state(const RntaSpec& a) {
  ConcreteState q;
  q.orbit = a.initial;
  return q;
}

NameSet support(const RntaSpec& a, const ConcreteState& q) {
  NameSet s;
  for (auto& [r, n] : q.regs) s.insert(n);
  if (a.uses_dummy) s.insert(Name::dummy());
  return s;
}

// ---------------- acceptance ----------------

namespace {

struct Run {
  const RntaSpec& a;
  bool down;  // binder rules may also consume their letter free
  std::vector<std::vector<int>> rules_by_orbit;
  std::map<ConcreteState, int> state_ids;
  std::vector<ConcreteState> states;
  std::unordered_map<uint64_t, bool> memo;

  explicit Run(const RntaSpec& spec, bool down_mode = false)
      : a(spec), down(down_mode) {
    rules_by_orbit.resize(a.orbits.size());
    for (size_t i = 0; i < a.rules.size(); ++i)
      rules_by_orbit[a.rules[i].source].push_back(static_cast<int>(i));
  }

  int state_id(const ConcreteState& q) {
    auto [it, added] = state_ids.emplace(q, static_cast<int>(states.size()));
    if (added) states.push_back(q);
    return it->second;
  }

  // child state induced by the rule's register map, or nullopt when the map
  // reads a register the source state does not carry
  std::optional<ConcreteState> pull(const ConcreteState& q,
                                    const ChildSpec& cs, Name fresh) {
    ConcreteState c;
    c.orbit = cs.orbit;
    c.regs.reserve(cs.regs.size());
    for (const RegisterAssign& ra : cs.regs) {
      Name v;
      if (ra.source_reg == kFreshReg) {
        v = fresh;
      } else {
        if (!q.has(ra.source_reg)) return std::nullopt;
        v = q.value(ra.source_reg);
      }
      c.regs.emplace_back(ra.child_reg, v);
    }
    std::sort(c.regs.begin(), c.regs.end());
    return c;
  }

  bool run(int qid, Term t) {
    uint64_t key = (static_cast<uint64_t>(qid) << 32) | t.id();
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo.emplace(key, false);  // value fixed below; recursion is well-founded
    bool result = step(states[qid], t);
    memo[key] = result;
    return result;
  }

  bool step(ConcreteState q, Term t) {
    Label l = t.label();
    for (int ri : rules_by_orbit[q.orbit]) {
      const SymbolicRule& r = a.rules[ri];
      if (r.symbol != t.symbol()) continue;
      if (r.children.size() != t.arity()) continue;
      if (r.kind == RuleKind::Free) {
        if (l.is_bound()) continue;
        if (r.letter_reg == kDummyReg) {
          if (!l.name.is_dummy()) continue;
        } else {
          if (!q.has(r.letter_reg) || q.value(r.letter_reg) != l.name) continue;
        }
        if (match_children(q, r, t, Name())) return true;
      } else {
        if (!l.is_bound() && !down) continue;
        Name bound = l.name;
        if (bound.is_dummy()) continue;  // nothing ever binds the dummy
        if (blocked(q, r, bound)) continue;
        if (match_children(q, r, t, bound)) return true;
      }
    }
    return false;
  }

  // a bound rule may not bind a name some child keeps from the source state
  bool blocked(const ConcreteState& q, const SymbolicRule& r, Name bound) {
    for (const ChildSpec& cs : r.children)
      for (const RegisterAssign& ra : cs.regs)
        if (ra.source_reg != kFreshReg && q.has(ra.source_reg) &&
            q.value(ra.source_reg) == bound)
          return true;
    return false;
  }

  bool match_children(const ConcreteState& q, const SymbolicRule& r, Term t,
                      Name fresh) {
    for (size_t i = 0; i < r.children.size(); ++i) {
      std::optional<ConcreteState> c = pull(q, r.children[i], fresh);
      if (!c) return false;
      if (!run(state_id(*c), t.child(i))) return false;
    }
    return true;
  }
};

}  // namespace

bool accepts_from(const RntaSpec& a, const ConcreteState& q, Term t) {
  if (q.orbit < 0 || q.orbit >= static_cast<int>(a.orbits.size()))
    throw std::invalid_argument("state orbit out of range");
  Run run(a);
  bool result = run.run(run.state_id(q), t);
#ifndef NDEBUG
  if (result) assert(free_names(t).subset_of(support(a, q)));
#endif
  return result;
}

bool accepts(const RntaSpec& a, Term t) {
  return accepts_from(a, initial_state(a), t);
}

bool accepts_down(const RntaSpec& a, Term t) {
  Run run(a, true);
  return run.run(run.state_id(initial_state(a)), t);
}

}  // namespace rnta
