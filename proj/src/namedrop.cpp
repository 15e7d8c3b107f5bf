#include "rnta/namedrop.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rnta {

std::string dropped_orbit_id(const std::string& base,
                             const std::vector<int>& subset) {
  std::ostringstream id;
  id << base << "@{";
  for (size_t i = 0; i < subset.size(); ++i) {
    if (i) id << ',';
    id << subset[i];
  }
  id << '}';
  return id.str();
}

namespace {

// subsets of live in a fixed order: by size, then lexicographic
std::vector<std::vector<int>> subsets_of(const std::vector<int>& live) {
  std::vector<std::vector<int>> out;
  size_t n = live.size();
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(live[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

struct RuleOrder {
  bool operator()(const SymbolicRule& a, const SymbolicRule& b) const {
    auto key = [](const SymbolicRule& r) {
      return std::tuple(r.source, r.kind, r.letter_reg, r.symbol);
    };
    if (key(a) != key(b)) return key(a) < key(b);
    auto ckey = [](const ChildSpec& c) {
      std::vector<std::pair<int, int>> regs;
      for (auto& ra : c.regs) regs.emplace_back(ra.child_reg, ra.source_reg);
      return std::tuple(c.orbit, regs);
    };
    for (size_t i = 0; i < std::min(a.children.size(), b.children.size()); ++i)
      if (ckey(a.children[i]) != ckey(b.children[i]))
        return ckey(a.children[i]) < ckey(b.children[i]);
    return a.children.size() < b.children.size();
  }
};

}  // namespace

RntaSpec name_drop(const RntaSpec& a) {
  if (a.name_dropped)
    throw std::invalid_argument("automaton is already name-dropped");

  RntaSpec out;
  out.sig = a.sig;
  out.uses_dummy = a.uses_dummy;
  out.name_dropped = true;

  // one orbit per (base orbit, subset of its registers)
  std::map<std::pair<int, std::vector<int>>, int> orbit_of;
  for (size_t oi = 0; oi < a.orbits.size(); ++oi) {
    for (const std::vector<int>& d : subsets_of(a.orbits[oi].live)) {
      Orbit o;
      o.id = dropped_orbit_id(a.orbits[oi].id, d);
      o.registers = a.orbits[oi].registers;
      o.live = d;
      orbit_of[{static_cast<int>(oi), d}] = static_cast<int>(out.orbits.size());
      out.orbits.push_back(std::move(o));
    }
  }
  out.initial = orbit_of.at({a.initial, {}});

  std::set<SymbolicRule, RuleOrder> rules;
  for (const SymbolicRule& r : a.rules) {
    const Orbit& src = a.orbits[r.source];
    for (const std::vector<int>& d : subsets_of(src.live)) {
      if (r.kind == RuleKind::Free && r.letter_reg != kDummyReg &&
          !std::binary_search(d.begin(), d.end(), r.letter_reg))
        continue;  // the letter register must survive

      // registers each child may keep: those its map reads from d (or the
      // freshly bound name, for bound rules)
      std::vector<std::vector<int>> affordable(r.children.size());
      for (size_t c = 0; c < r.children.size(); ++c)
        for (const RegisterAssign& ra : r.children[c].regs) {
          bool kept = ra.source_reg == kFreshReg
                          ? r.kind == RuleKind::Bound
                          : std::binary_search(d.begin(), d.end(), ra.source_reg);
          if (kept) affordable[c].push_back(ra.child_reg);
        }

      // every combination of child subsets
      std::vector<std::vector<std::vector<int>>> child_choices;
      for (size_t c = 0; c < r.children.size(); ++c)
        child_choices.push_back(subsets_of(affordable[c]));

      std::vector<size_t> pick(r.children.size(), 0);
      while (true) {
        SymbolicRule nr;
        nr.source = orbit_of.at({r.source, d});
        nr.kind = r.kind;
        nr.letter_reg = r.letter_reg;
        nr.symbol = r.symbol;
        for (size_t c = 0; c < r.children.size(); ++c) {
          const std::vector<int>& keep = child_choices[c][pick[c]];
          ChildSpec cs;
          cs.orbit = orbit_of.at({r.children[c].orbit, keep});
          for (const RegisterAssign& ra : r.children[c].regs)
            if (std::binary_search(keep.begin(), keep.end(), ra.child_reg))
              cs.regs.push_back(ra);
          nr.children.push_back(std::move(cs));
        }
        rules.insert(std::move(nr));

        size_t c = r.children.size();
        while (c > 0 && ++pick[c - 1] == child_choices[c - 1].size())
          pick[--c] = 0;
        if (c == 0) break;
      }
    }
  }
  out.rules.assign(rules.begin(), rules.end());
  return out;
}

bool check_subautomaton(const RntaSpec& a, const RntaSpec& b) {
  // map each orbit of a to its image in b
  std::vector<int> image(a.orbits.size(), -1);
  for (size_t oi = 0; oi < a.orbits.size(); ++oi) {
    const Orbit& o = a.orbits[oi];
    int direct = b.orbit_index(o.id);
    if (direct < 0) direct = b.orbit_index(dropped_orbit_id(o.id, o.live));
    if (direct < 0) return false;
    if (b.orbits[direct].live != o.live) return false;
    image[oi] = direct;
  }
  if (a.initial < 0 || b.initial < 0) return false;
  if (image[a.initial] != b.initial) return false;

  for (const SymbolicRule& r : a.rules) {
    SymbolicRule want = r;
    want.source = image[r.source];
    for (ChildSpec& cs : want.children) cs.orbit = image[cs.orbit];
    bool found = false;
    for (const SymbolicRule& cand : b.rules)
      if (cand == want) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace rnta
