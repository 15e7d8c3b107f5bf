#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rnta/automaton.hpp"
#include "rnta/format.hpp"
#include "rnta/names.hpp"
#include "rnta/nfta.hpp"
#include "rnta/term.hpp"

// Shared builders for the test binaries: the bundled example automata as
// in-code strings, random generators for terms and automata, and the
// singleton-language automaton used by the semantics tests.

namespace fixtures {

using namespace rnta;

inline Name nm(std::string_view s) { return Name::intern(s); }

inline Term tm(std::string_view text) { return parse_term(text); }

inline NameSet names(std::initializer_list<std::string_view> list) {
  NameSet s;
  for (auto sv : list) s.insert(Name::intern(sv));
  return s;
}

inline std::vector<Name> name_pool(std::initializer_list<std::string_view> list) {
  std::vector<Name> v;
  for (auto sv : list) v.push_back(Name::intern(sv));
  return v;
}

inline Signature fk_sig() {
  Signature sig;
  sig.add(Symbol::intern("f"), 2);
  sig.add(Symbol::intern("k"), 0);
  return sig;
}

// ---- the bundled example automata -------------------------------------

inline RntaSpec universal() {
  return parse_automaton(
      "symbol f/2\n"
      "symbol k/0\n"
      "orbit q/0\n"
      "initial q\n"
      "rule q bound f q q\n"
      "rule q bound k\n");
}

// root letter reappears in all leaves and nowhere else
inline RntaSpec root_reappears() {
  return parse_automaton(
      "symbol f/2\n"
      "symbol k/0\n"
      "orbit q0/0\n"
      "orbit q1/1\n"
      "initial q0\n"
      "rule q0 bound f q1{1<-new} q1{1<-new}\n"
      "rule q1 bound f q1{1<-1} q1{1<-1}\n"
      "rule q1 free 1 k\n");
}

// some letter appears twice (once as a binder, once free below it)
inline RntaSpec some_letter_twice() {
  return parse_automaton(
      "symbol f/2\n"
      "symbol k/0\n"
      "orbit q0/0\n"
      "orbit q1/1\n"
      "orbit q2/0\n"
      "initial q0\n"
      "rule q0 bound f q0 q0\n"
      "rule q0 bound f q1{1<-new} q1{1<-new}\n"
      "rule q1 free 1 f q2 q2\n"
      "rule q2 bound f q2 q2\n"
      "rule q2 bound k\n");
}

// !elem opens a scope that the matching eof closes
inline RntaSpec xml_doc() {
  return parse_automaton(
      "symbol !elem/2\n"
      "symbol #data/1\n"
      "symbol eof/0\n"
      "uses_dummy\n"
      "orbit q0/0\n"
      "orbit q1/1\n"
      "initial q0\n"
      "rule q0 bound !elem q1{1<-new} q0\n"
      "rule q0 bound #data q0\n"
      "rule q0 free _ eof\n"
      "rule q1 bound !elem q1{1<-new} q1{1<-1}\n"
      "rule q1 bound #data q1{1<-1}\n"
      "rule q1 free 1 eof\n");
}

// processes that read a name from a fresh channel and chain reads
inline RntaSpec pi_calc() {
  return parse_automaton(
      "symbol par/2\n"
      "symbol rw/1\n"
      "symbol ch/1\n"
      "symbol 0/0\n"
      "uses_dummy\n"
      "orbit q0/0\n"
      "orbit q1/0\n"
      "orbit q2/1\n"
      "initial q0\n"
      "rule q0 free _ par q0 q0\n"
      "rule q0 bound ch q1\n"
      "rule q1 bound rw q2{1<-new}\n"
      "rule q2 free 1 ch q1\n"
      "rule q2 free _ 0\n");
}

inline std::vector<RntaSpec> bundled() {
  return {universal(), root_reappears(), some_letter_twice(), xml_doc(),
          pi_calc()};
}

// ---- random generators --------------------------------------------------

inline int below(std::mt19937& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

// Random term over pool names: free labels, binders and (optionally) the
// dummy, mixed.  depth is an upper bound on the height.
inline Term random_term(std::mt19937& rng, const std::vector<Name>& pool,
                        int depth, bool data_only = false,
                        bool allow_dummy = true) {
  Symbol f = Symbol::intern("f"), k = Symbol::intern("k");
  bool leaf = depth <= 1 || below(rng, 3) == 0;
  Name a = pool[below(rng, static_cast<int>(pool.size()))];
  Label label;
  int which = below(rng, data_only ? 1 : (allow_dummy ? 3 : 2));
  if (which == 0)
    label = Label::free(a);
  else if (which == 1)
    label = Label::bound(a);
  else
    label = Label::free(Name::dummy());
  if (leaf) return Term::leaf(label, k);
  return Term::make(label, f,
                    {random_term(rng, pool, depth - 1, data_only, allow_dummy),
                     random_term(rng, pool, depth - 1, data_only, allow_dummy)});
}

inline Permutation random_permutation(std::mt19937& rng,
                                      const std::vector<Name>& pool) {
  Permutation p;
  int swaps = below(rng, 4);
  for (int i = 0; i < swaps; ++i) {
    Name a = pool[below(rng, static_cast<int>(pool.size()))];
    Name b = pool[below(rng, static_cast<int>(pool.size()))];
    p = Permutation::swap(a, b).after(p);
  }
  return p;
}

struct AutomatonGenOptions {
  int max_orbits = 3;
  int max_regs = 2;
  int max_extra_rules = 3;  // per orbit, on top of the guaranteed leaf rule
  bool allow_dummy = false;
};

// Random valid automaton over {f/2, k/0}.  Orbit 0 is the initial orbit and
// keeps zero registers; every orbit gets a bound leaf rule so that every
// generated automaton has a nonempty language.
inline RntaSpec random_automaton(std::mt19937& rng,
                                 const AutomatonGenOptions& opt = {}) {
  RntaSpec a;
  a.sig = fk_sig();
  Symbol f = Symbol::intern("f"), k = Symbol::intern("k");
  int n = 1 + below(rng, opt.max_orbits);
  for (int i = 0; i < n; ++i) {
    int regs = i == 0 ? 0 : below(rng, opt.max_regs + 1);
    a.orbits.push_back(Orbit::full("q" + std::to_string(i), regs));
  }
  a.initial = 0;
  a.uses_dummy = opt.allow_dummy && below(rng, 2) == 0;

  auto make_child = [&](int source_regs, bool bound) {
    ChildSpec cs;
    int limit = source_regs + (bound ? 1 : 0);
    do {
      cs.orbit = below(rng, n);
    } while (a.orbits[cs.orbit].registers > limit);
    std::vector<int> sources;
    for (int r = 1; r <= source_regs; ++r) sources.push_back(r);
    if (bound) sources.push_back(kFreshReg);
    std::shuffle(sources.begin(), sources.end(), rng);
    for (int cr = 1; cr <= a.orbits[cs.orbit].registers; ++cr)
      cs.regs.push_back({cr, sources[cr - 1]});
    return cs;
  };

  for (int i = 0; i < n; ++i) {
    int src_regs = a.orbits[i].registers;
    SymbolicRule leaf;
    leaf.source = i;
    leaf.kind = RuleKind::Bound;
    leaf.symbol = k;
    a.rules.push_back(leaf);

    int extra = 1 + below(rng, opt.max_extra_rules);
    for (int e = 0; e < extra; ++e) {
      SymbolicRule r;
      r.source = i;
      bool can_free = src_regs > 0 || a.uses_dummy;
      bool bound = !can_free || below(rng, 2) == 0;
      r.kind = bound ? RuleKind::Bound : RuleKind::Free;
      if (!bound) {
        if (src_regs > 0 && (!a.uses_dummy || below(rng, 3) != 0))
          r.letter_reg = 1 + below(rng, src_regs);
        else
          r.letter_reg = kDummyReg;
      }
      r.symbol = below(rng, 2) == 0 ? f : k;
      int arity = r.symbol == f ? 2 : 0;
      for (int c = 0; c < arity; ++c)
        r.children.push_back(make_child(src_regs, bound));
      if (std::find(a.rules.begin(), a.rules.end(), r) == a.rules.end())
        a.rules.push_back(r);
    }
  }
  return a;
}

// ---- singleton-language automaton ---------------------------------------

// Automaton whose alphatic language is exactly the alpha-class of t: one
// orbit per node, holding that node's free names in id order.  t must be
// closed apart from dummy labels.
inline RntaSpec singleton_automaton(Term t, const Signature& sig) {
  RntaSpec a;
  a.sig = sig;
  struct Walk {
    RntaSpec& a;
    int counter = 0;
    int build(Term u) {
      NameSet fn = free_names(u);
      std::vector<Name> regs;
      for (Name x : fn)
        if (!x.is_dummy()) regs.push_back(x);
      int idx = static_cast<int>(a.orbits.size());
      a.orbits.push_back(
          Orbit::full("n" + std::to_string(counter++), static_cast<int>(regs.size())));
      auto reg_of = [&regs](Name x) {
        for (size_t i = 0; i < regs.size(); ++i)
          if (regs[i] == x) return static_cast<int>(i) + 1;
        throw std::logic_error("name not in register block");
      };
      SymbolicRule r;
      r.source = idx;
      r.symbol = u.symbol();
      Label l = u.label();
      if (l.is_bound()) {
        r.kind = RuleKind::Bound;
      } else {
        r.kind = RuleKind::Free;
        if (l.name.is_dummy()) {
          r.letter_reg = kDummyReg;
          a.uses_dummy = true;
        } else {
          r.letter_reg = reg_of(l.name);
        }
      }
      for (size_t i = 0; i < u.arity(); ++i) {
        Term sub = u.child(i);
        int ci = build(sub);
        ChildSpec cs;
        cs.orbit = ci;
        int cr = 0;
        for (Name x : free_names(sub)) {
          if (x.is_dummy()) continue;
          ++cr;
          int from = l.is_bound() && x == l.name ? kFreshReg : reg_of(x);
          cs.regs.push_back({cr, from});
        }
        r.children.push_back(std::move(cs));
      }
      a.rules.push_back(std::move(r));
      return idx;
    }
  };
  Walk w{a};
  a.initial = w.build(t);
  if (!a.orbits[a.initial].live.empty())
    throw std::invalid_argument("singleton_automaton needs a closed term");
  for (const std::string& p : validate(a)) throw std::logic_error(p);
  return a;
}

// Letters used by enum-based differential checks; interned once.
inline const std::vector<Name>& abc() {
  static std::vector<Name> v = name_pool({"a", "b", "c"});
  return v;
}

// Terms of depth <= depth reaching each state of n, built bottom up by rule
// application.  Far cheaper than filtering the full term universe when the
// language is sparse.
inline std::vector<std::vector<Term>> nfta_language(const Nfta& n, int depth) {
  std::vector<std::set<Term>> acc(n.state_names.size());
  for (int round = 0; round < depth; ++round) {
    std::vector<std::vector<Term>> grown(acc.size());
    for (const NftaRule& r : n.rules) {
      std::vector<const std::set<Term>*> kid(r.children.size());
      bool feasible = true;
      for (size_t c = 0; c < r.children.size(); ++c) {
        kid[c] = &acc[r.children[c]];
        if (kid[c]->empty()) feasible = false;
      }
      if (!feasible) continue;
      std::vector<std::set<Term>::const_iterator> at(kid.size());
      for (size_t c = 0; c < kid.size(); ++c) at[c] = kid[c]->begin();
      while (true) {
        std::vector<Term> args;
        args.reserve(at.size());
        for (auto it : at) args.push_back(*it);
        grown[r.state].push_back(Term::make(r.label, r.symbol, args));
        size_t c = kid.size();
        while (c > 0 && ++at[c - 1] == kid[c - 1]->end()) {
          --c;
          at[c] = kid[c]->begin();
        }
        if (c == 0) break;
      }
    }
    for (size_t q = 0; q < acc.size(); ++q)
      acc[q].insert(grown[q].begin(), grown[q].end());
  }
  std::vector<std::vector<Term>> out(acc.size());
  for (size_t q = 0; q < acc.size(); ++q)
    out[q].assign(acc[q].begin(), acc[q].end());
  return out;
}

}  // namespace fixtures
