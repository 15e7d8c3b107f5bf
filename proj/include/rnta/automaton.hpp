#pragma once

#include <string>
#include <vector>

#include "rnta/term.hpp"

namespace rnta {

// Register maps target either a source register (1-based) or kFreshReg,
// which stands for the name consumed by a bound rule.  Letter register 0
// names the implicit dummy register of specs with uses_dummy.
constexpr int kFreshReg = -1;
constexpr int kDummyReg = 0;

// One register wire of a rule: child register <- source register or fresh.
struct RegisterAssign {
  int child_reg;
  int source_reg;
  bool operator==(const RegisterAssign&) const = default;
};

struct ChildSpec {
  int orbit;
  std::vector<RegisterAssign> regs;  // sorted by child_reg
  bool operator==(const ChildSpec&) const = default;
};

enum class RuleKind : uint8_t { Free, Bound };

// A schema standing for one orbit of concrete rewrite rules.
//   free:   q(a.f(x1..xn))  -> a.f(q1(x1)..qn(xn))   with a read from a register
//   bound:  q(nu a.f(x1..xn)) -> nu a.f(q1(x1)..qn(xn))  binding a fresh a
struct SymbolicRule {
  int source;
  RuleKind kind;
  int letter_reg = 0;  // free rules only
  Symbol symbol;
  std::vector<ChildSpec> children;
  bool operator==(const SymbolicRule&) const = default;
};

// An orbit of states: an id and a block of registers 1..registers.  For
// automata produced by name dropping only the registers in live carry a
// name; elsewhere live is the full block.
struct Orbit {
  std::string id;
  int registers = 0;
  std::vector<int> live;  // sorted

  static Orbit full(std::string id, int registers);
  bool is_live(int reg) const;
};

struct RntaSpec {
  Signature sig;
  std::vector<Orbit> orbits;
  std::vector<SymbolicRule> rules;
  int initial = -1;
  bool uses_dummy = false;
  bool name_dropped = false;

  int orbit_index(const std::string& id) const;  // -1 if absent
};

// A state of the induced infinite automaton: an orbit whose live registers
// hold pairwise distinct names.
struct ConcreteState {
  int orbit = -1;
  std::vector<std::pair<int, Name>> regs;  // sorted by register

  Name value(int reg) const;  // throws if reg unassigned
  bool has(int reg) const;
  bool operator==(const ConcreteState&) const = default;
  auto operator<=>(const ConcreteState&) const = default;
};

// Structural well-formedness; returns human-readable violations, empty when
// the spec is valid.  Everything below assumes a valid spec.
std::vector<std::string> validate(const RntaSpec& a);

// largest number of live registers of any orbit (the dummy is not counted)
int degree(const RntaSpec& a);

int max_arity(const RntaSpec& a);

ConcreteState initial_state(const RntaSpec& a);

// names held in registers, plus the dummy for specs that use it
NameSet support(const RntaSpec& a, const ConcreteState& q);

// Top-down acceptance from a given state.  Memoized per query on
// (state, subterm) pairs.
bool accepts_from(const RntaSpec& a, const ConcreteState& q, Term t);

bool accepts(const RntaSpec& a, Term t);

// Acceptance where a rule reading a binder may also consume the same
// letter free: decides membership in the downward closure of the literal
// language under binder removal.
bool accepts_down(const RntaSpec& a, Term t);

}  // namespace rnta
