#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "rnta/namedrop.hpp"
#include "rnta/oracle.hpp"

using namespace rnta;
using fixtures::names;

namespace {

NameSet small_set(const RntaSpec& a) {
  NameSet S = names({"a", "b"});
  if (a.uses_dummy) S.insert(Name::dummy());
  return S;
}

std::set<Term> as_set(const std::vector<Term>& v) {
  return std::set<Term>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("dropped orbit ids") {
  CHECK(dropped_orbit_id("q1", {}) == "q1@{}");
  CHECK(dropped_orbit_id("q1", {1, 3}) == "q1@{1,3}");
}

TEST_CASE("name dropping produces a well formed automaton") {
  for (const RntaSpec& a : fixtures::bundled()) {
    RntaSpec d = name_drop(a);
    CHECK(validate(d).empty());
    CHECK(d.name_dropped);
    CHECK(d.uses_dummy == a.uses_dummy);
    CHECK(degree(d) == degree(a));
    // one orbit per live subset
    size_t expect = 0;
    for (const Orbit& o : a.orbits) expect += size_t{1} << o.live.size();
    CHECK(d.orbits.size() == expect);
    CHECK(d.orbits[d.initial].live.empty());
  }
}

TEST_CASE("orbit growth stays within the two-power bound") {
  std::mt19937 rng(41);
  for (int i = 0; i < 100; ++i) {
    RntaSpec a = fixtures::random_automaton(rng);
    RntaSpec d = name_drop(a);
    CHECK(d.orbits.size() <=
          a.orbits.size() * (size_t{1} << degree(a)));
  }
}

TEST_CASE("dropping twice is rejected") {
  CHECK_THROWS_AS(name_drop(name_drop(fixtures::universal())),
                  std::invalid_argument);
}

TEST_CASE("every rule survives on the fully live orbits") {
  CHECK(check_subautomaton(fixtures::universal(), fixtures::universal()));
  for (const RntaSpec& a : fixtures::bundled())
    CHECK(check_subautomaton(a, name_drop(a)));

  std::mt19937 rng(43);
  for (int i = 0; i < 100; ++i) {
    RntaSpec a = fixtures::random_automaton(rng);
    RntaSpec d = name_drop(a);
    CHECK(check_subautomaton(a, d));

    // removing the image of an original rule must be caught; only rules on
    // fully live orbits qualify, the lifted extras are not part of the
    // embedding
    const SymbolicRule& victim =
        a.rules[fixtures::below(rng, static_cast<int>(a.rules.size()))];
    SymbolicRule want = victim;
    auto full = [&](int oi) {
      return d.orbit_index(
          dropped_orbit_id(a.orbits[oi].id, a.orbits[oi].live));
    };
    want.source = full(victim.source);
    for (ChildSpec& cs : want.children) cs.orbit = full(cs.orbit);
    RntaSpec crippled = d;
    auto hit = std::find(crippled.rules.begin(), crippled.rules.end(), want);
    REQUIRE(hit != crippled.rules.end());
    crippled.rules.erase(hit);
    CHECK_FALSE(check_subautomaton(a, crippled));
  }
}

TEST_CASE("dropped automata keep accepting the original language") {
  for (const RntaSpec& a : fixtures::bundled()) {
    NameSet S = small_set(a);
    RntaSpec d = name_drop(a);
    for (Term t : oracle::brute_language(a, S, 3)) CHECK(accepts(d, t));
  }
}

TEST_CASE("the dropped literal language is the alpha closure") {
  for (const RntaSpec& a : fixtures::bundled()) {
    NameSet S = small_set(a);
    std::vector<Term> closed =
        oracle::alpha_close(oracle::brute_language(a, S, 3), a.sig, S, 3);
    std::vector<Term> dropped = oracle::brute_language(name_drop(a), S, 3);
    CHECK(as_set(closed) == as_set(dropped));
  }

  std::mt19937 rng(47);
  NameSet S = names({"a", "b"});
  for (int i = 0; i < 25; ++i) {
    RntaSpec a = fixtures::random_automaton(rng);
    std::vector<Term> closed =
        oracle::alpha_close(oracle::brute_language(a, S, 3), a.sig, S, 3);
    std::vector<Term> dropped = oracle::brute_language(name_drop(a), S, 3);
    CHECK(as_set(closed) == as_set(dropped));
  }
}

TEST_CASE("removing a crippled orbit is caught by the embedding check") {
  RntaSpec a = fixtures::root_reappears();
  RntaSpec d = name_drop(a);
  // rename one dropped orbit so the embedding cannot find it
  d.orbits[d.orbit_index("q1@{1}")].id = "elsewhere";
  CHECK_FALSE(check_subautomaton(a, d));
}
