#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "rnta/format.hpp"
#include "rnta/oracle.hpp"

using namespace rnta;
using fixtures::names;
using fixtures::tm;

namespace {

std::set<Term> as_set(const std::vector<Term>& v) {
  return std::set<Term>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("term enumeration counts") {
  Signature just_k = parse_signature("k/0");
  NameSet a = names({"a"});

  // one constant, one plain name: free and bound label
  const auto& tiny = oracle::enum_terms(just_k, a, 1);
  REQUIRE(tiny.size() == 2);
  CHECK(as_set(tiny) == as_set({tm("a.k"), tm("nu a.k")}));

  // with the dummy the unlabelled leaf appears as well
  NameSet ad = a;
  ad.insert(Name::dummy());
  CHECK(oracle::enum_terms(just_k, ad, 1).size() == 3);

  // f/2 over one name: 2 leaves, 2 * 2*2 inner nodes
  CHECK(oracle::enum_terms(fixtures::fk_sig(), a, 2).size() == 10);

  // two names: 4 leaves, 4 * 4*4 inner nodes
  CHECK(oracle::enum_terms(fixtures::fk_sig(), names({"a", "b"}), 2).size() ==
        68);
}

TEST_CASE("enumerations of growing depth are prefixes of one another") {
  NameSet S = names({"a", "b"});
  S.insert(Name::dummy());
  const auto& d2 = oracle::enum_terms(fixtures::fk_sig(), S, 2);
  const auto& d3 = oracle::enum_terms(fixtures::fk_sig(), S, 3);
  REQUIRE(d2.size() < d3.size());
  CHECK(std::equal(d2.begin(), d2.end(), d3.begin()));
  for (const Term& t : d3) CHECK(t.depth() <= 3);
}

TEST_CASE("canonical ids line up with the enumeration") {
  NameSet S = names({"a", "b"});
  const auto& u = oracle::enum_terms(fixtures::fk_sig(), S, 2);
  const auto& ids = oracle::canon_ids(fixtures::fk_sig(), S, 2);
  REQUIRE(ids.size() == u.size());
  for (size_t i = 0; i < u.size(); ++i)
    CHECK(ids[i] == oracle::alpha_canon(u[i]).id());
}

TEST_CASE("alpha closure inside a term universe") {
  Signature sig = fixtures::fk_sig();
  NameSet S = names({"a", "b"});

  CHECK(oracle::alpha_close({}, sig, S, 2).empty());

  // a closed singleton picks up its renamings
  CHECK(as_set(oracle::alpha_close({tm("nu a.k")}, sig, S, 1)) ==
        as_set({tm("nu a.k"), tm("nu b.k")}));

  // free names stay put
  CHECK(as_set(oracle::alpha_close({tm("a.k")}, sig, S, 1)) ==
        as_set({tm("a.k")}));

  // a binder over a free occurrence keeps the free one fixed
  CHECK(as_set(oracle::alpha_close({tm("nu a.f(a.k, b.k)")}, sig, S, 2)) ==
        as_set({tm("nu a.f(a.k, b.k)")}));

  // closing is idempotent and extensive
  std::mt19937 rng(59);
  std::vector<Name> pool = fixtures::name_pool({"a", "b", "c"});
  NameSet S3 = names({"a", "b", "c"});
  for (int i = 0; i < 50; ++i) {
    std::vector<Term> L;
    for (int j = 0; j < 3; ++j)
      L.push_back(fixtures::random_term(rng, pool, 2, false, false));
    std::vector<Term> once = oracle::alpha_close(L, sig, S3, 2);
    std::vector<Term> twice = oracle::alpha_close(once, sig, S3, 2);
    CHECK(as_set(once) == as_set(twice));
    for (const Term& t : L) {
      if (t.depth() <= 2)
        CHECK(std::find(once.begin(), once.end(), t) != once.end());
    }
  }
}

TEST_CASE("brute language sweeps") {
  NameSet a = names({"a"});

  CHECK(as_set(oracle::brute_language(fixtures::universal(), a, 1)) ==
        as_set({tm("nu a.k")}));

  // no rules, no language
  RntaSpec empty;
  empty.sig = fixtures::fk_sig();
  Orbit o;
  o.id = "q";
  empty.orbits.push_back(o);
  empty.initial = 0;
  CHECK(oracle::brute_language(empty, a, 3).empty());

  // brute agrees with accepts pointwise
  NameSet S = names({"a", "b"});
  for (const RntaSpec& spec :
       {fixtures::root_reappears(), fixtures::some_letter_twice()}) {
    std::vector<Term> lang = oracle::brute_language(spec, S, 3);
    std::set<Term> in = as_set(lang);
    for (const Term& t : oracle::enum_terms(spec.sig, S, 3))
      CHECK((in.count(t) != 0) == accepts(spec, t));
  }
}
