#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "rnta/format.hpp"
#include "rnta/namedrop.hpp"

using namespace rnta;
using fixtures::tm;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string data_file(const char* name) {
  return std::string(RNTA_DATA_DIR) + "/" + name;
}

int error_line(const char* text) {
  try {
    parse_automaton(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("bundled descriptions are canonical") {
  for (const char* name :
       {"universal.rnta", "root_reappears.rnta", "some_letter_twice.rnta",
        "xml.rnta", "pi.rnta"}) {
    std::string text = slurp(data_file(name));
    RntaSpec a = parse_automaton(text);
    CHECK(validate(a).empty());
    CHECK(print_automaton(a) == text);
  }
}

TEST_CASE("built-in fixtures match the bundled files") {
  CHECK(print_automaton(fixtures::universal()) ==
        slurp(data_file("universal.rnta")));
  CHECK(print_automaton(fixtures::root_reappears()) ==
        slurp(data_file("root_reappears.rnta")));
  CHECK(print_automaton(fixtures::some_letter_twice()) ==
        slurp(data_file("some_letter_twice.rnta")));
  CHECK(print_automaton(fixtures::xml_doc()) == slurp(data_file("xml.rnta")));
  CHECK(print_automaton(fixtures::pi_calc()) == slurp(data_file("pi.rnta")));
}

TEST_CASE("the sample document strips to its data tree") {
  Term doc = parse_term(slurp(data_file("xml_sample.term")));
  Term data = parse_term(slurp(data_file("xml_sample_data.term")));
  CHECK(accepts(fixtures::xml_doc(), doc));
  CHECK(denu(doc) == data);
  CHECK(is_data_tree(data));
}

TEST_CASE("printing then parsing an automaton is the identity") {
  std::mt19937 rng(107);
  for (int i = 0; i < 50; ++i) {
    RntaSpec a = fixtures::random_automaton(rng);
    std::string text = print_automaton(a);
    CHECK(print_automaton(parse_automaton(text)) == text);

    // name-dropped specs carry subset orbits and partial register blocks
    std::string dropped = print_automaton(name_drop(a));
    RntaSpec back = parse_automaton(dropped);
    CHECK(back.name_dropped);
    CHECK(print_automaton(back) == dropped);
  }
}

TEST_CASE("printing then parsing a term is the identity") {
  CHECK(print_term(tm("nu a.f(a.k, b.k)")) == "nu a.f(a.k, b.k)");
  CHECK(print_term(tm("k")) == "k");
  CHECK(print_term(tm("f(k, nu b.k)")) == "f(k, nu b.k)");

  std::mt19937 rng(109);
  std::vector<Name> pool = fixtures::name_pool({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    Term t = fixtures::random_term(rng, pool, 4);
    CHECK(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("term syntax errors") {
  CHECK_THROWS_AS(parse_term("nu _.k"), ParseError);       // dummy bound
  CHECK_THROWS_AS(parse_term("nu nu.k"), ParseError);      // keyword as name
  CHECK_THROWS_AS(parse_term("a.f(k"), ParseError);        // open paren
  CHECK_THROWS_AS(parse_term("f(k, k) k"), ParseError);    // trailing input
  CHECK_THROWS_AS(parse_term("nu a."), ParseError);        // missing symbol
  CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("automaton syntax errors carry positions") {
  CHECK(error_line("symbol f/2\n"
                   "symbol k/0\n"
                   "orbit q/0\n"
                   "initial q\n"
                   "rule q bound g q q\n") == 5);  // g undeclared
  CHECK(error_line("symbol k/0\n"
                   "orbit q/0\n"
                   "rule q bound k\n"
                   "initial p\n") == 4);  // p undeclared
  CHECK(error_line("symbol k/0\n"
                   "orbit q/0\n"
                   "orbit q/1\n") == 3);  // redeclared
  CHECK(error_line("symbol k/0\n"
                   "frobnicate\n") == 2);  // unknown directive
  CHECK(error_line("symbol k/0\n"
                   "orbit q/0\n"
                   "initial q\n"
                   "rule q bound k ,\n") == 4);  // stray punctuation

  try {
    parse_automaton("symbol f/2\nrule ?\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
    CHECK(std::string(e.what()).find("2:") == 0);
  }
}

TEST_CASE("validation problems surface when parsing") {
  // syntactically fine, no constant symbol anywhere
  CHECK_THROWS_AS(parse_automaton("symbol f/2\n"
                                  "orbit q/0\n"
                                  "initial q\n"
                                  "rule q bound f q q\n"),
                  std::invalid_argument);
}

TEST_CASE("signature strings") {
  Signature sig = parse_signature("f/2, k/0");
  CHECK(sig.arity(Symbol::intern("f")) == 2);
  CHECK(sig.arity(Symbol::intern("k")) == 0);
  CHECK(sig.max_arity() == 2);

  // separators are optional
  Signature loose = parse_signature("f/2 k/0");
  CHECK(loose.arity(Symbol::intern("f")) == 2);

  CHECK_THROWS_AS(parse_signature("f/"), ParseError);
  CHECK_THROWS_AS(parse_signature("f"), ParseError);
}
