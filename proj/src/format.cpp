#include "rnta/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rnta {

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '!' ||
         c == '#';
}

bool valid_name(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

struct Token {
  enum Kind { Word, Punct, End };
  Kind kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  Token cur;

  explicit Lexer(std::string_view s) : src(s) { advance(); }

  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError(msg, cur.line, cur.col);
  }

  void bump() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void advance() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    int at_line = line, at_col = col;
    if (pos >= src.size()) {
      cur = {Token::End, "", at_line, at_col};
      return;
    }
    char c = src[pos];
    if (word_char(c)) {
      size_t start = pos;
      while (pos < src.size() && word_char(src[pos])) bump();
      cur = {Token::Word, std::string(src.substr(start, pos - start)), at_line,
             at_col};
      return;
    }
    if (c == '<' && pos + 1 < src.size() && src[pos + 1] == '-') {
      bump();
      bump();
      cur = {Token::Punct, "<-", at_line, at_col};
      return;
    }
    if (std::string_view("(){},.@/").find(c) != std::string_view::npos) {
      bump();
      cur = {Token::Punct, std::string(1, c), at_line, at_col};
      return;
    }
    throw ParseError(std::string("stray character '") + c + "'", at_line,
                     at_col);
  }

  Token take() {
    Token t = cur;
    advance();
    return t;
  }

  bool at_punct(std::string_view p) const {
    return cur.kind == Token::Punct && cur.text == p;
  }

  void expect_punct(std::string_view p, const std::string& where) {
    if (!at_punct(p)) error("expected '" + std::string(p) + "' " + where);
    advance();
  }

  std::string expect_word(const std::string& what) {
    if (cur.kind != Token::Word) error("expected " + what);
    return take().text;
  }

  int expect_int(const std::string& what) {
    if (cur.kind != Token::Word ||
        !std::all_of(cur.text.begin(), cur.text.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      error("expected " + what);
    if (cur.text.size() > 6) error(what + " out of range");
    return std::stoi(take().text);
  }

  bool int_ahead() const {
    return cur.kind == Token::Word &&
           std::all_of(cur.text.begin(), cur.text.end(), [](char c) {
             return std::isdigit(static_cast<unsigned char>(c));
           });
  }
};

// orbit reference, either plain or with a register subset: q1 or q1@{1,3}
std::string parse_orbit_id(Lexer& lx) {
  std::string id = lx.expect_word("an orbit id");
  if (lx.at_punct("@")) {
    lx.advance();
    lx.expect_punct("{", "after '@'");
    id += "@{";
    bool first = true;
    while (!lx.at_punct("}")) {
      if (!first) lx.expect_punct(",", "in register subset");
      id += first ? "" : ",";
      id += std::to_string(lx.expect_int("a register in the subset"));
      first = false;
    }
    lx.advance();
    id += '}';
  }
  return id;
}

}  // namespace

RntaSpec parse_automaton(std::string_view text) {
  Lexer lx(text);
  RntaSpec spec;
  std::map<std::string, int> orbit_ids;

  auto orbit_ref = [&]() {
    Token at = lx.cur;
    std::string id = parse_orbit_id(lx);
    auto it = orbit_ids.find(id);
    if (it == orbit_ids.end())
      throw ParseError("unknown orbit '" + id + "'", at.line, at.col);
    return it->second;
  };

  while (lx.cur.kind != Token::End) {
    Token head = lx.cur;
    if (head.kind != Token::Word) lx.error("expected a directive");
    lx.advance();
    const std::string& d = head.text;

    if (d == "symbol") {
      Token at = lx.cur;
      std::string sym = lx.expect_word("a symbol name");
      lx.expect_punct("/", "after the symbol name");
      int arity = lx.expect_int("an arity");
      try {
        spec.sig.add(Symbol::intern(sym), arity);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at.line, at.col);
      }
    } else if (d == "uses_dummy") {
      spec.uses_dummy = true;
    } else if (d == "name_dropped") {
      spec.name_dropped = true;
    } else if (d == "orbit") {
      Token at = lx.cur;
      std::string id = parse_orbit_id(lx);
      if (orbit_ids.count(id))
        throw ParseError("orbit '" + id + "' redeclared", at.line, at.col);
      lx.expect_punct("/", "after the orbit id");
      int registers = lx.expect_int("a register count");
      Orbit o = Orbit::full(id, registers);
      if (lx.cur.kind == Token::Word && lx.cur.text == "live" &&
          lx.cur.line == head.line) {
        lx.advance();
        o.live.clear();
        while (lx.int_ahead() && lx.cur.line == head.line) {
          o.live.push_back(lx.expect_int("a live register"));
          if (lx.at_punct(",")) lx.advance();
        }
      }
      orbit_ids.emplace(id, static_cast<int>(spec.orbits.size()));
      spec.orbits.push_back(std::move(o));
    } else if (d == "initial") {
      spec.initial = orbit_ref();
    } else if (d == "rule") {
      SymbolicRule r;
      r.source = orbit_ref();
      std::string kind = lx.expect_word("'free' or 'bound'");
      if (kind == "free") {
        r.kind = RuleKind::Free;
        if (lx.cur.kind == Token::Word && lx.cur.text == "_") {
          lx.advance();
          r.letter_reg = kDummyReg;
        } else {
          r.letter_reg = lx.expect_int("a letter register or _");
        }
      } else if (kind == "bound") {
        r.kind = RuleKind::Bound;
        r.letter_reg = 0;
      } else {
        lx.error("expected 'free' or 'bound'");
      }
      Token at = lx.cur;
      std::string sym = lx.expect_word("a symbol");
      r.symbol = Symbol::intern(sym);
      if (!spec.sig.contains(r.symbol))
        throw ParseError("unknown symbol '" + sym + "'", at.line, at.col);
      while (lx.cur.kind == Token::Word && lx.cur.line == head.line) {
        ChildSpec cs;
        cs.orbit = orbit_ref();
        if (lx.at_punct("{")) {
          lx.advance();
          while (!lx.at_punct("}")) {
            if (!cs.regs.empty()) lx.expect_punct(",", "between assignments");
            RegisterAssign ra;
            ra.child_reg = lx.expect_int("a child register");
            lx.expect_punct("<-", "in the register assignment");
            if (lx.cur.kind == Token::Word && lx.cur.text == "new") {
              lx.advance();
              ra.source_reg = kFreshReg;
            } else {
              ra.source_reg = lx.expect_int("a source register or 'new'");
            }
            cs.regs.push_back(ra);
          }
          lx.advance();
          std::stable_sort(cs.regs.begin(), cs.regs.end(),
                           [](const RegisterAssign& x, const RegisterAssign& y) {
                             return x.child_reg < y.child_reg;
                           });
        }
        r.children.push_back(std::move(cs));
      }
      spec.rules.push_back(std::move(r));
    } else {
      throw ParseError("unknown directive '" + d + "'", head.line, head.col);
    }
  }
  std::vector<std::string> problems = validate(spec);
  if (!problems.empty()) {
    std::string msg = problems.front();
    for (size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
    throw std::invalid_argument(msg);
  }
  return spec;
}

std::string print_automaton(const RntaSpec& a) {
  std::ostringstream out;
  for (auto& [f, n] : a.sig.entries())
    out << "symbol " << f.str() << '/' << n << '\n';
  if (a.uses_dummy) out << "uses_dummy\n";
  if (a.name_dropped) out << "name_dropped\n";
  for (const Orbit& o : a.orbits) {
    out << "orbit " << o.id << '/' << o.registers;
    if (static_cast<int>(o.live.size()) != o.registers) {
      out << " live";
      for (size_t i = 0; i < o.live.size(); ++i)
        out << (i ? "," : " ") << o.live[i];
    }
    out << '\n';
  }
  if (a.initial >= 0 && a.initial < static_cast<int>(a.orbits.size()))
    out << "initial " << a.orbits[a.initial].id << '\n';
  for (const SymbolicRule& r : a.rules) {
    out << "rule " << a.orbits[r.source].id;
    if (r.kind == RuleKind::Free) {
      out << " free ";
      if (r.letter_reg == kDummyReg)
        out << '_';
      else
        out << r.letter_reg;
    } else {
      out << " bound";
    }
    out << ' ' << r.symbol.str();
    for (const ChildSpec& cs : r.children) {
      out << ' ' << a.orbits[cs.orbit].id;
      if (!cs.regs.empty()) {
        out << '{';
        for (size_t i = 0; i < cs.regs.size(); ++i) {
          if (i) out << ',';
          out << cs.regs[i].child_reg << "<-";
          if (cs.regs[i].source_reg == kFreshReg)
            out << "new";
          else
            out << cs.regs[i].source_reg;
        }
        out << '}';
      }
    }
    out << '\n';
  }
  return out.str();
}

namespace {

Term parse_term_rec(Lexer& lx) {
  Token first = lx.cur;
  std::string word = lx.expect_word("a name, 'nu' or a symbol");
  Label label = Label::free(Name::dummy());
  std::string sym;
  if (word == "nu") {
    Token at = lx.cur;
    std::string name = lx.expect_word("a bound name");
    if (!valid_name(name) || name == "nu")
      throw ParseError("invalid name '" + name + "'", at.line, at.col);
    if (name == "_")
      throw ParseError("the dummy cannot be bound", at.line, at.col);
    label = Label::bound(Name::intern(name));
    lx.expect_punct(".", "after the bound name");
    sym = lx.expect_word("a symbol");
  } else if (lx.at_punct(".")) {
    if (!valid_name(word))
      throw ParseError("invalid name '" + word + "'", first.line, first.col);
    label = Label::free(Name::intern(word));
    lx.advance();
    sym = lx.expect_word("a symbol");
  } else {
    sym = word;
  }
  std::vector<Term> kids;
  if (lx.at_punct("(")) {
    lx.advance();
    kids.push_back(parse_term_rec(lx));
    while (lx.at_punct(",")) {
      lx.advance();
      kids.push_back(parse_term_rec(lx));
    }
    lx.expect_punct(")", "after the children");
  }
  return Term::make(label, Symbol::intern(sym), kids);
}

void print_term_rec(std::ostream& out, Term t) {
  Label l = t.label();
  if (l.is_bound())
    out << "nu " << l.name.str() << '.';
  else if (!l.name.is_dummy())
    out << l.name.str() << '.';
  out << t.symbol().str();
  if (t.arity()) {
    out << '(';
    for (size_t i = 0; i < t.arity(); ++i) {
      if (i) out << ", ";
      print_term_rec(out, t.child(i));
    }
    out << ')';
  }
}

}  // namespace

Term parse_term(std::string_view text) {
  Lexer lx(text);
  Term t = parse_term_rec(lx);
  if (lx.cur.kind != Token::End) lx.error("unexpected trailing input");
  return t;
}

std::string print_term(Term t) {
  std::ostringstream out;
  print_term_rec(out, t);
  return out.str();
}

Signature parse_signature(std::string_view text) {
  Lexer lx(text);
  Signature sig;
  while (lx.cur.kind != Token::End) {
    if (lx.at_punct(",")) {
      lx.advance();
      continue;
    }
    Token at = lx.cur;
    std::string sym = lx.expect_word("a symbol name");
    lx.expect_punct("/", "after the symbol name");
    int arity = lx.expect_int("an arity");
    try {
      sig.add(Symbol::intern(sym), arity);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at.line, at.col);
    }
  }
  return sig;
}

}  // namespace rnta
