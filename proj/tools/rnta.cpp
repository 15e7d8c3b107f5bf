// Command line front end over the library.  Results go to stdout,
// diagnostics to stderr.  Exit codes: 0 positive answer or success,
// 1 negative answer (reject / counterexample / invalid automaton),
// 2 input or usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rnta/format.hpp"
#include "rnta/inclusion.hpp"
#include "rnta/namedrop.hpp"
#include "rnta/nfta.hpp"
#include "rnta/oracle.hpp"
#include "rnta/semantics.hpp"

using namespace rnta;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

RntaSpec load_automaton(const std::string& path) {
  try {
    return parse_automaton(slurp(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ":" + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Term load_term(const std::string& path) {
  try {
    return parse_term(slurp(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ":" + e.what());
  }
}

void check_arities(Term t, const Signature& sig, const std::string& path) {
  auto arity = sig.arity(t.symbol());
  if (!arity)
    throw std::runtime_error(path + ": symbol '" + t.symbol().str() +
                             "' is not in the automaton's signature");
  if (*arity != static_cast<int>(t.arity()))
    throw std::runtime_error(path + ": symbol '" + t.symbol().str() +
                             "' used with " + std::to_string(t.arity()) +
                             " children, declared /" + std::to_string(*arity));
  for (size_t i = 0; i < t.arity(); ++i) check_arities(t.child(i), sig, path);
}

SemanticsKind semantics_arg(const std::string& s) {
  auto kind = parse_semantics(s);
  if (!kind)
    throw std::runtime_error(
        "unknown semantics '" + s +
        "' (expected alphatic, global, branchwise or local)");
  return *kind;
}

std::string print_nfta(const Nfta& n) {
  std::ostringstream out;
  for (auto& [f, k] : n.sig.entries())
    out << "symbol " << f.str() << '/' << k << '\n';
  for (const std::string& s : n.state_names) out << "state " << s << '\n';
  if (n.initial >= 0) out << "initial " << n.state_names[n.initial] << '\n';
  for (const NftaRule& r : n.rules) {
    out << "rule " << n.state_names[r.state] << ' '
        << (r.label.is_bound() ? "bound" : "free") << ' ' << r.label.name.str()
        << ' ' << r.symbol.str();
    for (int c : r.children) out << ' ' << n.state_names[c];
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regular nominal tree automata: membership and inclusion"};
  app.require_subcommand(1);

  int rc = 0;
  std::string a_path, b_path, term_path, out_path, witness_path, sig_path;
  std::string sem_str = "alphatic";
  std::vector<std::string> name_args;
  int depth = 2;
  size_t max_nodes = 20;
  if (const char* env = std::getenv("RNTA_MAX_NODES"))
    max_nodes = std::strtoul(env, nullptr, 10);

  auto* validate_cmd =
      app.add_subcommand("validate", "check an automaton file");
  validate_cmd->add_option("automaton", a_path, "automaton file")->required();
  validate_cmd->callback([&]() {
    std::string text = slurp(a_path);
    try {
      RntaSpec a = parse_automaton(text);
      std::cout << "valid: " << a.orbits.size() << " orbits, "
                << a.rules.size() << " rules, degree " << degree(a) << "\n";
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      std::cerr << a_path << ": " << e.what() << "\n";
      std::cout << "invalid\n";
      rc = 1;
    }
  });

  auto* member_cmd =
      app.add_subcommand("member", "decide membership of a term");
  member_cmd->add_option("automaton", a_path, "automaton file")->required();
  member_cmd->add_option("term", term_path, "term file")->required();
  member_cmd->add_option("--semantics", sem_str,
                         "alphatic, global, branchwise or local");
  member_cmd->add_option("--max-nodes", max_nodes,
                         "node cap for global/branchwise enumeration");
  member_cmd->callback([&]() {
    RntaSpec a = load_automaton(a_path);
    Term t = load_term(term_path);
    check_arities(t, a.sig, term_path);
    SemanticsKind kind = semantics_arg(sem_str);
    MemberOptions opts;
    opts.max_annotation_nodes = max_nodes;
    bool in = member(a, t, kind, opts);
    std::cout << (in ? "accept" : "reject") << "\n";
    rc = in ? 0 : 1;
  });

  auto* include_cmd =
      app.add_subcommand("include", "decide language inclusion");
  include_cmd->add_option("left", a_path, "automaton file, left side")
      ->required();
  include_cmd->add_option("right", b_path, "automaton file, right side")
      ->required();
  include_cmd->add_option("--semantics", sem_str,
                          "alphatic, global, branchwise or local");
  include_cmd->add_option("--witness", witness_path,
                          "write the counterexample term to this file");
  include_cmd->callback([&]() {
    RntaSpec a = load_automaton(a_path);
    RntaSpec b = load_automaton(b_path);
    SemanticsKind kind = semantics_arg(sem_str);
    IncludeResult r = include(a, b, kind);
    if (r.holds) {
      std::cout << "holds\n";
      return;
    }
    std::cout << "counterexample: " << print_term(*r.witness) << "\n";
    if (r.witness_data)
      std::cout << "data: " << print_term(*r.witness_data) << "\n";
    if (!witness_path.empty())
      emit(witness_path, print_term(*r.witness) + "\n");
    rc = 1;
  });

  auto* drop_cmd =
      app.add_subcommand("namedrop", "apply the name-dropping modification");
  drop_cmd->add_option("automaton", a_path, "automaton file")->required();
  drop_cmd->add_option("-o,--output", out_path, "output file (default stdout)");
  drop_cmd->callback([&]() {
    RntaSpec a = load_automaton(a_path);
    emit(out_path, print_automaton(name_drop(a)));
  });

  auto* restrict_cmd = app.add_subcommand(
      "restrict", "expand an automaton into a finite tree automaton over a "
                  "fixed name set");
  restrict_cmd->add_option("automaton", a_path, "automaton file")->required();
  restrict_cmd->add_option("--names", name_args,
                           "names to restrict to (default: a fresh set of "
                           "degree*max_arity+1 names)")
      ->delimiter(',');
  restrict_cmd->add_option("-o,--output", out_path,
                           "output file (default stdout)");
  restrict_cmd->callback([&]() {
    RntaSpec a = load_automaton(a_path);
    NameSet S;
    if (name_args.empty()) {
      S = restriction_set(a);
    } else {
      for (const std::string& s : name_args) S.insert(Name::intern(s));
    }
    emit(out_path, print_nfta(restrict_to(a, S)));
  });

  auto* enum_cmd =
      app.add_subcommand("enumerate", "list terms over a signature");
  enum_cmd->add_option("--sig", sig_path, "signature file, e.g. \"f/2, k/0\"")
      ->required();
  enum_cmd->add_option("--names", name_args, "names the terms may use")
      ->required()
      ->delimiter(',');
  enum_cmd->add_option("--depth", depth, "maximum depth")
      ->check(CLI::PositiveNumber);
  enum_cmd->callback([&]() {
    Signature sig;
    try {
      sig = parse_signature(slurp(sig_path));
    } catch (const ParseError& e) {
      throw std::runtime_error(sig_path + ":" + e.what());
    }
    NameSet S;
    for (const std::string& s : name_args) S.insert(Name::intern(s));
    for (Term t : oracle::enum_terms(sig, S, depth))
      std::cout << print_term(t) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rnta::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
