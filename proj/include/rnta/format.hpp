#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rnta/automaton.hpp"

namespace rnta {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// Line-oriented automaton description.  // starts a comment.  Directives:
//   symbol f/2
//   uses_dummy
//   name_dropped
//   orbit q1/1            (live defaults to all registers)
//   orbit q1@{}/1 live    (live register list, possibly empty)
//   initial q0
//   rule q0 bound f q1{1<-new} q1{1<-new}
//   rule q1 free 1 k      (letter register, or _ for the dummy)
// Symbols and orbits must be declared before use.  The result is passed
// through validate(); violations surface as std::invalid_argument.
RntaSpec parse_automaton(std::string_view text);
std::string print_automaton(const RntaSpec& a);

// Terms:  nu a. f(a.k, b.k)   with unlabelled nodes carrying the dummy.
// Symbols may contain letters, digits, _, ! and #; names only letters,
// digits and _.  "nu" is a keyword and the dummy _ cannot be bound.
Term parse_term(std::string_view text);
std::string print_term(Term t);

// comma or whitespace separated arity declarations: "f/2, k/0"
Signature parse_signature(std::string_view text);

}  // namespace rnta
