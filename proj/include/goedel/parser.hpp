#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/formula.hpp"

namespace goedel {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

struct ParseResult {
  FormulaPtr formula;
  // One entry per distinct free variable; free variables are permitted.
  std::vector<std::string> warnings;
};

// Concrete syntax:
//   formula := impl
//   impl    := disj ("->" impl)?
//   disj    := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := "~" unary | "D" unary | "A" var "." unary | "E" var "." unary | atom
//   atom    := "bot" | "top" | ident ("(" term ("," term)* ")")?
//            | "(" formula ")" | "(" formula ("<" | "<->") formula ")"
//   term    := ident ("(" term ("," term)* ")")?
// "D", "bot", "top" are reserved. "A" and "E" act as quantifiers exactly when
// followed by an identifier and a dot, and are ordinary identifiers otherwise.
// "~", "<", "<->" are sugar for "-> bot", "(a -> b) -> a", and mutual
// implication; they expand during parsing.
ParseResult parse_formula(const std::string& text);

}  // namespace goedel
