#pragma once

#include <string>

#include "goedel/formula.hpp"

namespace goedel {

// Sugar mode folds "-> bot" back to "~", mutual implication to "<->", and
// "(a -> b) -> a" to "(a < b)". Raw mode prints the primitive structure.
// Both modes satisfy parse(print(f)) == f.
enum class PrintMode { Sugar, Raw };

std::string print_term(const Term& t);
std::string print_formula(const FormulaPtr& f, PrintMode mode = PrintMode::Sugar);

}  // namespace goedel
