#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/formula.hpp"
#include "goedel/interp.hpp"

namespace goedel {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceEntry {
  std::string formula;  // printed subformula
  std::string binding;  // quantifier bindings in effect, empty at the top
  Rat value;
  // Infinite-domain quantifiers record the instance family and whether
  // the extremum is attained (a minimum/maximum) or proper.
  std::optional<SeqValue> family;
  std::optional<bool> attained;
};

struct EvalResult {
  Rat value;
  std::vector<TraceEntry> trace;
};

// Exact recursive evaluation. Conjunction is min, disjunction max, the
// conditional is 1 when lhs <= rhs and rhs otherwise, Delta maps exactly-1
// to 1 and everything else to 0, quantifiers take inf/sup over the domain.
// Over the infinite domain the instance family of a quantified body is
// computed symbolically as a SeqValue; a quantifier nested inside another
// whose body mentions the outer variable is rejected (see errors below).
Rat eval(const FormulaPtr& f, const Interpretation& i);
EvalResult eval_traced(const FormulaPtr& f, const Interpretation& i);

// Two-valued semantics with Delta as identity. Requires every atomic
// value to be 0 or 1. Supports arbitrarily nested quantifiers over the
// infinite domain: a crisp family is eventually constant, so one
// representative index past every override is exact.
bool classical_eval(const FormulaPtr& f, const Interpretation& i);

// True iff omega is not the limit of a strictly decreasing sequence of
// subformula values of f under i: no instance family descends to omega
// (beta > 0 with alpha = omega). Finite domains always give true.
bool omega_isolated_from_above(const Interpretation& i, const FormulaPtr& f, const Rat& omega);

}  // namespace goedel
