#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/rational.hpp"
#include "goedel/truthset.hpp"

namespace goedel {

struct InterpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value family over the natural numbers: value(n) = overrides[n] when
// present, else alpha + beta/(n+gamma). The closed form is monotone in n,
// which makes order comparisons of two families decidable exactly: the
// difference, cleared of denominators, is a quadratic in n whose eventual
// sign and last sign change are computable. Every pointwise Goedel
// operation on two families is again a family of this shape with a finite
// override prefix.
struct SeqValue {
  Rat alpha;
  Rat beta;
  Rat gamma = 1;  // > 0
  std::map<long, Rat> overrides;

  bool operator==(const SeqValue& o) const = default;
};

SeqValue seq_const(const Rat& v);
// Validates: gamma > 0, every value (override and closed-form) in [0,1].
SeqValue seq_make(const Rat& alpha, const Rat& beta, const Rat& gamma,
                  std::map<long, Rat> overrides = {});

Rat seq_at(const SeqValue& s, long n);

// Drops overrides that equal the closed form; beta = 0 forces gamma = 1.
// Canonical forms compare with ==.
SeqValue seq_canon(SeqValue s);

// Smallest index at which sign(a(n) - b(n)) becomes constant, with that
// sign (-1, 0, +1). The index is past every override of either family.
std::pair<long, int> seq_eventual_compare(const SeqValue& a, const SeqValue& b);

SeqValue seq_min(const SeqValue& a, const SeqValue& b);
SeqValue seq_max(const SeqValue& a, const SeqValue& b);
// Pointwise Goedel conditional: 1 where a <= b, else b.
SeqValue seq_implies(const SeqValue& a, const SeqValue& b);
// Pointwise: 1 where the value is exactly 1, else 0.
SeqValue seq_delta(const SeqValue& a);
// Pointwise gluing: keep values <= omega, raise the rest to 1.
SeqValue seq_glue(const SeqValue& a, const Rat& omega);

struct Extremum {
  Rat value;
  bool attained;

  bool operator==(const Extremum& o) const = default;
};

Extremum seq_inf(const SeqValue& s);
Extremum seq_sup(const SeqValue& s);

// Exact membership of every value (and the limit) in a concrete set.
bool seq_in_set(const SeqValue& s, const GoedelSetDescriptor& d);

// Textual form: "1/2", "0 + 1/(n+2)", "1 - 1/3/(n+1)".
std::string seq_str(const SeqValue& s);  // closed form only, no overrides

struct Interpretation {
  enum class Domain { Finite, Nat };

  Domain domain = Domain::Finite;
  std::vector<std::string> elements;  // Finite only
  // Finite-domain predicate tables (tuples of element indices). 0-ary
  // atoms live here for both domain kinds, keyed by the empty tuple.
  std::map<std::string, std::map<std::vector<int>, Rat>> atoms;
  // Finite-domain function tables mapping tuples to element indices.
  std::map<std::string, std::map<std::vector<int>, int>> funcs;
  // Nat-domain unary predicate families.
  std::map<std::string, SeqValue> seqs;
  // Free-variable assignment: element index (Finite) or natural (Nat).
  std::map<std::string, long> assign;
  // When present, every atomic value must belong to it (see validate).
  // Not part of the text format; attached programmatically.
  std::optional<GoedelSetDescriptor> truth_set;

  bool operator==(const Interpretation& o) const = default;

  int element_index(const std::string& name) const;  // -1 when absent
};

// Canonical element names for a finite domain of size k (a, b, c, ...).
std::vector<std::string> finite_elements(int k);

// Lift every atomic value v to (v <= omega ? v : 1). Requires omega < 1.
Interpretation glue(const Interpretation& i, const Rat& omega);

// Violation messages; empty means every atomic value (and every family,
// including its limit) belongs to the concrete set. The one-argument form
// checks against i.truth_set and reports nothing when that is absent.
std::vector<std::string> validate(const Interpretation& i, const GoedelSetDescriptor& v);
std::vector<std::string> validate(const Interpretation& i);

// Line-oriented text format:
//   domain finite 3          domain nat
//   atom P(a, b) = 3/10      atom p = 1/2
//   func f(a) = b            seq A = 0 + 1/(n+2)
//   assign x = a             seq A override 0 = 1/2
//                            assign x = 5
// '#' starts a comment. Decimal literals are rejected. Predicate and
// function tables must be total over the finite domain.
std::string interp_to_text(const Interpretation& i);
Interpretation interp_from_text(const std::string& text);

}  // namespace goedel
