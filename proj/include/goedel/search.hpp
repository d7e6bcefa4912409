#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/eval.hpp"
#include "goedel/formula.hpp"
#include "goedel/interp.hpp"
#include "goedel/truthset.hpp"

namespace goedel {

struct SearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bounded search space: a finite truth list (a finite set's values, or a
// fixed truncation of an infinite one), a range of finite domain sizes,
// and a family of sequence templates used for one final pass over the
// infinite domain when the formula is monadic.
struct SearchSpace {
  std::vector<Rat> truth_values;    // ascending; must contain 0 and 1
  int min_domain = 1;
  int max_domain = 3;
  std::vector<SeqValue> templates;  // candidate families for unary predicates
  GoedelSetDescriptor set;          // attached to found interpretations
  unsigned long long max_interps = 10'000'000;
  bool symmetry_reduction = false;  // skip non-minimal domain permutations
  int workers = 0;                  // parallel scan width; 0 = auto, 1 = serial
};

// Defaults per descriptor kind. Finite sets keep their own values and get
// no templates (a family over a finite set attains its extrema, so the
// finite phase already decides those shapes). Infinite kinds get a fixed
// truncation or grid:
//   VUp   {0, 1/2, 2/3, 3/4, 4/5, 5/6, 6/7, 1}
//   VDown {0, 1/7, 1/6, 1/5, 1/4, 1/3, 1/2, 1}
//   [0,1] {k/8 : 0 <= k <= 8}
// and templates built from constants over the truth list, descending
// 1/(n+g), and ascending a - 1/(n+g) for g in 1..4 with a drawn from the
// truth list, all filtered by exact set membership (seq_in_set). Abstract
// descriptors carry no membership predicate and are rejected.
SearchSpace space_for(const GoedelSetDescriptor& d, int max_domain = 3);

struct Verdict {
  enum class Kind { Valid, Countermodel, Witness, NotFound };

  Kind kind = Kind::NotFound;
  // True when every phase was fully enumerated. Valid always implies
  // exhausted and is a claim about this space only, never about the logic.
  bool exhausted = false;
  unsigned long long enumerated = 0;  // canonical indices visited
  std::optional<Interpretation> interp;
  Rat value = 0;  // eval at interp; 1 for classical hits
  std::string bounds;

  bool operator==(const Verdict& o) const = default;
};

std::string to_string(Verdict::Kind k);

enum class SatMode { OneSat, PosSat, ClassicalSat };

// Enumerates interpretations in a fixed canonical order and returns the
// first hit. Order: domain sizes ascending; within a size, function tables
// (name-sorted) then predicate tables (name-sorted), each table a counter
// over argument tuples in lexicographic order with the last digit moving
// fastest; after all finite sizes, one infinite-domain pass assigning
// template families to unary predicates and truth-list constants to 0-ary
// atoms (slots name-sorted). Free variables are closed off first
// (universally here, existentially in check_sat). Propositional inputs
// collapse the domain range to one size, and the infinite pass is omitted
// when it cannot differ from the finite one (no unary predicate). When the
// formula has function symbols or a predicate of arity > 1 the infinite
// pass has no representation and is skipped lossily: the result can then
// be NotFound but never Valid. Exceeding max_interps yields NotFound with
// exhausted = false. Scans may be sharded across threads; the least hit
// index wins, so results do not depend on scheduling.
Verdict find_countermodel(const FormulaPtr& f, const SearchSpace& s);

// Same enumeration, hunting for eval = 1 (OneSat), eval > 0 (PosSat), or
// classical truth (ClassicalSat; truth list restricted to {0,1} and
// templates to {0,1}-valued families).
Verdict check_sat(const FormulaPtr& f, SatMode mode, const SearchSpace& s);

// A named formula with frozen expected statuses over the built-in sets.
struct Fixture {
  std::string name;
  FormulaPtr formula;
  std::string mode;  // "valid" | "one-sat" | "classical-sat"
  std::map<std::string, std::string> expected;  // set name -> status
  std::string note;
};

// Axioms, quantifier shifts, isolation principles, finite-width chain
// tautologies, threshold gadgets, and satisfiability gaps.
const std::vector<Fixture>& fixture_corpus();

struct FixtureResult {
  std::string fixture;
  std::string set_name;
  std::string expected;  // empty when the fixture pins nothing for this set
  std::string got;
  bool pass = false;
  Verdict verdict;
};

struct FixtureReport {
  std::vector<FixtureResult> rows;
  bool all_pass = true;
};

// Runs every fixture against each named built-in set (default: G3 G4 G5
// Gup Gdown G01). Unknown names throw SearchError.
FixtureReport run_fixture_suite(const std::vector<std::string>& set_names = {});

// One tab-separated line per row: fixture, set, expected, got, pass|fail,
// note. Byte-stable across runs.
std::string report_text(const FixtureReport& r);

}  // namespace goedel
