#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/formula.hpp"
#include "goedel/truthset.hpp"

namespace goedel {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One quantifier pull. position is the dot path of the connective the
// quantifier crossed, in the rectified input ("." = root, then 1 = left or
// only child, 2 = right child); the connective keeps its pre-extraction path
// even as quantifiers stack above it.
struct ShiftStep {
  std::string rule;
  std::string position;
  bool operator==(const ShiftStep&) const = default;
};

// Rule names appearing in traces. The unconditional pulls are
// intuitionistic equivalences; S1/S2/S3 and the delta shifts consult the
// classification gates.
//   all-and   (Ax A) & B  ==  Ax (A & B)
//   ex-and    (Ex A) & B  ==  Ex (A & B)
//   S1        (Ax A) | B  ==  Ax (A | B)
//   ex-or     (Ex A) | B  ==  Ex (A | B)
//   S3        (Ax A) -> B ==  Ex (A -> B)
//   ex-ante   (Ex A) -> B ==  Ax (A -> B)
//   all-cons  B -> (Ax A) ==  Ax (B -> A)
//   S2        B -> (Ex A) ==  Ex (B -> A)
//   delta-all D (Ax A)    ==  Ax (D A)
//   delta-ex  D (Ex A)    ==  Ex (D A)

struct PrenexResult {
  FormulaPtr prenex;  // null iff unsupported
  std::vector<ShiftStep> trace;
  std::string reason;     // machine-readable code, empty on success
  std::string guarantee;  // "finite-exhaustive" or "tested-not-proven"

  bool ok() const { return prenex != nullptr; }
};

// Innermost-leftmost extraction over the rectified input, using only rules
// whose classification gates hold. Unsupported reasons:
//   logical-prenex-unavailable        the class admits no logical prenexation
//   delta-prenex-unavailable          delta input, delta-free class would work
//   shift-s1/s2/s3-unavailable        a gated rule was needed mid-extraction
//   delta-shift-unavailable           a delta shift was needed mid-extraction
PrenexResult prenexify(const FormulaPtr& f, const Classification& c);

// Like prenexify but only promising a positively-valid equivalence: when the
// logical gates hold it defers to prenexify; otherwise, for classes with
// pos_valid_prenex, it runs the double-negation translation followed by
// ungated classical extraction.
PrenexResult prenexify_pos_valid(const FormulaPtr& f, const Classification& c);

// Double-negation translation: inserts ~~ immediately inside every forall
// and in front of the whole formula. Delta input is rejected.
FormulaPtr kuroda(const FormulaPtr& f);

// Validity-preserving classical prenex: double-negates every atom, extracts
// quantifiers with the full ungated shift table, then collapses ~~~ to ~.
// The contract is validity equivalence, not logical equivalence.
FormulaPtr validity_prenex_re(const FormulaPtr& f);

// Standard skolemization of a prenex formula. Validity mode replaces each
// universal variable by a fresh function of the preceding existential
// variables (result purely existential); satisfiability mode is the dual.
// Fresh symbols are sk1, sk2, ... skipping names already in use.
FormulaPtr skolemize(const FormulaPtr& f, bool validity_mode = true);

}  // namespace goedel
