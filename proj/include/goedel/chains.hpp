#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/formula.hpp"
#include "goedel/interp.hpp"

namespace goedel {

struct ChainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An order type over a set of propositional atoms: blocks.front() is the
// falsum block, blocks.back() the verum block (either may be empty), inner
// blocks are nonempty. Atoms in one block are forced equal, consecutive
// blocks strictly ordered. Atoms are sorted within each block.
struct Chain {
  std::vector<std::vector<std::string>> blocks;

  bool operator==(const Chain&) const = default;
  auto operator<=>(const Chain&) const = default;

  int top() const { return static_cast<int>(blocks.size()) - 1; }
  // Block index holding the atom, or -1.
  int block_of(const std::string& atom) const;
};

// All satisfiable order types over the given atoms, deduplicated and sorted.
// restricted drops chains placing an atom in the verum block; max_levels
// caps the total number of blocks (validity over a finite set of m truth
// values only needs chains with at most m blocks).
std::vector<Chain> enumerate_chains(std::vector<std::string> atoms,
                                    bool restricted = false,
                                    std::optional<int> max_levels = {});

// "bot < X == Y < top"
std::string chain_str(const Chain& c);

// The block index a propositional formula lands in under any assignment
// realizing the chain: conjunction takes the lower block, disjunction the
// higher, an implication is the verum block unless the antecedent's block
// exceeds the consequent's (then the consequent's), and delta collapses
// everything below the verum block to the falsum block.
int psi_eval(const FormulaPtr& f, const Chain& c);

// bot / top / the block's first atom.
FormulaPtr block_formula(const Chain& c, int block);

// A formula whose value is 1 exactly on the assignments realizing the chain.
// The crisp rendering (delta-guarded constraints) is 0 everywhere else and
// makes the first normal form pointwise exact; the plain rendering uses only
// the "<" and "<->" sugar, shares the same 1-locus, but can take values
// strictly between 0 and 1 off the chain.
FormulaPtr chain_formula(const Chain& c, bool crisp = true);

// A one-element-domain interpretation realizing the chain: block j of t
// blocks gets value j/(t-1).
Interpretation chain_assignment(const Chain& c);

// Disjunction over all chains of (chain and psi-block); pointwise equivalent
// to f under every assignment.
FormulaPtr cnf_delta_1(const FormulaPtr& f);

// Restricted-semantics normal form: over the restricted chains, keep exactly
// those whose psi value is the verum block, each as a delta-free chain
// formula; empty disjunction collapses to bot. Takes value 1 under a
// restricted assignment (all atoms below 1) iff f does.
FormulaPtr cnf_delta_2(const FormulaPtr& f);

// True iff psi lands in the verum block on every chain over f's atoms; with
// levels given, only chains with at most that many blocks are consulted,
// deciding validity over the m-element truth set.
bool decide_valid_prop(const FormulaPtr& f, std::optional<int> levels = {});

}  // namespace goedel
