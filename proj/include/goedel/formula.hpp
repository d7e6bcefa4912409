#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace goedel {

struct FormulaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Term {
  enum class Kind { Var, Const, App };

  Kind kind = Kind::Var;
  std::string name;
  std::vector<Term> args;  // App only

  static Term var(std::string n);
  static Term constant(std::string n);
  static Term app(std::string n, std::vector<Term> as);

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
};

enum class Conn { Bottom, Top, Atom, And, Or, Implies, Delta, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable nodes shared freely between formulas.
struct Formula {
  Conn kind = Conn::Bottom;
  std::string name;        // Atom: predicate symbol; Forall/Exists: bound variable
  std::vector<Term> args;  // Atom only
  FormulaPtr lhs, rhs;     // binary: both; Delta/Forall/Exists: lhs only

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
};

FormulaPtr f_bot();
FormulaPtr f_top();
FormulaPtr f_atom(std::string pred, std::vector<Term> args = {});
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_delta(FormulaPtr a);
FormulaPtr f_forall(std::string var, FormulaPtr body);
FormulaPtr f_exists(std::string var, FormulaPtr body);

// Sugar, expanded structurally at construction.
FormulaPtr f_not(FormulaPtr a);                 // a -> bot
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);   // (a -> b) & (b -> a)
FormulaPtr f_less(FormulaPtr a, FormulaPtr b);  // (a -> b) -> a

bool equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_vars(const FormulaPtr& f);
// Every variable name appearing anywhere (free, bound, or inside terms).
std::set<std::string> all_var_names(const FormulaPtr& f);
// 0-ary predicate symbols only.
std::set<std::string> atom_names(const FormulaPtr& f);
// Throws FormulaError when a symbol is used with two different arities.
std::map<std::string, std::size_t> predicate_arities(const FormulaPtr& f);
std::map<std::string, std::size_t> function_arities(const FormulaPtr& f);

bool has_delta(const FormulaPtr& f);
bool has_quantifier(const FormulaPtr& f);
bool is_propositional(const FormulaPtr& f);
bool is_prenex(const FormulaPtr& f);

// Renames bound variables so they are pairwise distinct and distinct from
// every free variable. First occurrence keeps its name when possible.
FormulaPtr rectify(const FormulaPtr& f);

// Universal closure over free variables in sorted order.
FormulaPtr close_universally(const FormulaPtr& f);

// Replaces free occurrences of var by t. Quantifiers binding var shadow it.
FormulaPtr subst_var(const FormulaPtr& f, const std::string& var, const Term& t);

}  // namespace goedel
