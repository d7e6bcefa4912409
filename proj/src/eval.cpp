#include "goedel/eval.hpp"

#include <algorithm>
#include <map>

#include "goedel/printer.hpp"

namespace goedel {

namespace {

using Env = std::map<std::string, long>;

struct Ctx {
  const Interpretation& i;
  std::vector<TraceEntry>* trace = nullptr;
  std::vector<SeqValue>* families = nullptr;

  std::size_t open(const FormulaPtr& f, const std::string& binding) {
    if (!trace) return 0;
    trace->push_back({print_formula(f), binding, Rat(0), std::nullopt, std::nullopt});
    return trace->size() - 1;
  }
  Rat close(std::size_t idx, const Rat& v) {
    if (trace) (*trace)[idx].value = v;
    return v;
  }
  Rat close(std::size_t idx, const Extremum& e, const SeqValue& fam) {
    if (trace) {
      (*trace)[idx].value = e.value;
      (*trace)[idx].family = fam;
      (*trace)[idx].attained = e.attained;
    }
    return e.value;
  }
  void keep(const SeqValue& fam) {
    if (families) families->push_back(fam);
  }
};

Rat godel_implies(const Rat& a, const Rat& b) { return a <= b ? Rat(1) : b; }

long resolve_finite(const Ctx& c, const Term& t, const Env& env) {
  if (t.kind == Term::Kind::App) {
    auto f = c.i.funcs.find(t.name);
    if (f == c.i.funcs.end()) throw EvalError("function '" + t.name + "' has no table");
    std::vector<int> tuple;
    for (const auto& a : t.args) tuple.push_back(static_cast<int>(resolve_finite(c, a, env)));
    auto g = f->second.find(tuple);
    if (g == f->second.end())
      throw EvalError("function '" + t.name + "' is missing a tuple entry");
    return g->second;
  }
  if (t.kind == Term::Kind::Var) {
    auto it = env.find(t.name);
    if (it != env.end()) return it->second;
  }
  // a bare name may denote a domain element or a 0-ary function
  int e = c.i.element_index(t.name);
  if (e >= 0) return e;
  auto f = c.i.funcs.find(t.name);
  if (f != c.i.funcs.end()) {
    auto g = f->second.find({});
    if (g != f->second.end()) return g->second;
  }
  throw EvalError("unassigned free variable '" + t.name + "'");
}

Rat atom_value(const Ctx& c, const std::string& pred, const std::vector<int>& tuple) {
  auto it = c.i.atoms.find(pred);
  if (it == c.i.atoms.end()) throw EvalError("atom '" + pred + "' has no valuation");
  auto jt = it->second.find(tuple);
  if (jt == it->second.end())
    throw EvalError("atom '" + pred + "' is missing a tuple entry");
  return jt->second;
}

std::string extend_binding(const Ctx& c, const std::string& binding, const std::string& var,
                           long value) {
  std::string b = binding.empty() ? "" : binding + ", ";
  b += var + " = ";
  b += c.i.domain == Interpretation::Domain::Finite ? c.i.elements[value]
                                                    : std::to_string(value);
  return b;
}

Rat eval_finite(Ctx& c, const FormulaPtr& f, Env& env, const std::string& binding) {
  std::size_t slot = c.open(f, binding);
  switch (f->kind) {
    case Conn::Bottom:
      return c.close(slot, 0);
    case Conn::Top:
      return c.close(slot, 1);
    case Conn::Atom: {
      std::vector<int> tuple;
      for (const auto& t : f->args) tuple.push_back(static_cast<int>(resolve_finite(c, t, env)));
      return c.close(slot, atom_value(c, f->name, tuple));
    }
    case Conn::And:
      return c.close(slot, std::min(eval_finite(c, f->lhs, env, binding),
                                    eval_finite(c, f->rhs, env, binding)));
    case Conn::Or:
      return c.close(slot, std::max(eval_finite(c, f->lhs, env, binding),
                                    eval_finite(c, f->rhs, env, binding)));
    case Conn::Implies: {
      Rat a = eval_finite(c, f->lhs, env, binding);
      Rat b = eval_finite(c, f->rhs, env, binding);
      return c.close(slot, godel_implies(a, b));
    }
    case Conn::Delta:
      return c.close(slot, eval_finite(c, f->lhs, env, binding) == 1 ? 1 : 0);
    case Conn::Forall:
    case Conn::Exists: {
      bool forall = f->kind == Conn::Forall;
      Rat acc = forall ? 1 : 0;
      std::optional<long> saved;
      if (auto it = env.find(f->name); it != env.end()) saved = it->second;
      for (std::size_t e = 0; e < c.i.elements.size(); ++e) {
        env[f->name] = static_cast<long>(e);
        Rat v = eval_finite(c, f->lhs, env, extend_binding(c, binding, f->name, e));
        acc = forall ? std::min(acc, v) : std::max(acc, v);
      }
      if (saved)
        env[f->name] = *saved;
      else
        env.erase(f->name);
      return c.close(slot, acc);
    }
  }
  throw EvalError("unreachable connective");
}

Rat eval_nat(Ctx& c, const FormulaPtr& f, Env& env, const std::string& binding);

long resolve_nat(const Ctx& c, const Term& t, const Env& env) {
  if (t.kind == Term::Kind::App)
    throw EvalError("function symbols are not available over the infinite domain");
  auto it = env.find(t.name);
  if (it != env.end()) return it->second;
  throw EvalError("unassigned free variable '" + t.name + "'");
}

// Instance family of f as a function of var; every other free variable is
// concrete in env. Each returned family is recorded for the isolation check.
SeqValue eval_nat_seq(Ctx& c, const FormulaPtr& f, const std::string& var, Env& env,
                      const std::string& binding) {
  auto done = [&](SeqValue s) {
    c.keep(s);
    return s;
  };
  switch (f->kind) {
    case Conn::Bottom:
      return done(seq_const(0));
    case Conn::Top:
      return done(seq_const(1));
    case Conn::Atom: {
      if (f->args.empty()) return done(seq_const(atom_value(c, f->name, {})));
      if (f->args.size() > 1)
        throw EvalError("predicate '" + f->name +
                        "' is not monadic; the infinite domain supports unary and 0-ary "
                        "predicates only");
      const Term& t = f->args[0];
      if (t.kind == Term::Kind::App)
        throw EvalError("function symbols are not available over the infinite domain");
      auto st = c.i.seqs.find(f->name);
      if (st == c.i.seqs.end())
        throw EvalError("predicate '" + f->name + "' has no family over the infinite domain");
      if (t.kind == Term::Kind::Var && t.name == var) return done(st->second);
      return done(seq_const(seq_at(st->second, resolve_nat(c, t, env))));
    }
    case Conn::And:
      return done(seq_min(eval_nat_seq(c, f->lhs, var, env, binding),
                          eval_nat_seq(c, f->rhs, var, env, binding)));
    case Conn::Or:
      return done(seq_max(eval_nat_seq(c, f->lhs, var, env, binding),
                          eval_nat_seq(c, f->rhs, var, env, binding)));
    case Conn::Implies:
      return done(seq_implies(eval_nat_seq(c, f->lhs, var, env, binding),
                              eval_nat_seq(c, f->rhs, var, env, binding)));
    case Conn::Delta:
      return done(seq_delta(eval_nat_seq(c, f->lhs, var, env, binding)));
    case Conn::Forall:
    case Conn::Exists: {
      if (free_vars(f).count(var))
        throw EvalError(
            "quantifier-entanglement: the body of the inner quantifier over '" + f->name +
            "' mentions the outer variable '" + var +
            "', which the exact family algebra over the infinite domain cannot represent");
      return done(seq_const(eval_nat(c, f, env, binding)));
    }
  }
  throw EvalError("unreachable connective");
}

Rat eval_nat(Ctx& c, const FormulaPtr& f, Env& env, const std::string& binding) {
  std::size_t slot = c.open(f, binding);
  switch (f->kind) {
    case Conn::Bottom:
      return c.close(slot, 0);
    case Conn::Top:
      return c.close(slot, 1);
    case Conn::Atom: {
      if (f->args.empty()) return c.close(slot, atom_value(c, f->name, {}));
      if (f->args.size() > 1)
        throw EvalError("predicate '" + f->name +
                        "' is not monadic; the infinite domain supports unary and 0-ary "
                        "predicates only");
      auto st = c.i.seqs.find(f->name);
      if (st == c.i.seqs.end())
        throw EvalError("predicate '" + f->name + "' has no family over the infinite domain");
      return c.close(slot, seq_at(st->second, resolve_nat(c, f->args[0], env)));
    }
    case Conn::And:
      return c.close(slot, std::min(eval_nat(c, f->lhs, env, binding),
                                    eval_nat(c, f->rhs, env, binding)));
    case Conn::Or:
      return c.close(slot, std::max(eval_nat(c, f->lhs, env, binding),
                                    eval_nat(c, f->rhs, env, binding)));
    case Conn::Implies: {
      Rat a = eval_nat(c, f->lhs, env, binding);
      Rat b = eval_nat(c, f->rhs, env, binding);
      return c.close(slot, godel_implies(a, b));
    }
    case Conn::Delta:
      return c.close(slot, eval_nat(c, f->lhs, env, binding) == 1 ? 1 : 0);
    case Conn::Forall:
    case Conn::Exists: {
      std::optional<long> saved;
      if (auto it = env.find(f->name); it != env.end()) saved = it->second;
      env.erase(f->name);  // the bound variable is symbolic inside the body
      SeqValue fam = eval_nat_seq(c, f->lhs, f->name, env, binding);
      if (saved) env[f->name] = *saved;
      Extremum e = f->kind == Conn::Forall ? seq_inf(fam) : seq_sup(fam);
      return c.close(slot, e, fam);
    }
  }
  throw EvalError("unreachable connective");
}

Rat eval_core(const FormulaPtr& f, const Interpretation& i, std::vector<TraceEntry>* trace,
              std::vector<SeqValue>* families) {
  Ctx c{i, trace, families};
  Env env(i.assign.begin(), i.assign.end());
  if (i.domain == Interpretation::Domain::Finite) return eval_finite(c, f, env, "");
  return eval_nat(c, f, env, "");
}

}  // namespace

Rat eval(const FormulaPtr& f, const Interpretation& i) {
  return eval_core(f, i, nullptr, nullptr);
}

EvalResult eval_traced(const FormulaPtr& f, const Interpretation& i) {
  EvalResult r;
  r.value = eval_core(f, i, &r.trace, nullptr);
  return r;
}

bool omega_isolated_from_above(const Interpretation& i, const FormulaPtr& f, const Rat& omega) {
  std::vector<SeqValue> fams;
  eval_core(f, i, nullptr, &fams);
  for (const auto& s : fams)
    if (s.beta > 0 && s.alpha == omega) return false;
  return true;
}

namespace {

bool crisp(const Rat& v) { return v == 0 || v == 1; }

struct ClassicalCtx {
  const Interpretation& i;
  long nat_bound = 0;  // quantifiers range over [0, nat_bound]
};

bool ceval(const ClassicalCtx& c, const FormulaPtr& f, Env& env) {
  switch (f->kind) {
    case Conn::Bottom:
      return false;
    case Conn::Top:
      return true;
    case Conn::Atom: {
      Ctx plain{c.i, nullptr, nullptr};
      if (c.i.domain == Interpretation::Domain::Finite) {
        std::vector<int> tuple;
        for (const auto& t : f->args)
          tuple.push_back(static_cast<int>(resolve_finite(plain, t, env)));
        return atom_value(plain, f->name, tuple) == 1;
      }
      if (f->args.empty()) return atom_value(plain, f->name, {}) == 1;
      if (f->args.size() > 1)
        throw EvalError("predicate '" + f->name + "' is not monadic");
      auto st = c.i.seqs.find(f->name);
      if (st == c.i.seqs.end())
        throw EvalError("predicate '" + f->name + "' has no family over the infinite domain");
      return seq_at(st->second, resolve_nat(plain, f->args[0], env)) == 1;
    }
    case Conn::And:
      return ceval(c, f->lhs, env) && ceval(c, f->rhs, env);
    case Conn::Or:
      return ceval(c, f->lhs, env) || ceval(c, f->rhs, env);
    case Conn::Implies:
      return !ceval(c, f->lhs, env) || ceval(c, f->rhs, env);
    case Conn::Delta:
      return ceval(c, f->lhs, env);
    case Conn::Forall:
    case Conn::Exists: {
      bool forall = f->kind == Conn::Forall;
      long limit = c.i.domain == Interpretation::Domain::Finite
                       ? static_cast<long>(c.i.elements.size()) - 1
                       : c.nat_bound;
      std::optional<long> saved;
      if (auto it = env.find(f->name); it != env.end()) saved = it->second;
      bool acc = forall;
      for (long e = 0; e <= limit; ++e) {
        env[f->name] = e;
        bool v = ceval(c, f->lhs, env);
        acc = forall ? (acc && v) : (acc || v);
        if (acc != forall) break;
      }
      if (saved)
        env[f->name] = *saved;
      else
        env.erase(f->name);
      return acc;
    }
  }
  throw EvalError("unreachable connective");
}

}  // namespace

bool classical_eval(const FormulaPtr& f, const Interpretation& i) {
  ClassicalCtx c{i, 0};
  for (const auto& [pred, table] : i.atoms)
    for (const auto& [tuple, v] : table)
      if (!crisp(v)) throw EvalError("non-Boolean atomic value " + rat_str(v) + " on '" + pred + "'");
  for (const auto& [pred, s] : i.seqs) {
    if (s.beta != 0 || !crisp(s.alpha))
      throw EvalError("non-Boolean atomic value family on '" + pred + "'");
    for (const auto& [n, v] : s.overrides) {
      if (!crisp(v)) throw EvalError("non-Boolean atomic value " + rat_str(v) + " on '" + pred + "'");
      c.nat_bound = std::max(c.nat_bound, n + 1);
    }
  }
  Env env(i.assign.begin(), i.assign.end());
  return ceval(c, f, env);
}

}  // namespace goedel
