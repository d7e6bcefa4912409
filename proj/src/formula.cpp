#include "goedel/formula.hpp"

#include <algorithm>
#include <functional>

namespace goedel {

Term Term::var(std::string n) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(n);
  return t;
}

Term Term::constant(std::string n) {
  Term t;
  t.kind = Kind::Const;
  t.name = std::move(n);
  return t;
}

Term Term::app(std::string n, std::vector<Term> as) {
  Term t;
  t.kind = Kind::App;
  t.name = std::move(n);
  t.args = std::move(as);
  return t;
}

bool Term::operator==(const Term& o) const {
  return kind == o.kind && name == o.name && args == o.args;
}

bool Formula::operator==(const Formula& o) const {
  if (kind != o.kind || name != o.name || args != o.args) return false;
  auto eq = [](const FormulaPtr& a, const FormulaPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return *a == *b;
  };
  return eq(lhs, o.lhs) && eq(rhs, o.rhs);
}

namespace {

FormulaPtr make(Conn kind, std::string name, std::vector<Term> args, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->name = std::move(name);
  f->args = std::move(args);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

}  // namespace

FormulaPtr f_bot() {
  static const FormulaPtr instance = make(Conn::Bottom, "", {}, nullptr, nullptr);
  return instance;
}

FormulaPtr f_top() {
  static const FormulaPtr instance = make(Conn::Top, "", {}, nullptr, nullptr);
  return instance;
}

FormulaPtr f_atom(std::string pred, std::vector<Term> args) {
  return make(Conn::Atom, std::move(pred), std::move(args), nullptr, nullptr);
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return make(Conn::And, "", {}, std::move(a), std::move(b));
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return make(Conn::Or, "", {}, std::move(a), std::move(b));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return make(Conn::Implies, "", {}, std::move(a), std::move(b));
}

FormulaPtr f_delta(FormulaPtr a) { return make(Conn::Delta, "", {}, std::move(a), nullptr); }

FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return make(Conn::Forall, std::move(var), {}, std::move(body), nullptr);
}

FormulaPtr f_exists(std::string var, FormulaPtr body) {
  return make(Conn::Exists, std::move(var), {}, std::move(body), nullptr);
}

FormulaPtr f_not(FormulaPtr a) { return f_implies(std::move(a), f_bot()); }

FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return f_and(f_implies(a, b), f_implies(b, a));
}

FormulaPtr f_less(FormulaPtr a, FormulaPtr b) {
  return f_implies(f_implies(a, b), a);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a && !b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) term_vars(a, out);
}

void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Conn::Bottom:
    case Conn::Top:
      return;
    case Conn::Atom: {
      std::set<std::string> vs;
      for (const auto& t : f->args) term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
      return;
    case Conn::Delta:
      collect_free(f->lhs, bound, out);
      return;
    case Conn::Forall:
    case Conn::Exists: {
      bool fresh = bound.insert(f->name).second;
      collect_free(f->lhs, bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
  }
}

template <typename Fn>
void walk(const FormulaPtr& f, Fn&& fn) {
  fn(f);
  if (f->lhs) walk(f->lhs, fn);
  if (f->rhs) walk(f->rhs, fn);
}

void term_symbols(const Term& t, std::map<std::string, std::size_t>& out) {
  if (t.kind == Term::Kind::Var) return;
  auto [it, inserted] = out.emplace(t.name, t.args.size());
  if (!inserted && it->second != t.args.size())
    throw FormulaError("function symbol '" + t.name + "' used with arities " +
                       std::to_string(it->second) + " and " + std::to_string(t.args.size()));
  for (const auto& a : t.args) term_symbols(a, out);
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_var_names(const FormulaPtr& f) {
  std::set<std::string> out;
  walk(f, [&](const FormulaPtr& g) {
    if (g->kind == Conn::Forall || g->kind == Conn::Exists) out.insert(g->name);
    if (g->kind == Conn::Atom)
      for (const auto& t : g->args) term_vars(t, out);
  });
  return out;
}

std::set<std::string> atom_names(const FormulaPtr& f) {
  std::set<std::string> out;
  walk(f, [&](const FormulaPtr& g) {
    if (g->kind == Conn::Atom && g->args.empty()) out.insert(g->name);
  });
  return out;
}

std::map<std::string, std::size_t> predicate_arities(const FormulaPtr& f) {
  std::map<std::string, std::size_t> out;
  walk(f, [&](const FormulaPtr& g) {
    if (g->kind != Conn::Atom) return;
    auto [it, inserted] = out.emplace(g->name, g->args.size());
    if (!inserted && it->second != g->args.size())
      throw FormulaError("predicate '" + g->name + "' used with arities " +
                         std::to_string(it->second) + " and " + std::to_string(g->args.size()));
  });
  return out;
}

std::map<std::string, std::size_t> function_arities(const FormulaPtr& f) {
  std::map<std::string, std::size_t> out;
  walk(f, [&](const FormulaPtr& g) {
    if (g->kind != Conn::Atom) return;
    for (const auto& t : g->args) term_symbols(t, out);
  });
  return out;
}

bool has_delta(const FormulaPtr& f) {
  bool found = false;
  walk(f, [&](const FormulaPtr& g) { found = found || g->kind == Conn::Delta; });
  return found;
}

bool has_quantifier(const FormulaPtr& f) {
  bool found = false;
  walk(f, [&](const FormulaPtr& g) {
    found = found || g->kind == Conn::Forall || g->kind == Conn::Exists;
  });
  return found;
}

bool is_propositional(const FormulaPtr& f) {
  bool ok = true;
  walk(f, [&](const FormulaPtr& g) {
    if (g->kind == Conn::Forall || g->kind == Conn::Exists) ok = false;
    if (g->kind == Conn::Atom && !g->args.empty()) ok = false;
  });
  return ok;
}

bool is_prenex(const FormulaPtr& f) {
  FormulaPtr g = f;
  while (g->kind == Conn::Forall || g->kind == Conn::Exists) g = g->lhs;
  return !has_quantifier(g);
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (t.kind == Term::Kind::Var) {
    auto it = env.find(t.name);
    return it == env.end() ? t : Term::var(it->second);
  }
  if (t.kind == Term::Kind::Const) return t;
  std::vector<Term> as;
  as.reserve(t.args.size());
  for (const auto& a : t.args) as.push_back(rename_term(a, env));
  return Term::app(t.name, std::move(as));
}

FormulaPtr rectify_rec(const FormulaPtr& f, std::map<std::string, std::string>& env,
                       std::set<std::string>& used) {
  switch (f->kind) {
    case Conn::Bottom:
    case Conn::Top:
      return f;
    case Conn::Atom: {
      std::vector<Term> as;
      as.reserve(f->args.size());
      for (const auto& t : f->args) as.push_back(rename_term(t, env));
      return f_atom(f->name, std::move(as));
    }
    // sequence the children explicitly: fresh-name picking mutates `used`,
    // and argument evaluation order would otherwise be compiler-dependent
    case Conn::And: {
      FormulaPtr l = rectify_rec(f->lhs, env, used);
      return f_and(std::move(l), rectify_rec(f->rhs, env, used));
    }
    case Conn::Or: {
      FormulaPtr l = rectify_rec(f->lhs, env, used);
      return f_or(std::move(l), rectify_rec(f->rhs, env, used));
    }
    case Conn::Implies: {
      FormulaPtr l = rectify_rec(f->lhs, env, used);
      return f_implies(std::move(l), rectify_rec(f->rhs, env, used));
    }
    case Conn::Delta:
      return f_delta(rectify_rec(f->lhs, env, used));
    case Conn::Forall:
    case Conn::Exists: {
      std::string fresh = f->name;
      for (int k = 1; used.count(fresh); ++k) fresh = f->name + std::to_string(k);
      used.insert(fresh);
      auto saved = env.find(f->name);
      std::string old;
      bool had = saved != env.end();
      if (had) old = saved->second;
      env[f->name] = fresh;
      FormulaPtr body = rectify_rec(f->lhs, env, used);
      if (had)
        env[f->name] = old;
      else
        env.erase(f->name);
      return f->kind == Conn::Forall ? f_forall(fresh, body) : f_exists(fresh, body);
    }
  }
  throw FormulaError("unreachable");
}

}  // namespace

FormulaPtr rectify(const FormulaPtr& f) {
  std::map<std::string, std::string> env;
  std::set<std::string> used = free_vars(f);
  return rectify_rec(f, env, used);
}

FormulaPtr close_universally(const FormulaPtr& f) {
  auto fv = free_vars(f);
  FormulaPtr out = f;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = f_forall(*it, out);
  return out;
}

namespace {

Term subst_term(const Term& t, const std::string& var, const Term& repl) {
  if (t.kind == Term::Kind::Var) return t.name == var ? repl : t;
  if (t.kind == Term::Kind::Const) return t;
  std::vector<Term> as;
  as.reserve(t.args.size());
  for (const auto& a : t.args) as.push_back(subst_term(a, var, repl));
  return Term::app(t.name, std::move(as));
}

}  // namespace

FormulaPtr subst_var(const FormulaPtr& f, const std::string& var, const Term& t) {
  switch (f->kind) {
    case Conn::Bottom:
    case Conn::Top:
      return f;
    case Conn::Atom: {
      std::vector<Term> as;
      as.reserve(f->args.size());
      for (const auto& a : f->args) as.push_back(subst_term(a, var, t));
      return f_atom(f->name, std::move(as));
    }
    case Conn::And:
      return f_and(subst_var(f->lhs, var, t), subst_var(f->rhs, var, t));
    case Conn::Or:
      return f_or(subst_var(f->lhs, var, t), subst_var(f->rhs, var, t));
    case Conn::Implies:
      return f_implies(subst_var(f->lhs, var, t), subst_var(f->rhs, var, t));
    case Conn::Delta:
      return f_delta(subst_var(f->lhs, var, t));
    case Conn::Forall:
    case Conn::Exists: {
      if (f->name == var) return f;
      FormulaPtr body = subst_var(f->lhs, var, t);
      return f->kind == Conn::Forall ? f_forall(f->name, body) : f_exists(f->name, body);
    }
  }
  throw FormulaError("unreachable");
}

}  // namespace goedel
