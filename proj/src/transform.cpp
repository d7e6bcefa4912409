#include "goedel/transform.hpp"

#include <map>
#include <set>

namespace goedel {

namespace {

struct GateBlocked {
  std::string code;
};

struct Gates {
  bool s1 = true, s2 = true, s3 = true, delta_all = true, delta_ex = true;
};

struct Extractor {
  Gates gates;
  std::vector<ShiftStep>* trace;

  void log(const char* rule, const std::string& pos) { trace->push_back({rule, pos}); }

  void need(bool gate, const char* code) {
    if (!gate) throw GateBlocked{code};
  }

  FormulaPtr hoist_delta(FormulaPtr body, const std::string& pos) {
    if (body->kind == Conn::Forall) {
      need(gates.delta_all, "delta-shift-unavailable");
      log("delta-all", pos);
      return f_forall(body->name, hoist_delta(body->lhs, pos));
    }
    if (body->kind == Conn::Exists) {
      need(gates.delta_ex, "delta-shift-unavailable");
      log("delta-ex", pos);
      return f_exists(body->name, hoist_delta(body->lhs, pos));
    }
    return f_delta(std::move(body));
  }

  // l and r are prenex; pulls quantifiers across the connective, antecedent
  // (left) side first.
  FormulaPtr hoist(Conn op, FormulaPtr l, FormulaPtr r, const std::string& pos) {
    if (op == Conn::Implies) {
      if (l->kind == Conn::Forall) {
        need(gates.s3, "shift-s3-unavailable");
        log("S3", pos);
        return f_exists(l->name, hoist(op, l->lhs, std::move(r), pos));
      }
      if (l->kind == Conn::Exists) {
        log("ex-ante", pos);
        return f_forall(l->name, hoist(op, l->lhs, std::move(r), pos));
      }
      if (r->kind == Conn::Forall) {
        log("all-cons", pos);
        return f_forall(r->name, hoist(op, std::move(l), r->lhs, pos));
      }
      if (r->kind == Conn::Exists) {
        need(gates.s2, "shift-s2-unavailable");
        log("S2", pos);
        return f_exists(r->name, hoist(op, std::move(l), r->lhs, pos));
      }
      return f_implies(std::move(l), std::move(r));
    }
    bool conj = op == Conn::And;
    if (l->kind == Conn::Forall || l->kind == Conn::Exists) {
      bool forall = l->kind == Conn::Forall;
      if (forall && !conj) need(gates.s1, "shift-s1-unavailable");
      log(forall ? (conj ? "all-and" : "S1") : (conj ? "ex-and" : "ex-or"), pos);
      FormulaPtr body = hoist(op, l->lhs, std::move(r), pos);
      return forall ? f_forall(l->name, std::move(body)) : f_exists(l->name, std::move(body));
    }
    if (r->kind == Conn::Forall || r->kind == Conn::Exists) {
      bool forall = r->kind == Conn::Forall;
      if (forall && !conj) need(gates.s1, "shift-s1-unavailable");
      log(forall ? (conj ? "all-and" : "S1") : (conj ? "ex-and" : "ex-or"), pos);
      FormulaPtr body = hoist(op, std::move(l), r->lhs, pos);
      return forall ? f_forall(r->name, std::move(body)) : f_exists(r->name, std::move(body));
    }
    return conj ? f_and(std::move(l), std::move(r)) : f_or(std::move(l), std::move(r));
  }

  FormulaPtr extract(const FormulaPtr& f, const std::string& pos) {
    switch (f->kind) {
      case Conn::Bottom:
      case Conn::Top:
      case Conn::Atom:
        return f;
      case Conn::Forall:
        return f_forall(f->name, extract(f->lhs, pos + ".1"));
      case Conn::Exists:
        return f_exists(f->name, extract(f->lhs, pos + ".1"));
      case Conn::Delta:
        return hoist_delta(extract(f->lhs, pos + ".1"), pos);
      case Conn::And:
      case Conn::Or:
      case Conn::Implies:
        return hoist(f->kind, extract(f->lhs, pos + ".1"), extract(f->rhs, pos + ".2"), pos);
    }
    throw TransformError("unhandled formula kind");
  }
};

FormulaPtr kuroda_body(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Bottom:
    case Conn::Top:
    case Conn::Atom:
      return f;
    case Conn::And:
      return f_and(kuroda_body(f->lhs), kuroda_body(f->rhs));
    case Conn::Or:
      return f_or(kuroda_body(f->lhs), kuroda_body(f->rhs));
    case Conn::Implies:
      return f_implies(kuroda_body(f->lhs), kuroda_body(f->rhs));
    case Conn::Delta:
      return f_delta(kuroda_body(f->lhs));
    case Conn::Forall:
      return f_forall(f->name, f_not(f_not(kuroda_body(f->lhs))));
    case Conn::Exists:
      return f_exists(f->name, kuroda_body(f->lhs));
  }
  throw TransformError("unhandled formula kind");
}

FormulaPtr nn_atoms(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Bottom:
    case Conn::Top:
      return f;
    case Conn::Atom:
      return f_not(f_not(f));
    case Conn::And:
      return f_and(nn_atoms(f->lhs), nn_atoms(f->rhs));
    case Conn::Or:
      return f_or(nn_atoms(f->lhs), nn_atoms(f->rhs));
    case Conn::Implies:
      return f_implies(nn_atoms(f->lhs), nn_atoms(f->rhs));
    case Conn::Delta:
      return f_delta(nn_atoms(f->lhs));
    case Conn::Forall:
      return f_forall(f->name, nn_atoms(f->lhs));
    case Conn::Exists:
      return f_exists(f->name, nn_atoms(f->lhs));
  }
  throw TransformError("unhandled formula kind");
}

bool is_neg(const FormulaPtr& f) {
  return f->kind == Conn::Implies && f->rhs->kind == Conn::Bottom;
}

// ~a with any leading ~~ of a stripped first, so ~~~b becomes ~b.
FormulaPtr negate_collapsed(FormulaPtr a) {
  while (is_neg(a) && is_neg(a->lhs)) a = a->lhs->lhs;
  return f_not(std::move(a));
}

FormulaPtr strip_triple_neg(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Bottom:
    case Conn::Top:
    case Conn::Atom:
      return f;
    case Conn::And:
      return f_and(strip_triple_neg(f->lhs), strip_triple_neg(f->rhs));
    case Conn::Or:
      return f_or(strip_triple_neg(f->lhs), strip_triple_neg(f->rhs));
    case Conn::Implies: {
      FormulaPtr l = strip_triple_neg(f->lhs);
      if (f->rhs->kind == Conn::Bottom) return negate_collapsed(std::move(l));
      return f_implies(std::move(l), strip_triple_neg(f->rhs));
    }
    case Conn::Delta:
      return f_delta(strip_triple_neg(f->lhs));
    case Conn::Forall:
      return f_forall(f->name, strip_triple_neg(f->lhs));
    case Conn::Exists:
      return f_exists(f->name, strip_triple_neg(f->lhs));
  }
  throw TransformError("unhandled formula kind");
}

}  // namespace

PrenexResult prenexify(const FormulaPtr& f, const Classification& c) {
  PrenexResult out;
  bool with_delta = has_delta(f);
  if (with_delta ? !c.logical_prenex_with_delta : !c.logical_prenex) {
    out.reason = with_delta && c.logical_prenex ? "delta-prenex-unavailable"
                                                : "logical-prenex-unavailable";
    return out;
  }
  Extractor e{{c.shift_s1, c.shift_s2, c.shift_s3, c.shift_delta_forall, c.shift_delta_exists},
              &out.trace};
  try {
    out.prenex = e.extract(rectify(f), ".");
  } catch (const GateBlocked& b) {
    out.trace.clear();
    out.reason = b.code;
    return out;
  }
  // logical_prenex_with_delta holds exactly for the finite classes, where the
  // equivalence is exhaustively checkable; elsewhere it is tested, not proven.
  out.guarantee = c.logical_prenex_with_delta ? "finite-exhaustive" : "tested-not-proven";
  return out;
}

PrenexResult prenexify_pos_valid(const FormulaPtr& f, const Classification& c) {
  bool with_delta = has_delta(f);
  if (with_delta ? c.logical_prenex_with_delta : c.logical_prenex) return prenexify(f, c);
  PrenexResult out;
  if (with_delta ? !c.pos_valid_prenex_with_delta : !c.pos_valid_prenex) {
    out.reason = "pos-valid-prenex-unavailable";
    return out;
  }
  // 0 isolated but no logical prenexation: double-negation translation, then
  // the classical shifts; the equivalence with the input is positively valid.
  Extractor e{Gates{}, &out.trace};
  try {
    out.prenex = e.extract(rectify(kuroda(f)), ".");
  } catch (const GateBlocked&) {
    out.trace.clear();
    out.reason = "pos-valid-prenex-unavailable";
    return out;
  }
  out.guarantee = "pos-valid-equivalence";
  return out;
}

FormulaPtr kuroda(const FormulaPtr& f) {
  if (has_delta(f))
    throw TransformError("the double-negation translation covers the delta-free fragment only");
  return f_not(f_not(kuroda_body(f)));
}

FormulaPtr validity_prenex_re(const FormulaPtr& f) {
  if (has_delta(f))
    throw TransformError("the classical prenex translation covers the delta-free fragment only");
  std::vector<ShiftStep> scratch;
  Extractor e{Gates{}, &scratch};
  return strip_triple_neg(e.extract(nn_atoms(rectify(f)), "."));
}

FormulaPtr skolemize(const FormulaPtr& f, bool validity_mode) {
  if (!is_prenex(f)) throw TransformError("skolemization needs a prenex formula");
  FormulaPtr g = rectify(f);

  std::set<std::string> used;
  for (const auto& [name, arity] : function_arities(g)) used.insert(name);
  for (const auto& [name, arity] : predicate_arities(g)) used.insert(name);
  for (const auto& name : all_var_names(g)) used.insert(name);
  int counter = 0;
  auto fresh = [&] {
    std::string n;
    do n = "sk" + std::to_string(++counter);
    while (used.count(n));
    used.insert(n);
    return n;
  };

  Conn replaced = validity_mode ? Conn::Forall : Conn::Exists;
  std::vector<std::pair<Conn, std::string>> kept;
  std::vector<std::pair<std::string, Term>> subs;
  while (g->kind == Conn::Forall || g->kind == Conn::Exists) {
    if (g->kind == replaced) {
      std::string fn = fresh();
      if (kept.empty()) {
        subs.emplace_back(g->name, Term::constant(fn));
      } else {
        std::vector<Term> args;
        for (const auto& [kind, var] : kept) args.push_back(Term::var(var));
        subs.emplace_back(g->name, Term::app(fn, std::move(args)));
      }
    } else {
      kept.emplace_back(g->kind, g->name);
    }
    g = g->lhs;
  }
  for (const auto& [var, t] : subs) g = subst_var(g, var, t);
  for (auto it = kept.rbegin(); it != kept.rend(); ++it)
    g = it->first == Conn::Forall ? f_forall(it->second, g) : f_exists(it->second, g);
  return g;
}

}  // namespace goedel
