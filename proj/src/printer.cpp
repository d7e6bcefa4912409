#include "goedel/printer.hpp"

namespace goedel {

namespace {

// Grammar levels, loosest first. A node whose own level is below the
// context's requirement gets parenthesized.
constexpr int kImpl = 0;
constexpr int kOr = 1;
constexpr int kAnd = 2;
constexpr int kUnary = 3;

std::string print_rec(const FormulaPtr& f, int min_level, PrintMode mode);

bool is_not(const FormulaPtr& f) {
  return f->kind == Conn::Implies && f->rhs->kind == Conn::Bottom;
}

bool is_iff(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  if (f->kind != Conn::And) return false;
  const auto& l = f->lhs;
  const auto& r = f->rhs;
  if (l->kind != Conn::Implies || r->kind != Conn::Implies) return false;
  if (!equal(l->lhs, r->rhs) || !equal(l->rhs, r->lhs)) return false;
  a = l->lhs;
  b = l->rhs;
  return true;
}

bool is_less(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  if (f->kind != Conn::Implies || f->lhs->kind != Conn::Implies) return false;
  if (!equal(f->lhs->lhs, f->rhs)) return false;
  a = f->rhs;
  b = f->lhs->rhs;
  return true;
}

std::string wrap(std::string text, int own_level, int min_level) {
  if (own_level >= min_level) return text;
  return "(" + std::move(text) + ")";
}

std::string print_rec(const FormulaPtr& f, int min_level, PrintMode mode) {
  switch (f->kind) {
    case Conn::Bottom:
      return "bot";
    case Conn::Top:
      return "top";
    case Conn::Atom: {
      std::string s = f->name;
      if (!f->args.empty()) {
        s += "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) s += ", ";
          s += print_term(f->args[i]);
        }
        s += ")";
      }
      return s;
    }
    case Conn::And: {
      if (mode == PrintMode::Sugar) {
        FormulaPtr a, b;
        if (is_iff(f, a, b))
          return "(" + print_rec(a, kImpl, mode) + " <-> " + print_rec(b, kImpl, mode) + ")";
      }
      std::string s = print_rec(f->lhs, kAnd, mode) + " & " + print_rec(f->rhs, kUnary, mode);
      return wrap(std::move(s), kAnd, min_level);
    }
    case Conn::Or: {
      std::string s = print_rec(f->lhs, kOr, mode) + " | " + print_rec(f->rhs, kAnd, mode);
      return wrap(std::move(s), kOr, min_level);
    }
    case Conn::Implies: {
      if (mode == PrintMode::Sugar) {
        if (is_not(f)) return "~" + print_rec(f->lhs, kUnary, mode);
        FormulaPtr a, b;
        if (is_less(f, a, b))
          return "(" + print_rec(a, kImpl, mode) + " < " + print_rec(b, kImpl, mode) + ")";
      }
      std::string s = print_rec(f->lhs, kOr, mode) + " -> " + print_rec(f->rhs, kImpl, mode);
      return wrap(std::move(s), kImpl, min_level);
    }
    case Conn::Delta:
      return "D " + print_rec(f->lhs, kUnary, mode);
    case Conn::Forall:
      return "A " + f->name + ". " + print_rec(f->lhs, kUnary, mode);
    case Conn::Exists:
      return "E " + f->name + ". " + print_rec(f->lhs, kUnary, mode);
  }
  return "";
}

}  // namespace

std::string print_term(const Term& t) {
  if (t.kind != Term::Kind::App) return t.name;
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ", ";
    s += print_term(t.args[i]);
  }
  return s + ")";
}

std::string print_formula(const FormulaPtr& f, PrintMode mode) {
  return print_rec(f, kImpl, mode);
}

}  // namespace goedel
