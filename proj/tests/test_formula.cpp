#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "goedel/formula.hpp"
#include "goedel/parser.hpp"
#include "goedel/printer.hpp"

using namespace goedel;

static FormulaPtr parse1(const std::string& s) { return parse_formula(s).formula; }

TEST_CASE("precedence and associativity") {
  CHECK(equal(parse1("a -> b -> c"), f_implies(f_atom("a"), f_implies(f_atom("b"), f_atom("c")))));
  CHECK(equal(parse1("a | b & c"), f_or(f_atom("a"), f_and(f_atom("b"), f_atom("c")))));
  CHECK(equal(parse1("a & b | c"), f_or(f_and(f_atom("a"), f_atom("b")), f_atom("c"))));
  CHECK(equal(parse1("a | b | c"), f_or(f_or(f_atom("a"), f_atom("b")), f_atom("c"))));
  CHECK(equal(parse1("a & b -> c"), f_implies(f_and(f_atom("a"), f_atom("b")), f_atom("c"))));
  CHECK(equal(parse1("~a & b"), f_and(f_not(f_atom("a")), f_atom("b"))));
  CHECK(equal(parse1("D a & b"), f_and(f_delta(f_atom("a")), f_atom("b"))));
  CHECK(equal(parse1("(a -> b) -> c"),
              f_implies(f_implies(f_atom("a"), f_atom("b")), f_atom("c"))));
}

TEST_CASE("sugar expands structurally") {
  CHECK(equal(parse1("~a"), f_implies(f_atom("a"), f_bot())));
  CHECK(equal(parse1("(a <-> b)"), f_and(f_implies(f_atom("a"), f_atom("b")),
                                         f_implies(f_atom("b"), f_atom("a")))));
  CHECK(equal(parse1("(a < b)"),
              f_implies(f_implies(f_atom("a"), f_atom("b")), f_atom("a"))));
  CHECK(equal(parse1("~~a"), f_not(f_not(f_atom("a")))));
  CHECK(equal(parse1("bot -> top"), f_implies(f_bot(), f_top())));
}

TEST_CASE("quantifiers bind tightly and A/E are contextual") {
  auto f = parse1("A x. P(x) -> Q");
  REQUIRE(f->kind == Conn::Implies);
  CHECK(f->lhs->kind == Conn::Forall);

  auto g = parse1("E x. (P(x) & Q(x))");
  REQUIRE(g->kind == Conn::Exists);
  CHECK(g->lhs->kind == Conn::And);

  // A and E without a following "var." are plain atoms.
  CHECK(equal(parse1("A & E"), f_and(f_atom("A"), f_atom("E"))));
  CHECK(equal(parse1("A(x) | E"), f_or(f_atom("A", {Term::var("x")}), f_atom("E"))));

  auto nested = parse1("A x. E y. R(x, y)");
  REQUIRE(nested->kind == Conn::Forall);
  CHECK(nested->name == "x");
  REQUIRE(nested->lhs->kind == Conn::Exists);
  CHECK(nested->lhs->name == "y");
}

TEST_CASE("terms, arities, warnings") {
  auto r = parse_formula("A x. P(f(x), c)");
  CHECK(r.warnings == std::vector<std::string>{"free variable: c"});
  auto arities = function_arities(r.formula);
  CHECK(arities.at("f") == 1);

  CHECK(parse_formula("A x. P(x)").warnings.empty());

  CHECK_THROWS_AS(parse_formula("P & P(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(f(x), f(x, y))"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(f(x), f)"), ParseError);
  CHECK_THROWS_AS(parse_formula("A bot. P(bot)"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("a &\n& b");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 1);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("a < b"), ParseError);  // comparison needs parens
  CHECK_THROWS_AS(parse_formula("(a"), ParseError);
  CHECK_THROWS_AS(parse_formula("a b"), ParseError);
  CHECK_THROWS_AS(parse_formula("a - b"), ParseError);
  CHECK_THROWS_AS(parse_formula("E x"), ParseError);
}

TEST_CASE("printer sugar and raw") {
  auto a = f_atom("a");
  auto b = f_atom("b");
  CHECK(print_formula(f_not(a)) == "~a");
  CHECK(print_formula(f_not(a), PrintMode::Raw) == "a -> bot");
  CHECK(print_formula(f_iff(a, b)) == "(a <-> b)");
  CHECK(print_formula(f_less(a, b)) == "(a < b)");
  CHECK(print_formula(f_less(a, b), PrintMode::Raw) == "(a -> b) -> a");
  CHECK(print_formula(parse1("a -> b -> c")) == "a -> b -> c");
  CHECK(print_formula(parse1("(a -> b) -> c")) == "(a -> b) -> c");
  CHECK(print_formula(parse1("a | b & c")) == "a | b & c");
  CHECK(print_formula(parse1("(a | b) & c")) == "(a | b) & c");
  CHECK(print_formula(parse1("A x. P(x) -> Q")) == "A x. P(x) -> Q");
  CHECK(print_formula(parse1("A x. (P(x) -> Q)")) == "A x. (P(x) -> Q)");
  CHECK(print_formula(parse1("~(a & b)")) == "~(a & b)");
  CHECK(print_formula(parse1("D (a -> b)")) == "D (a -> b)");
  CHECK(print_formula(f_atom("R", {Term::app("f", {Term::var("x")}), Term::var("y")})) ==
        "R(f(x), y)");
}

namespace {

// Random closed-enough formulas for round-trip checks. Terms draw from a
// tiny pool so arity clashes cannot happen.
struct Gen {
  std::mt19937 rng{20240915};

  Term term(int depth) {
    std::uniform_int_distribution<int> d(0, depth > 0 ? 3 : 2);
    switch (d(rng)) {
      case 0: return Term::var("x");
      case 1: return Term::var("y");
      case 2: return Term::var("z");
      default: return Term::app("f", {term(depth - 1)});
    }
  }

  FormulaPtr atom() {
    std::uniform_int_distribution<int> d(0, 4);
    switch (d(rng)) {
      case 0: return f_bot();
      case 1: return f_top();
      case 2: return f_atom("p");
      case 3: return f_atom("P", {term(1)});
      default: return f_atom("R", {term(1), term(0)});
    }
  }

  FormulaPtr formula(int depth) {
    if (depth == 0) return atom();
    std::uniform_int_distribution<int> d(0, 9);
    switch (d(rng)) {
      case 0: return f_and(formula(depth - 1), formula(depth - 1));
      case 1: return f_or(formula(depth - 1), formula(depth - 1));
      case 2: return f_implies(formula(depth - 1), formula(depth - 1));
      case 3: return f_delta(formula(depth - 1));
      case 4: return f_not(formula(depth - 1));
      case 5: return f_iff(formula(depth - 1), formula(depth - 1));
      case 6: return f_less(formula(depth - 1), formula(depth - 1));
      case 7: return f_forall("x", formula(depth - 1));
      case 8: return f_exists("y", formula(depth - 1));
      default: return atom();
    }
  }
};

}  // namespace

TEST_CASE("print/parse round trip") {
  Gen gen;
  for (int i = 0; i < 400; ++i) {
    FormulaPtr f = gen.formula(4);
    CAPTURE(print_formula(f));
    CHECK(equal(parse1(print_formula(f, PrintMode::Sugar)), f));
    CHECK(equal(parse1(print_formula(f, PrintMode::Raw)), f));
  }
}

TEST_CASE("free variables and substitution") {
  auto f = parse1("A x. R(x, y) -> P(x)");
  CHECK(free_vars(f) == std::set<std::string>{"x", "y"});
  CHECK(free_vars(parse1("A x. E y. R(x, y)")).empty());

  auto g = subst_var(parse1("P(x) & A x. Q(x)"), "x", Term::var("z"));
  CHECK(equal(g, parse1("P(z) & A x. Q(x)")));

  auto closed = close_universally(parse1("R(y, x)"));
  CHECK(print_formula(closed) == "A x. A y. R(y, x)");
  CHECK(free_vars(closed).empty());
}

TEST_CASE("rectify makes binders distinct") {
  auto f = parse1("(A x. P(x)) & (A x. Q(x)) & P(x)");
  auto r = rectify(f);
  CHECK(free_vars(r) == std::set<std::string>{"x"});
  // The two binders got fresh names distinct from the free x.
  auto names = all_var_names(r);
  CHECK(names.size() == 3);
  CHECK(print_formula(r) != print_formula(f));

  auto g = parse1("A x. (P(x) & E x. Q(x))");
  auto rg = rectify(g);
  REQUIRE(rg->kind == Conn::Forall);
  CHECK(rg->name != rg->lhs->rhs->name);

  // Already-rectified formulas come back unchanged.
  auto h = parse1("A x. E y. R(x, y)");
  CHECK(equal(rectify(h), h));
}

TEST_CASE("shape predicates") {
  CHECK(is_propositional(parse1("a & ~b -> D c")));
  CHECK_FALSE(is_propositional(parse1("P(x)")));
  CHECK_FALSE(is_propositional(parse1("A x. p")));

  CHECK(is_prenex(parse1("A x. E y. (P(x) -> Q(y))")));
  CHECK(is_prenex(parse1("p -> q")));
  CHECK_FALSE(is_prenex(parse1("A x. (P(x) -> E y. Q(y))")));
  CHECK_FALSE(is_prenex(parse1("(A x. P(x)) -> q")));

  CHECK(has_delta(parse1("a -> D b")));
  CHECK_FALSE(has_delta(parse1("a -> b")));
  CHECK(has_quantifier(parse1("~(E x. P(x))")));
}
