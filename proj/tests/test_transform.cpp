#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "goedel/chains.hpp"
#include "goedel/eval.hpp"
#include "goedel/parser.hpp"
#include "goedel/printer.hpp"
#include "goedel/transform.hpp"

using namespace goedel;

namespace {

FormulaPtr fp(const std::string& s) { return parse_formula(s).formula; }

// every interpretation of f's symbols: atoms valued from vals, function
// tables over a domain of size d
template <typename Fn>
void for_each_interp(const FormulaPtr& f, int d, const std::vector<Rat>& vals, Fn&& fn) {
  struct Slot {
    std::string name;
    std::vector<int> tuple;
  };
  auto tuples = [&](std::size_t arity) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(arity, 0);
    while (true) {
      out.push_back(t);
      std::size_t k = 0;
      while (k < arity && ++t[k] == d) t[k++] = 0;
      if (k == arity) break;
    }
    return out;
  };
  std::vector<Slot> preds, funcs;
  for (const auto& [p, ar] : predicate_arities(f))
    for (auto& t : tuples(ar)) preds.push_back({p, t});
  for (const auto& [g, ar] : function_arities(f))
    for (auto& t : tuples(ar)) funcs.push_back({g, t});

  std::vector<std::size_t> pv(preds.size(), 0);
  std::vector<int> fv(funcs.size(), 0);
  while (true) {
    Interpretation i;
    i.domain = Interpretation::Domain::Finite;
    i.elements = finite_elements(d);
    for (std::size_t k = 0; k < preds.size(); ++k)
      i.atoms[preds[k].name][preds[k].tuple] = vals[pv[k]];
    for (std::size_t k = 0; k < funcs.size(); ++k)
      i.funcs[funcs[k].name][funcs[k].tuple] = fv[k];
    fn(i);
    std::size_t k = 0;
    while (k < funcs.size() && ++fv[k] == d) fv[k++] = 0;
    if (k < funcs.size()) continue;
    std::size_t j = 0;
    while (j < preds.size() && ++pv[j] == vals.size()) pv[j++] = 0;
    if (j == preds.size()) break;
  }
}

bool eval_equal_everywhere(const FormulaPtr& a, const FormulaPtr& b, int d,
                           const std::vector<Rat>& vals) {
  bool same = true;
  for_each_interp(f_and(a, b), d, vals, [&](const Interpretation& i) {
    if (eval(a, i) != eval(b, i)) same = false;
  });
  return same;
}

bool valid_everywhere(const FormulaPtr& f, int d, const std::vector<Rat>& vals) {
  bool all_one = true;
  for_each_interp(f, d, vals, [&](const Interpretation& i) {
    if (eval(f, i) != 1) all_one = false;
  });
  return all_one;
}

// closed random formulas over 0-ary p,q and unary P,Q
struct Gen {
  std::mt19937 rng;
  bool allow_delta = true;
  std::vector<std::string> scope;

  explicit Gen(unsigned seed) : rng(seed) {}

  FormulaPtr atom() {
    switch (rng() % (scope.empty() ? 4 : 6)) {
      case 0: return f_atom("p");
      case 1: return f_atom("q");
      case 2: return f_bot();
      case 3: return f_top();
      case 4: return f_atom("P", {Term::var(scope[rng() % scope.size()])});
      default: return f_atom("Q", {Term::var(scope[rng() % scope.size()])});
    }
  }

  FormulaPtr go(int depth) {
    if (depth == 0) return atom();
    switch (rng() % (allow_delta ? 6 : 5)) {
      case 0: return f_and(go(depth - 1), go(depth - 1));
      case 1: return f_or(go(depth - 1), go(depth - 1));
      case 2: return f_implies(go(depth - 1), go(depth - 1));
      case 3: {
        std::string v = "v" + std::to_string(scope.size());
        scope.push_back(v);
        FormulaPtr b = go(depth - 1);
        scope.pop_back();
        return rng() % 2 ? f_forall(v, b) : f_exists(v, b);
      }
      case 4: return atom();
      default: return f_delta(go(depth - 1));
    }
  }
};

Interpretation family_interp(const SeqValue& a,
                             std::initializer_list<std::pair<std::string, Rat>> vals = {}) {
  Interpretation i;
  i.domain = Interpretation::Domain::Nat;
  i.seqs["A"] = a;
  for (const auto& [name, v] : vals) i.atoms[name] = {{{}, v}};
  return i;
}

std::vector<SeqValue> vup_zoo() {
  return {
      seq_make(Rat(0), Rat(0), Rat(1)),
      seq_make(Rat(1, 2), Rat(0), Rat(1)),
      seq_make(Rat(1), Rat(0), Rat(1)),
      seq_make(Rat(1), Rat(-1), Rat(2)),
      seq_make(Rat(1), Rat(-1), Rat(3)),
      seq_make(Rat(1), Rat(-1), Rat(2), {{0, Rat(0)}, {3, Rat(1)}}),
  };
}

std::vector<std::string> trace_rules(const PrenexResult& r) {
  std::vector<std::string> out;
  for (const auto& s : r.trace) out.push_back(s.rule);
  return out;
}

}  // namespace

TEST_CASE("shift rule biconditionals hold over finite sets") {
  std::vector<std::pair<std::string, std::string>> rules = {
      {"A x. (P(x) & q)", "(A x. P(x)) & q"},
      {"E x. (P(x) & q)", "(E x. P(x)) & q"},
      {"A x. (P(x) | q)", "(A x. P(x)) | q"},
      {"E x. (P(x) | q)", "(E x. P(x)) | q"},
      {"(A x. P(x)) -> q", "E x. (P(x) -> q)"},
      {"(E x. P(x)) -> q", "A x. (P(x) -> q)"},
      {"q -> (A x. P(x))", "A x. (q -> P(x))"},
      {"q -> (E x. P(x))", "E x. (q -> P(x))"},
      {"D (A x. P(x))", "A x. D P(x)"},
      {"D (E x. P(x))", "E x. D P(x)"},
  };
  for (const auto& [l, r] : rules) {
    FormulaPtr bicond = f_iff(fp(l), fp(r));
    for (int m = 2; m <= 5; ++m)
      for (int d = 1; d <= 3; ++d) CHECK(valid_everywhere(bicond, d, finite_gm(m).values));
  }
}

TEST_CASE("gated shifts fail exactly off their classes") {
  SUBCASE("S3 has a descending countermodel") {
    FormulaPtr bicond = f_iff(fp("(A x. A(x)) -> q"), fp("E x. (A(x) -> q)"));
    Interpretation i = family_interp(seq_make(Rat(0), Rat(1), Rat(2)), {{"q", Rat(0)}});
    CHECK(validate(i, make_vdown()).empty());
    CHECK(eval(bicond, i) == 0);
  }

  SUBCASE("S2 needs an unattained supremum below 1, impossible in the descending set") {
    FormulaPtr bicond = f_iff(fp("q -> (E x. A(x))"), fp("E x. (q -> A(x))"));
    Interpretation i =
        family_interp(seq_make(Rat(1, 2), Rat(-1), Rat(2)), {{"q", Rat(1, 2)}});
    CHECK(!validate(i, make_vdown()).empty());  // the witness lives outside VDown
    CHECK(eval(bicond, i) == Rat(1, 2));

    for (const SeqValue& a :
         {seq_make(Rat(0), Rat(1), Rat(2)), seq_make(Rat(0), Rat(1), Rat(5)),
          seq_make(Rat(1, 3), Rat(0), Rat(1)), seq_make(Rat(0), Rat(1), Rat(2), {{2, Rat(1)}})})
      for (const Rat& q : {Rat(0), Rat(1, 4), Rat(1)})
        CHECK(eval(bicond, family_interp(a, {{"q", q}})) == 1);
  }

  SUBCASE("delta-exists fails on the ascending set") {
    FormulaPtr bicond = f_iff(fp("D (E x. A(x))"), fp("E x. D A(x)"));
    Interpretation i = family_interp(seq_make(Rat(1), Rat(-1), Rat(2)));
    CHECK(validate(i, make_vup()).empty());
    CHECK(eval(bicond, i) == 0);
  }

  SUBCASE("delta-forall stays valid on sequence families") {
    FormulaPtr bicond = f_iff(fp("D (A x. A(x))"), fp("A x. D A(x)"));
    for (const SeqValue& a : vup_zoo()) CHECK(eval(bicond, family_interp(a)) == 1);
    CHECK(eval(bicond, family_interp(seq_make(Rat(1, 2), Rat(1), Rat(2)))) == 1);
    CHECK(eval(bicond, family_interp(seq_make(Rat(0), Rat(1), Rat(2)))) == 1);
  }
}

TEST_CASE("prenexify pinned examples") {
  Classification g3 = classify(finite_gm(3));
  Classification vup = classify(make_vup());
  Classification vdown = classify(make_vdown());
  Classification g01 = classify(make_unit_interval());
  FormulaPtr big_f = fp("~(A x. A(x)) & (A x. ~~A(x))");

  SUBCASE("the two-quantifier conjunction over a finite set") {
    PrenexResult r = prenexify(big_f, g3);
    REQUIRE(r.ok());
    CHECK(is_prenex(r.prenex));
    CHECK(equal(r.prenex, fp("E x. A x1. (~A(x) & ~~A(x1))")));
    auto rules = trace_rules(r);
    CHECK(std::count(rules.begin(), rules.end(), "S3") == 1);
    CHECK(r.guarantee == "finite-exhaustive");
  }

  SUBCASE("already prenex input is the identity") {
    PrenexResult r = prenexify(fp("A x. (A(x) | b)"), g3);
    REQUIRE(r.ok());
    CHECK(equal(r.prenex, fp("A x. (A(x) | b)")));
    CHECK(r.trace.empty());
  }

  SUBCASE("descending and uncountable classes are refused") {
    CHECK(!prenexify(big_f, vdown).ok());
    CHECK(prenexify(big_f, vdown).reason == "logical-prenex-unavailable");
    CHECK(prenexify(big_f, g01).reason == "logical-prenex-unavailable");
  }

  SUBCASE("delta shifts on a finite set") {
    PrenexResult r = prenexify(fp("D (E x. A(x)) -> b"), g3);
    REQUIRE(r.ok());
    CHECK(equal(r.prenex, fp("A x. (D A(x) -> b)")));
    CHECK(trace_rules(r) == std::vector<std::string>{"delta-ex", "ex-ante"});
  }

  SUBCASE("delta input on the ascending set is refused, delta-free accepted") {
    CHECK(prenexify(fp("D (E x. A(x)) -> b"), vup).reason == "delta-prenex-unavailable");
    PrenexResult r = prenexify(big_f, vup);
    REQUIRE(r.ok());
    CHECK(r.guarantee == "tested-not-proven");
  }
}

TEST_CASE("prenexify preserves semantics over finite sets") {
  Classification g3 = classify(finite_gm(3));
  Gen gen(20260815);
  for (int k = 0; k < 40; ++k) {
    FormulaPtr f = gen.go(3);
    PrenexResult r = prenexify(f, g3);
    REQUIRE(r.ok());
    CHECK(is_prenex(r.prenex));
    CHECK(predicate_arities(r.prenex) == predicate_arities(f));
    for (int d = 1; d <= 2; ++d) CHECK(eval_equal_everywhere(f, r.prenex, d, finite_gm(3).values));
    if (k < 8) {
      CHECK(eval_equal_everywhere(f, r.prenex, 3, finite_gm(3).values));
      CHECK(eval_equal_everywhere(f, r.prenex, 2, finite_gm(4).values));
    }
    if (k < 3) CHECK(eval_equal_everywhere(f, r.prenex, 3, finite_gm(4).values));
  }
}

TEST_CASE("prenexify over the ascending set") {
  Classification vup = classify(make_vup());
  std::vector<Rat> vup_grid = {Rat(0), Rat(1, 2), Rat(2, 3), Rat(1)};

  Gen gen(414243);
  gen.allow_delta = false;
  for (int k = 0; k < 25; ++k) {
    FormulaPtr f = gen.go(3);
    PrenexResult r = prenexify(f, vup);
    REQUIRE(r.ok());
    CHECK(is_prenex(r.prenex));
    for (int d = 1; d <= 2; ++d) CHECK(eval_equal_everywhere(f, r.prenex, d, vup_grid));
  }

  // single-quantifier shapes stay comparable on infinite-domain families
  std::vector<std::string> shapes = {
      "~(A x. A(x))",
      "~(E x. A(x))",
      "(A x. A(x)) -> q",
      "q -> (E x. A(x))",
      "((A x. A(x)) -> q) | p",
      "p & (q -> (E x. A(x)))",
  };
  for (const auto& s : shapes) {
    FormulaPtr f = fp(s);
    PrenexResult r = prenexify(f, vup);
    REQUIRE(r.ok());
    for (const SeqValue& a : vup_zoo())
      for (const Rat& q : {Rat(0), Rat(1, 2), Rat(1)}) {
        Interpretation i = family_interp(a, {{"q", q}, {"p", Rat(1, 2)}});
        CHECK(eval(f, i) == eval(r.prenex, i));
      }
  }
}

TEST_CASE("kuroda translation") {
  CHECK(equal(kuroda(fp("A x. P(x)")), fp("~~(A x. ~~P(x))")));
  CHECK(equal(kuroda(fp("p | ~p")), fp("~~(p | ~p)")));
  CHECK_THROWS_AS(kuroda(fp("D p")), TransformError);

  SUBCASE("classically valid propositional formulas become valid") {
    for (const auto& s : {"((p -> q) -> p) -> p", "p | ~p", "~~p -> p",
                          "(~(p & q)) -> (~p | ~q)", "((p -> q) | (q -> p))"}) {
      FormulaPtr f = fp(s);
      CHECK(decide_valid_prop(kuroda(f)));
    }
    CHECK(!decide_valid_prop(fp("((p -> q) -> p) -> p")));
    CHECK(!decide_valid_prop(fp("p | ~p")));
    CHECK(!decide_valid_prop(kuroda(fp("p"))));
  }

  SUBCASE("first-order classical validities survive the translation") {
    FormulaPtr lem_all = fp("A x. (P(x) | ~P(x))");
    bool classically_valid = true;
    for_each_interp(lem_all, 3, {Rat(0), Rat(1)}, [&](const Interpretation& i) {
      if (!classical_eval(lem_all, i)) classically_valid = false;
    });
    CHECK(classically_valid);
    CHECK(!valid_everywhere(lem_all, 2, finite_gm(3).values));
    FormulaPtr k = kuroda(lem_all);
    CHECK(valid_everywhere(k, 2, finite_gm(3).values));
    CHECK(valid_everywhere(k, 3, finite_gm(3).values));
    CHECK(valid_everywhere(k, 2, finite_gm(4).values));

    FormulaPtr drinker_k = kuroda(fp("E x. (P(x) -> (A y. P(y)))"));
    CHECK(valid_everywhere(drinker_k, 3, finite_gm(3).values));
    for (const SeqValue& a : vup_zoo()) {
      Interpretation i;
      i.domain = Interpretation::Domain::Nat;
      i.seqs["P"] = a;
      CHECK(eval(drinker_k, i) == 1);
    }
  }
}

TEST_CASE("classical prenex for the validity fragment") {
  CHECK(equal(validity_prenex_re(fp("~(A x. A(x))")), fp("E x. ~A(x)")));
  CHECK(equal(validity_prenex_re(fp("p & ~q")), fp("~~p & ~q")));
  CHECK(equal(validity_prenex_re(fp("(A x. A(x)) | q")), fp("A x. (~~A(x) | ~~q)")));
  CHECK(equal(validity_prenex_re(fp("~p | ~~p")), fp("~p | ~~p")));
  CHECK(equal(validity_prenex_re(fp("(A x. P(x)) -> (E y. Q(y))")),
              fp("E x. E y. (~~P(x) -> ~~Q(y))")));
  CHECK_THROWS_AS(validity_prenex_re(fp("D p")), TransformError);

  Gen gen(777);
  gen.allow_delta = false;
  for (int k = 0; k < 30; ++k) {
    FormulaPtr f = gen.go(3);
    FormulaPtr g = validity_prenex_re(f);
    CHECK(is_prenex(g));
    CHECK(!has_delta(g));
    CHECK(predicate_arities(g) == predicate_arities(f));
  }
}

TEST_CASE("skolemization") {
  SUBCASE("pinned shapes") {
    CHECK(equal(skolemize(fp("E x. A y. F(x, y)")),
                f_exists("x", f_atom("F", {Term::var("x"), Term::app("sk1", {Term::var("x")})}))));
    CHECK(equal(skolemize(fp("A y. P(y)")), f_atom("P", {Term::constant("sk1")})));
    CHECK(equal(skolemize(fp("A x. E y. R(x, y)"), false),
                f_forall("x", f_atom("R", {Term::var("x"), Term::app("sk1", {Term::var("x")})}))));
    CHECK(equal(skolemize(fp("A y. P(sk1(y))")),
                f_atom("P", {Term::app("sk1", {Term::constant("sk2")})})));
    CHECK_THROWS_AS(skolemize(fp("~(A x. P(x))")), TransformError);
  }

  SUBCASE("countermodel existence transfers") {
    for (const auto& s : {"E x. A y. R(x, y)", "A y. E x. R(x, y)",
                          "E x. A y. (R(x, y) -> R(y, x))", "A x. E y. (P(x) -> P(y))"}) {
      FormulaPtr f = fp(s);
      FormulaPtr g = skolemize(f);
      CHECK((!has_quantifier(g) || is_prenex(g)));
      for (int d = 1; d <= 2; ++d) {
        auto vals = finite_gm(3).values;
        bool cm_f = false, cm_g = false;
        for_each_interp(f, d, vals, [&](const Interpretation& i) {
          if (eval(f, i) != 1) cm_f = true;
        });
        for_each_interp(g, d, vals, [&](const Interpretation& i) {
          if (eval(g, i) != 1) cm_g = true;
        });
        CHECK(cm_f == cm_g);
      }
    }
  }
}
