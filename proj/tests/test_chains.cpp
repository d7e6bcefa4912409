#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "goedel/chains.hpp"
#include "goedel/eval.hpp"
#include "goedel/parser.hpp"
#include "goedel/printer.hpp"
#include "goedel/truthset.hpp"

using namespace goedel;

namespace {

FormulaPtr fp(const std::string& s) { return parse_formula(s).formula; }

using Blocks = std::vector<std::vector<std::string>>;

// Independent order-type oracle: place every atom on a level in 0..n+1
// (0 = bot, n+1 = top), canonicalize each placement to its block sequence,
// dedupe. Deliberately brute force; knows nothing about enumerate_chains.
std::set<Blocks> oracle_chains(const std::vector<std::string>& atoms, bool restricted,
                               std::optional<int> levels = {}) {
  int n = static_cast<int>(atoms.size());
  long total = 1;
  for (int i = 0; i < n; ++i) total *= n + 2;
  std::set<Blocks> seen;
  for (long code = 0; code < total; ++code) {
    long x = code;
    std::map<int, std::vector<std::string>> by_level;
    for (int i = 0; i < n; ++i) {
      by_level[static_cast<int>(x % (n + 2))].push_back(atoms[i]);
      x /= n + 2;
    }
    Blocks b;
    b.push_back(by_level.count(0) ? by_level[0] : std::vector<std::string>{});
    for (auto& [lvl, grp] : by_level)
      if (lvl > 0 && lvl < n + 1) b.push_back(grp);
    b.push_back(by_level.count(n + 1) ? by_level[n + 1] : std::vector<std::string>{});
    for (auto& grp : b) std::sort(grp.begin(), grp.end());
    if (restricted && !b.back().empty()) continue;
    if (levels && static_cast<int>(b.size()) > *levels) continue;
    seen.insert(b);
  }
  return seen;
}

std::set<Blocks> as_blocks(const std::vector<Chain>& cs) {
  std::set<Blocks> out;
  for (const auto& c : cs) out.insert(c.blocks);
  return out;
}

// The order type a rational assignment realizes.
Blocks order_type(const std::vector<std::pair<std::string, Rat>>& vals) {
  std::map<Rat, std::vector<std::string>> by_value;
  for (const auto& [a, v] : vals) by_value[v].push_back(a);
  Blocks b;
  b.push_back(by_value.count(Rat(0)) ? by_value[Rat(0)] : std::vector<std::string>{});
  for (auto& [v, grp] : by_value)
    if (v != 0 && v != 1) b.push_back(grp);
  b.push_back(by_value.count(Rat(1)) ? by_value[Rat(1)] : std::vector<std::string>{});
  for (auto& grp : b) std::sort(grp.begin(), grp.end());
  return b;
}

Interpretation assign(const std::vector<std::pair<std::string, Rat>>& vals) {
  Interpretation i;
  i.domain = Interpretation::Domain::Finite;
  i.elements = finite_elements(1);
  for (const auto& [name, v] : vals) i.atoms[name] = {{{}, v}};
  return i;
}

// Exhaustive two-atom corpus by connective count; leaves p, q, bot, top.
std::vector<FormulaPtr> corpus(int max_conn) {
  std::vector<std::vector<FormulaPtr>> tier(max_conn + 1);
  tier[0] = {f_atom("p"), f_atom("q"), f_bot(), f_top()};
  for (int k = 1; k <= max_conn; ++k) {
    for (const auto& g : tier[k - 1]) tier[k].push_back(f_delta(g));
    for (int i = 0; i <= k - 1; ++i) {
      int j = k - 1 - i;
      for (const auto& l : tier[i])
        for (const auto& r : tier[j]) {
          tier[k].push_back(f_and(l, r));
          tier[k].push_back(f_or(l, r));
          tier[k].push_back(f_implies(l, r));
        }
    }
  }
  std::vector<FormulaPtr> out;
  for (auto& t : tier) out.insert(out.end(), t.begin(), t.end());
  return out;
}

std::vector<Rat> grid_values(bool restricted) {
  std::vector<Rat> g = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4)};
  if (!restricted) g.push_back(Rat(1));
  return g;
}

int or_width(const FormulaPtr& f) {
  if (f->kind != Conn::Or) return 1;
  return or_width(f->lhs) + or_width(f->rhs);
}

}  // namespace

TEST_CASE("chain enumeration matches the order-type oracle") {
  // counts frozen from the oracle: 3/11/51 unrestricted, 2/6/26 restricted
  std::vector<std::string> names = {"X", "Y", "Z"};
  long expect_plain[] = {3, 11, 51};
  long expect_restricted[] = {2, 6, 26};
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> atoms(names.begin(), names.begin() + n);
    auto plain = enumerate_chains(atoms);
    auto restr = enumerate_chains(atoms, true);
    CHECK(static_cast<long>(plain.size()) == expect_plain[n - 1]);
    CHECK(static_cast<long>(restr.size()) == expect_restricted[n - 1]);
    CHECK(as_blocks(plain) == oracle_chains(atoms, false));
    CHECK(as_blocks(restr) == oracle_chains(atoms, true));
    CHECK(std::is_sorted(plain.begin(), plain.end()));
    for (const auto& c : plain) {
      REQUIRE(c.blocks.size() >= 2);
      int found = 0;
      for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        if (b > 0 && b + 1 < c.blocks.size()) CHECK(!c.blocks[b].empty());
        CHECK(std::is_sorted(c.blocks[b].begin(), c.blocks[b].end()));
        for (const auto& a : c.blocks[b]) {
          ++found;
          CHECK(c.block_of(a) == static_cast<int>(b));
        }
      }
      CHECK(found == n);
    }
  }

  SUBCASE("level caps") {
    CHECK(enumerate_chains({"X", "Y"}, false, 2).size() == 4);
    CHECK(enumerate_chains({"X", "Y"}, false, 3).size() == 9);
    CHECK(enumerate_chains({"X", "Y", "Z"}, false, 3).size() == 27);
    CHECK(enumerate_chains({"X"}, false, 2).size() == 2);
    CHECK(as_blocks(enumerate_chains({"X", "Y"}, false, 3)) ==
          oracle_chains({"X", "Y"}, false, 3));
  }

  SUBCASE("single atom chains are the three expected ones") {
    auto cs = enumerate_chains({"X"});
    REQUIRE(cs.size() == 3);
    std::set<Blocks> got = as_blocks(cs);
    CHECK(got.count({{"X"}, {}}) == 1);        // X == bot
    CHECK(got.count({{}, {"X"}, {}}) == 1);    // bot < X < top
    CHECK(got.count({{}, {"X"}}) == 1);        // X == top
    auto rs = enumerate_chains({"X"}, true);
    REQUIRE(rs.size() == 2);
    CHECK(as_blocks(rs).count({{}, {"X"}}) == 0);
  }

  SUBCASE("duplicate atoms collapse, empty atom set gives the trivial chain") {
    CHECK(enumerate_chains({"X", "X"}).size() == 3);
    auto none = enumerate_chains({});
    REQUIRE(none.size() == 1);
    CHECK(none[0].blocks == Blocks{{}, {}});
    CHECK(none[0].block_of("X") == -1);
  }
}

TEST_CASE("chain printing") {
  CHECK(chain_str(Chain{{{}, {"X", "Y"}, {}}}) == "bot < X == Y < top");
  CHECK(chain_str(Chain{{{"X"}, {}}}) == "bot == X < top");
  CHECK(chain_str(Chain{{{}, {"X"}, {"Y"}}}) == "bot < X < Y == top");
  CHECK(chain_str(Chain{{{}, {"Y"}, {"X"}, {}}}) == "bot < Y < X < top");
  CHECK(chain_str(Chain{{{}, {}}}) == "bot < top");
}

TEST_CASE("psi evaluation on pinned cases") {
  Chain mid{{{}, {"X"}, {}}};
  CHECK(psi_eval(fp("~~X"), mid) == mid.top());
  CHECK(psi_eval(fp("D X"), mid) == 0);
  CHECK(psi_eval(fp("X"), mid) == 1);
  CHECK(psi_eval(fp("~X"), mid) == 0);
  CHECK(psi_eval(fp("D X"), Chain{{{}, {"X"}}}) == 1);

  for (const auto& c : enumerate_chains({"X", "Y"}))
    CHECK(psi_eval(fp("(X -> Y) | (Y -> X)"), c) == c.top());

  CHECK_THROWS_WITH_AS(psi_eval(fp("Z"), mid), doctest::Contains("not in the chain"),
                       ChainError);
  CHECK_THROWS_WITH_AS(psi_eval(fp("A x. P(x)"), mid), doctest::Contains("propositional"),
                       ChainError);
  CHECK_THROWS_WITH_AS(psi_eval(fp("X(a)"), mid), doctest::Contains("propositional"),
                       ChainError);
}

TEST_CASE("psi agrees with evaluation under assignments realizing the chain") {
  auto forms = corpus(2);
  auto chains = enumerate_chains({"p", "q"});
  REQUIRE(chains.size() == 11);
  for (const auto& c : chains) {
    Interpretation i = chain_assignment(c);
    for (const auto& f : forms)
      CHECK(eval(block_formula(c, psi_eval(f, c)), i) == eval(f, i));
  }
}

TEST_CASE("chain assignments realize their chain") {
  for (const auto& c : enumerate_chains({"p", "q", "r"})) {
    Interpretation i = chain_assignment(c);
    std::vector<std::pair<std::string, Rat>> vals;
    for (const auto& [name, table] : i.atoms) vals.emplace_back(name, table.at({}));
    CHECK(order_type(vals) == c.blocks);
    CHECK(eval(chain_formula(c), i) == 1);
  }
}

TEST_CASE("chain formulas are crisp exactly on their realizing assignments") {
  auto chains = enumerate_chains({"p", "q"});
  auto grid = grid_values(false);
  for (const auto& c : chains) {
    FormulaPtr crisp = chain_formula(c, true);
    FormulaPtr plain = chain_formula(c, false);
    CHECK(!has_delta(plain));
    for (const Rat& x : grid)
      for (const Rat& y : grid) {
        std::vector<std::pair<std::string, Rat>> vals = {{"p", x}, {"q", y}};
        bool realizes = order_type(vals) == c.blocks;
        Interpretation i = assign(vals);
        Rat v = eval(crisp, i);
        CHECK((v == 0 || v == 1));
        CHECK((v == 1) == realizes);
        // the sugared form only pins its 1-locus below 1 (restricted use)
        if (x != 1 && y != 1) CHECK((eval(plain, i) == 1) == realizes);
      }
  }
}

TEST_CASE("first delta normal form is pointwise equivalent") {
  auto forms = corpus(2);
  auto grid = grid_values(false);
  for (std::size_t k = 0; k < forms.size(); k += 3) {
    const auto& f = forms[k];
    FormulaPtr g = cnf_delta_1(f);
    for (const Rat& x : grid)
      for (const Rat& y : grid) {
        Interpretation i = assign({{"p", x}, {"q", y}});
        CHECK(eval(g, i) == eval(f, i));
      }
  }

  SUBCASE("biconditional with the original is valid") {
    for (std::size_t k = 0; k < forms.size(); k += 3)
      CHECK(decide_valid_prop(f_iff(forms[k], cnf_delta_1(forms[k]))));
  }

  SUBCASE("one disjunct per chain") {
    CHECK(or_width(cnf_delta_1(fp("X"))) == 3);
    CHECK(or_width(cnf_delta_1(fp("X | Y"))) == 11);
    CHECK(or_width(cnf_delta_1(fp("top & bot"))) == 1);
  }
}

TEST_CASE("validity decision agrees with exhaustive evaluation") {
  auto forms = corpus(2);
  auto grid = grid_values(false);
  for (std::size_t k = 0; k < forms.size(); k += 3) {
    const auto& f = forms[k];
    bool everywhere = true;
    for (const Rat& x : grid)
      for (const Rat& y : grid)
        if (eval(f, assign({{"p", x}, {"q", y}})) != 1) everywhere = false;
    CHECK(decide_valid_prop(f) == everywhere);
    for (int m = 2; m <= 5; ++m) {
      auto vm = finite_gm(m).values;
      bool over_vm = true;
      for (const Rat& x : vm)
        for (const Rat& y : vm)
          if (eval(f, assign({{"p", x}, {"q", y}})) != 1) over_vm = false;
      CHECK(decide_valid_prop(f, m) == over_vm);
    }
  }

  SUBCASE("pinned verdicts") {
    FormulaPtr lin = fp("(A -> B) | (B -> A)");
    CHECK(decide_valid_prop(lin));
    for (int m = 2; m <= 5; ++m) CHECK(decide_valid_prop(lin, m));

    FormulaPtr tnd = fp("p | ~p");
    CHECK(!decide_valid_prop(tnd));
    CHECK(decide_valid_prop(tnd, 2));
    CHECK(!decide_valid_prop(tnd, 3));
    CHECK(!decide_valid_prop(tnd, 4));

    FormulaPtr fin3 = fp("(top -> p1) | (p1 -> p2) | (p2 -> bot)");
    CHECK(decide_valid_prop(fin3, 3));
    CHECK(!decide_valid_prop(fin3, 4));
    CHECK(!decide_valid_prop(fin3));
  }
}

TEST_CASE("second delta normal form in restricted semantics") {
  auto forms = corpus(2);
  auto grid = grid_values(true);
  for (std::size_t k = 0; k < forms.size(); k += 3) {
    const auto& f = forms[k];
    FormulaPtr g = cnf_delta_2(f);
    CHECK(!has_delta(g));
    for (const Rat& x : grid)
      for (const Rat& y : grid) {
        Interpretation i = assign({{"p", x}, {"q", y}});
        CHECK((eval(g, i) == 1) == (eval(f, i) == 1));
      }
  }

  SUBCASE("pinned shapes") {
    CHECK(equal(cnf_delta_2(fp("D X")), f_bot()));
    CHECK(equal(cnf_delta_2(fp("X")), f_bot()));
    FormulaPtr notdel = cnf_delta_2(fp("~ D X"));
    CHECK(or_width(notdel) == 2);  // both restricted chains survive
    for (const Rat& x : grid_values(true))
      CHECK(eval(notdel, assign({{"X", x}})) == 1);
    CHECK(or_width(cnf_delta_2(fp("X | ~X | top"))) == 2);
  }
}
