#include <utility>

#include "goedel/parser.hpp"
#include "goedel/search.hpp"

namespace goedel {

namespace {

FormulaPtr fx(const std::string& text) { return parse_formula(text).formula; }

FormulaPtr punary(const std::string& v) { return f_atom("P", {Term::var(v)}); }

// (top -> p1) | (p1 -> p2) | ... | (p_{n-1} -> bot). Its value is below 1
// exactly on strictly descending chains 1 > p1 > ... > p_{n-1} > 0, so it
// is valid over a set precisely when the set has at most n values.
FormulaPtr fin_chain(int n) {
  auto p = [](int k) { return f_atom("p" + std::to_string(k)); };
  FormulaPtr out = f_implies(f_top(), p(1));
  for (int k = 1; k <= n - 2; ++k) out = f_or(out, f_implies(p(k), p(k + 1)));
  return f_or(out, f_implies(p(n - 1), f_bot()));
}

using Exp = std::map<std::string, std::string>;

Exp exp6(const char* g3, const char* g4, const char* g5, const char* gup, const char* gdown,
         const char* g01) {
  return {{"G3", g3}, {"G4", g4}, {"G5", g5}, {"Gup", gup}, {"Gdown", gdown}, {"G01", g01}};
}

Exp all6(const char* s) { return exp6(s, s, s, s, s, s); }

}  // namespace

const std::vector<Fixture>& fixture_corpus() {
  static const std::vector<Fixture> corpus = [] {
    std::vector<Fixture> v;
    auto add = [&](std::string name, FormulaPtr f, std::string mode, Exp expected,
                   std::string note = "") {
      v.push_back({std::move(name), std::move(f), std::move(mode), std::move(expected),
                   std::move(note)});
    };
    const Exp valid = all6("valid");

    add("impl-chain", fx("(a -> b) -> ((b -> c) -> (a -> c))"), "valid", valid);
    add("or-idem", fx("a | a -> a"), "valid", valid);
    add("and-idem", fx("a -> a & a"), "valid", valid);
    add("or-intro", fx("a -> a | b"), "valid", valid);
    add("and-elim", fx("a & b -> a"), "valid", valid);
    add("or-comm", fx("a | b -> b | a"), "valid", valid);
    add("and-comm", fx("a & b -> b & a"), "valid", valid);
    add("or-mono", fx("(a -> b) -> (c | a -> c | b)"), "valid", valid);
    add("curry", fx("(a & b -> c) -> (a -> (b -> c))"), "valid", valid);
    add("uncurry", fx("(a -> (b -> c)) -> (a & b -> c)"), "valid", valid);
    add("explosion", fx("bot -> a"), "valid", valid);
    add("forall-instance", fx("(A y. P(y)) -> P(x)"), "valid", valid,
        "free x is closed off universally before the scan");
    add("exists-intro", fx("P(x) -> E y. P(y)"), "valid", valid);
    add("delta-lem", fx("D a | ~ D a"), "valid", valid);
    add("delta-or", fx("D (a | b) -> (D a | D b)"), "valid", valid);
    add("delta-weaken", fx("D a -> a"), "valid", valid);
    add("delta-idem", fx("D a -> D D a"), "valid", valid);
    add("delta-k", fx("D (a -> b) -> (D a -> D b)"), "valid", valid);
    add("constant-domain", fx("(A x. (b | P(x))) -> (b | A x. P(x))"), "valid", valid);
    add("linearity", fx("(a -> b) | (b -> a)"), "valid", valid);
    add("shift-s1", fx("(A x. (P(x) | b)) -> ((A x. P(x)) | b)"), "valid", valid);
    add("delta-forall-shift", fx("(D A x. P(x) <-> A x. D P(x))"), "valid", valid,
        "an infimum of 1 forces every instance to 1, attained or not");
    add("shift-s2", fx("(b -> E x. P(x)) -> E x. (b -> P(x))"), "valid",
        exp6("valid", "valid", "valid", "valid", "valid", "countermodel"),
        "fails only where a supremum below 1 can be approached without being attained");
    add("shift-s3", fx("((A x. P(x)) -> b) -> E x. (P(x) -> b)"), "valid",
        exp6("valid", "valid", "valid", "valid", "countermodel", "countermodel"),
        "fails only where an infimum can be approached without being attained");
    add("drinker", fx("E x. (P(x) -> A y. P(y))"), "valid",
        exp6("valid", "valid", "valid", "valid", "countermodel", "countermodel"),
        "an attained infimum supplies the witness");
    add("co-drinker", fx("E x. ((E y. P(y)) -> P(x))"), "valid",
        exp6("valid", "valid", "valid", "valid", "valid", "countermodel"),
        "an attained supremum supplies the witness");
    add("zero-isolation", fx("(A x. ~ ~ P(x)) -> ~ ~ A x. P(x)"), "valid",
        exp6("valid", "valid", "valid", "valid", "countermodel", "countermodel"),
        "positive values with infimum 0 break it");
    add("zero-isolation-alt", fx("~ A x. P(x) -> E x. ~ P(x)"), "valid",
        exp6("valid", "valid", "valid", "valid", "countermodel", "countermodel"));
    add("one-isolation", fx("D E x. P(x) -> E x. D P(x)"), "valid",
        exp6("valid", "valid", "valid", "countermodel", "valid", "countermodel"),
        "values below 1 with supremum 1 break it");
    add("one-isolation-alt", fx("A x. ~ D P(x) -> ~ D E x. P(x)"), "valid",
        exp6("valid", "valid", "valid", "countermodel", "valid", "countermodel"));
    add("delta-exists-shift", fx("(D E x. P(x) <-> E x. D P(x))"), "valid",
        exp6("valid", "valid", "valid", "countermodel", "valid", "countermodel"));
    add("finite-2", fin_chain(2), "valid", all6("countermodel"));
    add("finite-3", fin_chain(3), "valid",
        exp6("valid", "countermodel", "countermodel", "countermodel", "countermodel",
             "countermodel"));
    add("finite-4", fin_chain(4), "valid",
        exp6("valid", "valid", "countermodel", "countermodel", "countermodel", "countermodel"));
    add("finite-5", fin_chain(5), "valid",
        exp6("valid", "valid", "valid", "countermodel", "countermodel", "countermodel"));
    add("finite-6", fin_chain(6), "valid",
        exp6("valid", "valid", "valid", "countermodel", "countermodel", "countermodel"),
        "the truncated infinite sets still hold 5 strictly descending interior values");

    // (q strictly above every P(x)) -> (q strictly above E x. P(x)), where
    // "u strictly above w" is the Goedel term (u -> w) -> u. The supremum
    // can equal q without any instance doing so, but only where a value
    // below 1 is a limit from below.
    FormulaPtr q = f_atom("q");
    add("sup-threshold",
        f_implies(f_forall("x", f_less(q, punary("x"))),
                  f_less(q, f_exists("x", punary("x")))),
        "valid", exp6("valid", "valid", "valid", "valid", "valid", "countermodel"));
    // Flipped orientation: every instance strictly above q pushes the
    // supremum strictly above q. Holds everywhere.
    add("sup-threshold-literal",
        f_implies(f_forall("x", f_less(punary("x"), q)),
                  f_less(f_exists("x", punary("x")), q)),
        "valid", valid);

    FormulaPtr mixed = fx("~ (A x. P(x)) & A x. ~ ~ P(x)");
    add("mixed-negation", mixed, "one-sat",
        exp6("not-found", "not-found", "not-found", "not-found", "witness", "witness"),
        "needs positive values approaching 0");
    add("mixed-negation-classical", mixed, "classical-sat", all6("not-found"));
    add("crisp-gap", fx("~ ~ a & ~ D a"), "one-sat", all6("witness"),
        "any value strictly between 0 and 1");
    add("crisp-gap-classical", fx("~ ~ a & ~ D a"), "classical-sat", all6("not-found"));
    return v;
  }();
  return corpus;
}

FixtureReport run_fixture_suite(const std::vector<std::string>& set_names) {
  std::vector<std::string> names = set_names;
  if (names.empty()) names = {"G3", "G4", "G5", "Gup", "Gdown", "G01"};
  std::vector<std::pair<std::string, SearchSpace>> spaces;
  for (const std::string& n : names) {
    auto d = builtin_set(n);
    if (!d) throw SearchError("unknown built-in set '" + n + "'");
    spaces.emplace_back(n, space_for(*d));
  }
  FixtureReport r;
  for (const Fixture& fixt : fixture_corpus()) {
    for (const auto& [name, space] : spaces) {
      Verdict verdict;
      if (fixt.mode == "valid")
        verdict = find_countermodel(fixt.formula, space);
      else if (fixt.mode == "one-sat")
        verdict = check_sat(fixt.formula, SatMode::OneSat, space);
      else if (fixt.mode == "pos-sat")
        verdict = check_sat(fixt.formula, SatMode::PosSat, space);
      else if (fixt.mode == "classical-sat")
        verdict = check_sat(fixt.formula, SatMode::ClassicalSat, space);
      else
        throw SearchError("fixture '" + fixt.name + "' has unknown mode '" + fixt.mode + "'");
      FixtureResult row;
      row.fixture = fixt.name;
      row.set_name = name;
      auto it = fixt.expected.find(name);
      row.expected = it == fixt.expected.end() ? "" : it->second;
      row.got = to_string(verdict.kind);
      row.pass = row.expected.empty() || row.expected == row.got;
      row.verdict = std::move(verdict);
      if (!row.pass) r.all_pass = false;
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

std::string report_text(const FixtureReport& r) {
  std::map<std::string, std::string> notes;
  for (const Fixture& f : fixture_corpus()) notes[f.name] = f.note;
  std::string out;
  for (const FixtureResult& row : r.rows) {
    out += row.fixture;
    out += '\t';
    out += row.set_name;
    out += '\t';
    out += row.expected;
    out += '\t';
    out += row.got;
    out += '\t';
    out += row.pass ? "pass" : "fail";
    out += '\t';
    out += notes[row.fixture];
    out += '\n';
  }
  return out;
}

}  // namespace goedel
