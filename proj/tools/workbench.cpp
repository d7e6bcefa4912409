// Command line front end. Every subcommand reads files or literals, writes
// one result to stdout (or --out) and signals through the exit status:
//   0  result produced
//   1  input error (bad file, bad syntax, bad flag value)
//   2  unsupported transformation or negative answer (invalid, unsat, fixture failure)
//   3  an enumeration bound was hit (search cap, chain width)
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "goedel/chains.hpp"
#include "goedel/eval.hpp"
#include "goedel/interp.hpp"
#include "goedel/parser.hpp"
#include "goedel/printer.hpp"
#include "goedel/search.hpp"
#include "goedel/transform.hpp"
#include "goedel/truthset.hpp"

using namespace goedel;

namespace {

struct CliError {
  int status;
  std::string code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{1, "io", "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --formula and friends accept either a path or the text itself.
std::string arg_text(const std::string& s) {
  return std::filesystem::exists(s) ? slurp(s) : s;
}

ParseResult formula_arg(const std::string& s) { return parse_formula(arg_text(s)); }

GoedelSetDescriptor set_arg(const std::string& s) {
  if (std::filesystem::exists(s)) return descriptor_from_text(slurp(s));
  if (auto d = builtin_set(s)) return *d;
  std::string names;
  for (const auto& n : builtin_set_names()) names += (names.empty() ? "" : ", ") + n;
  throw CliError{1, "set", "unknown set '" + s + "' (built-ins: " + names +
                               "; anything else must be a descriptor file)"};
}

Interpretation interp_arg(const std::string& path) { return interp_from_text(slurp(path)); }

Rat rat_arg(const std::string& s, const std::string& what) {
  if (s.find('.') != std::string::npos)
    throw CliError{1, "rational", what + " must be a rational p/q, decimals are rejected"};
  try {
    Rat r(s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw CliError{1, "rational", "malformed rational '" + s + "' for " + what};
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{1, "io", "cannot write '" + out_path + "'"};
  out << text;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string trace_line(const TraceEntry& e) {
  std::string line = rat_str(e.value);
  line += "\t" + e.formula;
  line += "\t" + (e.binding.empty() ? std::string("-") : e.binding);
  line += "\t" + (e.family ? seq_str(*e.family) : std::string("-"));
  line += "\t";
  line += e.attained ? (*e.attained ? "attained" : "proper") : "-";
  return line;
}

// Per-command state, filled by CLI11 and consumed by the handlers.
struct Args {
  std::string formula;
  std::string interp;
  std::string set;
  std::string out;
  std::string format = "text";
  std::string mode;
  std::string atoms;
  std::string omega;
  bool trace = false;
  bool restricted = false;
  bool templates = true;
  bool symmetry = false;
  int form = 1;
  int max_domain = 3;
  int workers = 0;
  std::optional<int> levels;
  std::vector<std::string> sets;

  bool machine() const { return format == "machine"; }
};

int cmd_parse(const Args& a) {
  ParseResult r = formula_arg(a.formula);
  std::string out;
  if (a.machine()) {
    out += "formula = " + print_formula(r.formula) + "\n";
    out += "raw = " + print_formula(r.formula, PrintMode::Raw) + "\n";
    for (const auto& w : r.warnings) out += "warning = " + w + "\n";
  } else {
    out += print_formula(r.formula) + "\n";
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  }
  emit(out, a.out);
  return 0;
}

int cmd_eval(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  Interpretation i = interp_arg(a.interp);
  std::string out;
  if (a.trace) {
    EvalResult r = eval_traced(f, i);
    for (const auto& e : r.trace)
      out += (a.machine() ? "trace = " : "") + trace_line(e) + "\n";
    out += (a.machine() ? "value = " : "") + rat_str(r.value) + "\n";
  } else {
    out += (a.machine() ? "value = " : "") + rat_str(eval(f, i)) + "\n";
  }
  emit(out, a.out);
  return 0;
}

int cmd_prenex(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  std::string mode = a.mode.empty() ? "logical" : a.mode;
  std::string out;
  if (mode == "validity-re") {
    try {
      FormulaPtr g = validity_prenex_re(f);
      out += (a.machine() ? "prenex = " : "") + print_formula(g) + "\n";
      if (a.machine()) out += "guarantee = validity-preserving\n";
    } catch (const TransformError& e) {
      emit(a.machine() ? "unsupported = " + std::string(e.what()) + "\n"
                       : "unsupported: " + std::string(e.what()) + "\n",
           a.out);
      return 2;
    }
    emit(out, a.out);
    return 0;
  }
  Classification c = classify(set_arg(a.set));
  PrenexResult r = mode == "pos-valid" ? prenexify_pos_valid(f, c)
                 : mode == "logical"
                     ? prenexify(f, c)
                     : throw CliError{1, "usage",
                                      "--mode must be logical, pos-valid or validity-re"};
  if (!r.ok()) {
    emit(a.machine() ? "unsupported = " + r.reason + "\n" : "unsupported: " + r.reason + "\n",
         a.out);
    return 2;
  }
  if (a.machine()) {
    out += "prenex = " + print_formula(r.prenex) + "\n";
    out += "guarantee = " + r.guarantee + "\n";
    if (a.trace)
      for (const auto& s : r.trace) out += "step = " + s.rule + "\t" + s.position + "\n";
  } else {
    out += print_formula(r.prenex) + "\n";
    out += "guarantee: " + r.guarantee + "\n";
    if (a.trace)
      for (const auto& s : r.trace) out += s.rule + " @ " + s.position + "\n";
  }
  emit(out, a.out);
  return 0;
}

int cmd_skolemize(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  std::string mode = a.mode.empty() ? "validity" : a.mode;
  if (mode != "validity" && mode != "sat")
    throw CliError{1, "usage", "--mode must be validity or sat"};
  FormulaPtr g = skolemize(f, mode == "validity");
  emit((a.machine() ? "formula = " : "") + print_formula(g) + "\n", a.out);
  return 0;
}

int cmd_kuroda(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  try {
    FormulaPtr g = kuroda(f);
    emit((a.machine() ? "formula = " : "") + print_formula(g) + "\n", a.out);
    return 0;
  } catch (const TransformError& e) {
    emit(a.machine() ? "unsupported = " + std::string(e.what()) + "\n"
                     : "unsupported: " + std::string(e.what()) + "\n",
         a.out);
    return 2;
  }
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
    while (!piece.empty() && piece.back() == ' ') piece.pop_back();
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

int cmd_chains(const Args& a) {
  std::vector<std::string> atoms = split_names(a.atoms);
  try {
    std::vector<Chain> cs = enumerate_chains(atoms, a.restricted, a.levels);
    std::string out;
    for (const auto& c : cs) out += (a.machine() ? "chain = " : "") + chain_str(c) + "\n";
    if (a.machine()) out += "count = " + std::to_string(cs.size()) + "\n";
    emit(out, a.out);
    return 0;
  } catch (const ChainError& e) {
    if (std::string(e.what()).find("enumeration over") != std::string::npos)
      throw CliError{3, "bounds", e.what()};
    throw;
  }
}

int cmd_cnf(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  if (a.form != 1 && a.form != 2) throw CliError{1, "usage", "--form must be 1 or 2"};
  FormulaPtr g = a.form == 1 ? cnf_delta_1(f) : cnf_delta_2(f);
  emit((a.machine() ? "formula = " : "") + print_formula(g) + "\n", a.out);
  return 0;
}

int cmd_valid_prop(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  try {
    bool v = decide_valid_prop(f, a.levels);
    emit(a.machine() ? std::string("valid = ") + yn(v) + "\n"
                     : std::string(v ? "valid" : "invalid") + "\n",
         a.out);
    return v ? 0 : 2;
  } catch (const ChainError& e) {
    if (std::string(e.what()).find("enumeration over") != std::string::npos)
      throw CliError{3, "bounds", e.what()};
    throw;
  }
}

int cmd_classify(const Args& a) {
  emit(classification_to_text(classify(set_arg(a.set))), a.out);
  return 0;
}

int cmd_glue(const Args& a) {
  Interpretation i = interp_arg(a.interp);
  Rat omega = rat_arg(a.omega, "--omega");
  if (omega < 0 || omega >= 1) throw CliError{1, "rational", "--omega must lie in [0,1)"};
  emit(interp_to_text(glue(i, omega)), a.out);
  return 0;
}

unsigned long long env_cap() {
  const char* env = std::getenv("WORKBENCH_MAX_INTERPS");
  if (!env) return 10'000'000ULL;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size() || v == 0) throw std::invalid_argument("cap");
    return v;
  } catch (const std::exception&) {
    throw CliError{1, "usage",
                   "WORKBENCH_MAX_INTERPS must be a positive integer, got '" +
                       std::string(env) + "'"};
  }
}

int cmd_search(const Args& a) {
  FormulaPtr f = formula_arg(a.formula).formula;
  SearchSpace space = space_for(set_arg(a.set), a.max_domain);
  space.max_interps = env_cap();
  space.symmetry_reduction = a.symmetry;
  space.workers = a.workers;
  if (!a.templates) space.templates.clear();

  std::string mode = a.mode.empty() ? "valid" : a.mode;
  Verdict v;
  if (mode == "valid")
    v = find_countermodel(f, space);
  else if (mode == "one-sat")
    v = check_sat(f, SatMode::OneSat, space);
  else if (mode == "pos-sat")
    v = check_sat(f, SatMode::PosSat, space);
  else if (mode == "classical-sat")
    v = check_sat(f, SatMode::ClassicalSat, space);
  else
    throw CliError{1, "usage", "--mode must be valid, one-sat, pos-sat or classical-sat"};

  bool hit = v.kind == Verdict::Kind::Countermodel || v.kind == Verdict::Kind::Witness;
  std::string out;
  if (a.machine()) {
    out += "verdict = " + to_string(v.kind) + "\n";
    if (hit) out += "value = " + rat_str(v.value) + "\n";
    out += "enumerated = " + std::to_string(v.enumerated) + "\n";
    out += std::string("exhausted = ") + yn(v.exhausted) + "\n";
    out += "bounds = " + v.bounds + "\n";
    if (v.interp) {
      std::istringstream lines(interp_to_text(*v.interp));
      std::string line;
      while (std::getline(lines, line)) out += "interp = " + line + "\n";
    }
  } else {
    out += "verdict: " + to_string(v.kind) + "\n";
    if (hit) out += "value: " + rat_str(v.value) + "\n";
    out += "enumerated: " + std::to_string(v.enumerated) + "\n";
    out += std::string("exhausted: ") + yn(v.exhausted) + "\n";
    out += "bounds: " + v.bounds + "\n";
    if (v.interp) out += "\n" + interp_to_text(*v.interp);
  }
  emit(out, a.out);
  if (v.kind == Verdict::Kind::NotFound) return v.exhausted ? 2 : 3;
  return 0;
}

int cmd_fixtures(const Args& a) {
  FixtureReport r = run_fixture_suite(a.sets);
  emit(report_text(r), a.out);
  return r.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic workbench for first-order Goedel logics"};
  app.require_subcommand(1);
  Args a;
  int status = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", a.out, "write the result to a file instead of stdout");
    sub->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"text", "machine"}));
  };
  auto need_formula = [&](CLI::App* sub) {
    sub->add_option("--formula", a.formula, "formula literal or file")->required();
  };

  CLI::App* parse = app.add_subcommand("parse", "parse a formula and print it back");
  need_formula(parse);
  add_common(parse);
  parse->callback([&] { status = cmd_parse(a); });

  CLI::App* ev = app.add_subcommand("eval", "evaluate a formula in an interpretation");
  need_formula(ev);
  ev->add_option("--interp", a.interp, "interpretation file")->required();
  ev->add_flag("--trace", a.trace, "list every subformula with its value");
  add_common(ev);
  ev->callback([&] { status = cmd_eval(a); });

  CLI::App* pre = app.add_subcommand("prenex", "pull quantifiers to the front");
  need_formula(pre);
  pre->add_option("--set", a.set, "truth set (built-in name or descriptor file)");
  pre->add_option("--mode", a.mode, "logical, pos-valid or validity-re");
  pre->add_flag("--trace", a.trace, "list the shift rules applied");
  add_common(pre);
  pre->callback([&] {
    if (a.mode != "validity-re" && a.set.empty())
      throw CliError{1, "usage", "prenex needs --set unless --mode validity-re"};
    status = cmd_prenex(a);
  });

  CLI::App* sk = app.add_subcommand("skolemize", "replace quantifiers by fresh functions");
  need_formula(sk);
  sk->add_option("--mode", a.mode, "validity (default) or sat");
  add_common(sk);
  sk->callback([&] { status = cmd_skolemize(a); });

  CLI::App* ku = app.add_subcommand("kuroda", "double-negation translation");
  need_formula(ku);
  add_common(ku);
  ku->callback([&] { status = cmd_kuroda(a); });

  CLI::App* ch = app.add_subcommand("chains", "enumerate semantic chains over atoms");
  ch->add_option("--atoms", a.atoms, "comma separated atom names")->required();
  ch->add_flag("--restricted", a.restricted, "only chains that keep bot alone");
  ch->add_option("--levels", a.levels, "cap the number of chain levels");
  add_common(ch);
  ch->callback([&] { status = cmd_chains(a); });

  CLI::App* cn = app.add_subcommand("cnf", "chain normal form of a propositional formula");
  need_formula(cn);
  cn->add_option("--form", a.form, "1 (with Delta) or 2 (Delta-free)")->required();
  add_common(cn);
  cn->callback([&] { status = cmd_cnf(a); });

  CLI::App* vp = app.add_subcommand("valid-prop", "decide propositional validity");
  need_formula(vp);
  vp->add_option("--levels", a.levels, "restrict to chains with at most m levels");
  add_common(vp);
  vp->callback([&] { status = cmd_valid_prop(a); });

  CLI::App* cl = app.add_subcommand("classify", "prenexability profile of a truth set");
  cl->add_option("--set", a.set, "truth set (built-in name or descriptor file)")->required();
  add_common(cl);
  cl->callback([&] { status = cmd_classify(a); });

  CLI::App* gl = app.add_subcommand("glue", "glue an interpretation at a threshold");
  gl->add_option("--interp", a.interp, "interpretation file")->required();
  gl->add_option("--omega", a.omega, "threshold rational in [0,1)")->required();
  add_common(gl);
  gl->callback([&] { status = cmd_glue(a); });

  CLI::App* se = app.add_subcommand("search", "look for countermodels or witnesses");
  need_formula(se);
  se->add_option("--set", a.set, "truth set (built-in name or descriptor file)")->required();
  se->add_option("--mode", a.mode, "valid (default), one-sat, pos-sat or classical-sat");
  se->add_option("--max-domain", a.max_domain, "largest finite domain size")
      ->check(CLI::PositiveNumber);
  se->add_flag("--templates,!--no-templates", a.templates,
               "run the infinite-domain pass (on by default)");
  se->add_flag("--symmetry", a.symmetry, "skip interpretations equal up to renaming");
  se->add_option("--workers", a.workers, "worker threads (0 = auto)");
  add_common(se);
  se->callback([&] { status = cmd_search(a); });

  CLI::App* fx = app.add_subcommand("fixtures", "run the built-in fixture suite");
  fx->add_option("--set", a.sets, "built-in set name (repeatable; default all six)");
  add_common(fx);
  fx->callback([&] { status = cmd_fixtures(a); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help/version leave through here with code 0; everything else is an
    // input error regardless of CLI11's own exit code scheme
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.code << ": " << e.message << "\n";
    return e.status;
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 1;
  } catch (const FormulaError& e) {
    std::cerr << "error: formula: " << e.what() << "\n";
    return 1;
  } catch (const TruthSetError& e) {
    std::cerr << "error: set: " << e.what() << "\n";
    return 1;
  } catch (const InterpError& e) {
    std::cerr << "error: interp: " << e.what() << "\n";
    return 1;
  } catch (const EvalError& e) {
    std::cerr << "error: eval: " << e.what() << "\n";
    return 1;
  } catch (const ChainError& e) {
    std::cerr << "error: chains: " << e.what() << "\n";
    return 1;
  } catch (const TransformError& e) {
    std::cerr << "error: transform: " << e.what() << "\n";
    return 1;
  } catch (const SearchError& e) {
    std::cerr << "error: search: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return status;
}
