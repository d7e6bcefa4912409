#include "goedel/interp.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace goedel {

namespace {

int sgn(const Rat& v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

Rat rat_abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

Rat closed_at(const SeqValue& s, long n) { return s.alpha + s.beta / (Rat(n) + s.gamma); }

// Smallest n >= 0 not used as an override key.
long first_tail_index(const SeqValue& s) {
  long n = 0;
  for (const auto& [k, v] : s.overrides) {
    if (k != n) break;
    ++n;
  }
  return n;
}

long past_overrides(const SeqValue& s) {
  return s.overrides.empty() ? 0 : s.overrides.rbegin()->first + 1;
}

Rat godel_implies(const Rat& a, const Rat& b) { return a <= b ? Rat(1) : b; }

}  // namespace

SeqValue seq_const(const Rat& v) {
  if (!in_unit(v)) throw InterpError("value " + rat_str(v) + " outside [0,1]");
  SeqValue s;
  s.alpha = v;
  s.beta = 0;
  s.gamma = 1;
  return s;
}

SeqValue seq_make(const Rat& alpha, const Rat& beta, const Rat& gamma,
                  std::map<long, Rat> overrides) {
  if (gamma <= 0) throw InterpError("sequence shift must be positive");
  SeqValue s;
  s.alpha = alpha;
  s.beta = beta;
  s.gamma = gamma;
  s.overrides = std::move(overrides);
  for (const auto& [n, v] : s.overrides) {
    if (n < 0) throw InterpError("override index must be a natural number");
    if (!in_unit(v)) throw InterpError("override value " + rat_str(v) + " outside [0,1]");
  }
  // The closed form is monotone, so its range over the tail is spanned by
  // the first tail value and the limit.
  if (!in_unit(s.alpha) || !in_unit(closed_at(s, first_tail_index(s))))
    throw InterpError("sequence leaves [0,1]");
  return seq_canon(std::move(s));
}

Rat seq_at(const SeqValue& s, long n) {
  if (n < 0) throw InterpError("sequence index must be a natural number");
  auto it = s.overrides.find(n);
  if (it != s.overrides.end()) return it->second;
  return closed_at(s, n);
}

SeqValue seq_canon(SeqValue s) {
  for (auto it = s.overrides.begin(); it != s.overrides.end();) {
    if (it->second == closed_at(s, it->first))
      it = s.overrides.erase(it);
    else
      ++it;
  }
  if (s.beta == 0) s.gamma = 1;
  return s;
}

std::pair<long, int> seq_eventual_compare(const SeqValue& a, const SeqValue& b) {
  // a(n) - b(n) has the sign of A n^2 + B n + C after clearing the
  // positive denominators (n+gamma_a)(n+gamma_b).
  Rat A = a.alpha - b.alpha;
  Rat B = A * (a.gamma + b.gamma) + a.beta - b.beta;
  Rat C = A * a.gamma * b.gamma + a.beta * b.gamma - b.beta * a.gamma;
  int sign;
  Rat bound = 0;
  if (A != 0) {
    sign = sgn(A);
    bound = Rat(1) + std::max(rat_abs(B / A), rat_abs(C / A));
  } else if (B != 0) {
    sign = sgn(B);
    bound = rat_abs(C / B);
  } else {
    sign = sgn(C);
  }
  long start = std::max({ceil_long(bound) + 1, past_overrides(a), past_overrides(b), 0L});
  return {start, sign};
}

namespace {

SeqValue tail_of(const SeqValue& s) {
  SeqValue t;
  t.alpha = s.alpha;
  t.beta = s.beta;
  t.gamma = s.gamma;
  return t;
}

template <typename F>
SeqValue pointwise(const SeqValue& a, const SeqValue& b, SeqValue tail, F&& op) {
  auto [start, sign] = seq_eventual_compare(a, b);
  (void)sign;
  for (long n = 0; n < start; ++n) tail.overrides[n] = op(seq_at(a, n), seq_at(b, n));
  return seq_canon(std::move(tail));
}

}  // namespace

SeqValue seq_min(const SeqValue& a, const SeqValue& b) {
  auto [start, sign] = seq_eventual_compare(a, b);
  (void)start;
  return pointwise(a, b, sign <= 0 ? tail_of(a) : tail_of(b),
                   [](const Rat& x, const Rat& y) { return std::min(x, y); });
}

SeqValue seq_max(const SeqValue& a, const SeqValue& b) {
  auto [start, sign] = seq_eventual_compare(a, b);
  (void)start;
  return pointwise(a, b, sign >= 0 ? tail_of(a) : tail_of(b),
                   [](const Rat& x, const Rat& y) { return std::max(x, y); });
}

SeqValue seq_implies(const SeqValue& a, const SeqValue& b) {
  auto [start, sign] = seq_eventual_compare(a, b);
  (void)start;
  return pointwise(a, b, sign <= 0 ? seq_const(1) : tail_of(b), godel_implies);
}

SeqValue seq_delta(const SeqValue& a) {
  SeqValue one = seq_const(1);
  auto [start, sign] = seq_eventual_compare(a, one);
  SeqValue tail = seq_const(sign == 0 ? 1 : 0);
  for (long n = 0; n < start; ++n) tail.overrides[n] = seq_at(a, n) == 1 ? 1 : 0;
  return seq_canon(std::move(tail));
}

SeqValue seq_glue(const SeqValue& a, const Rat& omega) {
  SeqValue w = seq_const(omega);
  auto [start, sign] = seq_eventual_compare(a, w);
  SeqValue tail = sign <= 0 ? tail_of(a) : seq_const(1);
  for (long n = 0; n < start; ++n) {
    Rat v = seq_at(a, n);
    tail.overrides[n] = v <= omega ? v : Rat(1);
  }
  return seq_canon(std::move(tail));
}

Extremum seq_inf(const SeqValue& s) {
  Extremum tail;
  if (s.beta > 0) {
    tail = {s.alpha, false};
  } else if (s.beta < 0) {
    tail = {closed_at(s, first_tail_index(s)), true};
  } else {
    tail = {s.alpha, true};
  }
  for (const auto& [n, v] : s.overrides) {
    if (v < tail.value)
      tail = {v, true};
    else if (v == tail.value)
      tail.attained = true;
  }
  return tail;
}

Extremum seq_sup(const SeqValue& s) {
  Extremum tail;
  if (s.beta > 0) {
    tail = {closed_at(s, first_tail_index(s)), true};
  } else if (s.beta < 0) {
    tail = {s.alpha, false};
  } else {
    tail = {s.alpha, true};
  }
  for (const auto& [n, v] : s.overrides) {
    if (v > tail.value)
      tail = {v, true};
    else if (v == tail.value)
      tail.attained = true;
  }
  return tail;
}

namespace {

// Tail membership in {0} u {1/k}: either constant at a member, or
// descending to 0 through exact unit fractions, which forces 1/beta and
// gamma/beta to be integers.
bool tail_in_vdown(const SeqValue& s, const GoedelSetDescriptor& d) {
  if (s.beta == 0) return set_contains(d, s.alpha);
  if (s.beta < 0) return false;  // ascending infinite chains do not exist in the set
  if (s.alpha != 0) return false;
  return is_integer(Rat(1) / s.beta) && is_integer(s.gamma / s.beta);
}

SeqValue mirror(const SeqValue& s) {
  SeqValue m;
  m.alpha = Rat(1) - s.alpha;
  m.beta = -s.beta;
  m.gamma = s.gamma;
  for (const auto& [n, v] : s.overrides) m.overrides[n] = Rat(1) - v;
  return m;
}

}  // namespace

bool seq_in_set(const SeqValue& s, const GoedelSetDescriptor& d) {
  switch (d.kind) {
    case SetKind::UnitInterval:
      return true;  // construction already keeps values in [0,1]
    case SetKind::Finite: {
      if (s.beta != 0) return false;  // infinitely many distinct values
      if (!set_contains(d, s.alpha)) return false;
      for (const auto& [n, v] : s.overrides)
        if (!set_contains(d, v)) return false;
      return true;
    }
    case SetKind::VDown: {
      if (!tail_in_vdown(s, d)) return false;
      for (const auto& [n, v] : s.overrides)
        if (!set_contains(d, v)) return false;
      return true;
    }
    case SetKind::VUp: {
      GoedelSetDescriptor down = make_vdown();
      SeqValue m = mirror(s);
      if (!tail_in_vdown(m, down)) return false;
      for (const auto& [n, v] : m.overrides)
        if (!set_contains(down, v)) return false;
      return true;
    }
    case SetKind::Abstract:
      throw TruthSetError("membership is undecidable for an abstract descriptor");
  }
  return false;
}

std::string seq_str(const SeqValue& s) {
  if (s.beta == 0) return rat_str(s.alpha);
  std::string out = rat_str(s.alpha);
  out += s.beta > 0 ? " + " : " - ";
  out += rat_str(rat_abs(s.beta));
  out += "/(n+" + rat_str(s.gamma) + ")";
  return out;
}

int Interpretation::element_index(const std::string& name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> finite_elements(int k) {
  if (k < 1) throw InterpError("finite domain needs at least one element");
  if (k > 26) throw InterpError("finite domains support at most 26 elements");
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

Interpretation glue(const Interpretation& i, const Rat& omega) {
  if (!(omega >= 0 && omega < 1)) throw InterpError("gluing point must lie in [0,1)");
  Interpretation out = i;
  for (auto& [pred, table] : out.atoms)
    for (auto& [tuple, v] : table)
      if (v > omega) v = 1;
  for (auto& [pred, s] : out.seqs) s = seq_glue(s, omega);
  return out;
}

std::vector<std::string> validate(const Interpretation& i) {
  if (!i.truth_set) return {};
  return validate(i, *i.truth_set);
}

std::vector<std::string> validate(const Interpretation& i, const GoedelSetDescriptor& v) {
  std::vector<std::string> out;
  for (const auto& [pred, table] : i.atoms)
    for (const auto& [tuple, val] : table)
      if (!set_contains(v, val)) {
        std::string t = pred;
        if (!tuple.empty()) {
          t += "(";
          for (std::size_t k = 0; k < tuple.size(); ++k) {
            if (k) t += ", ";
            t += i.domain == Interpretation::Domain::Finite ? i.elements[tuple[k]]
                                                            : std::to_string(tuple[k]);
          }
          t += ")";
        }
        out.push_back("atom " + t + " = " + rat_str(val) + " lies outside the set");
      }
  for (const auto& [pred, s] : i.seqs)
    if (!seq_in_set(s, v)) out.push_back("seq " + pred + " leaves the set");
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Rat need_rat(const std::string& text, const std::string& what) {
  auto r = parse_rat(trim(text));
  if (!r) throw InterpError("bad rational '" + trim(text) + "' in " + what);
  return *r;
}

// "P" or "P(a, b)" -> name + argument names.
std::pair<std::string, std::vector<std::string>> split_applied(const std::string& text) {
  std::size_t lp = text.find('(');
  if (lp == std::string::npos) return {trim(text), {}};
  if (text.back() != ')') throw InterpError("expected ')' in '" + text + "'");
  std::string name = trim(text.substr(0, lp));
  std::vector<std::string> args;
  std::string inner = text.substr(lp + 1, text.size() - lp - 2);
  std::istringstream in(inner);
  std::string piece;
  while (std::getline(in, piece, ',')) args.push_back(trim(piece));
  return {name, args};
}

const std::regex kSeqClosed(
    R"(^\s*(-?[0-9]+(?:/[0-9]+)?)\s*([+-])\s*([0-9]+(?:/[0-9]+)?)\s*/\s*\(\s*n\s*\+\s*([0-9]+(?:/[0-9]+)?)\s*\)\s*$)");
const std::regex kSeqBare(
    R"(^\s*([0-9]+(?:/[0-9]+)?)\s*/\s*\(\s*n\s*\+\s*([0-9]+(?:/[0-9]+)?)\s*\)\s*$)");

SeqValue parse_seq_closed(const std::string& rhs) {
  std::smatch m;
  if (std::regex_match(rhs, m, kSeqClosed)) {
    Rat alpha = need_rat(m[1], "seq");
    Rat beta = need_rat(m[3], "seq");
    if (m[2] == "-") beta = -beta;
    Rat gamma = need_rat(m[4], "seq");
    return seq_make(alpha, beta, gamma);
  }
  if (std::regex_match(rhs, m, kSeqBare))
    return seq_make(0, need_rat(m[1], "seq"), need_rat(m[2], "seq"));
  return seq_const(need_rat(rhs, "seq"));
}

}  // namespace

std::string interp_to_text(const Interpretation& i) {
  std::ostringstream out;
  if (i.domain == Interpretation::Domain::Finite)
    out << "domain finite " << i.elements.size() << "\n";
  else
    out << "domain nat\n";
  for (const auto& [pred, table] : i.atoms)
    for (const auto& [tuple, v] : table) {
      out << "atom " << pred;
      if (!tuple.empty()) {
        out << "(";
        for (std::size_t k = 0; k < tuple.size(); ++k) {
          if (k) out << ", ";
          out << (i.domain == Interpretation::Domain::Finite ? i.elements[tuple[k]]
                                                             : std::to_string(tuple[k]));
        }
        out << ")";
      }
      out << " = " << rat_str(v) << "\n";
    }
  for (const auto& [fn, table] : i.funcs)
    for (const auto& [tuple, e] : table) {
      out << "func " << fn << "(";
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (k) out << ", ";
        out << i.elements[tuple[k]];
      }
      out << ") = " << i.elements[e] << "\n";
    }
  for (const auto& [pred, s] : i.seqs) {
    out << "seq " << pred << " = " << seq_str(s) << "\n";
    for (const auto& [n, v] : s.overrides)
      out << "seq " << pred << " override " << n << " = " << rat_str(v) << "\n";
  }
  for (const auto& [var, val] : i.assign) {
    out << "assign " << var << " = ";
    if (i.domain == Interpretation::Domain::Finite)
      out << i.elements[val];
    else
      out << val;
    out << "\n";
  }
  return out.str();
}

Interpretation interp_from_text(const std::string& text) {
  Interpretation i;
  bool saw_domain = false;
  std::map<std::string, std::map<long, Rat>> pending_overrides;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw InterpError(msg + " at line " + std::to_string(lineno));
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "domain") {
      if (saw_domain) fail("duplicate domain line");
      saw_domain = true;
      std::string kind;
      ls >> kind;
      if (kind == "finite") {
        int k = 0;
        if (!(ls >> k)) fail("expected a size after 'domain finite'");
        i.domain = Interpretation::Domain::Finite;
        i.elements = finite_elements(k);
      } else if (kind == "nat") {
        i.domain = Interpretation::Domain::Nat;
      } else {
        fail("unknown domain '" + kind + "'");
      }
      continue;
    }
    if (!saw_domain) fail("the first line must declare the domain");
    std::string rest;
    std::getline(ls, rest);
    std::size_t eq = rest.find('=');
    if (eq == std::string::npos) fail("expected '=' in " + word + " line");
    std::string lhs = trim(rest.substr(0, eq));
    std::string rhs = trim(rest.substr(eq + 1));
    if (word == "atom") {
      auto [name, args] = split_applied(lhs);
      std::vector<int> tuple;
      for (const auto& a : args) {
        if (i.domain == Interpretation::Domain::Nat)
          fail("nat-domain atoms take no arguments; use 'seq' for unary predicates");
        int e = i.element_index(a);
        if (e < 0) fail("unknown element '" + a + "'");
        tuple.push_back(e);
      }
      Rat v = need_rat(rhs, "atom " + name);
      if (!in_unit(v)) fail("atom value outside [0,1]");
      auto [it, inserted] = i.atoms[name].emplace(tuple, v);
      if (!inserted) fail("duplicate atom line for " + name);
    } else if (word == "func") {
      if (i.domain == Interpretation::Domain::Nat) fail("function symbols need a finite domain");
      auto [name, args] = split_applied(lhs);
      std::vector<int> tuple;
      for (const auto& a : args) {
        int e = i.element_index(a);
        if (e < 0) fail("unknown element '" + a + "'");
        tuple.push_back(e);
      }
      int target = i.element_index(rhs);
      if (target < 0) fail("unknown element '" + rhs + "'");
      auto [it, inserted] = i.funcs[name].emplace(tuple, target);
      if (!inserted) fail("duplicate func line for " + name);
    } else if (word == "seq") {
      if (i.domain != Interpretation::Domain::Nat) fail("'seq' needs a nat domain");
      std::istringstream hs(lhs);
      std::string name, marker;
      hs >> name >> marker;
      if (marker == "override") {
        long n = -1;
        if (!(hs >> n) || n < 0) fail("expected an index after 'override'");
        Rat v = need_rat(rhs, "override");
        if (!in_unit(v)) fail("override value outside [0,1]");
        auto [it, inserted] = pending_overrides[name].emplace(n, v);
        if (!inserted) fail("duplicate override for " + name);
      } else if (marker.empty()) {
        auto [it, inserted] = i.seqs.emplace(name, parse_seq_closed(rhs));
        if (!inserted) fail("duplicate seq line for " + name);
      } else {
        fail("unexpected '" + marker + "' in seq line");
      }
    } else if (word == "assign") {
      if (i.assign.count(lhs)) fail("duplicate assignment for " + lhs);
      if (i.domain == Interpretation::Domain::Finite) {
        int e = i.element_index(rhs);
        if (e < 0) fail("unknown element '" + rhs + "'");
        i.assign[lhs] = e;
      } else {
        try {
          std::size_t used = 0;
          long n = std::stol(rhs, &used);
          if (used != rhs.size() || n < 0) throw std::invalid_argument("");
          i.assign[lhs] = n;
        } catch (const std::exception&) {
          fail("expected a natural number, got '" + rhs + "'");
        }
      }
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (!saw_domain) throw InterpError("interpretation needs a domain line");
  for (auto& [name, ov] : pending_overrides) {
    auto it = i.seqs.find(name);
    if (it == i.seqs.end())
      throw InterpError("override for '" + name + "' without a seq line");
    SeqValue s = it->second;
    s.overrides = std::move(ov);
    it->second = seq_make(s.alpha, s.beta, s.gamma, std::move(s.overrides));
  }
  if (i.domain == Interpretation::Domain::Finite) {
    std::size_t k = i.elements.size();
    for (const auto& [pred, table] : i.atoms) {
      std::size_t arity = table.begin()->first.size();
      std::size_t expect = 1;
      for (std::size_t r = 0; r < arity; ++r) expect *= k;
      for (const auto& [tuple, v] : table)
        if (tuple.size() != arity)
          throw InterpError("predicate '" + pred + "' used with mixed arities");
      if (table.size() != expect)
        throw InterpError("predicate '" + pred + "' table is not total (" +
                          std::to_string(table.size()) + " of " + std::to_string(expect) +
                          " tuples)");
    }
    for (const auto& [fn, table] : i.funcs) {
      std::size_t arity = table.begin()->first.size();
      std::size_t expect = 1;
      for (std::size_t r = 0; r < arity; ++r) expect *= k;
      for (const auto& [tuple, v] : table)
        if (tuple.size() != arity)
          throw InterpError("function '" + fn + "' used with mixed arities");
      if (table.size() != expect)
        throw InterpError("function '" + fn + "' table is not total (" +
                          std::to_string(table.size()) + " of " + std::to_string(expect) +
                          " tuples)");
    }
  }
  return i;
}

}  // namespace goedel
