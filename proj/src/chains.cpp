#include "goedel/chains.hpp"

#include <algorithm>

namespace goedel {

namespace {

void require_shape(const Chain& c) {
  if (c.blocks.size() < 2)
    throw ChainError("a chain needs at least the falsum and verum blocks");
}

// Ordered set partitions of mid, built one atom at a time: each atom joins an
// existing block or opens a new one at any position, so every partition is
// produced exactly once.
template <typename Emit>
void middle_partitions(const std::vector<std::string>& mid, std::size_t idx,
                       std::vector<std::vector<std::string>>& cur, const Emit& emit) {
  if (idx == mid.size()) {
    emit();
    return;
  }
  const std::string& a = mid[idx];
  // index access: deeper calls insert into cur and would invalidate references
  for (std::size_t bi = 0; bi < cur.size(); ++bi) {
    cur[bi].push_back(a);
    middle_partitions(mid, idx + 1, cur, emit);
    cur[bi].pop_back();
  }
  for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
    cur.insert(cur.begin() + pos, {a});
    middle_partitions(mid, idx + 1, cur, emit);
    cur.erase(cur.begin() + pos);
  }
}

// 1 iff lo's value lies strictly below hi's. The crisp form is 0 everywhere
// else; the plain form uses the "<" sugar, whose value off the constraint is
// hi's value rather than 0.
FormulaPtr strict_below(FormulaPtr lo, FormulaPtr hi, bool crisp) {
  if (crisp) return f_not(f_delta(f_implies(std::move(hi), std::move(lo))));
  return f_less(std::move(hi), std::move(lo));
}

FormulaPtr same_value(FormulaPtr a, FormulaPtr b, bool crisp) {
  FormulaPtr eq = f_iff(std::move(a), std::move(b));
  return crisp ? f_delta(std::move(eq)) : eq;
}

std::vector<std::string> prop_atoms(const FormulaPtr& f) {
  if (!is_propositional(f))
    throw ChainError("chain normal forms need a propositional formula");
  auto names = atom_names(f);
  return {names.begin(), names.end()};
}

}  // namespace

int Chain::block_of(const std::string& atom) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (std::find(blocks[b].begin(), blocks[b].end(), atom) != blocks[b].end())
      return static_cast<int>(b);
  return -1;
}

std::vector<Chain> enumerate_chains(std::vector<std::string> atoms, bool restricted,
                                    std::optional<int> max_levels) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  int n = static_cast<int>(atoms.size());
  if (n > 7)
    throw ChainError("chain enumeration over " + std::to_string(n) +
                     " atoms exceeds the supported bound of 7");
  if (max_levels && *max_levels < 2)
    throw ChainError("a chain has at least 2 levels (the falsum and verum blocks)");

  std::vector<Chain> out;
  long placements = 1;
  for (int i = 0; i < n; ++i) placements *= 3;
  for (long code = 0; code < placements; ++code) {
    long x = code;
    std::vector<std::string> bot, mid, top;
    for (int i = 0; i < n; ++i) {
      switch (x % 3) {
        case 0: bot.push_back(atoms[i]); break;
        case 1: mid.push_back(atoms[i]); break;
        default: top.push_back(atoms[i]); break;
      }
      x /= 3;
    }
    if (restricted && !top.empty()) continue;
    std::vector<std::vector<std::string>> cur;
    middle_partitions(mid, 0, cur, [&] {
      if (max_levels && static_cast<int>(cur.size()) + 2 > *max_levels) return;
      Chain c;
      c.blocks.reserve(cur.size() + 2);
      c.blocks.push_back(bot);
      for (const auto& blk : cur) {
        auto sorted = blk;
        std::sort(sorted.begin(), sorted.end());
        c.blocks.push_back(std::move(sorted));
      }
      c.blocks.push_back(top);
      out.push_back(std::move(c));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string chain_str(const Chain& c) {
  require_shape(c);
  std::string out = "bot";
  int prev = 0;
  auto add = [&](const std::string& name, int block) {
    out += block == prev ? " == " : " < ";
    out += name;
    prev = block;
  };
  for (int b = 0; b <= c.top(); ++b)
    for (const auto& a : c.blocks[b]) add(a, b);
  add("top", c.top());
  return out;
}

int psi_eval(const FormulaPtr& f, const Chain& c) {
  require_shape(c);
  int top = c.top();
  switch (f->kind) {
    case Conn::Bottom:
      return 0;
    case Conn::Top:
      return top;
    case Conn::Atom: {
      if (!f->args.empty())
        throw ChainError("chains are propositional: atom '" + f->name +
                         "' takes arguments");
      int b = c.block_of(f->name);
      if (b < 0) throw ChainError("atom '" + f->name + "' is not in the chain");
      return b;
    }
    case Conn::And:
      return std::min(psi_eval(f->lhs, c), psi_eval(f->rhs, c));
    case Conn::Or:
      return std::max(psi_eval(f->lhs, c), psi_eval(f->rhs, c));
    case Conn::Implies: {
      int a = psi_eval(f->lhs, c);
      int b = psi_eval(f->rhs, c);
      return a <= b ? top : b;
    }
    case Conn::Delta:
      return psi_eval(f->lhs, c) == top ? top : 0;
    case Conn::Forall:
    case Conn::Exists:
      throw ChainError("chains are propositional: quantifier over '" + f->name + "'");
  }
  throw ChainError("unhandled formula kind");
}

FormulaPtr block_formula(const Chain& c, int block) {
  require_shape(c);
  if (block < 0 || block > c.top())
    throw ChainError("block index " + std::to_string(block) + " out of range");
  if (block == 0) return f_bot();
  if (block == c.top()) return f_top();
  return f_atom(c.blocks[block].front());
}

FormulaPtr chain_formula(const Chain& c, bool crisp) {
  require_shape(c);
  struct Item {
    FormulaPtr form;
    int block;
  };
  std::vector<Item> items;
  items.push_back({f_bot(), 0});
  for (int b = 0; b <= c.top(); ++b)
    for (const auto& a : c.blocks[b]) items.push_back({f_atom(a), b});
  items.push_back({f_top(), c.top()});

  FormulaPtr out;
  for (std::size_t k = 0; k + 1 < items.size(); ++k) {
    FormulaPtr part = items[k].block == items[k + 1].block
                          ? same_value(items[k].form, items[k + 1].form, crisp)
                          : strict_below(items[k].form, items[k + 1].form, crisp);
    out = out ? f_and(std::move(out), std::move(part)) : std::move(part);
  }
  return out;
}

Interpretation chain_assignment(const Chain& c) {
  require_shape(c);
  Interpretation i;
  i.domain = Interpretation::Domain::Finite;
  i.elements = finite_elements(1);
  long t = static_cast<long>(c.blocks.size());
  for (long b = 0; b < t; ++b) {
    Rat v(b, t - 1);
    v.canonicalize();
    for (const auto& a : c.blocks[b]) i.atoms[a] = {{{}, v}};
  }
  return i;
}

FormulaPtr cnf_delta_1(const FormulaPtr& f) {
  FormulaPtr out;
  for (const auto& c : enumerate_chains(prop_atoms(f))) {
    FormulaPtr d = f_and(chain_formula(c, true), block_formula(c, psi_eval(f, c)));
    out = out ? f_or(std::move(out), std::move(d)) : std::move(d);
  }
  return out;
}

FormulaPtr cnf_delta_2(const FormulaPtr& f) {
  FormulaPtr out;
  for (const auto& c : enumerate_chains(prop_atoms(f), true)) {
    if (psi_eval(f, c) != c.top()) continue;
    FormulaPtr d = chain_formula(c, false);
    out = out ? f_or(std::move(out), std::move(d)) : std::move(d);
  }
  return out ? out : f_bot();
}

bool decide_valid_prop(const FormulaPtr& f, std::optional<int> levels) {
  for (const auto& c : enumerate_chains(prop_atoms(f), false, levels))
    if (psi_eval(f, c) != c.top()) return false;
  return true;
}

}  // namespace goedel
