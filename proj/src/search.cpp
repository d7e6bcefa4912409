#include "goedel/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

namespace goedel {

namespace {

constexpr unsigned long long kNoHit = std::numeric_limits<unsigned long long>::max();
constexpr unsigned long long kParallelThreshold = 1ull << 14;
constexpr unsigned long long kChunk = 4096;

unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<unsigned long long>::max() / b) return kNoHit;
  return a * b;
}

std::vector<std::vector<int>> tuples_over(int d, std::size_t arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(arity, 0);
  while (true) {
    out.push_back(cur);
    std::size_t k = arity;
    while (k > 0 && cur[k - 1] == d - 1) cur[--k] = 0;
    if (k == 0) break;
    ++cur[k - 1];
  }
  return out;
}

struct Slot {
  bool is_func;
  std::string name;
  std::vector<std::vector<int>> tuples;
  int radix;
};

struct Layout {
  std::vector<Slot> slots;
  std::vector<int> radix;  // one entry per digit, slot by slot
  std::size_t func_digits = 0;
  unsigned long long total = 1;
};

Layout make_layout(const std::map<std::string, std::size_t>& funcs,
                   const std::map<std::string, std::size_t>& preds, int d,
                   std::size_t nvalues) {
  Layout l;
  for (const auto& [name, ar] : funcs) l.slots.push_back({true, name, tuples_over(d, ar), d});
  for (const auto& [name, ar] : preds)
    l.slots.push_back({false, name, tuples_over(d, ar), (int)nvalues});
  for (const Slot& s : l.slots) {
    for (std::size_t k = 0; k < s.tuples.size(); ++k) l.radix.push_back(s.radix);
    if (s.is_func) l.func_digits += s.tuples.size();
  }
  for (int r : l.radix) l.total = sat_mul(l.total, (unsigned long long)r);
  return l;
}

Interpretation make_skeleton(const Layout& l, int d, const SearchSpace& s) {
  Interpretation i;
  i.domain = Interpretation::Domain::Finite;
  i.elements = finite_elements(d);
  for (const Slot& sl : l.slots)
    for (const auto& t : sl.tuples) {
      if (sl.is_func)
        i.funcs[sl.name][t] = 0;
      else
        i.atoms[sl.name][t] = Rat(0);
    }
  if (s.set != GoedelSetDescriptor{}) i.truth_set = s.set;
  return i;
}

// Pointers into one skeleton's tables, in digit order. Map iteration is
// key-sorted and tuple keys sort lexicographically, matching tuples_over.
struct Cursor {
  std::vector<int*> fptr;
  std::vector<Rat*> pptr;
};

Cursor make_cursor(Interpretation& i) {
  Cursor c;
  for (auto& [name, table] : i.funcs)
    for (auto& [t, v] : table) c.fptr.push_back(&v);
  for (auto& [name, table] : i.atoms)
    for (auto& [t, v] : table) c.pptr.push_back(&v);
  return c;
}

void apply_digits(const std::vector<int>& digits, const Cursor& c,
                  const std::vector<Rat>& values) {
  std::size_t j = 0;
  for (int* p : c.fptr) *p = digits[j++];
  for (Rat* p : c.pptr) *p = values[digits[j++]];
}

void decode(unsigned long long idx, const std::vector<int>& radix, std::vector<int>& out) {
  for (std::size_t j = radix.size(); j-- > 0;) {
    out[j] = (int)(idx % (unsigned long long)radix[j]);
    idx /= (unsigned long long)radix[j];
  }
}

bool bump(std::vector<int>& digits, const std::vector<int>& radix) {
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (++digits[j] < radix[j]) return true;
    digits[j] = 0;
  }
  return false;
}

// One domain permutation: where each digit lands and how element values map.
struct PermCheck {
  std::vector<std::size_t> pos_map;
  std::vector<int> elem_map;
};

std::vector<PermCheck> make_perm_checks(const Layout& l, int d) {
  std::vector<std::map<std::vector<int>, std::size_t>> where(l.slots.size());
  std::size_t base = 0;
  for (std::size_t si = 0; si < l.slots.size(); ++si) {
    for (std::size_t k = 0; k < l.slots[si].tuples.size(); ++k)
      where[si][l.slots[si].tuples[k]] = base + k;
    base += l.slots[si].tuples.size();
  }
  std::vector<PermCheck> out;
  std::vector<int> pi(d);
  std::iota(pi.begin(), pi.end(), 0);
  while (std::next_permutation(pi.begin(), pi.end())) {
    PermCheck pc;
    pc.elem_map = pi;
    pc.pos_map.resize(l.radix.size());
    base = 0;
    for (std::size_t si = 0; si < l.slots.size(); ++si) {
      for (std::size_t k = 0; k < l.slots[si].tuples.size(); ++k) {
        std::vector<int> t = l.slots[si].tuples[k];
        for (int& e : t) e = pi[(std::size_t)e];
        pc.pos_map[base + k] = where[si].at(t);
      }
      base += l.slots[si].tuples.size();
    }
    out.push_back(std::move(pc));
  }
  return out;
}

// True when no permuted image of the digit vector is lexicographically
// smaller; non-canonical vectors are duplicates of an earlier one.
bool canonical(const std::vector<int>& v, const std::vector<PermCheck>& perms,
               std::size_t func_digits, std::vector<int>& scratch) {
  for (const PermCheck& pc : perms) {
    for (std::size_t p = 0; p < v.size(); ++p)
      scratch[pc.pos_map[p]] = p < func_digits ? pc.elem_map[(std::size_t)v[p]] : v[p];
    if (std::lexicographical_compare(scratch.begin(), scratch.end(), v.begin(), v.end()))
      return false;
  }
  return true;
}

enum class Goal { Counter, OneSat, PosSat, Classical };

// Engaged result = hit, carrying the recorded value.
std::optional<Rat> probe(const FormulaPtr& f, const Interpretation& i, Goal g) {
  if (g == Goal::Classical) {
    if (classical_eval(f, i)) return Rat(1);
    return std::nullopt;
  }
  Rat v = eval(f, i);
  switch (g) {
    case Goal::Counter:
      if (v < 1) return v;
      break;
    case Goal::OneSat:
      if (v == 1) return v;
      break;
    case Goal::PosSat:
      if (v > 0) return v;
      break;
    default:
      break;
  }
  return std::nullopt;
}

struct RangeScan {
  const Layout* layout;
  const SearchSpace* space;
  const std::vector<Rat>* values;
  FormulaPtr f;
  Goal goal;
  int d;
  const std::vector<PermCheck>* perms;  // null when symmetry is off
};

// Scans [lo, hi) with a private skeleton; records the least hit into best.
void scan_range(const RangeScan& rs, unsigned long long lo, unsigned long long hi,
                std::atomic<unsigned long long>& best) {
  Interpretation skel = make_skeleton(*rs.layout, rs.d, *rs.space);
  Cursor cur = make_cursor(skel);
  std::vector<int> digits(rs.layout->radix.size());
  std::vector<int> scratch(rs.layout->radix.size());
  decode(lo, rs.layout->radix, digits);
  for (unsigned long long idx = lo; idx < hi; ++idx) {
    if (idx > lo && !bump(digits, rs.layout->radix)) break;
    if (idx >= best.load(std::memory_order_relaxed)) return;
    if (rs.perms && !canonical(digits, *rs.perms, rs.layout->func_digits, scratch)) continue;
    apply_digits(digits, cur, *rs.values);
    if (probe(rs.f, skel, rs.goal)) {
      unsigned long long prev = best.load(std::memory_order_relaxed);
      while (idx < prev && !best.compare_exchange_weak(prev, idx)) {
      }
      return;
    }
  }
}

// Least hit index in [0, n), or kNoHit. Shards across threads when large;
// the minimum over shard hits makes the result independent of scheduling.
unsigned long long scan_phase(const RangeScan& rs, unsigned long long n, int workers) {
  std::atomic<unsigned long long> best{kNoHit};
  if (n == 0) return kNoHit;
  if (workers <= 1 || n < kParallelThreshold) {
    scan_range(rs, 0, n, best);
    return best.load();
  }
  std::atomic<unsigned long long> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs((std::size_t)workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          unsigned long long k = next.fetch_add(1);
          unsigned long long lo = k * kChunk;
          if (lo >= n || lo > best.load(std::memory_order_relaxed)) return;
          scan_range(rs, lo, std::min(n, lo + kChunk), best);
        }
      } catch (...) {
        errs[(std::size_t)w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return best.load();
}

FormulaPtr close_existentially(const FormulaPtr& f) {
  FormulaPtr out = f;
  auto fv = free_vars(f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = f_exists(*it, out);
  return out;
}

struct NatSlot {
  std::string name;
  bool unary;
};

Verdict run_search(const FormulaPtr& input, const SearchSpace& s, Goal goal) {
  if (!input) throw SearchError("search needs a formula");
  if (s.truth_values.empty() ||
      !std::is_sorted(s.truth_values.begin(), s.truth_values.end()) ||
      s.truth_values.front() != 0 || s.truth_values.back() != 1)
    throw SearchError("search truth list must be ascending and contain 0 and 1");
  if (s.min_domain < 1 || s.max_domain < s.min_domain)
    throw SearchError("search domain range is empty");

  FormulaPtr f = goal == Goal::Counter ? close_universally(input) : close_existentially(input);
  auto preds = predicate_arities(f);
  auto funcs = function_arities(f);

  std::vector<Rat> values =
      goal == Goal::Classical ? std::vector<Rat>{Rat(0), Rat(1)} : s.truth_values;
  std::vector<SeqValue> templates = s.templates;
  if (goal == Goal::Classical) {
    GoedelSetDescriptor two = make_finite({Rat(0), Rat(1)});
    std::erase_if(templates, [&](const SeqValue& t) { return !seq_in_set(t, two); });
  }

  bool has_unary = false, beyond_monadic = !funcs.empty();
  for (const auto& [name, ar] : preds) {
    if (ar == 1) has_unary = true;
    if (ar > 1) beyond_monadic = true;
  }

  int workers = s.workers > 0
                    ? s.workers
                    : (int)std::max(1u, std::min(4u, std::thread::hardware_concurrency()));

  std::string bounds = "domains " + std::to_string(s.min_domain) + ".." +
                       std::to_string(s.max_domain) + ", " + std::to_string(values.size()) +
                       " values, " + std::to_string(templates.size()) + " templates, cap " +
                       std::to_string(s.max_interps);

  Verdict out;
  out.bounds = bounds;

  bool propositional = funcs.empty() &&
                       std::all_of(preds.begin(), preds.end(),
                                   [](const auto& p) { return p.second == 0; });
  int lo_d = s.min_domain, hi_d = propositional ? s.min_domain : s.max_domain;

  auto hit_kind = [&] {
    return goal == Goal::Counter ? Verdict::Kind::Countermodel : Verdict::Kind::Witness;
  };

  for (int d = lo_d; d <= hi_d; ++d) {
    Layout layout = make_layout(funcs, preds, d, values.size());
    std::vector<PermCheck> perms;
    if (s.symmetry_reduction && d > 1) perms = make_perm_checks(layout, d);
    unsigned long long avail =
        s.max_interps > out.enumerated ? s.max_interps - out.enumerated : 0;
    unsigned long long scan_n = std::min(layout.total, avail);
    RangeScan rs{&layout, &s, &values, f, goal, d, perms.empty() ? nullptr : &perms};
    unsigned long long hit = scan_phase(rs, scan_n, workers);
    if (hit != kNoHit) {
      out.enumerated += hit + 1;
      out.kind = hit_kind();
      Interpretation i = make_skeleton(layout, d, s);
      Cursor cur = make_cursor(i);
      std::vector<int> digits(layout.radix.size());
      decode(hit, layout.radix, digits);
      apply_digits(digits, cur, values);
      out.value = *probe(f, i, goal);
      out.interp = std::move(i);
      return out;
    }
    out.enumerated += scan_n;
    if (scan_n < layout.total) {
      out.kind = Verdict::Kind::NotFound;
      out.exhausted = false;
      out.bounds += " (cap reached)";
      return out;
    }
  }

  // Infinite-domain pass. Without unary predicates it cannot differ from
  // the finite scan of size min_domain, so it is omitted losslessly.
  if (!templates.empty() && has_unary && !beyond_monadic) {
    std::vector<NatSlot> slots;
    std::vector<int> radix;
    for (const auto& [name, ar] : preds) {
      slots.push_back({name, ar == 1});
      radix.push_back(ar == 1 ? (int)templates.size() : (int)values.size());
    }
    unsigned long long total = 1;
    for (int r : radix) total = sat_mul(total, (unsigned long long)r);
    unsigned long long avail =
        s.max_interps > out.enumerated ? s.max_interps - out.enumerated : 0;
    unsigned long long scan_n = std::min(total, avail);

    Interpretation skel;
    skel.domain = Interpretation::Domain::Nat;
    if (s.set != GoedelSetDescriptor{}) skel.truth_set = s.set;
    std::vector<int> digits(radix.size(), 0);
    auto assign = [&](const std::vector<int>& dg) {
      for (std::size_t j = 0; j < slots.size(); ++j) {
        if (slots[j].unary)
          skel.seqs[slots[j].name] = templates[(std::size_t)dg[j]];
        else
          skel.atoms[slots[j].name][{}] = values[(std::size_t)dg[j]];
      }
    };
    for (unsigned long long idx = 0; idx < scan_n; ++idx) {
      if (idx > 0) bump(digits, radix);
      assign(digits);
      std::optional<Rat> got;
      try {
        got = probe(f, skel, goal);
      } catch (const EvalError& e) {
        out.kind = Verdict::Kind::NotFound;
        out.exhausted = false;
        out.bounds += std::string(" (template phase skipped: ") + e.what() + ")";
        return out;
      }
      ++out.enumerated;
      if (got) {
        out.kind = hit_kind();
        out.value = *got;
        out.interp = skel;
        return out;
      }
    }
    if (scan_n < total) {
      out.kind = Verdict::Kind::NotFound;
      out.exhausted = false;
      out.bounds += " (cap reached)";
      return out;
    }
  } else if (!templates.empty() && beyond_monadic) {
    out.kind = Verdict::Kind::NotFound;
    out.exhausted = false;
    out.bounds += " (template phase skipped: needs a monadic relational formula)";
    return out;
  }

  out.exhausted = true;
  out.kind = goal == Goal::Counter ? Verdict::Kind::Valid : Verdict::Kind::NotFound;
  return out;
}

}  // namespace

SearchSpace space_for(const GoedelSetDescriptor& d, int max_domain) {
  if (d.kind == SetKind::Abstract)
    throw SearchError("abstract descriptors have no concrete membership to search over");
  SearchSpace s;
  s.set = d;
  s.max_domain = max_domain;
  switch (d.kind) {
    case SetKind::Finite:
      s.truth_values = d.values;
      return s;  // no templates: finite-valued families attain their extrema
    case SetKind::VUp:
      for (int k = 1; k <= 7; ++k) s.truth_values.push_back(Rat(k - 1, k));
      s.truth_values.push_back(Rat(1));
      break;
    case SetKind::VDown: {
      s.truth_values.push_back(Rat(0));
      for (int k = 7; k >= 1; --k) s.truth_values.push_back(Rat(1, k));
      break;
    }
    case SetKind::UnitInterval:
      for (int k = 0; k <= 8; ++k) {
        Rat v(k, 8);
        v.canonicalize();  // the two-argument constructor does not reduce
        s.truth_values.push_back(v);
      }
      break;
    case SetKind::Abstract:
      break;
  }
  for (const Rat& v : s.truth_values) {
    SeqValue c = seq_const(v);
    if (seq_in_set(c, d)) s.templates.push_back(c);
  }
  for (long g = 1; g <= 4; ++g) {
    SeqValue t = seq_make(0, 1, g);  // 1/(n+g), descending to 0
    if (seq_in_set(t, d)) s.templates.push_back(t);
  }
  for (const Rat& a : s.truth_values) {
    for (long g = 1; g <= 4; ++g) {
      if (a < Rat(1, (int)g)) continue;  // value at n = 0 would be negative
      SeqValue t = seq_make(a, -1, g);  // a - 1/(n+g), ascending to a
      if (seq_in_set(t, d)) s.templates.push_back(t);
    }
  }
  return s;
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid:
      return "valid";
    case Verdict::Kind::Countermodel:
      return "countermodel";
    case Verdict::Kind::Witness:
      return "witness";
    case Verdict::Kind::NotFound:
      return "not-found";
  }
  return "not-found";
}

Verdict find_countermodel(const FormulaPtr& f, const SearchSpace& s) {
  return run_search(f, s, Goal::Counter);
}

Verdict check_sat(const FormulaPtr& f, SatMode mode, const SearchSpace& s) {
  switch (mode) {
    case SatMode::OneSat:
      return run_search(f, s, Goal::OneSat);
    case SatMode::PosSat:
      return run_search(f, s, Goal::PosSat);
    case SatMode::ClassicalSat:
      return run_search(f, s, Goal::Classical);
  }
  throw SearchError("unknown satisfiability mode");
}

}  // namespace goedel
