#include "goedel/truthset.hpp"

#include <algorithm>
#include <sstream>

namespace goedel {

namespace {

void set_flag(std::optional<bool>& slot, bool v, const std::string& why) {
  if (slot.has_value()) {
    if (*slot != v) throw TruthSetError("inconsistent flags: " + why);
    return;
  }
  slot = v;
}

void set_card(std::optional<Cardinality>& slot, Cardinality v, const std::string& why) {
  if (slot.has_value()) {
    if (*slot != v) throw TruthSetError("inconsistent flags: " + why);
    return;
  }
  slot = v;
}

std::string card_str(Cardinality c, const std::optional<std::size_t>& n) {
  switch (c) {
    case Cardinality::Finite:
      return n ? "finite(" + std::to_string(*n) + ")" : "finite";
    case Cardinality::CountablyInfinite:
      return "countably-infinite";
    case Cardinality::Uncountable:
      return "uncountable";
  }
  return "";
}

// One pass of the closure rules; returns true when something changed.
// The rules encode what closed subsets of [0,1] containing {0,1} force:
// a non-isolated 0 is accumulated from above (nothing lies below 0), a
// countable set has no uncountable neighbourhoods, the only-accumulation-
// point-is-1 shape pins the rest, and for closed sets 0 sits in the
// perfect kernel exactly when every neighbourhood of 0 is uncountable.
bool close_once(GoedelSetDescriptor& d) {
  GoedelSetDescriptor before = d;
  if (d.cardinality == Cardinality::Finite) {
    set_flag(d.zero_isolated, true, "finite sets have only isolated points");
    set_flag(d.has_acc_point_from_above, false, "finite sets have no accumulation points");
    set_flag(d.only_acc_point_is_one_from_below, false,
             "finite sets have no accumulation points");
    set_flag(d.every_nbhd_of_zero_uncountable, false, "finite sets are countable");
    set_flag(d.zero_in_perfect_kernel, false, "finite sets have empty perfect kernel");
  }
  if (d.cardinality == Cardinality::CountablyInfinite) {
    set_flag(d.every_nbhd_of_zero_uncountable, false, "countable sets are countable near 0");
    set_flag(d.zero_in_perfect_kernel, false, "countable sets have empty perfect kernel");
  }
  if (d.cardinality == Cardinality::Uncountable) {
    set_flag(d.only_acc_point_is_one_from_below, false,
             "uncountable closed sets have uncountably many accumulation points");
    set_flag(d.has_acc_point_from_above, true,
             "the least point of the perfect kernel is accumulated from above");
  }
  if (d.finite_size) {
    set_card(d.cardinality, Cardinality::Finite, "finite_size given for an infinite set");
    if (*d.finite_size < 2) throw TruthSetError("a truth set contains at least 0 and 1");
  }
  if (d.zero_isolated == true) {
    set_flag(d.every_nbhd_of_zero_uncountable, false, "isolated 0 has a finite neighbourhood");
    set_flag(d.zero_in_perfect_kernel, false, "isolated points lie outside the perfect kernel");
  }
  if (d.zero_isolated == false)
    set_flag(d.has_acc_point_from_above, true, "a non-isolated 0 is accumulated from above");
  if (d.has_acc_point_from_above == false)
    set_flag(d.zero_isolated, true, "without accumulation from above, 0 is isolated");
  if (d.only_acc_point_is_one_from_below == true) {
    set_card(d.cardinality, Cardinality::CountablyInfinite,
             "a single accumulation point means countably infinite");
    set_flag(d.zero_isolated, true, "0 is not the accumulation point 1");
    set_flag(d.has_acc_point_from_above, false, "1 cannot be accumulated from above");
  }
  if (d.every_nbhd_of_zero_uncountable == true) {
    set_card(d.cardinality, Cardinality::Uncountable, "uncountable neighbourhoods of 0");
    set_flag(d.zero_isolated, false, "uncountable neighbourhoods of 0");
    set_flag(d.zero_in_perfect_kernel, true,
             "0 with uncountable neighbourhoods lies in the perfect kernel");
  }
  if (d.zero_in_perfect_kernel == true) {
    set_card(d.cardinality, Cardinality::Uncountable, "nonempty perfect kernel");
    set_flag(d.zero_isolated, false, "perfect kernel points are not isolated");
    set_flag(d.every_nbhd_of_zero_uncountable, true,
             "perfect kernel points have uncountable neighbourhoods");
  }
  if (d.cardinality == Cardinality::Uncountable) {
    if (d.every_nbhd_of_zero_uncountable == false)
      set_flag(d.zero_in_perfect_kernel, false,
               "0 outside the perfect kernel has a countable neighbourhood");
    if (d.zero_in_perfect_kernel == false)
      set_flag(d.every_nbhd_of_zero_uncountable, false,
               "0 outside the perfect kernel has a countable neighbourhood");
  }
  return !(d == before);
}

void check_finite_values(const std::vector<Rat>& values) {
  if (values.size() < 2) throw TruthSetError("finite set needs at least {0, 1}");
  if (values.front() != 0 || values.back() != 1)
    throw TruthSetError("finite set must contain 0 and 1");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] < values[i + 1])) throw TruthSetError("finite set values must be strictly sorted");
  for (const Rat& v : values)
    if (!in_unit(v)) throw TruthSetError("finite set values must lie in [0,1]");
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw TruthSetError("expected true/false for " + key + ", got '" + s + "'");
}

}  // namespace

GoedelSetDescriptor make_finite(std::vector<Rat> values, bool with_delta) {
  std::sort(values.begin(), values.end());
  check_finite_values(values);
  GoedelSetDescriptor d;
  d.kind = SetKind::Finite;
  d.values = std::move(values);
  d.with_delta = with_delta;
  return d;
}

GoedelSetDescriptor make_vup(bool with_delta) {
  GoedelSetDescriptor d;
  d.kind = SetKind::VUp;
  d.with_delta = with_delta;
  return d;
}

GoedelSetDescriptor make_vdown(bool with_delta) {
  GoedelSetDescriptor d;
  d.kind = SetKind::VDown;
  d.with_delta = with_delta;
  return d;
}

GoedelSetDescriptor make_unit_interval(bool with_delta) {
  GoedelSetDescriptor d;
  d.kind = SetKind::UnitInterval;
  d.with_delta = with_delta;
  return d;
}

GoedelSetDescriptor finite_gm(int m, bool with_delta) {
  if (m < 2) throw TruthSetError("G_m needs m >= 2");
  std::vector<Rat> vals;
  vals.emplace_back(1);
  for (int k = 1; k <= m - 1; ++k) vals.push_back(Rat(1) - Rat(1, k));
  return make_finite(std::move(vals), with_delta);
}

std::optional<GoedelSetDescriptor> builtin_set(const std::string& name) {
  if (name.size() == 2 && name[0] == 'G' && name[1] >= '2' && name[1] <= '9')
    return finite_gm(name[1] - '0');
  if (name == "Gup") return make_vup();
  if (name == "Gdown") return make_vdown();
  if (name == "G01") return make_unit_interval();
  return std::nullopt;
}

std::vector<std::string> builtin_set_names() {
  std::vector<std::string> out;
  for (char c = '2'; c <= '9'; ++c) out.push_back(std::string("G") + c);
  out.push_back("Gup");
  out.push_back("Gdown");
  out.push_back("G01");
  return out;
}

GoedelSetDescriptor derive_flags(const GoedelSetDescriptor& d) {
  GoedelSetDescriptor out = d;
  switch (d.kind) {
    case SetKind::Finite:
      check_finite_values(out.values);
      set_card(out.cardinality, Cardinality::Finite, "finite kind");
      if (out.finite_size && *out.finite_size != out.values.size())
        throw TruthSetError("finite_size disagrees with values");
      out.finite_size = out.values.size();
      break;
    case SetKind::VUp:
      set_card(out.cardinality, Cardinality::CountablyInfinite, "ascending-chain kind");
      set_flag(out.only_acc_point_is_one_from_below, true, "ascending-chain kind");
      break;
    case SetKind::VDown:
      set_card(out.cardinality, Cardinality::CountablyInfinite, "descending-chain kind");
      set_flag(out.zero_isolated, false, "descending-chain kind accumulates at 0");
      set_flag(out.only_acc_point_is_one_from_below, false,
               "descending-chain kind accumulates at 0, not 1");
      break;
    case SetKind::UnitInterval:
      set_card(out.cardinality, Cardinality::Uncountable, "interval kind");
      set_flag(out.zero_in_perfect_kernel, true, "the interval is its own perfect kernel");
      break;
    case SetKind::Abstract:
      if (!out.values.empty()) throw TruthSetError("abstract descriptors carry no value list");
      break;
  }
  while (close_once(out)) {
  }
  std::vector<std::string> missing;
  if (!out.cardinality) missing.push_back("cardinality");
  if (!out.zero_isolated) missing.push_back("zero_isolated");
  if (!out.has_acc_point_from_above) missing.push_back("has_acc_point_from_above");
  if (!out.only_acc_point_is_one_from_below) missing.push_back("only_acc_point_is_one_from_below");
  if (!out.every_nbhd_of_zero_uncountable) missing.push_back("every_nbhd_of_zero_uncountable");
  if (!out.zero_in_perfect_kernel) missing.push_back("zero_in_perfect_kernel");
  if (!missing.empty()) {
    std::string msg = "descriptor leaves flags undetermined:";
    for (const auto& m : missing) msg += " " + m;
    throw TruthSetError(msg);
  }
  return out;
}

std::string to_string(YesNoOpen v) {
  switch (v) {
    case YesNoOpen::Yes: return "yes";
    case YesNoOpen::No: return "no";
    case YesNoOpen::Open: return "open";
  }
  return "";
}

Classification classify(const GoedelSetDescriptor& d) {
  GoedelSetDescriptor f = derive_flags(d);
  bool fin = *f.cardinality == Cardinality::Finite;
  bool countable = *f.cardinality == Cardinality::CountablyInfinite;
  bool unc = *f.cardinality == Cardinality::Uncountable;
  bool vup_shape = countable && *f.zero_isolated && *f.only_acc_point_is_one_from_below &&
                   !*f.has_acc_point_from_above;

  Classification c;
  c.logical_prenex = fin || vup_shape;
  c.logical_prenex_with_delta = fin;
  c.pos_valid_prenex = *f.zero_isolated;
  c.pos_valid_prenex_with_delta = fin;
  if (fin || vup_shape || (unc && (*f.zero_isolated || *f.zero_in_perfect_kernel)))
    c.validity_equiv_prenex = YesNoOpen::Yes;
  else if (unc)
    c.validity_equiv_prenex = YesNoOpen::No;
  else
    c.validity_equiv_prenex = YesNoOpen::Open;
  c.logic_recursively_enumerable =
      fin || (unc && (*f.zero_isolated || *f.every_nbhd_of_zero_uncountable));
  c.prenex_fragment_recursively_enumerable = fin || unc;
  c.shift_s1 = true;
  c.shift_s2 = fin || vup_shape;
  c.shift_s3 = fin || vup_shape;
  c.shift_delta_forall = fin;
  c.shift_delta_exists = fin;
  c.validity_equiv_delta_underdetermined = unc;
  return c;
}

std::string classification_to_text(const Classification& c) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  out << "logical_prenex = " << yn(c.logical_prenex) << "\n";
  out << "logical_prenex_with_delta = " << yn(c.logical_prenex_with_delta) << "\n";
  out << "pos_valid_prenex = " << yn(c.pos_valid_prenex) << "\n";
  out << "pos_valid_prenex_with_delta = " << yn(c.pos_valid_prenex_with_delta) << "\n";
  out << "validity_equiv_prenex = " << to_string(c.validity_equiv_prenex) << "\n";
  out << "logic_recursively_enumerable = " << yn(c.logic_recursively_enumerable) << "\n";
  out << "prenex_fragment_recursively_enumerable = "
      << yn(c.prenex_fragment_recursively_enumerable) << "\n";
  out << "shift_s1 = " << yn(c.shift_s1) << "\n";
  out << "shift_s2 = " << yn(c.shift_s2) << "\n";
  out << "shift_s3 = " << yn(c.shift_s3) << "\n";
  out << "shift_delta_forall = " << yn(c.shift_delta_forall) << "\n";
  out << "shift_delta_exists = " << yn(c.shift_delta_exists) << "\n";
  out << "validity_equiv_delta_underdetermined = "
      << yn(c.validity_equiv_delta_underdetermined) << "\n";
  return out.str();
}

bool set_contains(const GoedelSetDescriptor& d, const Rat& v) {
  switch (d.kind) {
    case SetKind::Finite:
      return std::binary_search(d.values.begin(), d.values.end(), v);
    case SetKind::VUp: {
      if (v == 1) return true;
      if (v < 0 || v >= 1) return false;
      Rat w = Rat(1) - v;  // needs to be 1/k
      return w.get_num() == 1;
    }
    case SetKind::VDown: {
      if (v == 0) return true;
      if (v <= 0 || v > 1) return false;
      return v.get_num() == 1;
    }
    case SetKind::UnitInterval:
      return in_unit(v);
    case SetKind::Abstract:
      throw TruthSetError("membership is undecidable for an abstract descriptor");
  }
  return false;
}

std::string descriptor_to_text(const GoedelSetDescriptor& d) {
  std::ostringstream out;
  switch (d.kind) {
    case SetKind::Finite: {
      out << "kind = finite\n";
      out << "values =";
      for (const Rat& v : d.values) out << " " << rat_str(v);
      out << "\n";
      break;
    }
    case SetKind::VUp:
      out << "kind = vup\n";
      break;
    case SetKind::VDown:
      out << "kind = vdown\n";
      break;
    case SetKind::UnitInterval:
      out << "kind = unit-interval\n";
      break;
    case SetKind::Abstract:
      out << "kind = abstract\n";
      if (d.cardinality)
        out << "flags.cardinality = " << card_str(*d.cardinality, d.finite_size) << "\n";
      if (d.zero_isolated)
        out << "flags.zero_isolated = " << (*d.zero_isolated ? "true" : "false") << "\n";
      if (d.has_acc_point_from_above)
        out << "flags.has_acc_point_from_above = "
            << (*d.has_acc_point_from_above ? "true" : "false") << "\n";
      if (d.only_acc_point_is_one_from_below)
        out << "flags.only_acc_point_is_one_from_below = "
            << (*d.only_acc_point_is_one_from_below ? "true" : "false") << "\n";
      if (d.every_nbhd_of_zero_uncountable)
        out << "flags.every_nbhd_of_zero_uncountable = "
            << (*d.every_nbhd_of_zero_uncountable ? "true" : "false") << "\n";
      if (d.zero_in_perfect_kernel)
        out << "flags.zero_in_perfect_kernel = "
            << (*d.zero_in_perfect_kernel ? "true" : "false") << "\n";
      break;
  }
  out << "flags.with_delta = " << (d.with_delta ? "true" : "false") << "\n";
  return out.str();
}

GoedelSetDescriptor descriptor_from_text(const std::string& text) {
  GoedelSetDescriptor d;
  bool saw_kind = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw TruthSetError("expected 'key = value': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "kind") {
      saw_kind = true;
      if (val == "finite") d.kind = SetKind::Finite;
      else if (val == "vup") d.kind = SetKind::VUp;
      else if (val == "vdown") d.kind = SetKind::VDown;
      else if (val == "unit-interval") d.kind = SetKind::UnitInterval;
      else if (val == "abstract") d.kind = SetKind::Abstract;
      else throw TruthSetError("unknown kind '" + val + "'");
    } else if (key == "values") {
      std::istringstream vs(val);
      std::string tok;
      d.values.clear();
      while (vs >> tok) {
        auto r = parse_rat(tok);
        if (!r) throw TruthSetError("bad rational '" + tok + "' in values");
        d.values.push_back(*r);
      }
    } else if (key == "flags.with_delta") {
      d.with_delta = parse_bool(val, key);
    } else if (key == "flags.cardinality") {
      if (val == "countably-infinite") d.cardinality = Cardinality::CountablyInfinite;
      else if (val == "uncountable") d.cardinality = Cardinality::Uncountable;
      else if (val == "finite") d.cardinality = Cardinality::Finite;
      else if (val.rfind("finite(", 0) == 0 && val.back() == ')') {
        d.cardinality = Cardinality::Finite;
        d.finite_size = std::stoul(val.substr(7, val.size() - 8));
      } else
        throw TruthSetError("unknown cardinality '" + val + "'");
    } else if (key == "flags.zero_isolated") {
      d.zero_isolated = parse_bool(val, key);
    } else if (key == "flags.has_acc_point_from_above") {
      d.has_acc_point_from_above = parse_bool(val, key);
    } else if (key == "flags.only_acc_point_is_one_from_below") {
      d.only_acc_point_is_one_from_below = parse_bool(val, key);
    } else if (key == "flags.every_nbhd_of_zero_uncountable") {
      d.every_nbhd_of_zero_uncountable = parse_bool(val, key);
    } else if (key == "flags.zero_in_perfect_kernel") {
      d.zero_in_perfect_kernel = parse_bool(val, key);
    } else {
      throw TruthSetError("unknown key '" + key + "'");
    }
  }
  if (!saw_kind) throw TruthSetError("descriptor needs a kind");
  if (d.kind == SetKind::Finite) {
    std::sort(d.values.begin(), d.values.end());
    check_finite_values(d.values);
  } else if (!d.values.empty()) {
    throw TruthSetError("values are only meaningful for kind = finite");
  }
  return d;
}

}  // namespace goedel
