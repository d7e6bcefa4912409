#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goedel/rational.hpp"

namespace goedel {

struct TruthSetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Concrete shapes plus Abstract, which carries only the topology flags.
enum class SetKind { Finite, VUp, VDown, UnitInterval, Abstract };

enum class Cardinality { Finite, CountablyInfinite, Uncountable };

// A truth-value set V subseteq [0,1] with 0,1 in V, described up to the
// order/topology features the classifier consumes. Concrete kinds derive
// their flags; Abstract descriptors assert them.
struct GoedelSetDescriptor {
  SetKind kind = SetKind::Abstract;
  std::vector<Rat> values;  // Finite only: strictly sorted, 0 and 1 present
  bool with_delta = false;

  std::optional<Cardinality> cardinality;
  std::optional<std::size_t> finite_size;
  std::optional<bool> zero_isolated;
  std::optional<bool> has_acc_point_from_above;
  std::optional<bool> only_acc_point_is_one_from_below;
  std::optional<bool> every_nbhd_of_zero_uncountable;
  std::optional<bool> zero_in_perfect_kernel;

  bool operator==(const GoedelSetDescriptor& o) const = default;
};

GoedelSetDescriptor make_finite(std::vector<Rat> values, bool with_delta = false);
GoedelSetDescriptor make_vup(bool with_delta = false);
GoedelSetDescriptor make_vdown(bool with_delta = false);
GoedelSetDescriptor make_unit_interval(bool with_delta = false);
// V_m = {1} union {1 - 1/k : 1 <= k <= m-1}, so G2 = {0,1}, G3 = {0,1/2,1}, ...
GoedelSetDescriptor finite_gm(int m, bool with_delta = false);
// Built-in names: G2..G9, Gup, Gdown, G01.
std::optional<GoedelSetDescriptor> builtin_set(const std::string& name);
std::vector<std::string> builtin_set_names();

// Fills in every flag a concrete kind determines, or completes an Abstract
// descriptor from what its asserted flags force (0 not isolated forces an
// accumulation point from above, countable kills the uncountability flags,
// and so on). Throws TruthSetError on contradictions or on Abstract
// descriptors whose flags stay undetermined, listing the missing ones.
GoedelSetDescriptor derive_flags(const GoedelSetDescriptor& d);

enum class YesNoOpen { Yes, No, Open };
std::string to_string(YesNoOpen v);

struct Classification {
  bool logical_prenex = false;
  bool logical_prenex_with_delta = false;
  bool pos_valid_prenex = false;
  bool pos_valid_prenex_with_delta = false;
  YesNoOpen validity_equiv_prenex = YesNoOpen::Open;
  bool logic_recursively_enumerable = false;
  bool prenex_fragment_recursively_enumerable = false;
  bool shift_s1 = false;
  bool shift_s2 = false;
  bool shift_s3 = false;
  bool shift_delta_forall = false;
  bool shift_delta_exists = false;
  // For uncountable sets the with-Delta behaviour mirrors the Delta-free
  // column but is not independently pinned down; consumers see this flag.
  bool validity_equiv_delta_underdetermined = false;

  bool operator==(const Classification& o) const = default;
};

Classification classify(const GoedelSetDescriptor& d);

// One "key = value" line per field, yes/no/open values, fixed field order.
std::string classification_to_text(const Classification& c);

// Exact membership for concrete kinds; throws on Abstract.
bool set_contains(const GoedelSetDescriptor& d, const Rat& v);

// Flat key/value record: "kind = finite", "values = 0 1/2 1",
// "flags.with_delta = true", "flags.cardinality = uncountable", ...
// '#' starts a comment.
std::string descriptor_to_text(const GoedelSetDescriptor& d);
GoedelSetDescriptor descriptor_from_text(const std::string& text);

}  // namespace goedel
