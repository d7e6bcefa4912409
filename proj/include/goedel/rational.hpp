#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace goedel {

// All truth values are exact rationals. GMP's mpq_class keeps them
// canonical (gcd-reduced, positive denominator), so == and < are exact.
using Rat = mpq_class;

// Accepts "p" or "p/q" with optional leading '-', nothing else.
// Decimal notation is rejected by returning nullopt.
std::optional<Rat> parse_rat(const std::string& text);

// Prints "p" or "p/q" in canonical form.
std::string rat_str(const Rat& v);

bool in_unit(const Rat& v);

// Smallest integer >= v. Values in this codebase stay desk-scale,
// so a long is plenty; throws std::overflow_error otherwise.
long ceil_long(const Rat& v);

bool is_integer(const Rat& v);

}  // namespace goedel
