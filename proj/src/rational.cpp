#include "goedel/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace goedel {

std::optional<Rat> parse_rat(const std::string& text) {
  std::size_t i = 0;
  std::size_t n = text.size();
  auto digits = [&](std::size_t& pos) {
    std::size_t start = pos;
    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos > start;
  };

  if (i < n && text[i] == '-') ++i;
  if (!digits(i)) return std::nullopt;
  if (i < n && text[i] == '/') {
    ++i;
    std::size_t den_start = i;
    if (!digits(i)) return std::nullopt;
    if (text.compare(den_start, i - den_start, "0") == 0) return std::nullopt;
  }
  if (i != n) return std::nullopt;

  Rat v(text, 10);
  v.canonicalize();
  return v;
}

std::string rat_str(const Rat& v) { return v.get_str(); }

bool in_unit(const Rat& v) { return v >= 0 && v <= 1; }

long ceil_long(const Rat& v) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational out of long range");
  return q.get_si();
}

bool is_integer(const Rat& v) { return v.get_den() == 1; }

}  // namespace goedel
