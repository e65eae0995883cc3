#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace tvz {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline int rsign(const Rat& q) { return sgn(q); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }
inline bool is_half_integer(const Rat& q) { return q.get_den() == 2; }

// Serialized as "p/q" with the denominator always present ("3/1", "-1/2").
std::string rat_str(const Rat& q);
std::optional<Rat> rat_parse(const std::string& s);

Int ivec_gcd(const std::vector<Int>& v);

}  // namespace tvz
