#include "tvz/rational.hpp"

namespace tvz {

std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
  Rat q;
  try {
    q = Rat(num + "/" + den);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

Int ivec_gcd(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) {
    Int a = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

}  // namespace tvz
