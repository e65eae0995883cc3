#include "tvz/linform.hpp"

#include <sstream>

namespace tvz {

void LinForm::enforce() const {
  for (const Rat& x : c_) {
    const Int& d = x.get_den();
    if (d != 1 && d != 2)
      throw DenominatorError("linear form coefficient with denominator " + d.get_str() +
                             " (only 1 and 2 are admissible)");
  }
}

bool operator<(const LinForm& a, const LinForm& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

LinForm& LinForm::operator+=(const LinForm& o) {
  if (c_.size() != o.c_.size()) throw std::invalid_argument("linear form dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  enforce();
  return *this;
}

LinForm& LinForm::operator-=(const LinForm& o) {
  if (c_.size() != o.c_.size()) throw std::invalid_argument("linear form dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  enforce();
  return *this;
}

LinForm& LinForm::operator*=(const Rat& s) {
  for (Rat& x : c_) x *= s;
  enforce();
  return *this;
}

LinForm LinForm::operator-() const {
  LinForm r(*this);
  for (Rat& x : r.c_) x = -x;
  return r;
}

LinForm LinForm::divided_by(const Int& k) const {
  if (k == 0) throw std::invalid_argument("division of linear form by zero");
  LinForm r(*this);
  Rat f(Int(1), k);
  f.canonicalize();
  for (Rat& x : r.c_) x *= f;
  r.enforce();
  return r;
}

Rat LinForm::eval(const std::vector<Rat>& x) const {
  if (x.size() != c_.size()) throw std::invalid_argument("evaluation point dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < c_.size(); ++i) s += c_[i] * x[i];
  return s;
}

Rat LinForm::eval_ray(const std::vector<Int>& r) const {
  if (r.size() != c_.size()) throw std::invalid_argument("ray dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < c_.size(); ++i) s += c_[i] * Rat(r[i]);
  return s;
}

std::vector<Int> LinForm::primitive() const {
  std::vector<Int> v(c_.size());
  Int lcm = 1;
  for (const Rat& x : c_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  for (size_t i = 0; i < c_.size(); ++i) {
    Rat y = c_[i] * Rat(lcm);
    y.canonicalize();
    v[i] = y.get_num();
  }
  Int g = ivec_gcd(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

std::string LinForm::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0)
      os << "-";
    Rat a = abs(c_[i]);
    if (a != 1) os << a.get_str() << "*";
    os << (i < names.size() ? names[i] : ("x" + std::to_string(i)));
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace tvz
