#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tvz/rational.hpp"

namespace tvz {

// Thrown when an operation would produce a coefficient whose denominator is
// not 1 or 2. Edge lengths, function values and break positions all live in
// the half-integral lattice; anything finer indicates a modelling bug or a
// genuine discrepancy, and callers are expected to surface it.
struct DenominatorError : std::domain_error {
  explicit DenominatorError(const std::string& what) : std::domain_error(what) {}
};

// A rational linear form on the base-cone coordinates. Coefficient
// denominators are restricted to {1, 2}.
class LinForm {
 public:
  LinForm() = default;
  explicit LinForm(int dim) : c_(dim, Rat(0)) {}
  LinForm(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { enforce(); }

  static LinForm coordinate(int dim, int k) {
    LinForm f(dim);
    f.c_[k] = 1;
    return f;
  }

  int dim() const { return static_cast<int>(c_.size()); }
  const Rat& coeff(int k) const { return c_[k]; }
  const std::vector<Rat>& coeffs() const { return c_; }

  void set_coeff(int k, const Rat& v) {
    c_[k] = v;
    enforce();
  }

  bool is_zero() const {
    for (const Rat& x : c_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const LinForm& a, const LinForm& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LinForm& a, const LinForm& b) { return !(a == b); }
  // Lexicographic; used only for canonical container ordering.
  friend bool operator<(const LinForm& a, const LinForm& b);

  LinForm& operator+=(const LinForm& o);
  LinForm& operator-=(const LinForm& o);
  LinForm& operator*=(const Rat& s);
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
  friend LinForm operator*(LinForm a, const Rat& s) { return a *= s; }
  friend LinForm operator*(const Rat& s, LinForm a) { return a *= s; }
  LinForm operator-() const;

  // Exact division by a nonzero integer; throws DenominatorError if the
  // result leaves the half-integral lattice.
  LinForm divided_by(const Int& k) const;

  Rat eval(const std::vector<Rat>& x) const;
  Rat eval_ray(const std::vector<Int>& r) const;

  bool has_integer_coeffs() const {
    for (const Rat& x : c_)
      if (!is_integer(x)) return false;
    return true;
  }

  // Primitive integer vector proportional to this form (denominators cleared,
  // coefficients divided by their gcd). Zero form maps to the zero vector.
  std::vector<Int> primitive() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Rat> c_;
  void enforce() const;
};

}  // namespace tvz
