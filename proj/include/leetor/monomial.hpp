#ifndef LEETOR_MONOMIAL_HPP
#define LEETOR_MONOMIAL_HPP

#include <gmpxx.h>

#include <string>

namespace leetor {

using Rational = mpq_class;

/// A single term c * t^exp of Q[t]. Every matrix entry in a homogeneous
/// differential over Q[t] has this shape.
struct Mono {
  Rational coeff;
  int exp = 0;

  bool is_zero() const { return sgn(coeff) == 0; }

  friend Mono operator*(const Mono& a, const Mono& b) {
    return Mono{a.coeff * b.coeff, a.exp + b.exp};
  }
  friend bool operator==(const Mono& a, const Mono& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.exp == b.exp && a.coeff == b.coeff;
  }
};

inline std::string render_rational(const Rational& q) { return q.get_str(); }

inline std::string render(const Mono& m) {
  std::string out = render_rational(m.coeff);
  if (m.exp == 1) out += "*t";
  else if (m.exp > 1) out += "*t^" + std::to_string(m.exp);
  return out;
}

}  // namespace leetor

#endif  // LEETOR_MONOMIAL_HPP
