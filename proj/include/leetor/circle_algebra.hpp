#ifndef LEETOR_CIRCLE_ALGEBRA_HPP
#define LEETOR_CIRCLE_ALGEBRA_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <string>

#include "leetor/diagram.hpp"
#include "leetor/errors.hpp"
#include "leetor/monomial.hpp"

namespace leetor {

/// Lexicographic order on circle subsets read as sorted id lists:
/// {} < {0} < {0,1} < {0,1,2} < {0,2} < {1} < ...
inline bool circle_subset_less(std::uint32_t a, std::uint32_t b) {
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

/// A basis monomial t^p * prod_{c in circles} X_c of R_v (square-free in the X's).
struct CircleMonomial {
  Vertex vertex;
  std::uint32_t circles = 0;
  int t_power = 0;

  friend bool operator<(const CircleMonomial& a, const CircleMonomial& b) {
    if (a.vertex.mask != b.vertex.mask) return a.vertex.mask < b.vertex.mask;
    if (a.circles != b.circles) return circle_subset_less(a.circles, b.circles);
    return a.t_power < b.t_power;
  }
  friend bool operator==(const CircleMonomial& a, const CircleMonomial& b) {
    return a.vertex.mask == b.vertex.mask && a.circles == b.circles && a.t_power == b.t_power;
  }
};

/// A Q-linear combination of circle monomials, possibly spread over several
/// cube vertices (a chain of the cube complex). Zero coefficients are never stored.
class LeeElement {
 public:
  using Terms = std::map<CircleMonomial, Rational>;

  LeeElement() = default;

  static LeeElement monomial(Vertex v, std::uint32_t circles, int t_power = 0, const Rational& c = 1) {
    LeeElement a;
    a.add(CircleMonomial{v, circles, t_power}, c);
    return a;
  }
  static LeeElement one(Vertex v) { return monomial(v, 0); }

  void add(const CircleMonomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LeeElement& operator+=(const LeeElement& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  LeeElement& operator-=(const LeeElement& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  LeeElement& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend LeeElement operator+(LeeElement a, const LeeElement& b) { return a += b; }
  friend LeeElement operator-(LeeElement a, const LeeElement& b) { return a -= b; }
  friend LeeElement operator*(const Rational& s, LeeElement a) { return a *= s; }
  friend bool operator==(const LeeElement& a, const LeeElement& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// The class of X_edge in R_v: the variable of the circle through that edge.
inline LeeElement inject_edge_variable(const Resolution& r, int edge) {
  if (edge < 1 || edge >= static_cast<int>(r.circle_of_edge.size()))
    throw Error(ErrorKind::MalformedPd, "edge " + std::to_string(edge) + " out of range");
  return LeeElement::monomial(r.vertex, 1u << r.circle(edge));
}

/// Product of two monomials at the same vertex in R' (X_c^2 = t).
inline CircleMonomial multiply(const CircleMonomial& a, const CircleMonomial& b) {
  if (a.vertex.mask != b.vertex.mask)
    throw Error(ErrorKind::VertexMismatch, "monomials live at different vertices");
  return CircleMonomial{a.vertex, a.circles ^ b.circles,
                        a.t_power + b.t_power + std::popcount(a.circles & b.circles)};
}

inline LeeElement multiply(const LeeElement& a, const LeeElement& b) {
  LeeElement out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add(multiply(ma, mb), ca * cb);
  return out;
}

inline LeeElement set_t_zero(const LeeElement& a) {
  LeeElement out;
  for (const auto& [m, c] : a.terms())
    if (m.t_power == 0) out.add(m, c);
  return out;
}

/// Quantum degree of a monomial relative to 1 in R_v: -2 per circle, -4 per t.
inline int relative_q_degree(const CircleMonomial& m) {
  return -2 * std::popcount(m.circles) - 4 * m.t_power;
}

/// Deterministic rendering, e.g. `3*t^2*X0X2@v=011`.
inline std::string render(const LeeElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rational mag = abs(c);
    std::string factors;
    auto push = [&](const std::string& f) {
      if (!factors.empty()) factors += '*';
      factors += f;
    };
    const bool has_vars = m.t_power > 0 || m.circles != 0;
    if (mag != 1 || !has_vars) push(mag.get_str());
    if (m.t_power == 1) push("t");
    else if (m.t_power > 1) push("t^" + std::to_string(m.t_power));
    if (m.circles != 0) {
      std::string xs;
      for (std::uint32_t s = m.circles; s != 0; s &= s - 1) xs += "X" + std::to_string(std::countr_zero(s));
      push(xs);
    }
    const bool negative = sgn(c) < 0;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += factors + "@v=" + m.vertex.to_string();
    first = false;
  }
  return out;
}

}  // namespace leetor

#endif  // LEETOR_CIRCLE_ALGEBRA_HPP
