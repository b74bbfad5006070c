#ifndef LEETOR_SNF_HPP
#define LEETOR_SNF_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leetor/errors.hpp"
#include "leetor/monomial.hpp"

namespace leetor {

/// Sparse matrix over Q[t] whose entries are single monomials c * t^k.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(int rows, int cols) : rows_(static_cast<std::size_t>(rows)), cols_(cols) {}

  /// Dense construction for small literals; exponent < 0 marks a zero entry.
  static MonomialMatrix from_dense(const std::vector<std::vector<std::pair<long, int>>>& dense) {
    const int r = static_cast<int>(dense.size());
    const int c = r == 0 ? 0 : static_cast<int>(dense.front().size());
    MonomialMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        const auto& [coeff, exp] = dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (coeff != 0 && exp >= 0) m.set(i, j, Mono{Rational(coeff), exp});
      }
    return m;
  }

  static MonomialMatrix identity(int n) {
    MonomialMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Mono{1, 0});
    return m;
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  void set(int r, int c, Mono value) {
    auto& row = rows_.at(static_cast<std::size_t>(r));
    if (value.is_zero()) row.erase(c);
    else row[c] = std::move(value);
  }
  std::optional<Mono> get(int r, int c) const {
    const auto& row = rows_.at(static_cast<std::size_t>(r));
    auto it = row.find(c);
    if (it == row.end()) return std::nullopt;
    return it->second;
  }
  const std::map<int, Mono>& row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }

  /// Adds value into (r, c); the sum must remain a monomial.
  void accumulate(int r, int c, const Mono& value) {
    if (value.is_zero()) return;
    auto& row = rows_.at(static_cast<std::size_t>(r));
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, value);
      return;
    }
    if (it->second.exp != value.exp)
      throw Error(ErrorKind::NonMonomialEntry, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                                   ") would mix t^" + std::to_string(it->second.exp) +
                                                   " and t^" + std::to_string(value.exp));
    it->second.coeff += value.coeff;
    if (it->second.is_zero()) row.erase(it);
  }

  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
    MonomialMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (const auto& [k, x] : a.row(i))
        for (const auto& [j, y] : b.row(k)) out.accumulate(i, j, x * y);
    return out;
  }
  friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i) {
      if (a.row(i).size() != b.row(i).size()) return false;
      for (const auto& [j, x] : a.row(i)) {
        auto y = b.get(i, j);
        if (!y || !(x == *y)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::map<int, Mono>> rows_;
  int cols_ = 0;
};

enum class PivotStrategy {
  Markowitz,   // among minimal t-degree entries, the one with least fill-in
  RowMajor,    // first minimal t-degree entry in row-major order
};

/// Smith normal form row * M * col = D over Q[t]. D is diagonal with entries
/// t^k (unit coefficients are folded into the row transform), k ascending.
struct GradedSnf {
  std::vector<int> invariant_exponents;
  MonomialMatrix row_transform;
  MonomialMatrix col_transform;
  MonomialMatrix row_inverse;
  MonomialMatrix col_inverse;
  MonomialMatrix diagonal;

  int rank() const { return static_cast<int>(invariant_exponents.size()); }
};

namespace detail {

/// Column-major sparse storage, used for transforms updated by column ops.
struct ColumnStore {
  std::vector<std::map<int, Mono>> cols;
  explicit ColumnStore(int n) : cols(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)][i] = Mono{1, 0};
  }
  // col[dst] += factor * col[src]
  void axpy(int dst, int src, const Mono& factor) {
    for (const auto& [r, v] : cols[static_cast<std::size_t>(src)]) {
      const Mono add = factor * v;
      auto& col = cols[static_cast<std::size_t>(dst)];
      auto it = col.find(r);
      if (it == col.end()) {
        col.emplace(r, add);
        continue;
      }
      if (it->second.exp != add.exp) throw Error(ErrorKind::NonMonomialEntry, "transform entry not monomial");
      it->second.coeff += add.coeff;
      if (it->second.is_zero()) col.erase(it);
    }
  }
};

// row[dst] += factor * row[src] on a row-major matrix.
inline void row_axpy(MonomialMatrix& m, int dst, int src, const Mono& factor) {
  const auto src_row = m.row(src);
  for (const auto& [c, v] : src_row) m.accumulate(dst, c, factor * v);
}

inline Mono quotient(const Mono& num, const Mono& den) { return Mono{num.coeff / den.coeff, num.exp - den.exp}; }

}  // namespace detail

inline GradedSnf graded_snf(const MonomialMatrix& input, PivotStrategy strategy = PivotStrategy::Markowitz) {
  const int nr = input.rows();
  const int nc = input.cols();
  MonomialMatrix a = input;
  // column index: col -> rows with an entry in the active part
  std::vector<std::set<int>> col_rows(static_cast<std::size_t>(nc));
  for (int r = 0; r < nr; ++r)
    for (const auto& [c, v] : a.row(r)) col_rows[static_cast<std::size_t>(c)].insert(r);

  MonomialMatrix p = MonomialMatrix::identity(nr);   // row ops accumulate here (row-major)
  detail::ColumnStore p_inv(nr);                      // inverse: column ops
  detail::ColumnStore q(nc);                          // column ops on Q
  MonomialMatrix q_inv = MonomialMatrix::identity(nc);
  std::vector<char> row_done(static_cast<std::size_t>(nr), 0);
  std::vector<char> col_done(static_cast<std::size_t>(nc), 0);

  struct Pivot {
    int row, col;
    Mono value;
  };
  std::vector<Pivot> pivots;

  auto set_entry = [&](int r, int c, const Mono& value) {
    a.set(r, c, value);
    if (value.is_zero()) col_rows[static_cast<std::size_t>(c)].erase(r);
    else col_rows[static_cast<std::size_t>(c)].insert(r);
  };

  while (true) {
    int best_r = -1, best_c = -1;
    int best_exp = std::numeric_limits<int>::max();
    long best_cost = std::numeric_limits<long>::max();
    for (int r = 0; r < nr; ++r) {
      if (row_done[static_cast<std::size_t>(r)]) continue;
      for (const auto& [c, v] : a.row(r)) {
        if (v.exp > best_exp) continue;
        const long cost = strategy == PivotStrategy::Markowitz
                              ? static_cast<long>(a.row(r).size() - 1) *
                                    static_cast<long>(col_rows[static_cast<std::size_t>(c)].size() - 1)
                              : 0;
        if (v.exp < best_exp || cost < best_cost) {
          best_exp = v.exp;
          best_cost = cost;
          best_r = r;
          best_c = c;
        }
      }
    }
    if (best_r < 0) break;
    const Mono pivot = *a.get(best_r, best_c);

    // Clear the pivot column with row operations.
    const std::vector<int> others(col_rows[static_cast<std::size_t>(best_c)].begin(),
                                  col_rows[static_cast<std::size_t>(best_c)].end());
    for (int r : others) {
      if (r == best_r) continue;
      const Mono factor = detail::quotient(*a.get(r, best_c), pivot);
      const Mono neg{-factor.coeff, factor.exp};
      const auto pivot_row = a.row(best_r);
      for (const auto& [c, v] : pivot_row) {
        const Mono add = neg * v;
        auto cur = a.get(r, c);
        if (!cur) {
          set_entry(r, c, add);
        } else {
          if (cur->exp != add.exp) throw Error(ErrorKind::NonMonomialEntry, "elimination produced a non-monomial entry");
          set_entry(r, c, Mono{cur->coeff + add.coeff, cur->exp});
        }
      }
      detail::row_axpy(p, r, best_r, neg);
      p_inv.axpy(best_r, r, factor);
    }
    // Clear the pivot row with column operations; only the transforms change.
    const auto pivot_row = a.row(best_r);
    for (const auto& [c, v] : pivot_row) {
      if (c == best_c) continue;
      const Mono factor = detail::quotient(v, pivot);
      q.axpy(c, best_c, Mono{-factor.coeff, factor.exp});
      detail::row_axpy(q_inv, best_c, c, factor);
      set_entry(best_r, c, Mono{0, 0});
    }
    row_done[static_cast<std::size_t>(best_r)] = 1;
    col_done[static_cast<std::size_t>(best_c)] = 1;
    pivots.push_back({best_r, best_c, pivot});
  }

  std::stable_sort(pivots.begin(), pivots.end(),
                   [](const Pivot& x, const Pivot& y) { return x.value.exp < y.value.exp; });
  std::vector<int> row_order, col_order;
  for (const auto& pv : pivots) {
    row_order.push_back(pv.row);
    col_order.push_back(pv.col);
  }
  for (int r = 0; r < nr; ++r)
    if (!row_done[static_cast<std::size_t>(r)]) row_order.push_back(r);
  for (int c = 0; c < nc; ++c)
    if (!col_done[static_cast<std::size_t>(c)]) col_order.push_back(c);

  GradedSnf out;
  out.row_transform = MonomialMatrix(nr, nr);
  out.row_inverse = MonomialMatrix(nr, nr);
  out.col_transform = MonomialMatrix(nc, nc);
  out.col_inverse = MonomialMatrix(nc, nc);
  out.diagonal = MonomialMatrix(nr, nc);
  // Scale pivot rows so every diagonal entry is monic.
  std::vector<Rational> scale(static_cast<std::size_t>(nr), Rational(1));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    scale[static_cast<std::size_t>(pivots[i].row)] = 1 / pivots[i].value.coeff;
    out.invariant_exponents.push_back(pivots[i].value.exp);
    out.diagonal.set(static_cast<int>(i), static_cast<int>(i), Mono{1, pivots[i].value.exp});
  }
  for (int i = 0; i < nr; ++i) {
    const int old = row_order[static_cast<std::size_t>(i)];
    const Rational& s = scale[static_cast<std::size_t>(old)];
    for (const auto& [c, v] : p.row(old)) out.row_transform.set(i, c, Mono{v.coeff * s, v.exp});
    // P^{-1} columns follow the same permutation; the scale inverts.
    for (const auto& [r, v] : p_inv.cols[static_cast<std::size_t>(old)])
      out.row_inverse.set(r, i, Mono{v.coeff / s, v.exp});
  }
  for (int j = 0; j < nc; ++j) {
    const int old = col_order[static_cast<std::size_t>(j)];
    for (const auto& [r, v] : q.cols[static_cast<std::size_t>(old)]) out.col_transform.set(r, j, v);
    for (const auto& [c, v] : q_inv.row(old)) out.col_inverse.set(j, c, v);
  }
  return out;
}

}  // namespace leetor

#endif  // LEETOR_SNF_HPP
