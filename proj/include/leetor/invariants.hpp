#ifndef LEETOR_INVARIANTS_HPP
#define LEETOR_INVARIANTS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leetor/cube_complex.hpp"
#include "leetor/errors.hpp"
#include "leetor/homology.hpp"

namespace leetor {

using Bigrading = std::pair<int, int>;
/// Nonzero dimensions keyed by (gr_h, gr_q).
using BigradedDims = std::map<Bigrading, int>;

inline int s_invariant(const GradedModule& lee) {
  const auto free = lee.free_gradings();
  if (free.size() != 2)
    throw Error(ErrorKind::FreePartMalformed, "free rank is " + std::to_string(free.size()) + ", expected 2");
  if (free[0].first != 0 || free[1].first != 0)
    throw Error(ErrorKind::FreePartMalformed, "free generators are not in homological degree 0");
  const int lo = std::min(free[0].second, free[1].second);
  const int hi = std::max(free[0].second, free[1].second);
  if (hi - lo != 2)
    throw Error(ErrorKind::FreePartMalformed,
                "free generators at q = " + std::to_string(lo) + " and " + std::to_string(hi));
  return lo + 1;
}

inline int collapse_page(const GradedModule& lee) { return 1 + lee.max_torsion_exponent(); }

/// Dimensions of a graded vector space (Khovanov homology) from its module.
inline BigradedDims dimensions(const GradedModule& kh) {
  BigradedDims out;
  for (const auto& [g, b] : kh.blocks)
    if (b.free_rank > 0) out[g] = b.free_rank;
  return out;
}

/// E_n of the Lee spectral sequence from the Q[t]-module: a summand Q[t]/t^k
/// generated at (h, q) pairs with a source at (h-1, q-4k), both alive until page k.
inline BigradedDims page_dims(const GradedModule& lee, int n) {
  if (n < 1) throw Error(ErrorKind::BoundViolation, "page index must be at least 1");
  BigradedDims out;
  for (const auto& [g, b] : lee.blocks) {
    if (b.free_rank > 0) out[g] += b.free_rank;
    for (int k : b.torsion) {
      if (k < n) continue;
      out[g] += 1;
      out[{g.first - 1, g.second - 4 * k}] += 1;
    }
  }
  return out;
}

namespace detail {

using RationalRow = std::map<int, Rational>;

/// Rank over Q by row echelon reduction of sparse rows.
inline int rational_rank(std::vector<RationalRow> rows) {
  std::map<int, RationalRow> pivots;  // leading column -> reduced row
  for (auto& row : rows) {
    while (!row.empty()) {
      const int lead = row.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(row));
        break;
      }
      const Rational factor = row.begin()->second / it->second.begin()->second;
      for (const auto& [c, v] : it->second) {
        auto [cell, inserted] = row.try_emplace(c, -factor * v);
        if (!inserted) {
          cell->second -= factor * v;
          if (sgn(cell->second) == 0) row.erase(cell);
        }
      }
    }
  }
  return static_cast<int>(pivots.size());
}

}  // namespace detail

/// Independent computation of E_n: set t = 1, filter by q (steps of 4, one
/// residue class mod 4 at a time) and take the standard subquotients
///   E_r^p = Z_r^p / (Z_{r-1}^{p+1} + B_{r-1}^p).
inline BigradedDims filtered_page_oracle(const CubeComplex& cx, int n) {
  if (cx.theory() != Theory::Lee) throw Error(ErrorKind::VertexMismatch, "filtered oracle needs the Lee complex");
  if (n < 1) throw Error(ErrorKind::BoundViolation, "page index must be at least 1");
  std::map<int, std::vector<int>> by_h;
  for (int g = 0; g < cx.generator_count(); ++g) by_h[cx.generator(g).h].push_back(g);

  auto residue = [](int q) { return ((q % 4) + 4) % 4; };
  // rank of delta^h restricted to sources with q >= col_min (in class rho) and targets with q < row_bound
  std::map<std::array<int, 4>, int> memo;
  auto restricted_rank = [&](int h, int rho, int col_min, int row_bound) {
    const std::array<int, 4> key{h, rho, col_min, row_bound};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<detail::RationalRow> rows;
    auto src = by_h.find(h);
    if (src != by_h.end()) {
      for (int x : src->second) {
        const auto& gx = cx.generator(x);
        if (residue(gx.q) != rho || gx.q < col_min) continue;
        detail::RationalRow row;  // transpose: one row per source column
        for (const auto& [y, m] : cx.differential(x)) {
          if (cx.generator(y).q >= row_bound) continue;
          auto [cell, inserted] = row.try_emplace(y, m.coeff);
          if (!inserted) cell->second += m.coeff;
        }
        for (auto c = row.begin(); c != row.end();) c = sgn(c->second) == 0 ? row.erase(c) : std::next(c);
        if (!row.empty()) rows.push_back(std::move(row));
      }
    }
    const int r = detail::rational_rank(std::move(rows));
    memo.emplace(key, r);
    return r;
  };
  auto filtered_dim = [&](int h, int rho, int m) {
    int d = 0;
    auto it = by_h.find(h);
    if (it == by_h.end()) return 0;
    for (int x : it->second)
      if (residue(cx.generator(x).q) == rho && cx.generator(x).q >= m) ++d;
    return d;
  };
  constexpr int kUnbounded = 1 << 28;
  // z(r, m): x in F^m C^h with delta x in F^{m+4r}
  auto z = [&](int h, int rho, int r, int m) {
    return filtered_dim(h, rho, m) - restricted_rank(h, rho, m, m + 4 * r);
  };
  // b(s, m): dim(F^m C^h  intersect  delta F^{m-4s} C^{h-1})
  auto b = [&](int h, int rho, int s, int m) {
    return restricted_rank(h - 1, rho, m - 4 * s, kUnbounded) - restricted_rank(h - 1, rho, m - 4 * s, m);
  };

  BigradedDims out;
  std::set<std::pair<int, int>> cells;  // (h, q) occupied by some generator
  for (const auto& g : cx.generators()) cells.insert({g.h, g.q});
  for (const auto& [h, q] : cells) {
    const int rho = residue(q);
    const int dim = z(h, rho, n, q) - z(h, rho, n - 1, q + 4) - b(h, rho, n - 1, q) + b(h, rho, n, q + 4);
    if (dim != 0) out[{h, q}] = dim;
  }
  return out;
}

struct KnightMove {
  bool holds = false;
  std::array<Bigrading, 2> pawn_pair{};
  std::vector<std::pair<Bigrading, Bigrading>> knight_pairs;
  std::optional<Bigrading> counterexample;  // first bigrading left unpaired
};

/// Removes the pawn pair (0, s-1), (0, s+1) and pairs every remaining
/// (h, q) with (h+1, q+4), scanning h then q upward.
inline KnightMove knight_move_check(const BigradedDims& kh, int s) {
  KnightMove out;
  out.pawn_pair = {Bigrading{0, s - 1}, Bigrading{0, s + 1}};
  BigradedDims rest = kh;
  for (const auto& g : out.pawn_pair) {
    auto it = rest.find(g);
    if (it == rest.end() || it->second == 0) {
      out.counterexample = g;
      return out;
    }
    if (--it->second == 0) rest.erase(it);
  }
  while (!rest.empty()) {
    auto it = rest.begin();
    const Bigrading low = it->first;
    const Bigrading high{low.first + 1, low.second + 4};
    auto partner = rest.find(high);
    if (partner == rest.end() || partner->second < it->second) {
      out.counterexample = partner == rest.end() ? low : high;
      return out;
    }
    for (int i = 0; i < it->second; ++i) out.knight_pairs.push_back({low, high});
    partner->second -= it->second;
    if (partner->second == 0) rest.erase(partner);
    rest.erase(low);
  }
  out.holds = true;
  return out;
}

/// Per homological degree: dim Kh^h = rank H^h + #tors H^h + #tors H^{h+1}.
struct UctMismatch {
  int h = 0;
  int kh_dim = 0;
  int predicted = 0;
};

inline std::optional<UctMismatch> uct_check(const GradedModule& kh, const GradedModule& lee) {
  std::map<int, int> kh_dim, predicted;
  for (const auto& [g, b] : kh.blocks) kh_dim[g.first] += b.free_rank;
  for (const auto& [g, b] : lee.blocks) {
    predicted[g.first] += b.free_rank + static_cast<int>(b.torsion.size());
    predicted[g.first - 1] += static_cast<int>(b.torsion.size());
  }
  std::set<int> degrees;
  for (const auto& [h, d] : kh_dim) degrees.insert(h);
  for (const auto& [h, d] : predicted) degrees.insert(h);
  for (int h : degrees)
    if (kh_dim[h] != predicted[h]) return UctMismatch{h, kh_dim[h], predicted[h]};
  return std::nullopt;
}

struct KnotReport {
  std::string name;
  std::string pd;
  std::vector<std::array<int, 3>> kh_poincare;  // (h, q, dim)
  std::array<Bigrading, 2> lee_free_gradings{};
  std::vector<std::array<int, 3>> lee_torsion;  // (h, q, k)
  int s = 0;
  int u_X = 0;
  int u_t = 0;
  int collapse_page = 1;
  KnightMove knight_move;
  std::optional<int> unknotting_number;
};

inline int unknotting_lower_bound(const KnotReport& report) {
  if (report.unknotting_number && report.u_X > *report.unknotting_number)
    throw Error(ErrorKind::BoundViolation, report.name + ": u_X = " + std::to_string(report.u_X) +
                                               " exceeds the unknotting number " +
                                               std::to_string(*report.unknotting_number));
  return report.u_X;
}

/// Everything computed for one knot, kept for callers that need more than the report.
struct KnotAnalysis {
  KnotReport report;
  GradedModule kh;
  GradedModule lee;
  BigradedDims kh_dims;
};

struct AnalysisOptions {
  BuildOptions build;
  int x_edge = 1;
};

inline KnotAnalysis analyze_knot(const Diagram& d, const std::string& name, std::optional<int> unknotting_number,
                                 const AnalysisOptions& options = {}) {
  if (!d.is_knot())
    throw Error(ErrorKind::MultiComponent, "diagram has " + std::to_string(d.component_count()) + " components");
  KnotAnalysis a;
  const CubeComplex kh_cx = build_complex(d, Theory::Khovanov, options.build);
  const CubeComplex lee_cx = build_complex(d, Theory::Lee, options.build);
  for (const auto* cx : {&kh_cx, &lee_cx}) {
    const auto sq = verify_d_squared(*cx);
    if (!sq.ok)
      throw Error(ErrorKind::IdentityFailed, std::string("d^2 != 0 in the ") + std::string(to_string(cx->theory())) +
                                                 " complex, from " + sq.failure->generator);
  }
  a.kh = compute_homology(kh_cx, {false}).module;
  const HomologyResult lee = compute_homology(lee_cx);
  a.lee = lee.module;
  a.kh_dims = dimensions(a.kh);

  if (auto bad = uct_check(a.kh, a.lee))
    throw Error(ErrorKind::IdentityFailed, "dimension identity fails in degree " + std::to_string(bad->h) +
                                               ": Kh has " + std::to_string(bad->kh_dim) + ", Lee predicts " +
                                               std::to_string(bad->predicted));

  KnotReport& r = a.report;
  r.name = name;
  r.pd = d.crossing_count() == 0 ? "" : d.to_pd();
  for (const auto& [g, dim] : a.kh_dims) r.kh_poincare.push_back({g.first, g.second, dim});
  r.s = s_invariant(a.lee);
  r.lee_free_gradings = {Bigrading{0, r.s - 1}, Bigrading{0, r.s + 1}};
  r.lee_torsion = a.lee.torsion_list();
  const auto ti = torsion_invariants(a.lee, lee.basis, x_action_matrix(lee_cx, lee.basis, options.x_edge));
  r.u_X = ti.u_X;
  r.u_t = ti.u_t;
  r.collapse_page = collapse_page(a.lee);
  r.knight_move = knight_move_check(a.kh_dims, r.s);
  r.unknotting_number = unknotting_number;
  unknotting_lower_bound(r);
  return a;
}

}  // namespace leetor

#endif  // LEETOR_INVARIANTS_HPP
