#ifndef LEETOR_HOMOLOGY_HPP
#define LEETOR_HOMOLOGY_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "leetor/cube_complex.hpp"
#include "leetor/errors.hpp"
#include "leetor/monomial.hpp"
#include "leetor/snf.hpp"

namespace leetor {

/// Sparse polynomial in t: exponent -> coefficient, zero terms never stored.
using Poly = std::map<int, Rational>;

inline void poly_add(Poly& p, int exp, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

inline Poly poly_negate(Poly p) {
  for (auto& [e, c] : p) c = -c;
  return p;
}

struct ModuleBlock {
  int free_rank = 0;
  std::vector<int> torsion;  // exponents k of the summands Q[t]/t^k
};

/// Bigraded Q[t]-module: per (gr_h, gr_q), a free rank and torsion exponents.
/// Gradings are those of the generators (the top of each tower).
struct GradedModule {
  std::map<std::pair<int, int>, ModuleBlock> blocks;

  int total_free_rank() const {
    int r = 0;
    for (const auto& [g, b] : blocks) r += b.free_rank;
    return r;
  }
  int max_torsion_exponent() const {
    int k = 0;
    for (const auto& [g, b] : blocks)
      for (int e : b.torsion) k = std::max(k, e);
    return k;
  }
  std::vector<std::pair<int, int>> free_gradings() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [g, b] : blocks)
      for (int i = 0; i < b.free_rank; ++i) out.push_back(g);
    return out;
  }
  std::vector<std::array<int, 3>> torsion_list() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& [g, b] : blocks) {
      auto ks = b.torsion;
      std::sort(ks.begin(), ks.end());
      for (int k : ks) out.push_back({g.first, g.second, k});
    }
    return out;
  }
};

/// One cancelled pair: delta(x) = pivot * y_new after the basis changes
///   y_new = y + sum mu_{y'} y'     and     x'_new = x' - lambda_{x'} x.
struct ReductionStep {
  int h = 0;  // homological degree of x
  int x = -1;
  int y = -1;
  Mono pivot;
  std::vector<std::pair<int, Mono>> mu;
  std::vector<std::pair<int, Mono>> lambda;
};

struct HomologyGenerator {
  int h = 0;
  int q = 0;
  int torsion = 0;  // 0 for a free generator, else k for Q[t]/t^k
  int origin = -1;  // surviving cube generator (free) or reduction step (torsion)
  LeeElement representative;
};

struct HomologyOptions {
  bool representatives = true;
};

/// Homology generators with cycle representatives, plus the reduction log
/// needed to express any cycle in terms of them. Holds a pointer to the
/// complex it was computed from; the complex must outlive it.
class HomologyBasis {
 public:
  const std::vector<HomologyGenerator>& generators() const { return generators_; }
  const HomologyGenerator& generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<ReductionStep>& steps() const { return steps_; }

  /// Coordinates of the class of `cycle`: one polynomial per homology
  /// generator, reduced mod t^k on torsion generators.
  std::vector<Poly> classify(const LeeElement& cycle) const {
    if (!complex_->apply_differential(cycle).is_zero())
      throw Error(ErrorKind::NotACycleAfterMultiplication, "element to classify is not a cycle");
    std::vector<Poly> coords(generators_.size());
    // Split into homogeneous pieces; delta preserves both gradings.
    std::map<std::pair<int, int>, std::unordered_map<int, Mono>> pieces;
    for (const auto& [m, c] : cycle.terms()) {
      const int g = complex_->generator_index(m.vertex.mask, m.circles);
      const auto& gen = complex_->generator(g);
      pieces[{gen.h, gen.q - 4 * m.t_power}].emplace(g, Mono{c, m.t_power});
    }
    for (auto& [grading, z] : pieces) classify_piece(grading.first, z, coords);
    return coords;
  }

  friend HomologyBasis make_basis(const CubeComplex& cx, std::vector<ReductionStep> steps,
                                  const std::vector<char>& alive, bool representatives);

 private:
  void classify_piece(int h, std::unordered_map<int, Mono>& z, std::vector<Poly>& coords) const {
    auto sub = [&](int g, const Mono& v) {
      if (v.is_zero()) return;
      auto it = z.find(g);
      if (it == z.end()) {
        z.emplace(g, Mono{-v.coeff, v.exp});
        return;
      }
      if (it->second.exp != v.exp) throw Error(ErrorKind::NonMonomialEntry, "inhomogeneous chain in classify");
      it->second.coeff -= v.coeff;
      if (it->second.is_zero()) z.erase(it);
    };
    auto range = steps_by_degree_.find(h);
    if (range != steps_by_degree_.end()) {
      for (int s : range->second) {
        const auto& step = steps_[static_cast<std::size_t>(s)];
        if (step.h == h - 1) {
          auto it = z.find(step.y);
          if (it == z.end()) continue;
          const Mono b = it->second;
          z.erase(it);
          if (step.pivot.exp > 0 && b.exp < step.pivot.exp) {
            const int id = torsion_generator_of_step_.at(s);
            poly_add(coords[static_cast<std::size_t>(id)], b.exp, b.coeff);
          }
          for (const auto& [yp, mu] : step.mu) sub(yp, b * mu);
        } else {
          z.erase(step.x);  // cycles have zero coordinate on x in the adapted basis
        }
      }
    }
    for (const auto& [g, v] : z) {
      auto it = free_generator_of_cell_.find(g);
      if (it == free_generator_of_cell_.end())
        throw Error(ErrorKind::NotACycleAfterMultiplication, "residual on a cancelled generator");
      poly_add(coords[static_cast<std::size_t>(it->second)], v.exp, v.coeff);
    }
  }

  const CubeComplex* complex_ = nullptr;
  std::vector<ReductionStep> steps_;
  std::map<int, std::vector<int>> steps_by_degree_;
  std::unordered_map<int, int> torsion_generator_of_step_;
  std::unordered_map<int, int> free_generator_of_cell_;
  std::vector<HomologyGenerator> generators_;
};

struct HomologyResult {
  GradedModule module;
  HomologyBasis basis;
};

namespace detail {

using SparseChain = std::unordered_map<int, Mono>;

inline void chain_axpy(SparseChain& target, const SparseChain& source, const Mono& factor) {
  for (const auto& [g, v] : source) {
    const Mono add = factor * v;
    auto it = target.find(g);
    if (it == target.end()) {
      target.emplace(g, add);
      continue;
    }
    if (it->second.exp != add.exp) throw Error(ErrorKind::NonMonomialEntry, "inhomogeneous representative");
    it->second.coeff += add.coeff;
    if (it->second.is_zero()) target.erase(it);
  }
}

inline LeeElement chain_to_element(const CubeComplex& cx, const SparseChain& chain) {
  LeeElement out;
  for (const auto& [g, v] : chain) {
    const auto& gen = cx.generator(g);
    out.add(CircleMonomial{cx.vertex(gen.vertex), gen.circles, v.exp}, v.coeff);
  }
  return out;
}

}  // namespace detail

inline HomologyBasis make_basis(const CubeComplex& cx, std::vector<ReductionStep> steps,
                                const std::vector<char>& alive, bool representatives) {
  HomologyBasis basis;
  basis.complex_ = &cx;
  basis.steps_ = std::move(steps);
  const auto& log = basis.steps_;
  for (std::size_t s = 0; s < log.size(); ++s) {
    basis.steps_by_degree_[log[s].h + 1].push_back(static_cast<int>(s));
  }
  for (std::size_t s = 0; s < log.size(); ++s) {
    auto& list = basis.steps_by_degree_[log[s].h];
    list.push_back(static_cast<int>(s));
  }
  // Each degree's list must be in log order: steps of delta^{h-1} precede delta^h.
  for (auto& [h, list] : basis.steps_by_degree_) std::sort(list.begin(), list.end());

  // Free generators are the surviving cells; torsion generators are y_new of steps with t-divisible pivots.
  std::vector<HomologyGenerator> gens;
  for (int g = 0; g < cx.generator_count(); ++g) {
    if (!alive[static_cast<std::size_t>(g)]) continue;
    const auto& cell = cx.generator(g);
    gens.push_back(HomologyGenerator{cell.h, cell.q, 0, g, {}});
  }
  for (std::size_t s = 0; s < log.size(); ++s) {
    if (log[s].pivot.exp == 0) continue;
    const auto& cell = cx.generator(log[s].y);
    gens.push_back(HomologyGenerator{cell.h, cell.q, log[s].pivot.exp, static_cast<int>(s), {}});
  }
  std::stable_sort(gens.begin(), gens.end(), [](const HomologyGenerator& a, const HomologyGenerator& b) {
    if (a.h != b.h) return a.h < b.h;
    if ((a.torsion == 0) != (b.torsion == 0)) return a.torsion == 0;
    if (a.q != b.q) return a.q > b.q;
    return a.origin < b.origin;
  });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].torsion == 0) basis.free_generator_of_cell_[gens[i].origin] = static_cast<int>(i);
    else basis.torsion_generator_of_step_[gens[i].origin] = static_cast<int>(i);
  }

  if (representatives) {
    // events[g]: (step, lambda) for every basis change x'_new = x' - lambda x with x' = g.
    std::unordered_map<int, std::vector<std::pair<int, Mono>>> events;
    for (std::size_t s = 0; s < log.size(); ++s)
      for (const auto& [xp, lam] : log[s].lambda) events[xp].push_back({static_cast<int>(s), lam});

    // Steps whose source vector is needed, found by walking the dependency graph.
    std::vector<char> needed(log.size(), 0);
    std::vector<int> stack;
    for (const auto& g : gens)
      if (g.torsion == 0) stack.push_back(g.origin);
    while (!stack.empty()) {
      const int cell = stack.back();
      stack.pop_back();
      auto it = events.find(cell);
      if (it == events.end()) continue;
      for (const auto& [s, lam] : it->second) {
        if (needed[static_cast<std::size_t>(s)]) continue;
        needed[static_cast<std::size_t>(s)] = 1;
        stack.push_back(log[static_cast<std::size_t>(s)].x);
      }
    }
    auto vector_of = [&](int cell, const std::unordered_map<int, detail::SparseChain>& known) {
      detail::SparseChain v;
      v.emplace(cell, Mono{1, 0});
      auto it = events.find(cell);
      if (it != events.end())
        for (const auto& [s, lam] : it->second)
          detail::chain_axpy(v, known.at(s), Mono{-lam.coeff, lam.exp});
      return v;
    };
    std::unordered_map<int, detail::SparseChain> source_vector;  // step -> final vector of its x
    for (std::size_t s = 0; s < log.size(); ++s)
      if (needed[s]) source_vector.emplace(static_cast<int>(s), vector_of(log[s].x, source_vector));

    for (auto& g : gens) {
      if (g.torsion == 0) {
        g.representative = detail::chain_to_element(cx, vector_of(g.origin, source_vector));
      } else {
        const auto& step = log[static_cast<std::size_t>(g.origin)];
        detail::SparseChain v;
        v.emplace(step.y, Mono{1, 0});
        for (const auto& [yp, mu] : step.mu) v.emplace(yp, mu);
        g.representative = detail::chain_to_element(cx, v);
      }
    }
  }
  basis.generators_ = std::move(gens);
  return basis;
}

/// Homology of the cube complex over Q[t] (Lee) or Q (Khovanov) by graded
/// cancellation: in each differential, repeatedly split off a pair x -> y
/// whose entry has the least t-degree in its row and column.
inline HomologyResult compute_homology(const CubeComplex& cx, const HomologyOptions& options = {}) {
  const int n_gens = cx.generator_count();
  std::vector<std::unordered_map<int, Mono>> out(static_cast<std::size_t>(n_gens));
  std::vector<std::unordered_set<int>> in(static_cast<std::size_t>(n_gens));
  std::map<int, std::vector<int>> by_degree;
  for (int g = 0; g < n_gens; ++g) {
    by_degree[cx.generator(g).h].push_back(g);
    for (const auto& [y, m] : cx.differential(g)) {
      auto [it, inserted] = out[static_cast<std::size_t>(g)].try_emplace(y, m);
      if (!inserted) {
        if (it->second.exp != m.exp) throw Error(ErrorKind::NonMonomialEntry, "differential entry is not a monomial");
        it->second.coeff += m.coeff;
      }
      in[static_cast<std::size_t>(y)].insert(g);
    }
  }
  for (int g = 0; g < n_gens; ++g) {
    auto& row = out[static_cast<std::size_t>(g)];
    for (auto it = row.begin(); it != row.end();) {
      if (it->second.is_zero()) {
        in[static_cast<std::size_t>(it->first)].erase(g);
        it = row.erase(it);
      } else {
        ++it;
      }
    }
  }

  std::vector<char> alive(static_cast<std::size_t>(n_gens), 1);
  std::vector<ReductionStep> steps;

  auto remove_cell = [&](int g) {
    alive[static_cast<std::size_t>(g)] = 0;
    for (const auto& [y, m] : out[static_cast<std::size_t>(g)]) in[static_cast<std::size_t>(y)].erase(g);
    out[static_cast<std::size_t>(g)].clear();
    for (int x : in[static_cast<std::size_t>(g)]) out[static_cast<std::size_t>(x)].erase(g);
    in[static_cast<std::size_t>(g)].clear();
  };

  auto cancel = [&](int h, int x, int y) {
    ReductionStep step;
    step.h = h;
    step.x = x;
    step.y = y;
    step.pivot = out[static_cast<std::size_t>(x)].at(y);
    std::vector<std::pair<int, Mono>> column;  // delta(x) without y
    for (const auto& [yp, m] : out[static_cast<std::size_t>(x)])
      if (yp != y) {
        column.push_back({yp, m});
        step.mu.push_back({yp, detail::quotient(m, step.pivot)});
      }
    for (int xp : in[static_cast<std::size_t>(y)])
      if (xp != x) step.lambda.push_back({xp, detail::quotient(out[static_cast<std::size_t>(xp)].at(y), step.pivot)});
    std::sort(step.mu.begin(), step.mu.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::sort(step.lambda.begin(), step.lambda.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [xp, lam] : step.lambda) {
      auto& row = out[static_cast<std::size_t>(xp)];
      for (const auto& [yp, m] : column) {
        const Mono delta = lam * m;
        auto it = row.find(yp);
        if (it == row.end()) {
          row.emplace(yp, Mono{-delta.coeff, delta.exp});
          in[static_cast<std::size_t>(yp)].insert(xp);
          continue;
        }
        if (it->second.exp != delta.exp)
          throw Error(ErrorKind::NonMonomialEntry, "cancellation produced a non-monomial entry");
        it->second.coeff -= delta.coeff;
        if (it->second.is_zero()) {
          row.erase(it);
          in[static_cast<std::size_t>(yp)].erase(xp);
        }
      }
    }
    remove_cell(x);
    remove_cell(y);
    steps.push_back(std::move(step));
  };

  for (auto& [h, cells] : by_degree) {
    while (true) {
      int min_exp = std::numeric_limits<int>::max();
      std::vector<std::pair<long, std::pair<int, int>>> candidates;
      for (int x : cells) {
        if (!alive[static_cast<std::size_t>(x)]) continue;
        for (const auto& [y, m] : out[static_cast<std::size_t>(x)]) {
          if (m.exp > min_exp) continue;
          if (m.exp < min_exp) {
            min_exp = m.exp;
            candidates.clear();
          }
          const long cost = static_cast<long>(out[static_cast<std::size_t>(x)].size() - 1) *
                            static_cast<long>(in[static_cast<std::size_t>(y)].size() - 1);
          candidates.push_back({cost, {x, y}});
        }
      }
      if (candidates.empty()) break;
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [cost, pair] : candidates) {
        const auto [x, y] = pair;
        if (!alive[static_cast<std::size_t>(x)] || !alive[static_cast<std::size_t>(y)]) continue;
        auto it = out[static_cast<std::size_t>(x)].find(y);
        if (it == out[static_cast<std::size_t>(x)].end() || it->second.exp != min_exp) continue;
        cancel(h, x, y);
      }
    }
  }

  HomologyResult result;
  for (int g = 0; g < n_gens; ++g) {
    if (!alive[static_cast<std::size_t>(g)]) continue;
    const auto& cell = cx.generator(g);
    result.module.blocks[{cell.h, cell.q}].free_rank++;
  }
  for (const auto& step : steps) {
    if (step.pivot.exp == 0) continue;
    const auto& cell = cx.generator(step.y);
    result.module.blocks[{cell.h, cell.q}].torsion.push_back(step.pivot.exp);
  }
  for (auto& [g, b] : result.module.blocks) std::sort(b.torsion.begin(), b.torsion.end());
  result.basis = make_basis(cx, std::move(steps), alive, options.representatives);
  return result;
}

/// Square matrix over Q[t] indexed by homology generators: entry [target][source].
struct HomologyMatrix {
  std::vector<std::vector<Poly>> entries;

  int size() const { return static_cast<int>(entries.size()); }
  bool is_zero() const {
    for (const auto& row : entries)
      for (const auto& p : row)
        if (!p.empty()) return false;
    return true;
  }
  HomologyMatrix scaled(const Rational& s) const {
    HomologyMatrix out = *this;
    for (auto& row : out.entries)
      for (auto& p : row) {
        if (sgn(s) == 0) p.clear();
        for (auto& [e, c] : p) c *= s;
      }
    return out;
  }
  friend bool operator==(const HomologyMatrix& a, const HomologyMatrix& b) { return a.entries == b.entries; }
};

/// Homology-level matrix of an arbitrary chain-level operation.
template <typename ChainOp>
HomologyMatrix induced_matrix(const HomologyBasis& source_basis, const HomologyBasis& target_basis, ChainOp&& op) {
  const int n_src = source_basis.size();
  const int n_tgt = target_basis.size();
  HomologyMatrix m;
  m.entries.assign(static_cast<std::size_t>(n_tgt), std::vector<Poly>(static_cast<std::size_t>(n_src)));
  for (int j = 0; j < n_src; ++j) {
    const auto coords = target_basis.classify(op(source_basis.generator(j).representative));
    for (int i = 0; i < n_tgt; ++i) m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = coords[static_cast<std::size_t>(i)];
  }
  return m;
}

/// Multiplication by X_edge on homology, via the cycle representatives.
inline HomologyMatrix x_action_matrix(const CubeComplex& cx, const HomologyBasis& basis, int edge) {
  if (cx.theory() != Theory::Lee) throw Error(ErrorKind::VertexMismatch, "X-action requires the Lee complex");
  return induced_matrix(basis, basis, [&](const LeeElement& a) { return cx.multiply_edge(a, edge); });
}

/// Both levels of the X-action: chain[g] is X_edge times cube generator g.
struct XAction {
  int edge = 0;
  std::vector<SparseColumn> chain;
  HomologyMatrix homology;
};

inline XAction x_action(const CubeComplex& cx, const HomologyBasis& basis, int edge) {
  XAction out;
  out.edge = edge;
  out.homology = x_action_matrix(cx, basis, edge);
  out.chain.reserve(static_cast<std::size_t>(cx.generator_count()));
  for (int g = 0; g < cx.generator_count(); ++g) out.chain.push_back(cx.coordinates(cx.multiply_edge(cx.basis_element(g), edge)));
  return out;
}

/// Multiplication by t in the homology basis.
inline HomologyMatrix t_action_matrix(const HomologyBasis& basis) {
  HomologyMatrix m;
  const auto n = static_cast<std::size_t>(basis.size());
  m.entries.assign(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const int k = basis.generator(static_cast<int>(i)).torsion;
    if (k == 0 || k > 1) m.entries[i][i][1] = 1;
  }
  return m;
}

/// Product of homology matrices with torsion reduction on the target side.
inline HomologyMatrix compose(const HomologyBasis& basis, const HomologyMatrix& a, const HomologyMatrix& b) {
  const auto n = static_cast<std::size_t>(basis.size());
  HomologyMatrix out;
  out.entries.assign(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const int k = basis.generator(static_cast<int>(i)).torsion;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (const auto& [e1, c1] : a.entries[i][l])
          for (const auto& [e2, c2] : b.entries[l][j])
            if (k == 0 || e1 + e2 < k) poly_add(out.entries[i][j], e1 + e2, c1 * c2);
  }
  return out;
}

struct TorsionInvariants {
  int u_t = 0;
  int u_X = 0;
};

namespace detail {

using DenseMatrix = std::vector<std::vector<Rational>>;

inline DenseMatrix dense_product(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size();
  DenseMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(b[k][j]) != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline bool dense_is_zero(const DenseMatrix& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (sgn(v) != 0) return false;
  return true;
}

}  // namespace detail

/// u_t is the largest t-torsion exponent; u_X is the nilpotency index of X
/// on the torsion submodule, read as a finite-dimensional Q-vector space with
/// basis t^a g (0 <= a < k) for each torsion generator g.
inline TorsionInvariants torsion_invariants(const GradedModule& module, const HomologyBasis& basis,
                                            const HomologyMatrix& x_action) {
  TorsionInvariants out;
  out.u_t = module.max_torsion_exponent();
  std::vector<std::pair<int, int>> cells;  // (generator, t-power)
  std::map<std::pair<int, int>, std::size_t> index;
  for (int i = 0; i < basis.size(); ++i)
    for (int a = 0; a < basis.generator(i).torsion; ++a) {
      index[{i, a}] = cells.size();
      cells.push_back({i, a});
    }
  if (cells.empty()) {
    out.u_X = 0;
  } else {
    detail::DenseMatrix x(cells.size(), std::vector<Rational>(cells.size()));
    for (std::size_t col = 0; col < cells.size(); ++col) {
      const auto [src, a] = cells[col];
      for (int tgt = 0; tgt < basis.size(); ++tgt) {
        const Poly& p = x_action.entries[static_cast<std::size_t>(tgt)][static_cast<std::size_t>(src)];
        if (p.empty()) continue;
        const int k = basis.generator(tgt).torsion;
        if (k == 0) throw Error(ErrorKind::IdentityFailed, "X maps a torsion class off the torsion submodule");
        for (const auto& [e, c] : p)
          if (a + e < k) x[index.at({tgt, a + e})][col] += c;
      }
    }
    detail::DenseMatrix power = x;
    int n = 1;
    while (!detail::dense_is_zero(power)) {
      if (n > 2 * out.u_t + 1) throw Error(ErrorKind::CeilingRelationViolated, "X is not nilpotent on torsion");
      power = detail::dense_product(x, power);
      ++n;
    }
    out.u_X = n;
  }
  if ((out.u_X + 1) / 2 != out.u_t)
    throw Error(ErrorKind::CeilingRelationViolated, "ceil(u_X/2) = " + std::to_string((out.u_X + 1) / 2) +
                                                        " but u_t = " + std::to_string(out.u_t));
  return out;
}

}  // namespace leetor

#endif  // LEETOR_HOMOLOGY_HPP
