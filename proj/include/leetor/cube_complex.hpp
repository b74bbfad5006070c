#ifndef LEETOR_CUBE_COMPLEX_HPP
#define LEETOR_CUBE_COMPLEX_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leetor/circle_algebra.hpp"
#include "leetor/diagram.hpp"
#include "leetor/errors.hpp"
#include "leetor/monomial.hpp"

namespace leetor {

enum class Theory { Khovanov, Lee };

inline std::string_view to_string(Theory t) { return t == Theory::Lee ? "lee" : "kh"; }

struct BuildOptions {
  int max_crossings = 16;
  // Negative control: drop the (-1)^epsilon signs so d^2 = 0 fails.
  bool corrupt_signs = false;
};

enum class EdgeKind { Merge, Split };

/// The signed map R_u -> R_v for a cube edge u -> v (v = u with crossing
/// `crossing` switched from 0 to 1).
struct EdgeMap {
  Vertex source;
  Vertex target;
  int crossing = 0;
  EdgeKind kind = EdgeKind::Merge;
  int sign = 1;
  Theory theory = Theory::Lee;
  std::vector<int> image;  // source circle -> target circle
  int split_first = -1;    // target circles of X_j and X_k when splitting
  int split_second = -1;
};

/// Sign exponent for the cube edge changing crossing i: sum_{j<i} u_j.
inline int cube_edge_epsilon(Vertex u, int i) {
  const std::uint32_t below = i == 0 ? 0u : (u.mask & ((1u << i) - 1u));
  return std::popcount(below);
}

inline EdgeMap make_edge_map(const Resolution& from, const Resolution& to, int crossing,
                             const Diagram& d, Theory theory, bool corrupt_signs = false) {
  EdgeMap e;
  e.source = from.vertex;
  e.target = to.vertex;
  e.crossing = crossing;
  e.theory = theory;
  e.sign = corrupt_signs ? 1 : ((cube_edge_epsilon(from.vertex, crossing) % 2) ? -1 : 1);
  e.kind = from.k == to.k + 1 ? EdgeKind::Merge : EdgeKind::Split;
  if (from.k != to.k + 1 && from.k + 1 != to.k)
    throw Error(ErrorKind::NonPlanar, "adjacent resolutions differ by other than one circle");
  e.image.resize(static_cast<std::size_t>(from.k));
  for (int c = 0; c < from.k; ++c)
    e.image[static_cast<std::size_t>(c)] = to.circle(from.min_edge[static_cast<std::size_t>(c)]);
  if (e.kind == EdgeKind::Split) {
    const auto labels = d.crossing(crossing).local_labels();
    e.split_first = to.circle(labels.j);
    e.split_second = to.circle(labels.k);
  }
  return e;
}

/// Applies an edge map to one basis monomial; the result is appended to `out`.
inline void apply_to_monomial(const EdgeMap& e, const CircleMonomial& m, const Rational& coeff,
                              LeeElement& out) {
  std::uint32_t mask = 0;
  int t_power = m.t_power;
  for (std::uint32_t s = m.circles; s != 0; s &= s - 1) {
    const std::uint32_t bit = 1u << e.image[static_cast<std::size_t>(std::countr_zero(s))];
    if (mask & bit) {
      mask &= ~bit;
      ++t_power;
    } else {
      mask |= bit;
    }
  }
  const Rational c = e.sign * coeff;
  auto emit = [&](std::uint32_t circles, int tp) {
    if (e.theory == Theory::Khovanov && tp > 0) return;
    out.add(CircleMonomial{e.target, circles, tp}, c);
  };
  if (e.kind == EdgeKind::Merge) {
    emit(mask, t_power);
    return;
  }
  for (int c2 : {e.split_first, e.split_second}) {
    const std::uint32_t bit = 1u << c2;
    if (mask & bit) emit(mask & ~bit, t_power + 1);
    else emit(mask | bit, t_power);
  }
}

inline LeeElement edge_map_apply(const EdgeMap& e, const LeeElement& a) {
  LeeElement out;
  for (const auto& [m, c] : a.terms()) {
    if (m.vertex.mask != e.source.mask)
      throw Error(ErrorKind::VertexMismatch, "element does not live at the edge source");
    apply_to_monomial(e, m, c, out);
  }
  return out;
}

/// A basis element (vertex, circle subset) of the cube complex with its bigrading.
struct Generator {
  std::uint32_t vertex = 0;
  std::uint32_t circles = 0;
  int h = 0;
  int q = 0;
};

using SparseColumn = std::vector<std::pair<int, Mono>>;

class CubeComplex {
 public:
  Theory theory() const { return theory_; }
  const Diagram& diagram() const { return diagram_; }
  int crossing_count() const { return diagram_.crossing_count(); }
  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(resolutions_.size()); }
  Vertex vertex(std::uint32_t mask) const { return Vertex{mask, crossing_count()}; }
  const Resolution& resolution(std::uint32_t mask) const { return resolutions_.at(mask); }

  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(int g) const { return generators_.at(static_cast<std::size_t>(g)); }
  int generator_count() const { return static_cast<int>(generators_.size()); }

  int generator_index(std::uint32_t vertex, std::uint32_t circles) const {
    return offsets_.at(vertex) + position_.at(vertex).at(circles);
  }
  /// Generators of one vertex, in lexicographic circle-subset order.
  std::pair<int, int> vertex_range(std::uint32_t vertex) const {
    return {offsets_.at(vertex), offsets_.at(vertex) + (1 << resolutions_.at(vertex).k)};
  }

  /// delta(generator g) as a sparse column of (target generator, c * t^e).
  const SparseColumn& differential(int g) const { return differential_.at(static_cast<std::size_t>(g)); }

  int min_h() const { return -diagram_.n_minus(); }
  int max_h() const { return crossing_count() - diagram_.n_minus(); }

  int q_of_one(std::uint32_t vertex) const {
    return diagram_.n_plus() - 2 * diagram_.n_minus() + std::popcount(vertex) + resolutions_.at(vertex).k;
  }

  EdgeMap edge_map(std::uint32_t source, int crossing) const {
    const std::uint32_t target = source | (1u << crossing);
    return make_edge_map(resolutions_.at(source), resolutions_.at(target), crossing, diagram_, theory_,
                         corrupt_signs_);
  }

  LeeElement basis_element(int g) const {
    const auto& gen = generator(g);
    return LeeElement::monomial(vertex(gen.vertex), gen.circles);
  }

  /// Sparse generator-coordinates of a chain; the t-power rides in Mono::exp.
  std::vector<std::pair<int, Mono>> coordinates(const LeeElement& a) const {
    std::vector<std::pair<int, Mono>> out;
    for (const auto& [m, c] : a.terms())
      out.push_back({generator_index(m.vertex.mask, m.circles), Mono{c, m.t_power}});
    return out;
  }

  LeeElement apply_differential(const LeeElement& a) const {
    LeeElement out;
    for (const auto& [m, c] : a.terms()) {
      const int g = generator_index(m.vertex.mask, m.circles);
      for (const auto& [target, entry] : differential(g)) {
        const auto& tg = generator(target);
        out.add(CircleMonomial{vertex(tg.vertex), tg.circles, entry.exp + m.t_power}, c * entry.coeff);
      }
    }
    return out;
  }

  /// Multiplication by X_edge at every vertex (a chain map: delta is R'-linear).
  LeeElement multiply_edge(const LeeElement& a, int edge) const {
    LeeElement out;
    for (const auto& [m, c] : a.terms()) {
      const auto x = inject_edge_variable(resolutions_.at(m.vertex.mask), edge);
      auto prod = multiply(m, x.terms().begin()->first);
      if (theory_ == Theory::Khovanov && prod.t_power > 0) continue;
      out.add(prod, c);
    }
    return out;
  }

  friend CubeComplex build_complex(const Diagram& d, Theory theory, const BuildOptions& options);

 private:
  Theory theory_ = Theory::Lee;
  Diagram diagram_;
  bool corrupt_signs_ = false;
  std::vector<Resolution> resolutions_;
  std::vector<int> offsets_;
  std::vector<std::vector<int>> position_;  // vertex -> circle mask -> basis position
  std::vector<Generator> generators_;
  std::vector<SparseColumn> differential_;
};

/// All circle subsets of k circles in lexicographic order.
inline std::vector<std::uint32_t> lexicographic_subsets(int k) {
  std::vector<std::uint32_t> subsets(std::size_t{1} << k);
  for (std::uint32_t s = 0; s < subsets.size(); ++s) subsets[s] = s;
  std::sort(subsets.begin(), subsets.end(), circle_subset_less);
  return subsets;
}

inline CubeComplex build_complex(const Diagram& d, Theory theory, const BuildOptions& options = {}) {
  const int n = d.crossing_count();
  if (n > options.max_crossings || n > 30)
    throw Error(ErrorKind::SizeLimitExceeded,
                std::to_string(n) + " crossings exceeds the cap of " + std::to_string(options.max_crossings));
  CubeComplex cx;
  cx.theory_ = theory;
  cx.diagram_ = d;
  cx.corrupt_signs_ = options.corrupt_signs;
  const std::uint32_t vertices = 1u << n;
  cx.resolutions_.reserve(vertices);
  cx.offsets_.reserve(vertices);
  cx.position_.resize(vertices);
  int offset = 0;
  for (std::uint32_t v = 0; v < vertices; ++v) {
    auto r = n == 0 ? Resolution{Vertex{0, 0}, {-1, 0}, {1}, 1} : resolve(d, Vertex{v, n});
    if (r.k > 24) throw Error(ErrorKind::SizeLimitExceeded, "too many circles in a resolution");
    cx.offsets_.push_back(offset);
    const auto subsets = lexicographic_subsets(r.k);
    auto& pos = cx.position_[v];
    pos.assign(subsets.size(), 0);
    const int h = std::popcount(v) - d.n_minus();
    const int q1 = d.n_plus() - 2 * d.n_minus() + std::popcount(v) + r.k;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      pos[subsets[i]] = static_cast<int>(i);
      cx.generators_.push_back(Generator{v, subsets[i], h, q1 - 2 * std::popcount(subsets[i])});
    }
    offset += static_cast<int>(subsets.size());
    cx.resolutions_.push_back(std::move(r));
  }
  cx.differential_.resize(cx.generators_.size());
  for (std::uint32_t u = 0; u < vertices; ++u) {
    for (int i = 0; i < n; ++i) {
      if (u & (1u << i)) continue;
      const EdgeMap e = cx.edge_map(u, i);
      const auto [begin, end] = cx.vertex_range(u);
      for (int g = begin; g < end; ++g) {
        LeeElement image;
        apply_to_monomial(e, CircleMonomial{e.source, cx.generators_[static_cast<std::size_t>(g)].circles, 0}, 1,
                          image);
        auto& column = cx.differential_[static_cast<std::size_t>(g)];
        for (const auto& [m, c] : image.terms())
          column.push_back({cx.generator_index(m.vertex.mask, m.circles), Mono{c, m.t_power}});
      }
    }
  }
  return cx;
}

/// First square that fails to anticommute, if any.
struct SquareFailure {
  Vertex source;
  Vertex target;
  int first_crossing = 0;
  int second_crossing = 0;
  std::string generator;
  std::string residual;
};

struct DSquaredReport {
  bool ok = true;
  long long generators_checked = 0;
  std::optional<SquareFailure> failure;
};

inline DSquaredReport verify_d_squared(const CubeComplex& cx) {
  DSquaredReport report;
  for (int g = 0; g < cx.generator_count(); ++g) {
    ++report.generators_checked;
    LeeElement once;
    for (const auto& [y, m] : cx.differential(g)) {
      const auto& gy = cx.generator(y);
      once.add(CircleMonomial{cx.vertex(gy.vertex), gy.circles, m.exp}, m.coeff);
    }
    const LeeElement twice = cx.apply_differential(once);
    if (twice.is_zero()) continue;
    report.ok = false;
    const auto& src = cx.generator(g);
    const std::uint32_t w = twice.terms().begin()->first.vertex.mask;
    const std::uint32_t diff = w & ~src.vertex;
    SquareFailure f;
    f.source = cx.vertex(src.vertex);
    f.target = cx.vertex(w);
    f.first_crossing = std::countr_zero(diff);
    f.second_crossing = 31 - std::countl_zero(diff);
    f.generator = render(cx.basis_element(g));
    f.residual = render(twice);
    report.failure = std::move(f);
    return report;
  }
  return report;
}

}  // namespace leetor

#endif  // LEETOR_CUBE_COMPLEX_HPP
