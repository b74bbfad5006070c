#ifndef LEETOR_DIAGRAM_HPP
#define LEETOR_DIAGRAM_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leetor/errors.hpp"

namespace leetor {

/// Edge positions around a crossing, named after the resolution picture:
/// i top-left, j bottom-left, k top-right, l bottom-right, with the over
/// strand running j-k and the under strand i-l. The 0-resolution joins (i,j)
/// and (k,l); the 1-resolution joins (i,k) and (j,l). (j,k) and (i,l) are the
/// diagonal pairs.
struct LocalLabels {
  int i = 0;
  int j = 0;
  int k = 0;
  int l = 0;
};

/// One PD tuple X[a,b,c,d]: a is the incoming under-strand, then
/// counterclockwise. The sign is derived from the orientation of the over
/// strand (entering at d means positive).
struct Crossing {
  std::array<int, 4> edges{};
  int sign = 0;

  int under_in() const { return edges[0]; }
  int under_out() const { return edges[2]; }
  int over_in() const { return sign > 0 ? edges[3] : edges[1]; }
  int over_out() const { return sign > 0 ? edges[1] : edges[3]; }

  LocalLabels local_labels() const { return {edges[2], edges[3], edges[1], edges[0]}; }

  std::array<std::pair<int, int>, 2> smoothing(int bit) const {
    if (bit == 0) return {{{edges[0], edges[1]}, {edges[2], edges[3]}}};
    return {{{edges[0], edges[3]}, {edges[1], edges[2]}}};
  }
};

/// A cube vertex: bit i of mask is the resolution chosen at crossing i.
struct Vertex {
  std::uint32_t mask = 0;
  int n = 0;

  int operator[](int i) const { return static_cast<int>((mask >> i) & 1u); }
  int weight() const { return std::popcount(mask); }
  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = (*this)[i] ? '1' : '0';
    return s;
  }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

class Diagram {
 public:
  Diagram() = default;

  static Diagram unknot() {
    Diagram d;
    d.edge_count_ = 1;
    d.component_count_ = 1;
    return d;
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(int c) const { return crossings_.at(static_cast<std::size_t>(c)); }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int edge_count() const { return edge_count_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  int component_count() const { return component_count_; }
  bool is_knot() const { return component_count_ == 1; }

  std::string to_pd() const {
    std::string out;
    for (const auto& x : crossings_) {
      if (!out.empty()) out += ' ';
      out += "X[" + std::to_string(x.edges[0]) + "," + std::to_string(x.edges[1]) + "," +
             std::to_string(x.edges[2]) + "," + std::to_string(x.edges[3]) + "]";
    }
    return out;
  }

  friend Diagram make_diagram(std::vector<std::array<int, 4>> tuples);

 private:
  std::vector<Crossing> crossings_;
  int edge_count_ = 0;
  int n_plus_ = 0;
  int n_minus_ = 0;
  int component_count_ = 0;
};

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

struct Incidence {
  int crossing = -1;
  int slot = -1;
};

}  // namespace detail

/// Validates raw PD tuples, orients every component and derives crossing
/// signs. Edge labels must be exactly 1..m with each label used twice.
inline Diagram make_diagram(std::vector<std::array<int, 4>> tuples) {
  Diagram d;
  const int n = static_cast<int>(tuples.size());
  if (n == 0) throw Error(ErrorKind::MalformedPd, "empty PD code (use the unknot marker)");

  int max_label = 0;
  for (const auto& t : tuples)
    for (int e : t) {
      if (e <= 0) throw Error(ErrorKind::EdgeCountViolation, "edge labels must be positive");
      max_label = std::max(max_label, e);
    }
  const int m = max_label;
  std::vector<std::vector<detail::Incidence>> inc(static_cast<std::size_t>(m + 1));
  for (int x = 0; x < n; ++x)
    for (int s = 0; s < 4; ++s)
      inc[static_cast<std::size_t>(tuples[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)])]
          .push_back({x, s});
  for (int e = 1; e <= m; ++e)
    if (inc[static_cast<std::size_t>(e)].size() != 2)
      throw Error(ErrorKind::EdgeCountViolation,
                  "edge " + std::to_string(e) + " appears " +
                      std::to_string(inc[static_cast<std::size_t>(e)].size()) + " times");

  auto at = [&](int x, int s) {
    return tuples[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)];
  };
  // The other end of edge e, given one of its incidences.
  auto other_end = [&](int e, detail::Incidence from) {
    const auto& pair = inc[static_cast<std::size_t>(e)];
    if (pair[0].crossing == from.crossing && pair[0].slot == from.slot) return pair[1];
    return pair[0];
  };

  // Walk each component. direction[x][strand] records the slot through which
  // the walk entered crossing x on that strand (strand 0 = under, 1 = over).
  std::vector<std::array<int, 2>> entered(static_cast<std::size_t>(n), {-1, -1});
  std::vector<int> component_of_edge(static_cast<std::size_t>(m + 1), -1);
  int components = 0;
  for (int start = 1; start <= m; ++start) {
    if (component_of_edge[static_cast<std::size_t>(start)] >= 0) continue;
    const int comp = components++;
    // Leave from incidence 0 of the start edge, arrive at incidence 1.
    struct Pass {
      int crossing;
      int in_slot;
    };
    std::vector<Pass> passes;
    int e = start;
    detail::Incidence arrive = inc[static_cast<std::size_t>(e)][1];
    while (true) {
      component_of_edge[static_cast<std::size_t>(e)] = comp;
      passes.push_back({arrive.crossing, arrive.slot});
      const int out_slot = (arrive.slot + 2) % 4;
      const detail::Incidence leave{arrive.crossing, out_slot};
      const int next = at(arrive.crossing, out_slot);
      const detail::Incidence next_arrive = other_end(next, leave);
      if (next == start && next_arrive.crossing == inc[static_cast<std::size_t>(start)][1].crossing &&
          next_arrive.slot == inc[static_cast<std::size_t>(start)][1].slot)
        break;
      e = next;
      arrive = next_arrive;
      if (passes.size() > static_cast<std::size_t>(4 * n + 4))
        throw Error(ErrorKind::MalformedPd, "strand walk did not close");
    }
    // Under passes fix the direction: entering an under strand at slot 0 is forward.
    int forward = 0;
    int backward = 0;
    for (const auto& p : passes) {
      if (p.in_slot == 0) ++forward;
      if (p.in_slot == 2) ++backward;
    }
    if (forward > 0 && backward > 0)
      throw Error(ErrorKind::InconsistentOrientation,
                  "component through edge " + std::to_string(start) +
                      " runs both ways along under-strands");
    bool reversed = backward > 0;
    if (forward == 0 && backward == 0) {
      // Only over passes: follow increasing edge labels where possible.
      const int first_out = at(passes.front().crossing, (passes.front().in_slot + 2) % 4);
      reversed = first_out != start + 1;
    }
    for (const auto& p : passes) {
      const int in_slot = reversed ? (p.in_slot + 2) % 4 : p.in_slot;
      entered[static_cast<std::size_t>(p.crossing)][static_cast<std::size_t>(in_slot % 2)] = in_slot;
    }
  }

  // Planarity: the rotation system must close into V - E + F = 1 + (graph components).
  {
    detail::DisjointSets graph(n);
    for (int e = 1; e <= m; ++e)
      graph.join(inc[static_cast<std::size_t>(e)][0].crossing, inc[static_cast<std::size_t>(e)][1].crossing);
    int graph_components = 0;
    for (int x = 0; x < n; ++x)
      if (graph.find(x) == x) ++graph_components;
    std::vector<char> seen(static_cast<std::size_t>(4 * n), 0);
    int faces = 0;
    for (int dart = 0; dart < 4 * n; ++dart) {
      if (seen[static_cast<std::size_t>(dart)]) continue;
      ++faces;
      int cur = dart;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = 1;
        const detail::Incidence from{cur / 4, cur % 4};
        const detail::Incidence to = other_end(at(from.crossing, from.slot), from);
        cur = to.crossing * 4 + (to.slot + 1) % 4;
      }
    }
    if (n - 2 * n + faces != 1 + graph_components)
      throw Error(ErrorKind::NonPlanar, "PD code does not describe a planar diagram");
  }

  for (int x = 0; x < n; ++x) {
    Crossing c;
    c.edges = tuples[static_cast<std::size_t>(x)];
    const auto& dir = entered[static_cast<std::size_t>(x)];
    if (dir[0] != 0)
      throw Error(ErrorKind::InconsistentOrientation,
                  "crossing " + std::to_string(x + 1) + " under-strand is not entered at its first slot");
    c.sign = dir[1] == 3 ? +1 : -1;
    (c.sign > 0 ? d.n_plus_ : d.n_minus_)++;
    d.crossings_.push_back(c);
  }
  d.edge_count_ = m;
  d.component_count_ = components;
  return d;
}

/// Parses `X[a,b,c,d]` tuples separated by whitespace or commas, optionally
/// wrapped in `PD[...]`.
inline Diagram parse_pd(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::MalformedPd, why + " at offset " + std::to_string(pos));
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch) throw fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  auto number = [&] {
    skip();
    const std::size_t begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (begin == pos) throw fail("expected an edge label");
    if (pos - begin > 6) throw fail("edge label too large");
    return std::stoi(std::string(text.substr(begin, pos - begin)));
  };

  skip();
  bool wrapped = false;
  if (text.substr(pos, 3) == "PD[") {
    wrapped = true;
    pos += 3;
  }
  std::vector<std::array<int, 4>> tuples;
  while (true) {
    skip();
    if (pos >= text.size() || text[pos] == ']') break;
    if (text[pos] != 'X') throw fail("expected 'X['");
    ++pos;
    expect('[');
    std::array<int, 4> t{};
    for (int s = 0; s < 4; ++s) t[static_cast<std::size_t>(s)] = number();
    expect(']');
    tuples.push_back(t);
  }
  if (wrapped) expect(']');
  skip();
  if (pos != text.size()) throw fail("trailing characters");
  if (tuples.empty()) throw Error(ErrorKind::MalformedPd, "no crossings in PD code");
  return make_diagram(std::move(tuples));
}

inline int writhe(const Diagram& d) { return d.n_plus() - d.n_minus(); }

/// The partition of edges into circles of D_v. Circles are numbered by their
/// smallest edge label, ascending.
struct Resolution {
  Vertex vertex;
  std::vector<int> circle_of_edge;  // indexed by edge label; slot 0 unused
  std::vector<int> min_edge;        // smallest edge label on each circle
  int k = 0;

  int circle(int edge) const { return circle_of_edge.at(static_cast<std::size_t>(edge)); }
};

inline Resolution resolve(const Diagram& d, Vertex v) {
  if (v.n != d.crossing_count())
    throw Error(ErrorKind::VertexMismatch, "vertex length differs from crossing count");
  const int m = d.edge_count();
  detail::DisjointSets sets(m + 1);
  for (int x = 0; x < d.crossing_count(); ++x)
    for (const auto& [p, q] : d.crossing(x).smoothing(v[x])) sets.join(p, q);
  Resolution r;
  r.vertex = v;
  r.circle_of_edge.assign(static_cast<std::size_t>(m + 1), -1);
  std::vector<int> id_of_root(static_cast<std::size_t>(m + 1), -1);
  for (int e = 1; e <= m; ++e) {
    const int root = sets.find(e);
    auto& id = id_of_root[static_cast<std::size_t>(root)];
    if (id < 0) {
      id = r.k++;
      r.min_edge.push_back(e);
    }
    r.circle_of_edge[static_cast<std::size_t>(e)] = id;
  }
  return r;
}

/// Reverses one crossing: the over strand becomes the under strand.
inline Diagram change_crossing(const Diagram& d, int c) {
  std::vector<std::array<int, 4>> tuples;
  for (int x = 0; x < d.crossing_count(); ++x) {
    auto t = d.crossing(x).edges;
    if (x == c) {
      if (d.crossing(x).sign > 0) t = {t[3], t[0], t[1], t[2]};
      else t = {t[1], t[2], t[3], t[0]};
    }
    tuples.push_back(t);
  }
  return make_diagram(std::move(tuples));
}

inline Diagram mirror(const Diagram& d) {
  if (d.crossing_count() == 0) return d;
  Diagram out = d;
  for (int x = 0; x < d.crossing_count(); ++x) out = change_crossing(out, x);
  return out;
}

/// Same diagram with crossing c listed last (used for cube sign bookkeeping).
inline Diagram move_crossing_last(const Diagram& d, int c) {
  std::vector<std::array<int, 4>> tuples;
  for (int x = 0; x < d.crossing_count(); ++x)
    if (x != c) tuples.push_back(d.crossing(x).edges);
  tuples.push_back(d.crossing(c).edges);
  return make_diagram(std::move(tuples));
}

}  // namespace leetor

#endif  // LEETOR_DIAGRAM_HPP
