#ifndef LEETOR_RANDOM_DIAGRAM_HPP
#define LEETOR_RANDOM_DIAGRAM_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "leetor/diagram.hpp"
#include "leetor/errors.hpp"

namespace leetor {

/// Closure of a braid on `strands` strands. Letters are +-i for sigma_i^{+-1},
/// 1 <= i < strands; strands run upward.
inline Diagram braid_closure(int strands, const std::vector<int>& word) {
  if (word.empty()) throw Error(ErrorKind::MalformedPd, "empty braid word");
  std::vector<int> cur(static_cast<std::size_t>(strands));
  std::iota(cur.begin(), cur.end(), 0);
  int next_id = strands;
  std::vector<std::array<int, 4>> raw;
  for (int letter : word) {
    const int i = std::abs(letter) - 1;
    if (letter == 0 || i + 1 >= strands) throw Error(ErrorKind::MalformedPd, "braid letter out of range");
    const int sw = cur[static_cast<std::size_t>(i)];
    const int se = cur[static_cast<std::size_t>(i + 1)];
    const int nw = next_id++;
    const int ne = next_id++;
    if (letter > 0) raw.push_back({se, ne, nw, sw});
    else raw.push_back({sw, se, ne, nw});
    cur[static_cast<std::size_t>(i)] = nw;
    cur[static_cast<std::size_t>(i + 1)] = ne;
  }
  detail::DisjointSets ids(next_id);
  for (int p = 0; p < strands; ++p) ids.join(p, cur[static_cast<std::size_t>(p)]);
  std::map<int, int> label;
  for (auto& t : raw)
    for (int& e : t) {
      const int root = ids.find(e);
      auto it = label.try_emplace(root, static_cast<int>(label.size()) + 1).first;
      e = it->second;
    }
  return make_diagram(std::move(raw));
}

inline bool closes_to_knot(int strands, const std::vector<int>& word) {
  std::vector<int> perm(static_cast<std::size_t>(strands));
  std::iota(perm.begin(), perm.end(), 0);
  for (int letter : word) {
    const auto i = static_cast<std::size_t>(std::abs(letter) - 1);
    std::swap(perm[i], perm[i + 1]);
  }
  int p = 0;
  for (int len = 1; len <= strands; ++len) {
    p = perm[static_cast<std::size_t>(p)];
    if (p == 0) return len == strands;
  }
  return false;
}

/// A random knot diagram: closure of a random braid word on 2-4 strands with
/// between 3 and max_crossings letters, redrawn until the closure is a knot
/// and every generator appears.
inline Diagram random_knot_diagram(std::mt19937_64& rng, int max_crossings) {
  if (max_crossings < 3) throw Error(ErrorKind::SizeLimitExceeded, "random diagrams need at least 3 crossings");
  while (true) {
    const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
    const int length = std::uniform_int_distribution<int>(3, max_crossings)(rng);
    std::vector<int> word;
    std::vector<char> used(static_cast<std::size_t>(strands), 0);
    for (int n = 0; n < length; ++n) {
      const int i = std::uniform_int_distribution<int>(1, strands - 1)(rng);
      const int sign = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
      used[static_cast<std::size_t>(i)] = 1;
      word.push_back(sign * i);
    }
    bool all_used = true;
    for (int i = 1; i < strands; ++i) all_used = all_used && used[static_cast<std::size_t>(i)];
    if (!all_used || !closes_to_knot(strands, word)) continue;
    return braid_closure(strands, word);
  }
}

}  // namespace leetor

#endif  // LEETOR_RANDOM_DIAGRAM_HPP
