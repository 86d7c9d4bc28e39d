#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "endlab/group.hpp"
#include "endlab/rng.hpp"

namespace endlab::testing {

inline Group f2() { return Group(free_group_spec(2)); }

inline Group z3z3() {
  GroupSpec s;
  s.factors = {cyclic_factor("a", 3), cyclic_factor("b", 3)};
  return Group(s);
}

inline Group z2z() {
  GroupSpec s;
  s.factors = {free_abelian_factor("z", 2), free_abelian_factor("t", 1)};
  return Group(s);
}

// Product of `steps` uniformly chosen generators, reduced.
inline GroupElement random_element(const Group& g, Rng& rng, int steps) {
  GroupElement x;
  const auto& gens = g.generators();
  for (int i = 0; i < steps; ++i) g.right_multiply(x, gens[uniform_index(rng, gens.size())]);
  return x;
}

// Plain BFS over group elements from the identity, independent of the
// window's trie construction.
inline std::unordered_map<GroupElement, int, ElementHash> bfs_ball(const Group& g, int radius) {
  std::unordered_map<GroupElement, int, ElementHash> dist{{GroupElement{}, 0}};
  std::deque<GroupElement> queue{GroupElement{}};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    const int d = dist[x];
    if (d == radius) continue;
    for (const auto& s : g.generators()) {
      auto y = g.multiply(x, s);
      if (dist.emplace(y, d + 1).second) queue.push_back(y);
    }
  }
  return dist;
}

}  // namespace endlab::testing
