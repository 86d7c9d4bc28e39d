#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "endlab/errors.hpp"

namespace endlab {

// Depths N_1 < N_2 < ... and branch counts M_1, M_2, ...: every vertex at
// depth N_{n-1} (N_0 = 0, the root) has M_n descendants at depth N_n.
struct RegularTreeSpec {
  std::vector<std::int64_t> depths;
  std::vector<std::int64_t> branches;
  double alpha = 0.5;
};

inline void validate(const RegularTreeSpec& s) {
  std::vector<Violation> v;
  const auto H = s.depths.size();
  if (H < 3) v.push_back({"tree.depths", "horizon needs at least 3 terms"});
  if (s.branches.size() != H) v.push_back({"tree.branches", "needs one branch count per depth"});
  if (!(s.alpha > 0.0 && s.alpha < 1.0)) v.push_back({"tree.alpha", "must lie in (0,1)"});
  for (std::size_t i = 0; i < H; ++i)
    if (s.depths[i] <= (i ? s.depths[i - 1] : 0))
      v.push_back({"tree.depths/" + std::to_string(i), "depths must be positive and strictly increasing"});
  for (std::size_t i = 0; i < s.branches.size(); ++i)
    if (s.branches[i] < 1) v.push_back({"tree.branches/" + std::to_string(i), "must be >= 1"});
  // Finite stand-in for N_{n+1}/N_n -> 1.
  if (H >= 3 && v.empty()) {
    const double ratio = static_cast<double>(s.depths[H - 1]) / static_cast<double>(s.depths[H - 2]);
    if (ratio > 1.0 + 3.0 / static_cast<double>(H - 1))
      v.push_back({"tree.depths", "last depth ratio " + std::to_string(ratio) + " too far from 1 for horizon " + std::to_string(H)});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

struct TreeDimensionTerm {
  int n = 0;
  double value = 0.0;  // log(M_1 ... M_n) / (-N_n log alpha)
};

struct TreeDimensionResult {
  double value = 0.0;  // finite-horizon liminf
  std::vector<TreeDimensionTerm> terms;
  int argmin = 0;
};

// liminf over the horizon, read as the minimum over n in [ceil(H/2), H].
inline TreeDimensionResult regular_tree_dimension(const RegularTreeSpec& s) {
  validate(s);
  TreeDimensionResult r;
  const int H = static_cast<int>(s.depths.size());
  double log_count = 0.0;
  r.value = INFINITY;
  for (int n = 1; n <= H; ++n) {
    log_count += std::log(static_cast<double>(s.branches[static_cast<std::size_t>(n - 1)]));
    const double t = log_count / (-static_cast<double>(s.depths[static_cast<std::size_t>(n - 1)]) * std::log(s.alpha));
    r.terms.push_back({n, t});
    if (n >= (H + 1) / 2 && t < r.value) {
      r.value = t;
      r.argmin = n;
    }
  }
  return r;
}

struct TreeBoxCount {
  std::vector<std::uint64_t> level_sizes;  // |V_d| for d = 0..D
  double value = 0.0;                      // min over d in [D/2, D] of log|V_d| / (-d log alpha)
  int depth = 0;
  std::uint64_t vertices = 0;
};

// Builds the tree explicitly (each vertex at depth N_{n-1} branches at once
// into M_n children, each continuing as a chain down to depth N_n) and counts
// the alpha^d ball cover of its ends, which is |V_d|.
inline TreeBoxCount tree_box_count(const RegularTreeSpec& s, std::uint64_t vertex_cap = 5'000'000) {
  validate(s);
  struct Node {
    std::uint32_t parent;
    int depth;
  };
  const int D = static_cast<int>(s.depths.back());
  std::vector<Node> nodes{{0, 0}};
  std::vector<std::uint32_t> frontier{0};
  std::int64_t prev = 0;
  for (std::size_t n = 0; n < s.depths.size(); ++n) {
    std::vector<std::uint32_t> next;
    for (auto v : frontier)
      for (std::int64_t c = 0; c < s.branches[n]; ++c) {
        auto at = v;
        for (std::int64_t d = prev + 1; d <= s.depths[n]; ++d) {
          if (nodes.size() >= vertex_cap) throw ResourceError("synthetic tree exceeds the vertex cap", nodes.size());
          nodes.push_back({at, static_cast<int>(d)});
          at = static_cast<std::uint32_t>(nodes.size() - 1);
        }
        next.push_back(at);
      }
    frontier = std::move(next);
    prev = s.depths[n];
  }
  TreeBoxCount r;
  r.depth = D;
  r.vertices = nodes.size();
  r.level_sizes.assign(static_cast<std::size_t>(D) + 1, 0);
  for (const auto& nd : nodes) ++r.level_sizes[static_cast<std::size_t>(nd.depth)];
  r.value = INFINITY;
  for (int d = std::max(1, D / 2); d <= D; ++d)
    r.value = std::min(r.value, std::log(static_cast<double>(r.level_sizes[static_cast<std::size_t>(d)])) / (-d * std::log(s.alpha)));
  return r;
}

}  // namespace endlab
