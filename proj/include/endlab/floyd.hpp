#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/window.hpp"

namespace endlab {

struct FloydResult {
  double value = 0.0;         // within the full window (radius W)
  double coarse_value = 0.0;  // within radius W-4; +inf if an endpoint lies outside
  int window_radius = 0;
  int coarse_radius = 0;
};

// Truncated Floyd distance: shortest path inside the window with edge
// weight lambda^{min(d(b,u), d(b,v))}. The metric basepoint b defaults to
// the window centre; another b reuses the same vertex set.
class FloydMetric {
 public:
  FloydMetric(const CayleyWindow& w, double lambda, std::optional<GroupElement> basepoint = std::nullopt)
      : window_(&w), lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("lambda must lie in (0,1)");
    const auto V = w.size();
    level_.resize(V);
    if (!basepoint || *basepoint == w.basepoint()) {
      for (std::uint32_t v = 0; v < V; ++v) level_[v] = w.distance(v);
    } else {
      const auto& g = w.group();
      // b^{-1} o h: distance from b to the vertex o h.
      GroupElement shift = g.invert(*basepoint);
      g.right_multiply(shift, w.basepoint());
      for (std::uint32_t v = 0; v < V; ++v) {
        GroupElement e = shift;
        g.right_multiply(e, w.offset(v));
        level_[v] = static_cast<int>(g.word_length(e));
      }
    }
  }

  double edge_weight(std::uint32_t u, std::uint32_t v) const { return std::pow(lambda_, std::min(level_[u], level_[v])); }

  FloydResult distance(const GroupElement& x, const GroupElement& y) const {
    const auto& w = *window_;
    const auto vx = w.find(x), vy = w.find(y);
    if (!vx || !vy || w.distance(*vx) > w.radius() - 2 || w.distance(*vy) > w.radius() - 2)
      throw PreconditionError("Floyd endpoints must lie within radius W-2 of the window centre");
    FloydResult r;
    r.window_radius = w.radius();
    r.coarse_radius = w.radius() - 4;
    r.value = dijkstra(*vx, *vy, w.radius());
    r.coarse_value = (r.coarse_radius >= 0 && w.distance(*vx) <= r.coarse_radius && w.distance(*vy) <= r.coarse_radius)
                         ? dijkstra(*vx, *vy, r.coarse_radius)
                         : std::numeric_limits<double>::infinity();
    return r;
  }

  // Shortest path restricted to vertices within `radius` of the window centre.
  double dijkstra(std::uint32_t s, std::uint32_t t, int radius) const {
    if (s == t) return 0.0;
    return run(s, t, radius)[t];
  }

  // Single-source distances within `radius`; +inf for vertices outside.
  std::vector<double> distances_from(std::uint32_t s, int radius) const { return run(s, CayleyWindow::kNone, radius); }

 private:
  std::vector<double> run(std::uint32_t s, std::uint32_t stop, int radius) const {
    const auto& w = *window_;
    std::vector<double> dist(w.size(), std::numeric_limits<double>::infinity());
    if (w.distance(s) > radius) return dist;
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      const auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      if (v == stop) break;
      for (auto u : w.neighbors(v)) {
        if (u == CayleyWindow::kNone || w.distance(u) > radius) continue;
        const double nd = d + edge_weight(v, u);
        if (nd < dist[u]) {
          dist[u] = nd;
          pq.push({nd, u});
        }
      }
    }
    return dist;
  }

  const CayleyWindow* window_;
  double lambda_;
  std::vector<int> level_;
};

inline FloydResult floyd_distance(const CayleyWindow& w, const GroupElement& x, const GroupElement& y, double lambda,
                                  std::optional<GroupElement> basepoint = std::nullopt) {
  return FloydMetric(w, lambda, std::move(basepoint)).distance(x, y);
}

}  // namespace endlab
