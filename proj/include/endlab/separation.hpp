#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/group.hpp"
#include "endlab/window.hpp"

namespace endlab {

inline constexpr int kPrecisionMargin = 4;

enum class EndOrigin { Trajectory, ExplicitRay };

// A deep vertex standing in for an end, valid for separation queries at
// radius <= precision (about the identity).
struct EndApproximation {
  GroupElement representative;
  int precision = 0;
  EndOrigin origin = EndOrigin::ExplicitRay;
};

inline EndApproximation make_end(const Group& group, GroupElement rep, int precision,
                                 EndOrigin origin = EndOrigin::ExplicitRay) {
  group.validate(rep);
  if (precision < 0) throw PreconditionError("end precision must be >= 0");
  if (group.word_length(rep) < precision + kPrecisionMargin)
    throw PreconditionError("representative " + group.format(rep) + " has length " + std::to_string(group.word_length(rep)) +
                            " < precision " + std::to_string(precision) + " + margin " + std::to_string(kPrecisionMargin));
  return {std::move(rep), precision, origin};
}

// prefix * step^k with k the least power reaching length >= depth; precision
// is set to length - margin.
inline EndApproximation ray_end(const Group& group, const GroupElement& prefix, const GroupElement& step, int depth) {
  group.validate(prefix);
  group.validate(step);
  if (step.is_identity()) throw PreconditionError("ray step must be nontrivial");
  GroupElement rep = prefix;
  std::int64_t last = -1;
  while (group.word_length(rep) < depth) {
    group.right_multiply(rep, step);
    const auto len = group.word_length(rep);
    if (len <= last) throw PreconditionError("ray step does not escape to infinity");
    last = len;
  }
  const int len = static_cast<int>(group.word_length(rep));
  return {std::move(rep), std::max(0, len - kPrecisionMargin), EndOrigin::ExplicitRay};
}

// Vertex at distance k along the normal-form geodesic from 1 to g.
inline GroupElement truncate_geodesic(const Group& group, const GroupElement& g, std::int64_t k) {
  std::vector<Syllable> out;
  for (const auto& s : g.syllables()) {
    if (k <= 0) break;
    const auto& f = group.factor(s.factor);
    const auto len = f.length(s.value);
    if (len <= k) {
      out.push_back(s);
      k -= len;
    } else {
      out.push_back(Syllable{s.factor, f.canonical_path(s.value)[static_cast<std::size_t>(k)]});
      k = 0;
    }
  }
  return GroupElement(std::move(out));
}

enum class SeparationStatus { Separated, SameWithinPrecision, Unknown };

struct SeparationResult {
  SeparationStatus status = SeparationStatus::Unknown;
  int radius = 0;             // minimal separating n when Separated
  int window_radius = 0;      // 0 for the exact normal-form route
  bool boundary_effect = false;
  int checked_up_to = 0;      // largest n examined

  bool separated() const noexcept { return status == SeparationStatus::Separated; }
  bool known() const noexcept { return status != SeparationStatus::Unknown; }
};

// Components of the induced subgraphs {d >= t}, t = 1..W, of a window, with
// a flag for components meeting the outer shell.
class ComponentLevels {
 public:
  explicit ComponentLevels(const CayleyWindow& w) : window_(&w) {
    const auto V = static_cast<std::uint32_t>(w.size());
    const int W = w.radius();
    std::vector<std::uint32_t> parent(V), size(V, 1);
    std::iota(parent.begin(), parent.end(), 0u);
    std::vector<char> shell(V, 0);
    auto find = [&](std::uint32_t v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    labels_.resize(static_cast<std::size_t>(W) + 1);
    shell_.resize(static_cast<std::size_t>(W) + 1);
    for (int t = W; t >= 1; --t) {
      const auto lo = w.level_begin(t), hi = w.level_begin(t + 1);
      for (auto v = lo; v < hi; ++v) {
        if (t == W) shell[v] = 1;
        for (auto u : w.neighbors(v)) {
          if (u == CayleyWindow::kNone || w.distance(u) < t) continue;
          auto a = find(v), b = find(u);
          if (a == b) continue;
          if (size[a] < size[b]) std::swap(a, b);
          parent[b] = a;
          size[a] += size[b];
          shell[a] = shell[a] || shell[b];
        }
      }
      auto& lab = labels_[static_cast<std::size_t>(t)];
      auto& sh = shell_[static_cast<std::size_t>(t)];
      lab.resize(V - lo);
      sh.resize(V - lo);
      for (auto v = lo; v < V; ++v) {
        const auto r = find(v);
        lab[v - lo] = r;
        sh[v - lo] = shell[r];
      }
    }
  }

  const CayleyWindow& window() const noexcept { return *window_; }

  // Component label of v in {d >= t}; v must satisfy d(v) >= t.
  std::uint32_t label(int t, std::uint32_t v) const {
    check(t, v);
    return labels_[static_cast<std::size_t>(t)][v - window_->level_begin(t)];
  }

  bool meets_shell(int t, std::uint32_t v) const {
    check(t, v);
    return shell_[static_cast<std::size_t>(t)][v - window_->level_begin(t)] != 0;
  }

  // Number of components of {d >= t} meeting the shell.
  std::uint64_t infinite_components(int t) const {
    const auto& lab = labels_.at(static_cast<std::size_t>(t));
    const auto& sh = shell_.at(static_cast<std::size_t>(t));
    const auto lo = window_->level_begin(t);
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < lab.size(); ++i)
      if (sh[i] && lab[i] == lo + i) ++n;  // roots label themselves
    return n;
  }

 private:
  void check(int t, std::uint32_t v) const {
    if (t < 1 || t > window_->radius() || window_->distance(v) < t)
      throw PreconditionError("component query outside the window levels");
  }

  const CayleyWindow* window_;
  std::vector<std::vector<std::uint32_t>> labels_;
  std::vector<std::vector<char>> shell_;
};

namespace detail {

inline int effective_cap(const Group& group, const EndApproximation& x, const EndApproximation& y, const GroupElement& o) {
  return std::min(x.precision, y.precision) - static_cast<int>(group.word_length(o));
}

}  // namespace detail

// Window route: minimal n >= 1 with the representatives (cut at the shell
// along their geodesics) in distinct components of {d >= n+1}.
inline SeparationResult separation_radius(const ComponentLevels& levels, const EndApproximation& x, const EndApproximation& y) {
  const auto& w = levels.window();
  const auto& group = w.group();
  SeparationResult r;
  r.window_radius = w.radius();
  const int cap = detail::effective_cap(group, x, y, w.basepoint());
  const GroupElement oinv = group.invert(w.basepoint());
  // The representative itself, or its geodesic's exit point on the shell.
  auto rep_vertex = [&](const EndApproximation& e) -> std::optional<std::uint32_t> {
    GroupElement h = oinv;
    group.right_multiply(h, e.representative);
    return w.find_offset(truncate_geodesic(group, h, w.radius()));
  };
  const auto vx = rep_vertex(x), vy = rep_vertex(y);
  if (!vx || !vy) throw InternalError("geodesic truncation missing from the window");
  if (cap < 1) {
    r.status = SeparationStatus::SameWithinPrecision;
    return r;
  }
  for (int n = 1; n <= cap; ++n) {
    const int t = n + 1;
    if (t > w.radius() - kPrecisionMargin) return r;  // unknown beyond the reliable levels
    if (w.distance(*vx) < t || w.distance(*vy) < t) return r;
    r.checked_up_to = n;
    if (levels.label(t, *vx) != levels.label(t, *vy)) {
      r.status = SeparationStatus::Separated;
      r.radius = n;
      r.boundary_effect = !levels.meets_shell(t, *vx) || !levels.meets_shell(t, *vy);
      return r;
    }
  }
  r.status = SeparationStatus::SameWithinPrecision;
  return r;
}

// Exact route for free products. Cosets of factors form a tree, so the ends
// first meet trouble at the first syllable where their normal forms differ.
inline SeparationResult separation_radius(const Group& group, const EndApproximation& x, const EndApproximation& y,
                                          const GroupElement& basepoint = {}) {
  SeparationResult r;
  const int cap = detail::effective_cap(group, x, y, basepoint);
  r.checked_up_to = std::max(0, cap);
  if (cap < 1) {
    r.status = SeparationStatus::SameWithinPrecision;
    return r;
  }
  GroupElement xs = group.invert(basepoint), ys = xs;
  group.right_multiply(xs, x.representative);
  group.right_multiply(ys, y.representative);
  const auto& a = xs.syllables();
  const auto& b = ys.syllables();
  std::size_t i = 0;
  std::int64_t p = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) {
    p += group.factor(a[i].factor).length(a[i].value);
    ++i;
  }
  auto finish = [&](std::int64_t n) {
    if (n <= cap) {
      r.status = SeparationStatus::Separated;
      r.radius = static_cast<int>(n);
    } else {
      r.status = SeparationStatus::SameWithinPrecision;
    }
    return r;
  };
  if (i == a.size() || i == b.size()) return finish(std::int64_t{cap} + 1);
  if (a[i].factor != b[i].factor) return finish(std::max<std::int64_t>(1, p));
  const auto& f = group.factor(a[i].factor);
  const auto lu = f.length(a[i].value), lw = f.length(b[i].value);
  for (std::int64_t n = std::max<std::int64_t>(1, p); n <= cap; ++n) {
    if (p + lu <= n || p + lw <= n || !f.same_component_outside(a[i].value, b[i].value, n + 1 - p)) return finish(n);
  }
  return finish(std::int64_t{cap} + 1);
}

// lambda^n, 0 for the same end at this resolution, nullopt when unknown.
inline std::optional<double> visual_distance(const SeparationResult& s, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("lambda must lie in (0,1)");
  switch (s.status) {
    case SeparationStatus::Separated:
      return std::pow(lambda, s.radius);
    case SeparationStatus::SameWithinPrecision:
      return 0.0;
    default:
      return std::nullopt;
  }
}

inline std::optional<double> visual_distance(const Group& group, const EndApproximation& x, const EndApproximation& y,
                                             double lambda, const GroupElement& basepoint = {}) {
  return visual_distance(separation_radius(group, x, y, basepoint), lambda);
}

inline std::optional<double> visual_distance(const ComponentLevels& levels, const EndApproximation& x,
                                             const EndApproximation& y, double lambda) {
  return visual_distance(separation_radius(levels, x, y), lambda);
}

}  // namespace endlab
