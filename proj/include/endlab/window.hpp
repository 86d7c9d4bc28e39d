#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/group.hpp"
#include "endlab/sphere.hpp"

namespace endlab {

inline constexpr std::uint64_t kDefaultVertexCap = 5'000'000;

// Ball of radius W about a basepoint o. Vertex v is o*h_v; the offsets h_v
// are stored as a trie (parent prefix + last syllable) so that no vertex owns
// a heap allocation. Vertices are in BFS order, so every distance level is a
// contiguous index range.
class CayleyWindow {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  CayleyWindow(const Group& group, int radius, GroupElement basepoint = {}, std::uint64_t vertex_cap = kDefaultVertexCap)
      : group_(&group), radius_(radius), basepoint_(std::move(basepoint)) {
    if (radius < 1) throw PreconditionError("window radius must be >= 1");
    group.validate(basepoint_);
    const auto predicted = ball_size(group, radius);
    if (predicted > vertex_cap) {
      int feasible = 0;
      while (feasible + 1 < radius && ball_size(group, feasible + 1) <= vertex_cap) ++feasible;
      throw ResourceError("window of radius " + std::to_string(radius) + " needs " + std::to_string(predicted) +
                              " vertices, over the cap of " + std::to_string(vertex_cap),
                          0, feasible);
    }
    build(static_cast<std::size_t>(predicted));
  }

  const Group& group() const noexcept { return *group_; }
  int radius() const noexcept { return radius_; }
  const GroupElement& basepoint() const noexcept { return basepoint_; }
  std::size_t size() const noexcept { return dist_.size(); }
  std::size_t degree() const noexcept { return group_->generators().size(); }

  int distance(std::uint32_t v) const { return dist_[v]; }
  bool on_shell(std::uint32_t v) const { return dist_[v] == radius_; }

  // Neighbours by generator index; kNone where the neighbour lies outside.
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + static_cast<std::size_t>(v) * degree(), degree()};
  }

  // First vertex index at distance d (level_begin(W+1) == size()).
  std::uint32_t level_begin(int d) const { return level_start_[static_cast<std::size_t>(std::clamp(d, 0, radius_ + 1))]; }

  GroupElement offset(std::uint32_t v) const {
    std::vector<Syllable> rev;
    for (auto u = v; u != 0; u = parent_[u]) rev.push_back(last_[u]);
    return GroupElement(std::vector<Syllable>(rev.rbegin(), rev.rend()));
  }

  GroupElement element(std::uint32_t v) const {
    GroupElement g = basepoint_;
    group_->right_multiply(g, offset(v));
    return g;
  }

  std::optional<std::uint32_t> find_offset(const GroupElement& h) const {
    std::uint32_t v = 0;
    for (const auto& s : h.syllables()) {
      auto it = children_.find(Key{v, s});
      if (it == children_.end()) return std::nullopt;
      v = it->second;
    }
    return v;
  }

  std::optional<std::uint32_t> find(const GroupElement& g) const {
    GroupElement h = group_->invert(basepoint_);
    group_->right_multiply(h, g);
    return find_offset(h);
  }

 private:
  struct Key {
    std::uint32_t parent;
    Syllable syl;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = mix64(k.parent ^ (std::uint64_t{k.syl.factor} << 32));
      for (auto x : k.syl.value) h = mix64(h ^ static_cast<std::uint32_t>(x));
      return static_cast<std::size_t>(h);
    }
  };

  std::uint32_t child(std::uint32_t parent, const Syllable& s, int d) {
    const Key key{parent, s};
    auto it = children_.find(key);
    if (it != children_.end()) return it->second;
    if (d > radius_) return kNone;
    const auto id = static_cast<std::uint32_t>(dist_.size());
    children_.emplace(key, id);
    parent_.push_back(parent);
    last_.push_back(s);
    dist_.push_back(d);
    return id;
  }

  void build(std::size_t expected) {
    parent_.reserve(expected);
    last_.reserve(expected);
    dist_.reserve(expected);
    children_.reserve(expected);
    parent_.push_back(kNone);
    last_.push_back(Syllable{});
    dist_.push_back(0);
    const auto& gens = group_->generators();
    const std::size_t deg = gens.size();
    adj_.assign(expected * deg, kNone);
    for (std::uint32_t v = 0; v < dist_.size(); ++v) {
      const int d = dist_[v];
      for (std::size_t gi = 0; gi < deg; ++gi) {
        const Syllable& s = gens[gi].syllables().front();
        const auto& f = group_->factor(s.factor);
        std::uint32_t w;
        if (v != 0 && last_[v].factor == s.factor) {
          const FactorValue nv = f.mul(last_[v].value, s.value);
          const auto p = parent_[v];
          if (f.is_identity(nv))
            w = p;
          else
            w = child(p, Syllable{s.factor, nv}, dist_[p] + static_cast<int>(f.length(nv)));
        } else {
          w = child(v, s, d + static_cast<int>(f.length(s.value)));
        }
        if (dist_.size() > expected) throw InternalError("window grew past its predicted size");
        adj_[static_cast<std::size_t>(v) * deg + gi] = w;
      }
    }
    if (dist_.size() != expected) throw InternalError("window size disagrees with the sphere counts");
    level_start_.assign(static_cast<std::size_t>(radius_) + 2, static_cast<std::uint32_t>(dist_.size()));
    for (std::uint32_t v = dist_.size(); v-- > 0;) level_start_[static_cast<std::size_t>(dist_[v])] = v;
    for (int d = radius_; d >= 0; --d)
      level_start_[static_cast<std::size_t>(d)] = std::min(level_start_[static_cast<std::size_t>(d)], level_start_[static_cast<std::size_t>(d) + 1]);
  }

  const Group* group_;
  int radius_;
  GroupElement basepoint_;
  std::vector<std::uint32_t> parent_;
  std::vector<Syllable> last_;
  std::vector<int> dist_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint32_t> level_start_;
  std::unordered_map<Key, std::uint32_t, KeyHash> children_;
};

inline CayleyWindow build_window(const Group& group, int radius, const GroupElement& basepoint = {},
                                 std::uint64_t vertex_cap = kDefaultVertexCap) {
  return CayleyWindow(group, radius, basepoint, vertex_cap);
}

}  // namespace endlab
