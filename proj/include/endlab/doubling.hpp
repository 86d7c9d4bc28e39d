#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "endlab/dimension.hpp"
#include "endlab/errors.hpp"
#include "endlab/group.hpp"
#include "endlab/separation.hpp"

namespace endlab {

inline constexpr int kDoublingK = 2;  // theta = lambda^(k+1)

struct PackingReport {
  EndApproximation center;
  int n = 0;
  int theta_exponent = kDoublingK + 1;
  double theta = 0.0;
  std::uint64_t packing = 0;  // N(n)
  std::vector<EndApproximation> witnesses;
  std::uint64_t candidates = 0;
  std::uint64_t in_ball = 0;
  bool low_support = false;
  bool verified = false;
  std::string mode;
};

namespace detail {

// Separation radius with "same within precision" mapped past every level.
inline int separation_level(const Group& group, const EndApproximation& a, const EndApproximation& b) {
  const auto s = separation_radius(group, a, b);
  if (!s.known()) throw InternalError("exact separation returned unknown");
  return s.separated() ? s.radius : std::min(a.precision, b.precision) + 1;
}

}  // namespace detail

// Witness check by direct recomputation: containment sep(center, w) >= n and
// pairwise rho > theta lambda^n, i.e. sep < n + theta_exponent.
inline bool verify_packing(const Group& group, const PackingReport& r) {
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    if (detail::separation_level(group, r.center, r.witnesses[i]) < r.n) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (detail::separation_level(group, r.witnesses[i], r.witnesses[j]) >= r.n + r.theta_exponent) return false;
  }
  return true;
}

// Greedy maximal theta lambda^n-separated subset of the candidates inside
// B(center, lambda^n), scanning candidates in canonical order.
inline PackingReport greedy_packing(const Group& group, const EndApproximation& center, std::vector<EndApproximation> candidates,
                                    int n, int theta_exponent, double lambda, std::string mode) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("lambda must lie in (0,1)");
  if (n < 0 || theta_exponent < 1) throw PreconditionError("packing needs n >= 0 and theta exponent >= 1");
  const int need = n + theta_exponent;
  if (center.precision < need) throw PreconditionError("center precision below packing depth " + std::to_string(need));
  std::stable_sort(candidates.begin(), candidates.end(), [&](const EndApproximation& a, const EndApproximation& b) {
    return group.canonical_less(a.representative, b.representative);
  });
  PackingReport r;
  r.center = center;
  r.n = n;
  r.theta_exponent = theta_exponent;
  r.theta = std::pow(lambda, theta_exponent);
  r.candidates = candidates.size();
  r.mode = std::move(mode);
  for (auto& c : candidates) {
    if (c.precision < need) throw PreconditionError("candidate precision below packing depth " + std::to_string(need));
    if (detail::separation_level(group, center, c) < n) continue;
    ++r.in_ball;
    bool ok = true;
    for (const auto& w : r.witnesses)
      if (detail::separation_level(group, c, w) >= need) {
        ok = false;
        break;
      }
    if (ok) r.witnesses.push_back(std::move(c));
  }
  r.packing = r.witnesses.size();
  r.verified = verify_packing(group, r);
  return r;
}

// y extended to an end leaving through the factors after its last syllable:
// a single power of a free abelian factor, otherwise alternating generators.
inline EndApproximation escape_end(const Group& group, const GroupElement& y, int extra) {
  const auto& syl = y.syllables();
  const auto F = group.factor_count();
  const std::size_t last = syl.empty() ? F : syl.back().factor;
  std::size_t g1 = 0;
  while (g1 == last) ++g1;
  std::size_t g2 = 0;
  while (g2 == g1) ++g2;
  GroupElement rep = y;
  const auto target = group.word_length(y) + extra;
  const auto& f1 = group.factor(g1);
  if (f1.kind() == FactorKind::FreeAbelian) {
    FactorValue v = f1.generators().front();
    for (auto& c : v) c *= static_cast<std::int32_t>(extra);
    group.right_multiply(rep, GroupElement({Syllable{static_cast<std::uint32_t>(g1), v}}));
  } else {
    const GroupElement s1({Syllable{static_cast<std::uint32_t>(g1), f1.generators().front()}});
    const GroupElement s2({Syllable{static_cast<std::uint32_t>(g2), group.factor(g2).generators().front()}});
    for (bool first = true; group.word_length(rep) < target; first = !first) group.right_multiply(rep, first ? s1 : s2);
  }
  const int len = static_cast<int>(group.word_length(rep));
  return {std::move(rep), len - kPrecisionMargin, EndOrigin::ExplicitRay};
}

// Vertices at `depth` connected to the center's n-truncation through the
// annulus n <= d <= depth, each extended to an end.
inline std::vector<EndApproximation> enumerate_ball_ends(const Group& group, const EndApproximation& center, int n, int depth,
                                                         std::uint64_t budget = 2'000'000) {
  if (depth < n) throw PreconditionError("enumeration depth below the ball level");
  const auto c = truncate_geodesic(group, center.representative, n);
  std::unordered_set<GroupElement, ElementHash> seen{c};
  std::deque<GroupElement> q{c};
  std::vector<GroupElement> found;
  while (!q.empty()) {
    auto g = std::move(q.front());
    q.pop_front();
    const auto d = group.word_length(g);
    if (d == depth) {
      found.push_back(g);
      continue;
    }
    for (const auto& s : group.generators()) {
      GroupElement h = g;
      group.right_multiply(h, s);
      const auto dh = group.word_length(h);
      if (dh < n || dh > depth || seen.count(h)) continue;
      if (seen.size() >= budget) throw ResourceError("ball enumeration exceeds the budget", seen.size());
      seen.insert(h);
      q.push_back(std::move(h));
    }
  }
  std::vector<EndApproximation> out;
  out.reserve(found.size());
  for (const auto& y : found) out.push_back(escape_end(group, y, 2 * kPrecisionMargin));
  return out;
}

inline std::vector<PackingReport> doubling_enumeration(const Group& group, const EndApproximation& center, int n_from, int n_to,
                                                       double lambda, int theta_exponent = kDoublingK + 1) {
  std::vector<PackingReport> out;
  for (int n = n_from; n <= n_to; ++n)
    out.push_back(greedy_packing(group, center, enumerate_ball_ends(group, center, n, n + theta_exponent), n, theta_exponent,
                                 lambda, "enumeration"));
  return out;
}

inline std::vector<PackingReport> doubling_bank(const Group& group, const SampleBank& bank, std::size_t center, int n_from,
                                                int n_to, double lambda, int theta_exponent = kDoublingK + 1) {
  if (center >= bank.ends.size()) throw PreconditionError("center index outside the bank");
  std::vector<PackingReport> out;
  for (int n = n_from; n <= n_to; ++n) {
    auto r = greedy_packing(group, bank.ends[center], bank.ends, n, theta_exponent, lambda, "bank");
    r.low_support = r.in_ball < kMinLevelCount;
    out.push_back(std::move(r));
  }
  return out;
}

struct ConstructionScale {
  std::uint64_t sphere_size = 0;      // #S_{n+k}(H)
  std::uint64_t separated_subset = 0; // 2-separated greedy subset
};

// Packing witnesses eta(h) = h followed by an exit from H, for h in a
// 2-separated subset of the sphere S_{n+k}(H) of a one-ended factor H; the
// center is the end of H itself.
inline std::vector<PackingReport> doubling_construction(const Group& group, std::size_t H, int n_from, int n_to, double lambda,
                                                        int k = kDoublingK, std::vector<ConstructionScale>* scales = nullptr) {
  if (H >= group.factor_count()) throw PreconditionError("construction factor index out of range");
  const auto& f = group.factor(H);
  if (f.kind() != FactorKind::FreeAbelian || f.rank() < 2)
    throw PreconditionError("construction mode needs a one-ended factor (Z^d, d >= 2); got " + f.name());
  const auto h32 = static_cast<std::uint32_t>(H);
  FactorValue deep = f.generators().front();
  const int L = n_to + k + 1 + 2 * kPrecisionMargin;
  for (auto& c : deep) c *= L;
  const auto center = make_end(group, GroupElement({Syllable{h32, deep}}), L - kPrecisionMargin);
  std::vector<PackingReport> out;
  for (int n = n_from; n <= n_to; ++n) {
    auto sphere = f.sphere(n + k);
    std::sort(sphere.begin(), sphere.end());
    std::vector<FactorValue> picked;
    for (const auto& v : sphere)
      if (std::all_of(picked.begin(), picked.end(), [&](const FactorValue& u) { return f.distance(u, v) >= 2; })) picked.push_back(v);
    std::vector<EndApproximation> witnesses;
    for (const auto& v : picked) witnesses.push_back(escape_end(group, GroupElement({Syllable{h32, v}}), n + k + 1 + kPrecisionMargin));
    out.push_back(greedy_packing(group, center, std::move(witnesses), n, k + 1, lambda, "construction"));
    if (scales) scales->push_back({sphere.size(), picked.size()});
  }
  return out;
}

// Components of {d >= n + theta_exponent} meeting the shell inside the
// center's component of {d >= n}: the cover count at radius theta lambda^n.
inline std::uint64_t cover_count(const ComponentLevels& levels, const EndApproximation& center, int n, int theta_exponent) {
  const auto& w = levels.window();
  const auto& group = w.group();
  const int t = n + theta_exponent;
  if (n < 1 || t > w.radius()) throw PreconditionError("cover count levels outside the window");
  GroupElement h = group.invert(w.basepoint());
  group.right_multiply(h, center.representative);
  const auto vc = w.find_offset(truncate_geodesic(group, h, n));
  if (!vc) throw InternalError("center truncation missing from the window");
  const auto home = levels.label(n, *vc);
  std::unordered_set<std::uint32_t> labels;
  for (auto v = w.level_begin(t); v < w.size(); ++v)
    if (levels.meets_shell(t, v) && levels.label(n, v) == home) labels.insert(levels.label(t, v));
  return labels.size();
}

}  // namespace endlab
