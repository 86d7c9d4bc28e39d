#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "endlab/group.hpp"
#include "endlab/measure.hpp"
#include "endlab/parallel.hpp"
#include "endlab/stats.hpp"
#include "endlab/walk.hpp"

namespace endlab {

// Transition structure of the normal-form geodesic 1 -> g. A vertex at
// position t is deep iff [t-R, t+R] lies inside one peripheral syllable
// segment; everything else is a transition point.
class TransitionProfile {
 public:
  TransitionProfile(const Group& group, const GroupElement& g, int R) : length_(group.word_length(g)) {
    if (R < 1) throw PreconditionError("transition radius R must be >= 1");
    segments_ = group.geodesic_segments(g);
    for (const auto& s : segments_)
      if (s.peripheral && s.end - s.begin >= 2 * R) deep_.push_back({s.begin + R, s.end - R});
  }

  std::int64_t length() const noexcept { return length_; }

  bool is_transition(std::int64_t t) const {
    for (const auto& [a, b] : deep_)
      if (a <= t && t <= b) return false;
    return true;
  }

  // Distance along the geodesic from position t to the nearest transition.
  std::int64_t nearest(std::int64_t t) const {
    for (const auto& [a, b] : deep_)
      if (a <= t && t <= b) return std::min(t - (a - 1), (b + 1) - t);
    return 0;
  }

  std::vector<std::int64_t> transitions() const {
    std::vector<std::int64_t> out;
    for (std::int64_t t = 0; t <= length_; ++t)
      if (is_transition(t)) out.push_back(t);
    return out;
  }

 private:
  std::int64_t length_;
  std::vector<GeodesicSegment> segments_;
  std::vector<std::pair<std::int64_t, std::int64_t>> deep_;
};

inline std::vector<std::int64_t> transition_points(const Group& group, const GroupElement& g, int R) {
  group.validate(g);
  return TransitionProfile(group, g, R).transitions();
}

// d(x, Tr alpha) for alpha the normal-form geodesic 1 -> g, using the
// tree-of-cosets structure: paths from x reach alpha through the first
// syllable where the normal forms of x and g disagree.
inline std::int64_t distance_to_transitions(const Group& group, const GroupElement& x, const GroupElement& g,
                                            const TransitionProfile& profile) {
  const auto& xs = x.syllables();
  const auto& gs = g.syllables();
  std::size_t i = 0;
  std::int64_t p = 0;
  while (i < xs.size() && i < gs.size() && xs[i] == gs[i]) {
    p += group.factor(xs[i].factor).length(xs[i].value);
    ++i;
  }
  const std::int64_t lx = group.word_length(x);
  if (i == xs.size() || i == gs.size() || xs[i].factor != gs[i].factor) return (lx - p) + profile.nearest(p);

  const auto& f = group.factor(xs[i].factor);
  const FactorValue& u = xs[i].value;
  const std::int64_t rest = lx - p - f.length(u);
  const auto path = f.canonical_path(gs[i].value);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t k = 0; k < path.size(); ++k)
    if (profile.is_transition(p + static_cast<std::int64_t>(k))) best = std::min(best, f.distance(u, path[k]));
  return rest + best;
}

struct TrackingRow {
  std::int64_t n = 0;
  EstimateWithError transition_distance;  // mean d(omega_n, Tr alpha)/n
  EstimateWithError coset_sup;            // mean sup_U d_U(1, omega_n)/n
};

struct TrackingReport {
  std::vector<TrackingRow> rows;
  double transition_slope = 0.0;
  double coset_slope = 0.0;
  int R = 2;
  std::int64_t N = 0;
  std::int64_t M = 0;
};

inline std::vector<std::int64_t> tracking_checkpoints(std::int64_t N, std::int64_t stride, double kappa = 0.5) {
  const auto top = static_cast<std::int64_t>(kappa * static_cast<double>(N));
  if (stride <= 0) stride = std::max<std::int64_t>(1, top / 10);
  std::vector<std::int64_t> out;
  for (std::int64_t n = stride; n <= top; n += stride) out.push_back(n);
  return out;
}

// alpha is the normal-form geodesic from 1 to omega_N; checkpoints stop at
// kappa*N so the terminal segment pins down the end.
inline TrackingReport tracking_diagnostic(const StepDistribution& mu, std::int64_t N, std::int64_t M, std::uint64_t seed,
                                          int R = 2, std::int64_t stride = 100, double kappa = 0.5) {
  if (N < 2 || M < 1) throw PreconditionError("tracking_diagnostic needs N >= 2, M >= 1");
  const auto& group = mu.group();
  const auto checks = tracking_checkpoints(N, stride, kappa);
  if (checks.empty()) throw PreconditionError("no tracking checkpoints below kappa*N");
  const std::size_t C = checks.size();
  std::vector<double> tr(static_cast<std::size_t>(M) * C), cs(static_cast<std::size_t>(M) * C);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t w) {
    std::vector<GroupElement> at;
    at.reserve(C);
    std::size_t next = 0;
    GroupElement end;
    run_walk(mu, N, seed, w, [&](std::int64_t n, const GroupElement& g) {
      if (next < C && n == checks[next]) {
        at.push_back(g);
        ++next;
      }
      if (n == N) end = g;
    });
    const TransitionProfile profile(group, end, R);
    for (std::size_t c = 0; c < C; ++c) {
      const double n = static_cast<double>(checks[c]);
      tr[w * C + c] = static_cast<double>(distance_to_transitions(group, at[c], end, profile)) / n;
      cs[w * C + c] = static_cast<double>(group.coset_projection_sup(at[c]).value) / n;
    }
  });
  TrackingReport r;
  r.R = R;
  r.N = N;
  r.M = M;
  std::vector<double> xs, ytr, ycs;
  for (std::size_t c = 0; c < C; ++c) {
    std::vector<double> a(static_cast<std::size_t>(M)), b(static_cast<std::size_t>(M));
    for (std::size_t w = 0; w < static_cast<std::size_t>(M); ++w) {
      a[w] = tr[w * C + c];
      b[w] = cs[w * C + c];
    }
    TrackingRow row;
    row.n = checks[c];
    row.transition_distance = {mean(a), standard_error(a), static_cast<std::uint64_t>(M), "mean d(w_n, Tr alpha)/n"};
    row.coset_sup = {mean(b), standard_error(b), static_cast<std::uint64_t>(M), "mean sup_U d_U(1, w_n)/n"};
    r.rows.push_back(row);
    xs.push_back(static_cast<double>(checks[c]));
    ytr.push_back(row.transition_distance.value);
    ycs.push_back(row.coset_sup.value);
  }
  if (C >= 2) {
    r.transition_slope = linear_fit(xs, ytr).slope;
    r.coset_slope = linear_fit(xs, ycs).slope;
  }
  return r;
}

}  // namespace endlab
