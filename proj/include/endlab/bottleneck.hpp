#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/separation.hpp"
#include "endlab/sphere.hpp"
#include "endlab/window.hpp"

namespace endlab {

enum class Tri { False, True, Unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::False:
      return "false";
    case Tri::True:
      return "true";
    default:
      return "unknown";
  }
}

// Window test: removing the closed M-ball about `candidate` cuts x off from
// the shell point on the geodesic towards y's representative.
inline Tri detect_bottleneck(const CayleyWindow& w, const GroupElement& candidate, const GroupElement& x,
                             const EndApproximation& y, int M) {
  const auto& group = w.group();
  if (M < 0) throw PreconditionError("bottleneck diameter bound M must be >= 0");
  if (group.distance(candidate, x) <= M) return Tri::True;
  const auto vc = w.find(candidate), vx = w.find(x);
  if (!vc || !vx) return Tri::Unknown;
  if (w.distance(*vc) + M + kPrecisionMargin > w.radius()) return Tri::Unknown;
  GroupElement h = group.invert(w.basepoint());
  group.right_multiply(h, y.representative);
  if (group.word_length(h) < w.radius()) return Tri::Unknown;
  const auto target = w.find_offset(truncate_geodesic(group, h, w.radius()));
  if (!target) throw InternalError("shell point of a geodesic missing from the window");

  // Closed M-ball by BFS from the candidate; it stays clear of the shell.
  std::vector<int> ball(w.size(), -1);
  std::deque<std::uint32_t> q{*vc};
  ball[*vc] = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    if (ball[v] == M) continue;
    for (auto u : w.neighbors(v))
      if (u != CayleyWindow::kNone && ball[u] < 0) {
        ball[u] = ball[v] + 1;
        q.push_back(u);
      }
  }
  std::vector<char> seen(w.size(), 0);
  q.push_back(*vx);
  seen[*vx] = 1;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    if (v == *target) return Tri::False;
    for (auto u : w.neighbors(v))
      if (u != CayleyWindow::kNone && !seen[u] && ball[u] < 0) {
        seen[u] = 1;
        q.push_back(u);
      }
  }
  return Tri::True;  // the target sits on the shell, so its side is unbounded
}

// Normal-form certificate: syllable junctions on the geodesic x -> y, and
// interior vertices of rank-1 free syllables, are cut vertices of the Cayley
// graph. If one lies in the M-ball the ball is a bottleneck.
inline bool bottleneck_certificate(const Group& group, const GroupElement& candidate, const GroupElement& x,
                                   const EndApproximation& y, int M) {
  if (group.distance(candidate, x) <= M) return true;
  GroupElement h = group.invert(x);
  group.right_multiply(h, y.representative);
  GroupElement at = x;
  const auto& syl = h.syllables();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    if (group.distance(candidate, at) <= M) return true;
    const auto& f = group.factor(syl[i].factor);
    if (f.kind() == FactorKind::FreeAbelian && f.rank() == 1) {
      const auto path = f.canonical_path(syl[i].value);
      for (std::size_t k = 1; k + 1 < path.size(); ++k) {
        GroupElement v = at;
        group.right_multiply(v, GroupElement({Syllable{syl[i].factor, path[k]}}));
        if (group.distance(candidate, v) <= M) return true;
      }
    }
    group.right_multiply(at, GroupElement({syl[i]}));
  }
  return false;
}

struct ShadowMembership {
  Tri in_partial = Tri::Unknown;
  bool in_big = false;
};

// Big shadow: some geodesic from 1 to the representative meets B(g, M).
inline bool in_big_shadow(const Group& group, const GroupElement& g, const EndApproximation& xi, int M) {
  const auto L = group.word_length(xi.representative);
  for (const auto& b : enumerate_ball(group, M)) {
    GroupElement v = g;
    group.right_multiply(v, b);
    if (group.word_length(v) + group.distance(v, xi.representative) == L) return true;
  }
  return false;
}

// The window must be centred at the identity.
inline ShadowMembership shadow_membership(const CayleyWindow& w, const GroupElement& g, const EndApproximation& xi, int M) {
  if (!w.basepoint().is_identity()) throw PreconditionError("shadow membership needs a window centred at 1");
  ShadowMembership s;
  s.in_partial = detect_bottleneck(w, g, GroupElement{}, xi, M);
  s.in_big = in_big_shadow(w.group(), g, xi, M);
  return s;
}

}  // namespace endlab
