#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "endlab/bottleneck.hpp"
#include "endlab/floyd.hpp"
#include "endlab/measure.hpp"
#include "endlab/separation.hpp"
#include "endlab/tracking.hpp"
#include "endlab/walk.hpp"
#include "test_support.hpp"

using namespace endlab;
using namespace endlab::testing;

namespace {

EndApproximation end_of(const Group& g, const char* word, int precision) { return make_end(g, g.parse(word), precision); }

// Independent Bellman-Ford over the explicit BFS ball, for the Floyd oracle.
double bellman_ford(const Group& g, int W, const GroupElement& x, const GroupElement& y, double lambda) {
  const auto ball = bfs_ball(g, W);
  std::vector<GroupElement> verts;
  for (const auto& [e, d] : ball) verts.push_back(e);
  std::unordered_map<GroupElement, double, ElementHash> dist;
  for (const auto& v : verts) dist[v] = std::numeric_limits<double>::infinity();
  dist[x] = 0;
  for (std::size_t it = 0; it < verts.size(); ++it) {
    bool changed = false;
    for (const auto& v : verts) {
      if (!std::isfinite(dist[v])) continue;
      for (const auto& s : g.generators()) {
        const auto u = g.multiply(v, s);
        if (!ball.count(u)) continue;
        const double w = std::pow(lambda, std::min(ball.at(u), ball.at(v)));
        if (dist[v] + w < dist[u] - 1e-15) dist[u] = dist[v] + w, changed = true;
      }
    }
    if (!changed) break;
  }
  return dist[y];
}

std::vector<EndApproximation> walk_ends(const StepDistribution& mu, int N, int count, std::uint64_t seed) {
  std::vector<EndApproximation> out;
  for (int i = 0; i < count; ++i) {
    auto rep = walk_endpoint(mu, N, seed, static_cast<std::uint64_t>(i));
    const int len = static_cast<int>(mu.group().word_length(rep));
    out.push_back(make_end(mu.group(), rep, std::max(0, std::min(len - kPrecisionMargin, N / 4)), EndOrigin::Trajectory));
  }
  return out;
}

}  // namespace

TEST(Floyd, Examples) {
  const auto g = f2();
  const auto w = build_window(g, 6);
  EXPECT_EQ(floyd_distance(w, g.parse("a*b"), g.parse("a*b"), 0.5).value, 0.0);
  EXPECT_DOUBLE_EQ(floyd_distance(w, g.identity(), g.parse("a"), 0.5).value, 1.0);
  const auto ab = floyd_distance(w, g.parse("a"), g.parse("b"), 0.5);
  EXPECT_DOUBLE_EQ(ab.value, 2.0);
  EXPECT_DOUBLE_EQ(bellman_ford(g, 6, g.parse("a"), g.parse("b"), 0.5), 2.0);
  EXPECT_DOUBLE_EQ(ab.coarse_value, 2.0);
  EXPECT_THROW(floyd_distance(w, g.parse("a^5"), g.identity(), 0.5), PreconditionError);
}

TEST(Floyd, MatchesBellmanFordInZ2Z) {
  const auto g = z2z();
  const auto w = build_window(g, 5);
  const FloydMetric fm(w, 0.6);
  Rng rng(17);
  for (int i = 0; i < 6; ++i) {
    const auto x = random_element(g, rng, 3), y = random_element(g, rng, 3);
    if (g.word_length(x) > 3 || g.word_length(y) > 3) continue;
    EXPECT_NEAR(fm.distance(x, y).value, bellman_ford(g, 5, x, y, 0.6), 1e-12);
  }
}

TEST(Separation, FreeGroupExamples) {
  const auto g = f2();
  const auto w = build_window(g, 12);
  const ComponentLevels levels(w);
  const auto a_inf = end_of(g, "a^8", 4), ab_inf = end_of(g, "a*b^7", 4), a2b = end_of(g, "a^2*b^6", 4);
  const auto r1 = separation_radius(levels, a_inf, ab_inf);
  ASSERT_TRUE(r1.separated());
  EXPECT_EQ(r1.radius, 1);
  EXPECT_FALSE(r1.boundary_effect);
  const auto r2 = separation_radius(levels, a_inf, a2b);
  ASSERT_TRUE(r2.separated());
  EXPECT_EQ(r2.radius, 2);
  const auto same = separation_radius(levels, a_inf, end_of(g, "a^12", 8));
  EXPECT_EQ(same.status, SeparationStatus::SameWithinPrecision);
  EXPECT_EQ(separation_radius(g, a_inf, ab_inf).radius, 1);
  EXPECT_EQ(separation_radius(g, a_inf, a2b).radius, 2);
  EXPECT_EQ(separation_radius(g, a_inf, end_of(g, "a^12", 8)).status, SeparationStatus::SameWithinPrecision);
  EXPECT_DOUBLE_EQ(*visual_distance(g, a_inf, ab_inf, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(*visual_distance(g, a_inf, a_inf, 0.5), 0.0);
}

TEST(Separation, UnknownWhenWindowTooShallow) {
  const auto g = f2();
  const auto w = build_window(g, 6);
  const ComponentLevels levels(w);
  const auto r = separation_radius(levels, end_of(g, "a^20", 16), end_of(g, "a^10*b^10", 16));
  EXPECT_EQ(r.status, SeparationStatus::Unknown);
  EXPECT_FALSE(visual_distance(r, 0.5).has_value());
}

TEST(Separation, ExactRouteMatchesWindowRoute) {
  for (const auto& g : {f2(), z3z3(), z2z()}) {
    const auto mu = StepDistribution::simple_random_walk(g);
    const int W = g.factor_count() == 2 && g.factor(0).kind() == FactorKind::Finite ? 12 : 8;
    const auto w = build_window(g, W);
    const ComponentLevels levels(w);
    std::vector<EndApproximation> ends;
    for (auto& e : walk_ends(mu, 80, 80, 99)) {
      if (g.word_length(e.representative) < W) continue;
      e.precision = std::min(e.precision, W - kPrecisionMargin - 1);
      ends.push_back(e);
    }
    int compared = 0;
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        const auto a = separation_radius(levels, ends[i], ends[j]);
        const auto b = separation_radius(g, ends[i], ends[j]);
        ASSERT_TRUE(a.known());
        EXPECT_EQ(a.status, b.status);
        if (a.separated()) {
          EXPECT_EQ(a.radius, b.radius);
        }
        EXPECT_FALSE(a.boundary_effect);
        ++compared;
      }
    EXPECT_GT(compared, 1000);
  }
}

TEST(Separation, BasepointMovesRadiusByAtMostDistance) {
  const auto g = z2z();
  const auto mu = StepDistribution::simple_random_walk(g);
  const auto ends = walk_ends(mu, 80, 30, 4);
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto o = random_element(g, rng, 3);
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      const auto a = separation_radius(g, ends[i], ends[i + 1]);
      const auto b = separation_radius(g, ends[i], ends[i + 1], o);
      if (!a.separated() || !b.separated()) continue;
      EXPECT_LE(std::abs(a.radius - b.radius), g.word_length(o));
    }
  }
}

TEST(Visual, UltrametricOnZ3Z3Samples) {
  const auto g = z3z3();
  const auto mu = StepDistribution::simple_random_walk(g);
  const auto ends = walk_ends(mu, 80, 25, 12);
  int triples = 0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = 0; j < ends.size(); ++j)
      for (std::size_t k = 0; k < ends.size(); ++k) {
        const double xy = *visual_distance(g, ends[i], ends[j], 0.5);
        const double xz = *visual_distance(g, ends[i], ends[k], 0.5);
        const double zy = *visual_distance(g, ends[k], ends[j], 0.5);
        EXPECT_LE(xy, std::max(xz, zy) + 1e-15);
        EXPECT_EQ(xy, *visual_distance(g, ends[j], ends[i], 0.5));
        ++triples;
      }
  EXPECT_GE(triples, 1000);
}

TEST(Transitions, FreeGroupEveryVertex) {
  const auto g = f2();
  const auto x = g.parse("a^5*b^-2*a");
  const auto t = transition_points(g, x, 1);
  EXPECT_EQ(t.size(), 9u);
  EXPECT_EQ(transition_points(g, g.parse("a*b*a^-1*b"), 3).size(), 5u);
}

// Deepness from the definition: the R-neighbourhood along the path stays
// in one peripheral coset.
TEST(Transitions, Z2StarZAgainstCosetOracle) {
  const auto g = z2z();
  auto oracle = [&](const GroupElement& x, int R) {
    const auto vs = g.geodesic_vertices(x);
    std::vector<std::int64_t> out;
    const auto L = static_cast<std::int64_t>(vs.size()) - 1;
    for (std::int64_t t = 0; t <= L; ++t) {
      bool deep = false;
      if (t - R >= 0 && t + R <= L) {
        for (std::size_t f = 0; f < g.factor_count() && !deep; ++f) {
          if (!g.factor(f).peripheral()) continue;
          bool inside = true;
          for (std::int64_t s = t - R; s <= t + R && inside; ++s) {
            const auto d = g.multiply(g.invert(vs[static_cast<std::size_t>(t - R)]), vs[static_cast<std::size_t>(s)]);
            inside = d.is_identity() || (d.syllable_count() == 1 && d.syllables()[0].factor == f);
          }
          deep = inside;
        }
      }
      if (!deep) out.push_back(t);
    }
    return out;
  };
  EXPECT_EQ(transition_points(g, g.parse("z(5,0)*t"), 1), (std::vector<std::int64_t>{0, 5, 6}));
  EXPECT_EQ(transition_points(g, g.parse("z(5,0)*t"), 2), (std::vector<std::int64_t>{0, 1, 4, 5, 6}));
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_element(g, rng, 30);
    for (int R : {1, 2, 3}) EXPECT_EQ(transition_points(g, x, R), oracle(x, R)) << g.format(x);
  }
}

TEST(Transitions, DistanceMatchesBruteForce) {
  const auto g = z2z();
  Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const auto end = random_element(g, rng, 40);
    const auto x = random_element(g, rng, 1 + static_cast<int>(uniform_index(rng, 40)));
    const TransitionProfile prof(g, end, 2);
    const auto vs = g.geodesic_vertices(end);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t t = 0; t < vs.size(); ++t)
      if (prof.is_transition(static_cast<std::int64_t>(t))) best = std::min(best, g.distance(x, vs[t]));
    EXPECT_EQ(distance_to_transitions(g, x, end, prof), best);
  }
}

TEST(Tracking, DeterministicWalkStaysOnTransitions) {
  const auto g = f2();
  const auto mu = StepDistribution::point_mass(g, g.parse("a"));
  const auto r = tracking_diagnostic(mu, 400, 3, 1, 2, 20);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.transition_distance.value, 0.0);
    EXPECT_DOUBLE_EQ(row.coset_sup.value, 1.0);
  }
}

TEST(Bottleneck, FreeGroupExamples) {
  const auto g = f2();
  const auto w = build_window(g, 10);
  const auto y = end_of(g, "a*b^15", 12);
  EXPECT_EQ(detect_bottleneck(w, g.parse("a"), g.identity(), y, 0), Tri::True);
  EXPECT_EQ(detect_bottleneck(w, g.parse("b"), g.identity(), y, 0), Tri::False);
  EXPECT_TRUE(bottleneck_certificate(g, g.parse("a"), g.identity(), y, 0));
  EXPECT_FALSE(bottleneck_certificate(g, g.parse("b"), g.identity(), y, 0));
  EXPECT_EQ(detect_bottleneck(w, g.parse("a*b^5"), g.identity(), y, 2), Tri::Unknown);
}

TEST(Bottleneck, Z2StarZJunctionsAgreeWithCertificate) {
  const auto g = z2z();
  const auto mu = StepDistribution::simple_random_walk(g);
  const auto w = build_window(g, 8);
  int checked = 0;
  for (std::uint64_t i = 0; i < 200 && checked < 40; ++i) {
    const auto rep = walk_endpoint(mu, 60, 7, i);
    if (g.word_length(rep) < 12) continue;
    const auto y = make_end(g, rep, 8);
    // First Z^2 -> Z junction on the normal form.
    std::int64_t pos = 0;
    for (std::size_t k = 0; k + 1 < rep.syllable_count(); ++k) {
      pos += g.factor(rep.syllables()[k].factor).length(rep.syllables()[k].value);
      if (rep.syllables()[k].factor != 0) continue;
      if (pos > 3) break;
      const auto junction = rep.prefix(k + 1);
      EXPECT_TRUE(bottleneck_certificate(g, junction, g.identity(), y, 1));
      EXPECT_EQ(detect_bottleneck(w, junction, g.identity(), y, 1), Tri::True) << g.format(rep);
      ++checked;
      break;
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(Shadow, FreeGroupExamples) {
  const auto g = f2();
  const auto w = build_window(g, 10);
  const auto xi = end_of(g, "a*b^15", 12);
  const auto on = shadow_membership(w, g.parse("a*b^2"), xi, 0);
  EXPECT_EQ(on.in_partial, Tri::True);
  EXPECT_TRUE(on.in_big);
  const auto off = shadow_membership(w, g.parse("a^-1*b^2"), xi, 1);
  EXPECT_EQ(off.in_partial, Tri::False);
  EXPECT_FALSE(off.in_big);
}

TEST(Shadow, PartialImpliesBigInZ2Z) {
  const auto g = z2z();
  const auto mu = StepDistribution::simple_random_walk(g);
  const auto w = build_window(g, 8);
  const auto ends = walk_ends(mu, 60, 40, 5);
  Rng rng(9);
  int evaluated = 0, violations = 0;
  while (evaluated < 1000) {
    const auto& xi = ends[uniform_index(rng, ends.size())];
    const auto cand = random_element(g, rng, 1 + static_cast<int>(uniform_index(rng, 3)));
    const int M = static_cast<int>(uniform_index(rng, 2));
    const auto s = shadow_membership(w, cand, xi, M);
    if (s.in_partial == Tri::Unknown) continue;
    ++evaluated;
    if (s.in_partial == Tri::True && !s.in_big) ++violations;
  }
  EXPECT_EQ(violations, 0);
}
