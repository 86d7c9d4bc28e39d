#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <set>

#include "endlab/group.hpp"
#include "endlab/sphere.hpp"
#include "endlab/window.hpp"
#include "test_support.hpp"

using namespace endlab;
using namespace endlab::testing;

TEST(Multiply, InverseCancellationInF2) {
  const auto g = f2();
  EXPECT_TRUE(g.multiply(g.parse("a"), g.parse("a^-1")).is_identity());
}

TEST(Multiply, FiniteTableMergesSyllables) {
  const auto g = z3z3();
  EXPECT_EQ(g.multiply(g.parse("a*b"), g.parse("b")), g.parse("a*b[2]"));
  EXPECT_EQ(g.format(g.multiply(g.parse("a*b"), g.parse("b"))), "a[1]*b[2]");
}

TEST(Multiply, AssociativityIdentityAndInverse) {
  for (const auto& g : {f2(), z3z3(), z2z()}) {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
      const auto a = random_element(g, rng, 7), b = random_element(g, rng, 7), c = random_element(g, rng, 7);
      EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
      EXPECT_EQ(g.multiply(a, g.identity()), a);
      EXPECT_TRUE(g.multiply(a, g.invert(a)).is_identity());
      EXPECT_LE(g.word_length(g.multiply(a, b)), g.word_length(a) + g.word_length(b));
    }
  }
}

TEST(Multiply, RejectsForeignElements) {
  const auto g = f2();
  const GroupElement bad({Syllable{5, {1, 0, 0}}});
  EXPECT_THROW(g.multiply(bad, g.identity()), SpecError);
  const GroupElement repeated({Syllable{0, {1, 0, 0}}, Syllable{0, {1, 0, 0}}});
  EXPECT_THROW(g.validate(repeated), SpecError);
  const GroupElement trivial({Syllable{0, {0, 0, 0}}});
  EXPECT_THROW(g.validate(trivial), SpecError);
}

TEST(WordLength, Examples) {
  const auto g = z2z();
  EXPECT_EQ(g.word_length(g.identity()), 0);
  EXPECT_EQ(g.word_length(g.parse("z(2,3)*t^5")), 10);
}

TEST(WordLength, MatchesBfsInF2) {
  const auto g = f2();
  const auto ball = bfs_ball(g, 8);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_element(g, rng, 1 + static_cast<int>(uniform_index(rng, 8)));
    ASSERT_TRUE(ball.count(x));
    EXPECT_EQ(g.word_length(x), ball.at(x));
  }
}

TEST(WordLength, ProductsMatchBfsInZ2Z) {
  const auto g = z2z();
  const auto ball = bfs_ball(g, 6);
  Rng rng(6);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_element(g, rng, 3), b = random_element(g, rng, 3);
    const auto ab = g.multiply(a, b);
    if (!ball.count(ab)) continue;
    EXPECT_EQ(g.word_length(ab), ball.at(ab));
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(Parse, RoundTrip) {
  for (const auto& g : {f2(), z3z3(), z2z()}) {
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
      const auto x = random_element(g, rng, 12);
      EXPECT_EQ(g.parse(g.format(x)), x) << g.format(x);
    }
  }
  const auto g = z2z();
  EXPECT_EQ(g.parse("1"), g.identity());
  EXPECT_EQ(g.parse("z(1,0) z(-1,0)"), g.identity());
  EXPECT_THROW(g.parse("q"), SpecError);
  EXPECT_THROW(g.parse("z"), SpecError);
  EXPECT_THROW(g.parse("t[1]"), SpecError);
}

TEST(Spec, Validation) {
  GroupSpec one;
  one.factors = {free_abelian_factor("a", 1)};
  EXPECT_THROW(Group{one}, SpecError);

  GroupSpec d_inf;
  d_inf.factors = {cyclic_factor("a", 2), cyclic_factor("b", 2)};
  EXPECT_THROW(Group{d_inf}, SpecError);

  GroupSpec bad_table;
  bad_table.factors = {cyclic_factor("a", 3), cyclic_factor("b", 3)};
  bad_table.factors[0].table[1][1] = 1;
  EXPECT_THROW(Group{bad_table}, SpecError);

  GroupSpec trivial;
  trivial.factors = {free_abelian_factor("a", 1), FactorSpec{"e", FactorKind::Finite, 0, {{0}}, {}, {}}};
  EXPECT_THROW(Group{trivial}, SpecError);

  GroupSpec rank0;
  rank0.factors = {free_abelian_factor("a", 0), free_abelian_factor("b", 1)};
  EXPECT_THROW(Group{rank0}, SpecError);

  // S_3 with a declared generating pair of transpositions.
  FactorSpec s3{"s", FactorKind::Finite, 0, {}, {1, 2}, {}};
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const std::vector<int>& p) { return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin()); };
  s3.table.assign(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::vector<int> c(3);
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      s3.table[i][j] = index_of(c);
    }
  GroupSpec with_s3;
  with_s3.factors = {s3, free_abelian_factor("t", 1)};
  const Group g(with_s3);
  EXPECT_EQ(g.factor(0).generators().size(), 2u);
  EXPECT_EQ(g.factor(0).sphere_size(3), 1u);  // the longest element
}

TEST(Sphere, SmallCounts) {
  EXPECT_EQ(enumerate_sphere(f2(), 1).size(), 4u);
  EXPECT_EQ(enumerate_sphere(f2(), 3).size(), 36u);
  EXPECT_EQ(enumerate_sphere(z3z3(), 4).size(), 32u);
}

TEST(Sphere, MatchesBfsAndClosedForms) {
  for (const auto& g : {f2(), z3z3(), z2z()}) {
    const int R = 6;
    const auto ball = bfs_ball(g, R);
    std::vector<std::set<GroupElement>> by_level(R + 1);
    for (const auto& [x, d] : ball) by_level[static_cast<std::size_t>(d)].insert(x);
    for (int n = 0; n <= R; ++n) {
      const auto s = enumerate_sphere(g, n);
      EXPECT_EQ(std::set<GroupElement>(s.begin(), s.end()), by_level[static_cast<std::size_t>(n)]) << n;
    }
  }
  const auto f = f2();
  const auto z = z3z3();
  const auto cf = sphere_counts(f, 12);
  const auto cz = sphere_counts(z, 12);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(cf.exact[n], 4 * static_cast<std::uint64_t>(std::pow(3, n - 1)));
    EXPECT_EQ(cz.exact[n], std::uint64_t{1} << (n + 1));
  }
}

TEST(Sphere, Z2StarZCountsFrozenFromBfs) {
  // Independent BFS of the Cayley graph (radius 10, 3524577 vertices).
  const std::vector<std::uint64_t> expected = {1, 6, 26, 110, 466, 1974, 8362, 35422, 150050, 635622, 2692538};
  EXPECT_EQ(sphere_counts(z2z(), 10).exact, expected);
}

TEST(Sphere, BudgetExceeded) {
  try {
    enumerate_sphere(f2(), 10, 1000);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_TRUE(e.partial());
    ASSERT_TRUE(e.largest_feasible());
    EXPECT_EQ(*e.largest_feasible(), 6);  // #S_6 = 972
  }
}

TEST(Window, Sizes) {
  EXPECT_EQ(build_window(f2(), 2).size(), 17u);
  for (const auto& g : {f2(), z3z3(), z2z()}) EXPECT_EQ(build_window(g, 1).size(), 1 + g.generators().size());
  const auto g = z2z();
  std::uint64_t total = 0;
  for (auto c : sphere_counts(g, 6).exact) total += c;
  EXPECT_EQ(build_window(g, 6).size(), total);
}

TEST(Window, DistancesMatchIndependentBfs) {
  for (const auto& g : {z2z(), z3z3(), f2()}) {
    Rng rng(3);
    const auto o = random_element(g, rng, 4);
    const auto w = build_window(g, 6, o);
    // BFS over the window's own adjacency.
    std::vector<int> d(w.size(), -1);
    std::deque<std::uint32_t> q{0};
    d[0] = 0;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (auto u : w.neighbors(v))
        if (u != CayleyWindow::kNone && d[u] < 0) {
          d[u] = d[v] + 1;
          q.push_back(u);
        }
    }
    const auto ball = bfs_ball(g, 6);
    for (std::uint32_t v = 0; v < w.size(); ++v) {
      ASSERT_GE(d[v], 0) << "window disconnected";
      EXPECT_EQ(d[v], w.distance(v));
      EXPECT_EQ(ball.at(w.offset(v)), w.distance(v));
      EXPECT_EQ(g.distance(o, w.element(v)), w.distance(v));
      EXPECT_EQ(w.find(w.element(v)), v);
      const auto nb = w.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] == CayleyWindow::kNone) {
          EXPECT_EQ(w.distance(v), w.radius());
          continue;
        }
        EXPECT_EQ(g.multiply(w.element(v), g.generators()[i]), w.element(nb[i]));
        const auto back = w.neighbors(nb[i]);
        EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
      }
    }
  }
}

TEST(Window, VertexCap) {
  try {
    build_window(f2(), 12, {}, 100000);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.largest_feasible(), 9);  // 2*3^9 - 1 = 39365; radius 10 needs 118097
  }
}

TEST(CosetProjection, Examples) {
  const auto g = z2z();
  EXPECT_EQ(g.coset_projection_sup(g.identity()).value, 0);
  EXPECT_FALSE(g.coset_projection_sup(g.identity()).witness);
  const auto p = g.coset_projection_sup(g.parse("z(7,0)*t^2"));
  EXPECT_EQ(p.value, 7);
  ASSERT_TRUE(p.witness);
  EXPECT_TRUE(p.witness->representative.is_identity());
  EXPECT_EQ(p.witness->factor, 0u);
}

// Brute force: for each prefix coset U = q*P_f met by g, nearest points of U
// to 1 and to g by distance scans over a window, then d(pi(1), pi(g)).
TEST(CosetProjection, MatchesBruteForce) {
  const auto g = z2z();
  Rng rng(8);
  const auto w = build_window(g, 7);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_element(g, rng, 12);
    if (g.word_length(x) > 5 || x.is_identity()) continue;
    const auto v = g.coset_projection_sup(x).value;
    EXPECT_LE(v, g.word_length(x));
    std::int64_t best = 0;
    for (std::size_t k = 0; k < x.syllable_count(); ++k) {
      const auto q = x.prefix(k);
      const auto f = x.syllables()[k].factor;
      std::optional<GroupElement> p1, pg;
      std::int64_t d1 = 1 << 30, dg = 1 << 30;
      for (std::uint32_t u = 0; u < w.size(); ++u) {
        const auto e = w.element(u);
        const auto qe = g.multiply(g.invert(q), e);
        if (!(qe.is_identity() || (qe.syllable_count() == 1 && qe.syllables()[0].factor == f))) continue;
        const auto a = g.word_length(e), b = g.distance(x, e);
        if (a < d1) d1 = a, p1 = e;
        if (b < dg) dg = b, pg = e;
      }
      best = std::max(best, g.distance(*p1, *pg));
    }
    EXPECT_EQ(v, best) << g.format(x);
  }
}

TEST(Geodesic, VerticesAndSegments) {
  const auto g = z2z();
  const auto x = g.parse("z(2,-1)*t^-2*z(0,1)");
  const auto vs = g.geodesic_vertices(x);
  ASSERT_EQ(vs.size(), 7u);
  for (std::size_t i = 0; i < vs.size(); ++i) EXPECT_EQ(g.word_length(vs[i]), static_cast<std::int64_t>(i));
  EXPECT_EQ(vs.back(), x);
  const auto seg = g.geodesic_segments(x);
  ASSERT_EQ(seg.size(), 3u);
  EXPECT_EQ(seg[1].begin, 3);
  EXPECT_EQ(seg[1].end, 5);
  EXPECT_TRUE(seg[0].peripheral);
  EXPECT_FALSE(seg[1].peripheral);
}
