#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "endlab/bottleneck.hpp"
#include "endlab/convolution.hpp"
#include "endlab/dimension.hpp"
#include "endlab/doubling.hpp"
#include "endlab/estimators.hpp"
#include "endlab/floyd.hpp"
#include "endlab/parallel.hpp"
#include "endlab/rng.hpp"
#include "endlab/separation.hpp"
#include "endlab/sphere.hpp"
#include "endlab/walk.hpp"
#include "endlab/window.hpp"

namespace endlab {

struct PropertyResult {
  std::string module;
  std::string suite;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::uint64_t skipped = 0;  // instances the truncation could not decide
  std::string note;

  bool passed() const noexcept { return violations == 0 && instances > 0; }
};

struct PropertyBudget {
  std::uint64_t instances = 1000;       // per suite, at least
  std::int64_t walk_length = 200;       // steps behind each sampled end
  std::uint64_t window_cap = 250'000;   // vertices in metric windows
  std::uint64_t refine_cap = 1'200'000; // vertices in the W+4 refinement window
  int max_window = 14;
};

namespace props {

inline constexpr double kTol = 1e-12;

inline PropertyResult result(std::string module, std::string suite) {
  PropertyResult r;
  r.module = std::move(module);
  r.suite = std::move(suite);
  return r;
}

inline int window_radius_for(const Group& g, std::uint64_t cap, int max_radius, int min_radius = 3) {
  int W = min_radius;
  while (W < max_radius && ball_size(g, W + 1) <= cap) ++W;
  return W;
}

inline std::uint64_t stream_index(std::uint64_t suite, std::uint64_t i) { return suite * 1'000'000'007ull + i; }

// Ends from independent walks, all cut to a common precision so that
// "same within precision" is consistent across pairs. The precision is half
// the median endpoint length; walks ending shorter than that are replaced by
// further walks of the same stream.
inline std::vector<EndApproximation> sample_ends(const StepDistribution& mu, std::size_t count, std::int64_t N,
                                                 std::uint64_t seed, std::uint64_t suite) {
  const auto& g = mu.group();
  std::vector<EndApproximation> out;
  int p = -1;
  for (std::size_t base = 0; out.size() < count; base += count) {
    if (base > 64 * count) throw PreconditionError("walks do not escape; cannot sample ends");
    std::vector<GroupElement> reps(count);
    parallel_for(count, [&](std::size_t i) { reps[i] = walk_endpoint(mu, N, seed, stream_index(suite, base + i), Stream::Property); });
    if (p < 0) {
      std::vector<std::int64_t> len;
      for (const auto& r : reps) len.push_back(g.word_length(r));
      std::nth_element(len.begin(), len.begin() + static_cast<std::ptrdiff_t>(len.size() / 2), len.end());
      p = static_cast<int>(std::max<std::int64_t>(0, len[len.size() / 2] / 2 - kPrecisionMargin));
    }
    for (auto& r : reps)
      if (out.size() < count && g.word_length(r) >= p + kPrecisionMargin) out.push_back({std::move(r), p, EndOrigin::Trajectory});
  }
  return out;
}

inline std::uint32_t random_vertex(const CayleyWindow& w, Rng& rng, int max_depth) {
  const auto hi = w.level_begin(std::min(max_depth, w.radius()) + 1);
  return static_cast<std::uint32_t>(uniform_index(rng, hi));
}

inline std::uint32_t random_vertex_at(const CayleyWindow& w, Rng& rng, int depth) {
  const auto lo = w.level_begin(depth), hi = w.level_begin(depth + 1);
  return static_cast<std::uint32_t>(lo + uniform_index(rng, hi - lo));
}

// A vertex standing for itself: separation is meaningful up to one below its depth.
inline EndApproximation vertex_end(const Group& g, const GroupElement& x) {
  return {x, static_cast<int>(std::max<std::int64_t>(0, g.word_length(x) - 1)), EndOrigin::ExplicitRay};
}

}  // namespace props

// rho(x,y) <= max(rho(x,z), rho(z,y)) on every triple of a sample of ends.
inline PropertyResult check_ultrametric(const StepDistribution& mu, double lambda, std::uint64_t seed, const PropertyBudget& b) {
  const auto& g = mu.group();
  std::size_t K = 3;
  while (K * (K - 1) * (K - 2) / 6 < b.instances) ++K;
  const auto ends = props::sample_ends(mu, K, b.walk_length, seed, 1);
  std::vector<double> rho(K * K);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) rho[i * K + j] = *visual_distance(g, ends[i], ends[j], lambda);
  PropertyResult r = props::result("boundary-metrics", "ultrametric");
  for (std::size_t i = 0; i < K; ++i) {
    if (rho[i * K + i] != 0.0) ++r.violations;
    for (std::size_t j = 0; j < K; ++j)
      if (rho[i * K + j] != rho[j * K + i]) ++r.violations;
  }
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j)
      for (std::size_t k = j + 1; k < K; ++k) {
        const double a = rho[i * K + j], c = rho[j * K + k], e = rho[i * K + k];
        ++r.instances;
        if (a > std::max(e, c) + props::kTol || c > std::max(a, e) + props::kTol || e > std::max(a, c) + props::kTol) ++r.violations;
      }
  r.note = std::to_string(K) + " ends, precision " + std::to_string(ends.front().precision);
  return r;
}

// lambda^d <= rho_o / rho_o' <= lambda^-d with d = d(o, o') <= 3, for the
// exact visual metric and for truncated Floyd values on one vertex set.
inline PropertyResult check_basepoint(const StepDistribution& mu, double lambda, std::uint64_t seed, const PropertyBudget& b) {
  const auto& g = mu.group();
  PropertyResult r = props::result("boundary-metrics", "basepoint-bilipschitz");
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(2, 0));
  const auto ends = props::sample_ends(mu, 80, b.walk_length, seed, 2);
  const auto basepoints = enumerate_ball(g, 3);
  for (std::uint64_t i = 0; i < b.instances; ++i) {
    const auto& x = ends[uniform_index(rng, ends.size())];
    const auto& y = ends[uniform_index(rng, ends.size())];
    const auto& o = basepoints[uniform_index(rng, basepoints.size())];
    const auto s0 = separation_radius(g, x, y), s1 = separation_radius(g, x, y, o);
    if (!s0.separated() || !s1.separated()) {
      ++r.skipped;  // same end at this precision
      continue;
    }
    ++r.instances;
    if (std::abs(s0.radius - s1.radius) > g.word_length(o)) ++r.violations;
  }
  const int W = props::window_radius_for(g, b.window_cap / 2, b.max_window);
  const auto w = build_window(g, W);
  const FloydMetric centred(w, lambda);
  const std::size_t sources = 25;
  const auto per = static_cast<std::size_t>((b.instances + sources - 1) / sources);
  for (std::size_t s = 0; s < sources; ++s) {
    const auto vo = props::random_vertex(w, rng, 3);
    const auto o = w.offset(vo);
    const FloydMetric moved(w, lambda, o);
    const double bound = std::pow(lambda, -static_cast<double>(g.word_length(o)));
    const auto vx = props::random_vertex(w, rng, W - 2);
    const auto d0 = centred.distances_from(vx, W), d1 = moved.distances_from(vx, W);
    for (std::size_t k = 0; k < per; ++k) {
      const auto vy = props::random_vertex(w, rng, W - 2);
      ++r.instances;
      if (vy == vx) continue;
      const double ratio = d0[vy] / d1[vy];
      if (ratio > bound * (1 + 1e-12) || ratio < (1 - 1e-12) / bound) ++r.violations;
    }
  }
  r.note = "exact rho pairs + Floyd pairs on window W=" + std::to_string(W);
  return r;
}

// Truncated Floyd distance dominates rho on pairs of deep vertices.
inline PropertyResult check_domination(const StepDistribution& mu, double lambda, std::uint64_t seed, const PropertyBudget& b) {
  const auto& g = mu.group();
  PropertyResult r = props::result("boundary-metrics", "floyd-dominates-visual");
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(3, 0));
  const int W = props::window_radius_for(g, b.window_cap, b.max_window);
  const auto w = build_window(g, W);
  const FloydMetric floyd(w, lambda);
  const std::size_t sources = 25;
  const auto per = static_cast<std::size_t>((b.instances + sources - 1) / sources);
  for (std::size_t s = 0; s < sources; ++s) {
    const auto vx = props::random_vertex_at(w, rng, W - 2);
    const auto d = floyd.distances_from(vx, W);
    const auto x = props::vertex_end(g, w.offset(vx));
    for (std::size_t k = 0; k < per; ++k) {
      const auto vy = props::random_vertex_at(w, rng, W - 2);
      const auto rho = visual_distance(g, x, props::vertex_end(g, w.offset(vy)), lambda);
      ++r.instances;
      if (d[vy] + props::kTol < *rho) ++r.violations;
    }
  }
  r.note = "vertex pairs at depth " + std::to_string(W - 2) + " of window W=" + std::to_string(W);
  return r;
}

// Floyd values never increase when the window grows from W to W+4.
inline PropertyResult check_floyd_refinement(const StepDistribution& mu, double lambda, std::uint64_t seed, const PropertyBudget& b) {
  const auto& g = mu.group();
  PropertyResult r = props::result("boundary-metrics", "floyd-monotone-refinement");
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(4, 0));
  const int W = props::window_radius_for(g, b.refine_cap, b.max_window + 4, 7) - 4;
  const auto small = build_window(g, W), big = build_window(g, W + 4);
  const FloydMetric fs(small, lambda), fb(big, lambda);
  const std::size_t sources = 25;
  const auto per = static_cast<std::size_t>((b.instances + sources - 1) / sources);
  for (std::size_t s = 0; s < sources; ++s) {
    const auto vx = props::random_vertex(small, rng, W - 2);
    const auto bx = *big.find_offset(small.offset(vx));
    const auto ds = fs.distances_from(vx, W), db = fb.distances_from(bx, W + 4);
    for (std::size_t k = 0; k < per; ++k) {
      const auto vy = props::random_vertex(small, rng, W - 2);
      const auto by = *big.find_offset(small.offset(vy));
      ++r.instances;
      if (db[by] > ds[vy] + props::kTol) ++r.violations;
    }
  }
  r.note = "windows W=" + std::to_string(W) + " and W=" + std::to_string(W + 4);
  return r;
}

// Visibility: max d(v, gamma) over samples with delta_v(x, y) >= kappa is
// non-increasing in kappa.
inline PropertyResult check_visibility(const StepDistribution& mu, double lambda, std::uint64_t seed, const PropertyBudget& b) {
  const auto& g = mu.group();
  PropertyResult r = props::result("boundary-metrics", "visibility");
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(5, 0));
  const int W = props::window_radius_for(g, b.window_cap / 4, b.max_window);
  const auto w = build_window(g, W);
  const double kappas[] = {0.25, 0.5, 1.0};
  std::int64_t worst[3] = {-1, -1, -1};
  std::uint64_t hits[3] = {0, 0, 0};
  const std::size_t views = 20;
  const auto per = static_cast<std::size_t>((b.instances + views - 1) / views);
  for (std::size_t s = 0; s < views; ++s) {
    const auto vv = props::random_vertex(w, rng, W - 2);
    const auto v = w.offset(vv);
    const FloydMetric floyd(w, lambda, v);
    for (std::size_t k = 0; k < per; ++k) {
      const auto vx = props::random_vertex(w, rng, W - 2), vy = props::random_vertex(w, rng, W - 2);
      const double delta = floyd.dijkstra(vx, vy, W);
      const auto x = w.offset(vx);
      std::int64_t dist = INT64_MAX;
      for (const auto& p : g.geodesic_vertices(g.multiply(g.invert(x), w.offset(vy)))) dist = std::min(dist, g.distance(v, g.multiply(x, p)));
      ++r.instances;
      for (int i = 0; i < 3; ++i)
        if (delta >= kappas[i]) {
          ++hits[i];
          worst[i] = std::max(worst[i], dist);
        }
    }
  }
  for (int i = 1; i < 3; ++i)
    if (worst[i] > worst[i - 1]) ++r.violations;
  r.note = "max d(v,gamma) at kappa 0.25/0.5/1: " + std::to_string(worst[0]) + "/" + std::to_string(worst[1]) + "/" +
           std::to_string(worst[2]) + " (" + std::to_string(hits[0]) + "/" + std::to_string(hits[1]) + "/" +
           std::to_string(hits[2]) + " samples)";
  return r;
}

// Shadow sandwich at M-bottleneck points g on the geodesic to xi, r = lambda^|g|:
// B(xi, lambda^{M+1} r) inside the partial shadow, big shadow inside B(xi, lambda^{-M-1} r).
inline PropertyResult check_shadow_sandwich(const StepDistribution& mu, double /*lambda*/, std::uint64_t seed, const PropertyBudget& b,
                                            int M = 1) {
  const auto& g = mu.group();
  PropertyResult r = props::result("boundary-metrics", "shadow-sandwich");
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(6, 0));
  const int W = props::window_radius_for(g, b.window_cap / 4, b.max_window, M + 6);
  const auto w = build_window(g, W);
  const auto xis = props::sample_ends(mu, 200, b.walk_length, seed, 6);
  const auto far = props::sample_ends(mu, 40, b.walk_length, seed, 7);
  std::uint64_t inner_checked = 0, outer_checked = 0;
  const std::size_t per_g = 10;
  for (std::size_t xi_i = 0; xi_i < xis.size() && r.instances < b.instances; ++xi_i) {
    const auto& xi = xis[xi_i];
    for (int depth = 1; depth + M + kPrecisionMargin <= W && r.instances < b.instances; ++depth) {
      const auto gv = truncate_geodesic(g, xi.representative, depth);
      if (detect_bottleneck(w, gv, GroupElement{}, xi, M) != Tri::True) continue;
      // Candidates: ends branching off xi at random depths, plus unrelated ends.
      std::vector<EndApproximation> etas;
      for (std::size_t k = 0; k < per_g; ++k) {
        const auto cut = static_cast<std::int64_t>(uniform_index(rng, static_cast<std::uint64_t>(depth + M + 4)));
        GroupElement e = truncate_geodesic(g, xi.representative, cut);
        g.right_multiply(e, walk_endpoint(mu, b.walk_length, seed, props::stream_index(8, r.instances * per_g + k), Stream::Property));
        const auto len = g.word_length(e);
        etas.push_back({std::move(e), static_cast<int>(std::max<std::int64_t>(0, len - kPrecisionMargin)), EndOrigin::ExplicitRay});
      }
      for (std::size_t k = 0; k < 3; ++k) etas.push_back(far[uniform_index(rng, far.size())]);
      for (const auto& eta : etas) {
        if (g.word_length(eta.representative) < W) continue;
        if (std::min(xi.precision, eta.precision) < depth + M + 1) {
          ++r.skipped;  // too coarse to place eta relative to either ball
          continue;
        }
        const int sep = detail::separation_level(g, xi, eta);
        ++r.instances;
        if (sep >= depth + M + 1) {
          const auto t = detect_bottleneck(w, gv, GroupElement{}, eta, M);
          if (t == Tri::Unknown) {
            ++r.skipped;
          } else {
            ++inner_checked;
            if (t != Tri::True) ++r.violations;
          }
        }
        if (in_big_shadow(g, gv, eta, M)) {
          ++outer_checked;
          if (sep < depth - M - 1) ++r.violations;
        }
      }
    }
  }
  r.note = "M=" + std::to_string(M) + ", window W=" + std::to_string(W) + "; " + std::to_string(inner_checked) +
           " inner-ball and " + std::to_string(outer_checked) + " big-shadow implications exercised";
  return r;
}

// Once separated at n, separated at every level up to the reliable depth.
inline PropertyResult check_separation_monotone(const StepDistribution& mu, double /*lambda*/, std::uint64_t seed,
                                                const PropertyBudget& b) {
  const auto& g = mu.group();
  PropertyResult r = props::result("boundary-metrics", "separation-monotone");
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(9, 0));
  const int W = props::window_radius_for(g, b.window_cap, b.max_window, 7);
  const auto w = build_window(g, W);
  const ComponentLevels levels(w);
  const auto ends = props::sample_ends(mu, 60, b.walk_length, seed, 9);
  for (std::uint64_t i = 0; i < b.instances; ++i) {
    const auto& x = ends[uniform_index(rng, ends.size())];
    const auto& y = ends[uniform_index(rng, ends.size())];
    const auto s = separation_radius(levels, x, y);
    const auto e = separation_radius(g, x, y);
    ++r.instances;
    if (!s.known()) {
      ++r.skipped;
      continue;
    }
    if (s.separated() != (e.separated() && e.radius <= W - kPrecisionMargin - 1) || (s.separated() && s.radius != e.radius)) {
      ++r.violations;
      continue;
    }
    if (!s.separated()) continue;
    const auto vx = *w.find_offset(truncate_geodesic(g, x.representative, W));
    const auto vy = *w.find_offset(truncate_geodesic(g, y.representative, W));
    for (int t = s.radius + 1; t <= W - kPrecisionMargin; ++t)
      if (levels.label(t, vx) == levels.label(t, vy)) {
        ++r.violations;
        break;
      }
  }
  r.note = "window route vs exact route, window W=" + std::to_string(W);
  return r;
}

inline std::vector<PropertyResult> metric_properties(const StepDistribution& mu, double lambda, std::uint64_t seed,
                                                     const PropertyBudget& b = {}) {
  return {check_ultrametric(mu, lambda, seed, b),      check_basepoint(mu, lambda, seed, b),
          check_domination(mu, lambda, seed, b),       check_shadow_sandwich(mu, lambda, seed, b),
          check_floyd_refinement(mu, lambda, seed, b), check_visibility(mu, lambda, seed, b),
          check_separation_monotone(mu, lambda, seed, b)};
}

inline std::vector<PropertyResult> group_properties(const Group& g, std::uint64_t seed, const PropertyBudget& b = {}) {
  Rng rng = make_rng(seed, Stream::Property, props::stream_index(20, 0));
  const auto& gens = g.generators();
  auto random_element = [&](int steps) {
    GroupElement x;
    for (int i = 0; i < steps; ++i) g.right_multiply(x, gens[uniform_index(rng, gens.size())]);
    return x;
  };
  PropertyResult assoc = props::result("group-core", "associativity"), inv = props::result("group-core", "inverse-and-length"), text = props::result("group-core", "format-parse-roundtrip"),
      tri = props::result("group-core", "triangle-inequality");
  for (std::uint64_t i = 0; i < b.instances; ++i) {
    const auto x = random_element(12), y = random_element(12), z = random_element(12);
    ++assoc.instances;
    if (g.multiply(g.multiply(x, y), z) != g.multiply(x, g.multiply(y, z))) ++assoc.violations;
    ++inv.instances;
    if (!g.multiply(x, g.invert(x)).is_identity() || g.word_length(g.invert(x)) != g.word_length(x)) ++inv.violations;
    ++text.instances;
    if (g.parse(g.format(x)) != x) ++text.violations;
    ++tri.instances;
    if (g.word_length(g.multiply(x, y)) > g.word_length(x) + g.word_length(y)) ++tri.violations;
  }
  PropertyResult spheres = props::result("group-core", "sphere-counts-vs-enumeration");
  const auto sc = sphere_counts(g, 30);
  for (int n = 0; n <= 30; ++n) {
    if (sc.exact[static_cast<std::size_t>(n)] > 200'000) break;
    ++spheres.instances;
    if (enumerate_sphere(g, n).size() != sc.exact[static_cast<std::size_t>(n)]) ++spheres.violations;
  }
  return {assoc, inv, text, tri, spheres};
}

inline std::vector<PropertyResult> walk_properties(const StepDistribution& mu, std::uint64_t seed, int convolution_depth = 8,
                                                   int entropy_depth = 12) {
  const auto& g = mu.group();
  std::vector<ConvolutionTable> tables;
  try {
    convolution_powers(mu, convolution_depth, [&](const ConvolutionTable& t) { tables.push_back(t); }, 300'000);
  } catch (const ResourceError&) {
    // keep the feasible prefix
  }
  const int depth = static_cast<int>(tables.size());
  PropertyResult semi = props::result("walk-engine", "convolution-semigroup"), sub = props::result("walk-engine", "subadditivity");
  for (int n = 1; n <= depth; ++n)
    for (int m = 1; n + m <= depth; ++m) {
      const auto& a = tables[static_cast<std::size_t>(n - 1)];
      const auto& c = tables[static_cast<std::size_t>(m - 1)];
      const auto& nm = tables[static_cast<std::size_t>(n + m - 1)];
      ++semi.instances;
      if (total_variation(nm, convolve(g, a, c)) > 1e-8) ++semi.violations;
      sub.instances += 2;
      if (nm.mean_length(g) > a.mean_length(g) + c.mean_length(g) + 1e-12) ++sub.violations;
      if (nm.entropy() > a.entropy() + c.entropy() + 1e-12) ++sub.violations;
    }
  semi.note = "exact tables up to n=" + std::to_string(depth);

  PropertyResult gv = props::result("walk-engine", "guivarch"), range = props::result("walk-engine", "estimate-ranges"), det = props::result("walk-engine", "worker-determinism");
  const auto l = drift_estimate(mu, 500, 2000, seed).estimate;
  const auto h = entropy_estimate(mu, 2000, entropy_depth, seed).estimate;
  const auto v = growth_rate_estimate(g, 16).estimate;
  const auto check = guivarch_check(h, l, v);
  gv.instances = 1;
  gv.violations = check.holds ? 0 : 1;
  gv.note = "h=" + std::to_string(check.lhs) + " lv=" + std::to_string(check.rhs) + " sigma=" + std::to_string(check.sigma);
  range.instances = 2;
  if (h.value < -1e-12) ++range.violations;
  if (l.value < 0 || l.value > static_cast<double>(mu.max_step_length())) ++range.violations;

  const auto before = default_workers();
  std::vector<double> seen;
  for (unsigned w : {1u, 4u}) {
    set_default_workers(w);
    seen.push_back(drift_estimate(mu, 200, 400, seed + 1).estimate.value);
    seen.push_back(entropy_estimate(mu, 400, std::min(depth, 5), seed + 1).smb.value);
  }
  set_default_workers(before);
  det.instances = 2;
  det.violations = (seen[0] != seen[2]) + (seen[1] != seen[3]);
  return {semi, sub, gv, range, det};
}

inline std::vector<PropertyResult> dimension_properties(const StepDistribution& mu, double lambda, std::uint64_t seed,
                                                        const PropertyBudget& b = {}) {
  const auto& g = mu.group();
  PropertyResult mono = props::result("dimension-lab", "mass-monotonicity"), rigid = props::result("dimension-lab", "ball-rigidity"),
      duality = props::result("dimension-lab", "cover-packing-duality"), witness = props::result("dimension-lab", "witness-validity"),
      box = props::result("dimension-lab", "box-counts-nondecreasing");
  const auto l = drift_estimate(mu, 200, 200, seed).estimate.value;
  const auto N = static_cast<std::int64_t>(std::ceil(2.0 * 40 / std::max(l, 0.05)));
  const auto bank = build_sample_bank(mu, N, 2000, seed, 12);
  for (std::size_t c = 0; c < 20; ++c) {
    const auto curve = ball_mass_curve(g, bank, c, 1, 10);
    ++mono.instances;
    for (std::size_t i = 1; i < curve.masses.size(); ++i)
      if (curve.masses[i] > curve.masses[i - 1]) {
        ++mono.violations;
        break;
      }
  }
  for (std::size_t c = 0; c < 10; ++c)
    for (int n : {2, 3, 4}) {
      std::vector<std::size_t> ball;
      for (std::size_t j = 0; j < bank.ends.size(); ++j)
        if (detail::separation_level(g, bank.ends[c], bank.ends[j]) >= n) ball.push_back(j);
      for (std::size_t k = 0; k < std::min<std::size_t>(ball.size(), 5); ++k) {
        ++rigid.instances;
        std::vector<std::size_t> other;
        for (std::size_t j = 0; j < bank.ends.size(); ++j)
          if (detail::separation_level(g, bank.ends[ball[k]], bank.ends[j]) >= n) other.push_back(j);
        if (other != ball) ++rigid.violations;
      }
    }
  const int W = props::window_radius_for(g, b.window_cap, b.max_window, 7);
  const auto w = build_window(g, W);
  const ComponentLevels levels(w);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& xi = bank.ends[c];
    for (int n = 1; n + 3 <= W - 1; ++n) {
      const auto rep = greedy_packing(g, xi, enumerate_ball_ends(g, xi, n, n + 3), n, 3, lambda, "enumeration");
      ++duality.instances;
      if (rep.packing > cover_count(levels, xi, n, 3)) ++duality.violations;
      ++witness.instances;
      if (!rep.verified || !verify_packing(g, rep)) ++witness.violations;
    }
    for (const auto& rep : doubling_bank(g, bank, c, 1, 6, lambda)) {
      ++witness.instances;
      if (!verify_packing(g, rep)) ++witness.violations;
    }
  }
  duality.note = "window W=" + std::to_string(W);
  const auto K = boundary_box_dimension(g, lambda, std::min(W, 10), b.refine_cap);
  for (std::size_t i = 1; i < K.counts.size(); ++i) {
    ++box.instances;
    if (K.counts[i] < K.counts[i - 1]) ++box.violations;
  }
  return {mono, rigid, duality, witness, box};
}

}  // namespace endlab
