#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/estimators.hpp"
#include "endlab/parallel.hpp"
#include "endlab/separation.hpp"
#include "endlab/stats.hpp"
#include "endlab/walk.hpp"
#include "endlab/window.hpp"

namespace endlab {

inline constexpr std::uint64_t kMinLevelCount = 25;
inline constexpr int kMinSupportedLevels = 4;

struct SampleBank {
  std::vector<EndApproximation> ends;
  std::uint64_t seed = 0;
  std::int64_t N = 0;
  int precision = 0;  // floor(l N / 2), before per-end clamping
  EstimateWithError drift;
};

// Endpoints omega_N of M independent walks as end approximations.
inline SampleBank build_sample_bank(const StepDistribution& mu, std::int64_t N, std::int64_t M, std::uint64_t seed,
                                    int query_depth = 0) {
  if (N < 1 || M < 1) throw PreconditionError("sample bank needs N, M >= 1");
  const auto& group = mu.group();
  std::vector<GroupElement> reps(static_cast<std::size_t>(M));
  parallel_for(reps.size(), [&](std::size_t i) { reps[i] = walk_endpoint(mu, N, seed, i, Stream::Bank); });
  std::vector<double> rate(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) rate[i] = static_cast<double>(group.word_length(reps[i])) / static_cast<double>(N);
  SampleBank bank;
  bank.seed = seed;
  bank.N = N;
  bank.drift = {mean(rate), batch_means_se(rate), static_cast<std::uint64_t>(M), "bank endpoints d(1,w_N)/N"};
  bank.precision = static_cast<int>(std::floor(bank.drift.value * static_cast<double>(N) / 2.0));
  if (bank.precision < query_depth) {
    const double l = bank.drift.value;
    const std::string hint = l > 0 ? "; N >= " + std::to_string(static_cast<long long>(std::ceil(2.0 * query_depth / l)) + 1) + " suggested"
                                   : "; the walk does not escape";
    throw ValidationError("bank.N", "precision " + std::to_string(bank.precision) + " below query depth " +
                                        std::to_string(query_depth) + hint);
  }
  bank.ends.reserve(reps.size());
  for (auto& r : reps) {
    const int len = static_cast<int>(group.word_length(r));
    const int p = std::max(0, std::min(bank.precision, len - kPrecisionMargin));
    bank.ends.push_back({std::move(r), p, EndOrigin::Trajectory});
  }
  return bank;
}

struct BallMassCurve {
  std::size_t center = 0;
  int n1 = 0, n2 = 0;
  std::vector<std::uint64_t> counts;  // per level n1..n2
  std::vector<double> masses;
  std::vector<bool> low_support;
  std::uint64_t total = 0;            // ends counted against (center left out)
};

// Separation radius of every bank end against the center (left out);
// "same within precision" counts as beyond every level.
template <class Separation>
BallMassCurve ball_mass_curve(const SampleBank& bank, std::size_t center, int n1, int n2, Separation&& separation) {
  if (center >= bank.ends.size()) throw PreconditionError("center index outside the bank");
  if (n1 < 0 || n2 < n1) throw PreconditionError("ball mass levels must satisfy 0 <= n1 <= n2");
  BallMassCurve c;
  c.center = center;
  c.n1 = n1;
  c.n2 = n2;
  const auto L = static_cast<std::size_t>(n2 - n1 + 1);
  c.counts.assign(L, 0);
  const auto& xi = bank.ends[center];
  for (std::size_t j = 0; j < bank.ends.size(); ++j) {
    if (j == center) continue;
    const auto& eta = bank.ends[j];
    if (std::min(xi.precision, eta.precision) < n2)
      throw PreconditionError("ball mass level " + std::to_string(n2) + " exceeds end precision " +
                              std::to_string(std::min(xi.precision, eta.precision)));
    const SeparationResult s = separation(xi, eta);
    if (!s.known()) throw PreconditionError("separation unknown inside the requested levels");
    const int r = s.separated() ? s.radius : n2 + 1;
    for (int n = n1; n <= std::min(r, n2); ++n) ++c.counts[static_cast<std::size_t>(n - n1)];
    ++c.total;
  }
  for (std::size_t i = 0; i < L; ++i) {
    c.masses.push_back(c.total ? static_cast<double>(c.counts[i]) / static_cast<double>(c.total) : 0.0);
    c.low_support.push_back(c.counts[i] < kMinLevelCount);
  }
  return c;
}

inline BallMassCurve ball_mass_curve(const Group& group, const SampleBank& bank, std::size_t center, int n1, int n2) {
  return ball_mass_curve(bank, center, n1, n2,
                         [&](const EndApproximation& a, const EndApproximation& b) { return separation_radius(group, a, b); });
}

struct LocalDimension {
  double slope = 0.0;
  double std_error = 0.0;
  int levels_used = 0;
  int first_level = 0, last_level = 0;
};

// Weighted least squares of log mass against n log lambda over levels with
// count >= 25; weights are inverse binomial variances of log mass.
inline std::optional<LocalDimension> local_dimension(const BallMassCurve& curve, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("lambda must lie in (0,1)");
  std::vector<double> x, y, w;
  LocalDimension d;
  for (std::size_t i = 0; i < curve.counts.size(); ++i) {
    if (curve.low_support[i] || curve.masses[i] <= 0.0) continue;
    const int n = curve.n1 + static_cast<int>(i);
    const double p = curve.masses[i];
    x.push_back(n * std::log(lambda));
    y.push_back(std::log(p));
    w.push_back(static_cast<double>(curve.counts[i]) / std::max(1.0 - p, 1.0 / static_cast<double>(std::max<std::uint64_t>(curve.total, 1))));
    if (d.levels_used == 0) d.first_level = n;
    d.last_level = n;
    ++d.levels_used;
  }
  if (d.levels_used < kMinSupportedLevels) return std::nullopt;
  const auto fit = linear_fit(x, y, w, true);
  d.slope = fit.slope;
  d.std_error = fit.slope_se;
  return d;
}

struct DimensionReport {
  std::vector<std::optional<LocalDimension>> per_center;
  EstimateWithError aggregate;   // mean of supported per-center slopes
  double dispersion = 0.0;       // std of slopes / mean (exact-dimensionality proxy)
  EstimateWithError target;      // (h/l)/(-log lambda)
  double lambda = 0.5;
  int n1 = 0, n2 = 0;
  std::size_t centers = 0, supported = 0, bank_size = 0;
};

inline EstimateWithError dimension_target(const EstimateWithError& h, const EstimateWithError& l, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("lambda must lie in (0,1)");
  if (l.value <= 0.0) {
    if (h.value == 0.0) return {0.0, 0.0, 1, "(h/l)/(-log lambda)"};
    throw PreconditionError("drift must be positive for the dimension target");
  }
  const double k = -std::log(lambda);
  const double v = h.value / l.value / k;
  const double se = std::hypot(h.std_error / l.value, h.value * l.std_error / (l.value * l.value)) / k;
  return {v, se, std::min(h.samples, l.samples), "(h/l)/(-log lambda)"};
}

inline DimensionReport hdim_harmonic(const std::vector<BallMassCurve>& curves, double lambda, const EstimateWithError& h,
                                     const EstimateWithError& l, std::size_t bank_size) {
  DimensionReport r;
  r.lambda = lambda;
  r.centers = curves.size();
  r.bank_size = bank_size;
  if (!curves.empty()) {
    r.n1 = curves.front().n1;
    r.n2 = curves.front().n2;
  }
  std::vector<double> slopes;
  for (const auto& c : curves) {
    r.per_center.push_back(local_dimension(c, lambda));
    if (r.per_center.back()) slopes.push_back(r.per_center.back()->slope);
  }
  r.supported = slopes.size();
  if (!slopes.empty()) {
    const double m = mean(slopes);
    const double sd = std::sqrt(sample_variance(slopes));
    r.aggregate = {m, standard_error(slopes), slopes.size(), "mean local-dimension slope"};
    r.dispersion = m != 0.0 ? sd / std::abs(m) : (sd == 0.0 ? 0.0 : INFINITY);
  }
  r.target = dimension_target(h, l, lambda);
  return r;
}

struct BoxDimensionReport {
  std::vector<std::uint64_t> counts;  // K(n) for n = 1..n_max
  EstimateWithError slope;            // of log K(n) against -n log lambda
  EstimateWithError target;           // v / (-log lambda)
  int n_max = 0;
  int window_radius = 0;
  int fit_from = 0;
  bool truncated = false;
};

// K(n) = number of components of {d >= n} meeting the shell, i.e. the number
// of closed visual balls of radius lambda^n covering the end space. A window
// of radius n_max + 1 suffices: in a free product every vertex has an
// outward neighbour.
inline BoxDimensionReport boundary_box_dimension(const Group& group, double lambda, int n_max,
                                                 std::uint64_t vertex_cap = kDefaultVertexCap) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("lambda must lie in (0,1)");
  if (n_max < 3) throw PreconditionError("box dimension needs n_max >= 3");
  BoxDimensionReport r;
  int W = n_max + 1;
  while (W > 4 && ball_size(group, W) > vertex_cap) {
    --W;
    r.truncated = true;
  }
  r.n_max = W - 1;
  r.window_radius = W;
  const auto window = build_window(group, W, {}, vertex_cap);
  const ComponentLevels levels(window);
  for (int n = 1; n <= r.n_max; ++n) r.counts.push_back(levels.infinite_components(n));
  r.fit_from = std::max(1, r.n_max / 2);
  std::vector<double> x, y;
  for (int n = r.fit_from; n <= r.n_max; ++n) {
    x.push_back(-n * std::log(lambda));
    y.push_back(std::log(static_cast<double>(r.counts[static_cast<std::size_t>(n - 1)])));
  }
  const auto fit = linear_fit(x, y);
  r.slope = {fit.slope, fit.slope_se, x.size(), "log K(n) vs -n log lambda"};
  const auto v = growth_rate_estimate(group, std::max(3, r.n_max));
  r.target = {v.estimate.value / -std::log(lambda), v.estimate.std_error / -std::log(lambda), v.estimate.samples,
              "v / (-log lambda)"};
  return r;
}

}  // namespace endlab
