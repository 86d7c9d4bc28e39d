#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "endlab/convolution.hpp"
#include "endlab/measure.hpp"
#include "endlab/parallel.hpp"
#include "endlab/sphere.hpp"
#include "endlab/stats.hpp"
#include "endlab/walk.hpp"

namespace endlab {

struct DriftReport {
  EstimateWithError estimate;
  std::optional<int> bound_power;       // n of the exact table used for the bound
  std::optional<double> subadditive_bound;  // L(mu^{*n})/n, an upper bound for l
};

// Mean of d(1, omega_N)/N over M walks; batch-means standard error.
inline DriftReport drift_estimate(const StepDistribution& mu, std::int64_t N, std::int64_t M, std::uint64_t seed,
                                  std::optional<int> bound_power = std::nullopt) {
  if (N < 1 || M < 1) throw PreconditionError("drift_estimate needs N, M >= 1");
  std::vector<double> rate(static_cast<std::size_t>(M));
  parallel_for(rate.size(), [&](std::size_t i) {
    const auto end = walk_endpoint(mu, N, seed, i);
    rate[i] = static_cast<double>(mu.group().word_length(end)) / static_cast<double>(N);
  });
  DriftReport r;
  r.estimate = {mean(rate), batch_means_se(rate), static_cast<std::uint64_t>(M), "mean d(1,w_N)/N, batch means"};
  if (bound_power) {
    const auto t = exact_convolution(mu, *bound_power);
    r.bound_power = bound_power;
    r.subadditive_bound = t.mean_length(mu.group()) / *bound_power;
  }
  return r;
}

// h + a/n + b/n^2 through the last three points of d_n.
inline double richardson_limit(const std::vector<double>& d) {
  const auto k = d.size();
  if (k == 0) return 0.0;
  if (k < 3) return d.back();
  double A[3][4];
  for (int r = 0; r < 3; ++r) {
    const double n = static_cast<double>(k - 2 + static_cast<std::size_t>(r));
    A[r][0] = 1.0;
    A[r][1] = 1.0 / n;
    A[r][2] = 1.0 / (n * n);
    A[r][3] = d[k - 3 + static_cast<std::size_t>(r)];
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    for (int j = 0; j < 4; ++j) std::swap(A[c][j], A[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = A[r][c] / A[c][c];
      for (int j = c; j < 4; ++j) A[r][j] -= f * A[c][j];
    }
  }
  return A[0][3] / A[0][0];
}

struct EntropyReport {
  EstimateWithError estimate;      // extrapolated limit of the difference sequence
  std::vector<double> entropies;   // H(mu^{*n}), n = 1..n_exact
  std::vector<double> differences; // H_n - H_{n-1}, non-increasing
  std::vector<double> mean_lengths;  // L(mu^{*n})
  double upper_bound = 0.0;        // last difference
  EstimateWithError smb;           // mean of -log mu^{*n}(omega_n)/n
  double exact_rate = 0.0;         // H(mu^{*n})/n, what the SMB mean estimates
  bool smb_consistent = false;     // |smb - exact_rate| <= 3 se
  int n_exact = 0;
};

inline EntropyReport entropy_estimate(const StepDistribution& mu, std::int64_t M, int n_exact, std::uint64_t seed,
                                      std::size_t budget = kDefaultConvolutionBudget) {
  if (M < 1 || n_exact < 1) throw PreconditionError("entropy_estimate needs M, n_exact >= 1");
  EntropyReport r;
  r.n_exact = n_exact;
  ConvolutionTable last;
  convolution_powers(
      mu, n_exact,
      [&](const ConvolutionTable& t) {
        r.entropies.push_back(t.entropy());
        r.mean_lengths.push_back(t.mean_length(mu.group()));
        if (t.n == n_exact) last = t;
      },
      budget);
  double prev = 0.0;
  for (double h : r.entropies) {
    r.differences.push_back(h - prev);
    prev = h;
  }
  r.upper_bound = r.differences.back();
  const double h = std::max(0.0, richardson_limit(r.differences));
  r.estimate = {h, 0.0, static_cast<std::uint64_t>(n_exact), "difference sequence, 3-point 1/n extrapolation"};
  r.exact_rate = r.entropies.back() / n_exact;

  std::vector<double> smb(static_cast<std::size_t>(M));
  parallel_for(smb.size(), [&](std::size_t i) {
    const auto end = walk_endpoint(mu, n_exact, seed, i);
    const double p = last.mass(end);
    if (!(p > 0)) throw InternalError("walk endpoint outside the exact convolution support");
    smb[i] = -std::log(p) / n_exact;
  });
  r.smb = {mean(smb), batch_means_se(smb), static_cast<std::uint64_t>(M), "SMB at n_exact"};
  r.smb_consistent = std::abs(r.smb.value - r.exact_rate) <= 3.0 * r.smb.std_error + 1e-12;
  return r;
}

struct GrowthReport {
  EstimateWithError estimate;
  std::vector<std::uint64_t> counts;  // #S_0..#S_n_max
  bool saturated = false;
  int fit_from = 0;
  int fit_to = 0;
};

// Least-squares slope of log #S_n over n in [n_max/2, n_max].
inline GrowthReport growth_rate_estimate(const Group& group, int n_max, int fit_from = -1) {
  if (n_max < 3) throw PreconditionError("growth_rate_estimate needs n_max >= 3");
  const auto sc = sphere_counts(group, n_max);
  GrowthReport r;
  r.counts = sc.exact;
  r.saturated = sc.saturated;
  r.fit_from = fit_from >= 1 ? fit_from : std::max(1, n_max / 2);
  r.fit_to = n_max;
  std::vector<double> x, y;
  for (int n = r.fit_from; n <= n_max; ++n) {
    x.push_back(n);
    y.push_back(std::log(sc.approx[static_cast<std::size_t>(n)]));
  }
  const auto fit = linear_fit(x, y);
  r.estimate = {fit.slope, fit.slope_se, x.size(), "sphere-count log-linear fit"};
  return r;
}

struct GuivarchCheck {
  double lhs = 0.0;       // h
  double rhs = 0.0;       // l v
  double sigma = 0.0;     // combined standard error
  bool holds = false;     // h <= l v + 3 sigma
};

inline GuivarchCheck guivarch_check(const EstimateWithError& h, const EstimateWithError& l, const EstimateWithError& v) {
  GuivarchCheck c;
  c.lhs = h.value;
  c.rhs = l.value * v.value;
  c.sigma = std::sqrt(h.std_error * h.std_error + std::pow(v.value * l.std_error, 2) + std::pow(l.value * v.std_error, 2));
  c.holds = c.lhs <= c.rhs + 3.0 * c.sigma;
  return c;
}

}  // namespace endlab
