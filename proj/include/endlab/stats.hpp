#pragma once

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "endlab/errors.hpp"

namespace endlab {

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 1;
  std::string method;
};

// Pairwise summation: fixed association order for a given length.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const auto half = x.size() / 2;
  return pairwise_sum(x.subspan(0, half)) + pairwise_sum(x.subspan(half));
}

inline double mean(std::span<const double> x) {
  if (x.empty()) throw PreconditionError("mean of an empty sample");
  return pairwise_sum(x) / static_cast<double>(x.size());
}

inline double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - m) * (x[i] - m);
  return pairwise_sum(sq) / static_cast<double>(x.size() - 1);
}

inline double standard_error(std::span<const double> x) {
  return x.size() < 2 ? 0.0 : std::sqrt(sample_variance(x) / static_cast<double>(x.size()));
}

// Standard error of the mean from contiguous batch means. With independent
// walks this coincides with the plain standard error up to batching noise.
inline double batch_means_se(std::span<const double> x, std::size_t batches = 100) {
  if (x.size() < 2) return 0.0;
  batches = std::min(batches, x.size());
  if (batches < 2) return standard_error(x);
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const auto lo = x.size() * b / batches, hi = x.size() * (b + 1) / batches;
    means[b] = mean(x.subspan(lo, hi - lo));
  }
  return standard_error(means);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double residual_ss = 0.0;
  std::size_t n = 0;
};

// Weighted least squares y = a + b x; weights default to 1. slope_se uses the
// residual variance (unweighted) or the supplied inverse-variance weights when
// known_variance is true.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                            std::span<const double> w = {}, bool known_variance = false) {
  const auto n = x.size();
  if (n < 2 || y.size() != n || (!w.empty() && w.size() != n)) throw PreconditionError("linear_fit needs >= 2 matched points");
  auto wt = [&](std::size_t i) { return w.empty() ? 1.0 : w[i]; };
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += wt(i);
    sx += wt(i) * x[i];
    sy += wt(i) * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += wt(i) * (x[i] - mx) * (x[i] - mx);
    sxy += wt(i) * (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw PreconditionError("linear_fit needs distinct x values");
  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss += wt(i) * r * r;
  }
  fit.residual_ss = rss;
  if (known_variance)
    fit.slope_se = std::sqrt(1.0 / sxx);
  else
    fit.slope_se = n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

// One-sided p-value for H0: slope <= 0 against slope > 0 (t with n-2 dof).
// A perfect fit with positive slope gives 0.
inline double slope_p_value(const LinearFit& fit) {
  if (fit.n < 3) return 1.0;
  if (fit.slope_se == 0.0) return fit.slope > 0 ? 0.0 : 1.0;
  const double t = fit.slope / fit.slope_se;
  boost::math::students_t dist(static_cast<double>(fit.n - 2));
  return boost::math::cdf(boost::math::complement(dist, t));
}

}  // namespace endlab
