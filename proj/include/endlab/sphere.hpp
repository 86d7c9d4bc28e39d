#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/group.hpp"

namespace endlab {

inline constexpr std::uint64_t kDefaultSphereBudget = 10'000'000;

struct SphereCounts {
  std::vector<std::uint64_t> exact;  // #S_0..#S_n, saturating at UINT64_MAX
  std::vector<double> approx;        // same counts in floating point
  bool saturated = false;
};

// Counts by last syllable: c_f[m] = sum_k s_f(k) (c[m-k] - c_f[m-k]), c[0] = 1.
inline SphereCounts sphere_counts(const Group& group, int n_max) {
  const auto nf = group.factor_count();
  const auto len = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::vector<std::uint64_t>> s(nf, std::vector<std::uint64_t>(len, 0));
  std::vector<std::vector<double>> sd(nf, std::vector<double>(len, 0.0));
  for (std::size_t f = 0; f < nf; ++f)
    for (int k = 1; k <= n_max; ++k) {
      s[f][static_cast<std::size_t>(k)] = group.factor(f).sphere_size(k);
      sd[f][static_cast<std::size_t>(k)] = static_cast<double>(s[f][static_cast<std::size_t>(k)]);
    }

  SphereCounts out;
  out.exact.assign(len, 0);
  out.approx.assign(len, 0.0);
  std::vector<std::vector<unsigned __int128>> c(nf, std::vector<unsigned __int128>(len, 0));
  std::vector<std::vector<double>> cd(nf, std::vector<double>(len, 0.0));
  std::vector<unsigned __int128> total(len, 0);
  std::vector<double> total_d(len, 0.0);
  total[0] = 1;
  total_d[0] = 1.0;
  constexpr unsigned __int128 cap = static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max());
  bool saturated = false;
  for (std::size_t m = 1; m < len; ++m) {
    for (std::size_t f = 0; f < nf; ++f) {
      unsigned __int128 acc = 0;
      double accd = 0.0;
      for (std::size_t k = 1; k <= m; ++k) {
        if (s[f][k] == 0) continue;
        if (!saturated) acc += static_cast<unsigned __int128>(s[f][k]) * (total[m - k] - c[f][m - k]);
        accd += sd[f][k] * (total_d[m - k] - cd[f][m - k]);
      }
      if (acc > cap) saturated = true;
      c[f][m] = acc;
      cd[f][m] = accd;
    }
    unsigned __int128 t = 0;
    double td = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      t += c[f][m];
      td += cd[f][m];
    }
    if (t > cap) saturated = true;
    total[m] = t;
    total_d[m] = td;
  }
  for (std::size_t m = 0; m < len; ++m) {
    out.exact[m] = total[m] > cap ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(total[m]);
    out.approx[m] = total_d[m];
  }
  out.saturated = saturated;
  return out;
}

inline std::uint64_t ball_size(const Group& group, int radius) {
  const auto counts = sphere_counts(group, radius);
  std::uint64_t total = 0;
  for (auto c : counts.exact) {
    if (total > std::numeric_limits<std::uint64_t>::max() - c) return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

namespace detail {

inline void enumerate_sphere_rec(const Group& group, std::vector<Syllable>& prefix, int remaining,
                                 std::vector<GroupElement>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  const std::uint32_t last = prefix.empty() ? std::numeric_limits<std::uint32_t>::max() : prefix.back().factor;
  for (std::uint32_t f = 0; f < group.factor_count(); ++f) {
    if (f == last) continue;
    for (int k = 1; k <= remaining; ++k) {
      for (const auto& v : group.factor(f).sphere(k)) {
        prefix.push_back(Syllable{f, v});
        enumerate_sphere_rec(group, prefix, remaining - k, out);
        prefix.pop_back();
      }
    }
  }
}

}  // namespace detail

// All elements of word length exactly n, in ascending normal-form order.
inline std::vector<GroupElement> enumerate_sphere(const Group& group, int n,
                                                  std::uint64_t budget = kDefaultSphereBudget) {
  if (n < 0) throw PreconditionError("enumerate_sphere: n must be >= 0");
  const auto counts = sphere_counts(group, n);
  const auto size = counts.exact[static_cast<std::size_t>(n)];
  if (counts.saturated || size > budget) {
    int feasible = -1;
    for (int m = 0; m <= n; ++m)
      if (counts.exact[static_cast<std::size_t>(m)] <= budget) feasible = m;
    throw ResourceError("sphere S_" + std::to_string(n) + " has " + std::to_string(size) +
                            " elements, over the budget of " + std::to_string(budget),
                        0, feasible >= 0 ? std::optional<int>(feasible) : std::nullopt);
  }
  std::vector<GroupElement> out;
  out.reserve(size);
  std::vector<Syllable> prefix;
  detail::enumerate_sphere_rec(group, prefix, n, out);
  std::sort(out.begin(), out.end());
  if (out.size() != size) throw InternalError("sphere enumeration disagrees with the count recursion");
  return out;
}

// Ball of radius n about the identity, shortlex ordered.
inline std::vector<GroupElement> enumerate_ball(const Group& group, int n,
                                                std::uint64_t budget = kDefaultSphereBudget) {
  std::vector<GroupElement> out;
  for (int k = 0; k <= n; ++k) {
    auto s = enumerate_sphere(group, k, budget);
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

}  // namespace endlab
