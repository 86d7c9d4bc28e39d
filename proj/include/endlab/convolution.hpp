#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/measure.hpp"
#include "endlab/stats.hpp"

namespace endlab {

inline constexpr std::size_t kDefaultConvolutionBudget = 4'000'000;

struct ConvolutionTable {
  int n = 0;
  std::unordered_map<GroupElement, double, ElementHash> masses;

  double mass(const GroupElement& g) const {
    auto it = masses.find(g);
    return it == masses.end() ? 0.0 : it->second;
  }

  double total_mass() const { return sorted_sum([](double p) { return p; }); }

  // H = -sum p log p.
  double entropy() const { return sorted_sum([](double p) { return p > 0 ? -p * std::log(p) : 0.0; }); }

  // L = sum p |g|.
  double mean_length(const Group& group) const {
    std::vector<double> terms;
    terms.reserve(masses.size());
    for (const auto& [g, p] : masses) terms.push_back(p * static_cast<double>(group.word_length(g)));
    std::sort(terms.begin(), terms.end());
    return pairwise_sum(terms);
  }

 private:
  template <class F>
  double sorted_sum(F f) const {
    std::vector<double> terms;
    terms.reserve(masses.size());
    for (const auto& kv : masses) terms.push_back(f(kv.second));
    std::sort(terms.begin(), terms.end());
    return pairwise_sum(terms);
  }
};

inline ConvolutionTable convolve(const Group& group, const ConvolutionTable& a, const ConvolutionTable& b,
                                 std::size_t budget = kDefaultConvolutionBudget) {
  ConvolutionTable out;
  out.n = a.n + b.n;
  // Sorted iteration keeps floating accumulation order fixed.
  std::vector<std::pair<GroupElement, double>> av(a.masses.begin(), a.masses.end()), bv(b.masses.begin(), b.masses.end());
  std::sort(av.begin(), av.end());
  std::sort(bv.begin(), bv.end());
  for (const auto& [g, p] : av)
    for (const auto& [s, q] : bv) {
      GroupElement h = g;
      group.right_multiply(h, s);
      out.masses[std::move(h)] += p * q;
      if (out.masses.size() > budget)
        throw ResourceError("convolution of powers " + std::to_string(a.n) + " and " + std::to_string(b.n) +
                                " exceeds the table budget of " + std::to_string(budget),
                            out.masses.size(), std::max(a.n, b.n));
    }
  return out;
}

inline ConvolutionTable single_step_table(const StepDistribution& mu) {
  ConvolutionTable t;
  t.n = 1;
  for (const auto& a : mu.atoms()) t.masses[a.element] += a.probability;
  return t;
}

// Calls visit(table) for mu^{*1}..mu^{*n} in order.
template <class Visit>
void convolution_powers(const StepDistribution& mu, int n, Visit&& visit, std::size_t budget = kDefaultConvolutionBudget) {
  if (n < 1) throw PreconditionError("convolution power must be >= 1");
  const auto& group = mu.group();
  ConvolutionTable cur = single_step_table(mu);
  visit(static_cast<const ConvolutionTable&>(cur));
  for (int k = 2; k <= n; ++k) {
    std::vector<std::pair<GroupElement, double>> items(cur.masses.begin(), cur.masses.end());
    std::sort(items.begin(), items.end());
    ConvolutionTable next;
    next.n = k;
    next.masses.reserve(std::min(budget, items.size() * mu.atoms().size()));
    for (const auto& [g, p] : items)
      for (const auto& a : mu.atoms()) {
        GroupElement h = g;
        group.right_multiply(h, a.element);
        next.masses[std::move(h)] += p * a.probability;
        if (next.masses.size() > budget)
          throw ResourceError("mu^{*" + std::to_string(k) + "} exceeds the table budget of " + std::to_string(budget) +
                                  " entries; largest feasible power is " + std::to_string(k - 1),
                              next.masses.size(), k - 1);
      }
    cur = std::move(next);
    visit(static_cast<const ConvolutionTable&>(cur));
  }
}

inline ConvolutionTable exact_convolution(const StepDistribution& mu, int n, std::size_t budget = kDefaultConvolutionBudget) {
  ConvolutionTable out;
  convolution_powers(mu, n, [&](const ConvolutionTable& t) { if (t.n == n) out = t; }, budget);
  return out;
}

inline double total_variation(const ConvolutionTable& a, const ConvolutionTable& b) {
  std::vector<double> diffs;
  for (const auto& [g, p] : a.masses) diffs.push_back(std::abs(p - b.mass(g)));
  for (const auto& [g, q] : b.masses)
    if (!a.masses.count(g)) diffs.push_back(q);
  std::sort(diffs.begin(), diffs.end());
  return 0.5 * pairwise_sum(diffs);
}

}  // namespace endlab
