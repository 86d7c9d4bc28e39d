#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/group.hpp"
#include "endlab/rng.hpp"

namespace endlab {

inline constexpr int kAdmissibilityDepth = 12;
inline constexpr std::size_t kAdmissibilityClosureCap = 2'000'000;

// Parses "0.25", "1/4", "1e-3".
inline double parse_probability(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto number = [&](std::string_view s) {
    s = trim(s);
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw SpecError("probability '" + std::string(text) + "' is not a number or fraction");
    }
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return number(text);
  const double den = number(text.substr(slash + 1));
  if (den == 0) throw SpecError("probability '" + std::string(text) + "' has a zero denominator");
  return number(text.substr(0, slash)) / den;
}

enum class AdmissibilityPolicy { Require, AllowDegenerate };

struct AdmissibilityCertificate {
  bool admissible = false;
  int depth = 0;                 // closure depth at which every generator appeared
  std::string diagnostic;        // names missing generators on failure
};

struct StepAtom {
  GroupElement element;
  double probability = 0.0;
};

// Finite-support probability measure on the group.
class StepDistribution {
 public:
  StepDistribution(const Group& group, std::vector<StepAtom> atoms,
                   AdmissibilityPolicy policy = AdmissibilityPolicy::Require)
      : group_(&group) {
    if (atoms.empty()) throw ValidationError("measure", "empty support");
    std::sort(atoms.begin(), atoms.end(), [&](const StepAtom& a, const StepAtom& b) { return group.canonical_less(a.element, b.element); });
    for (auto& a : atoms) {
      group.validate(a.element);
      if (!(a.probability > 0.0) || !std::isfinite(a.probability))
        throw ValidationError("measure", "probability of " + group.format(a.element) + " must be positive");
      if (!atoms_.empty() && atoms_.back().element == a.element)
        atoms_.back().probability += a.probability;
      else
        atoms_.push_back(std::move(a));
    }
    double total = 0.0;
    for (const auto& a : atoms_) total += a.probability;
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("measure", "probabilities sum to " + std::to_string(total) + ", not 1");
    double acc = 0.0;
    for (const auto& a : atoms_) {
      acc += a.probability;
      cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
    for (const auto& a : atoms_) max_step_ = std::max(max_step_, group.word_length(a.element));
    certificate_ = check_admissibility(group, atoms_);
    if (policy == AdmissibilityPolicy::Require && !certificate_.admissible)
      throw ValidationError("measure", "not admissible: " + certificate_.diagnostic);
  }

  static StepDistribution simple_random_walk(const Group& group) {
    std::vector<StepAtom> atoms;
    const auto& gens = group.generators();
    for (const auto& g : gens) atoms.push_back({g, 1.0 / static_cast<double>(gens.size())});
    return StepDistribution(group, std::move(atoms));
  }

  static StepDistribution point_mass(const Group& group, GroupElement g) {
    return StepDistribution(group, {{std::move(g), 1.0}}, AdmissibilityPolicy::AllowDegenerate);
  }

  const Group& group() const noexcept { return *group_; }
  const std::vector<StepAtom>& atoms() const noexcept { return atoms_; }
  const AdmissibilityCertificate& certificate() const noexcept { return certificate_; }
  bool admissible() const noexcept { return certificate_.admissible; }
  std::int64_t max_step_length() const noexcept { return max_step_; }

  std::size_t sample_index(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative_.begin(), static_cast<std::ptrdiff_t>(atoms_.size()) - 1));
  }

  const GroupElement& sample(Rng& rng) const { return atoms_[sample_index(rng)].element; }

  // Closure of the support semigroup until every generator is reached.
  static AdmissibilityCertificate check_admissibility(const Group& group, const std::vector<StepAtom>& atoms) {
    AdmissibilityCertificate cert;
    std::unordered_set<GroupElement, ElementHash> missing(group.generators().begin(), group.generators().end());
    std::unordered_set<GroupElement, ElementHash> seen;
    std::vector<GroupElement> frontier;
    for (const auto& a : atoms)
      if (seen.insert(a.element).second) frontier.push_back(a.element);
    for (int depth = 1; depth <= kAdmissibilityDepth; ++depth) {
      for (const auto& g : frontier) missing.erase(g);
      if (missing.empty()) {
        cert.admissible = true;
        cert.depth = depth;
        return cert;
      }
      if (depth == kAdmissibilityDepth || seen.size() > kAdmissibilityClosureCap) break;
      std::vector<GroupElement> next;
      for (const auto& g : frontier)
        for (const auto& a : atoms) {
          GroupElement h = g;
          group.right_multiply(h, a.element);
          if (seen.insert(h).second) next.push_back(std::move(h));
        }
      if (next.empty()) break;
      frontier = std::move(next);
    }
    std::vector<GroupElement> miss(missing.begin(), missing.end());
    std::sort(miss.begin(), miss.end());
    cert.diagnostic = "support semigroup does not reach generator(s)";
    for (const auto& g : miss) cert.diagnostic += " " + group.format(g);
    cert.diagnostic += " within depth " + std::to_string(kAdmissibilityDepth);
    return cert;
  }

 private:
  const Group* group_;
  std::vector<StepAtom> atoms_;
  std::vector<double> cumulative_;
  std::int64_t max_step_ = 0;
  AdmissibilityCertificate certificate_;
};

}  // namespace endlab
