#pragma once

#include <cstdint>
#include <vector>

#include "endlab/errors.hpp"
#include "endlab/group.hpp"
#include "endlab/measure.hpp"
#include "endlab/rng.hpp"

namespace endlab {

struct Trajectory {
  std::vector<GroupElement> positions;  // omega_0 = 1, ..., omega_N
  std::uint64_t master_seed = 0;
  std::uint64_t walk_index = 0;
  std::uint64_t derived_seed = 0;
};

inline void require_admissible(const StepDistribution& mu) {
  if (!mu.admissible()) throw ValidationError("measure", "sampling needs an admissible measure: " + mu.certificate().diagnostic);
}

// Runs one walk of N steps, calling visit(n, omega_n) for n = 0..N. The
// walk is a pure function of (master seed, stream, index).
template <class Visit>
void run_walk(const StepDistribution& mu, std::int64_t N, std::uint64_t master_seed, std::uint64_t walk_index,
              Visit&& visit, Stream stream = Stream::Walk) {
  Rng rng = make_rng(master_seed, stream, walk_index);
  GroupElement pos;
  visit(std::int64_t{0}, static_cast<const GroupElement&>(pos));
  for (std::int64_t n = 1; n <= N; ++n) {
    mu.group().right_multiply(pos, mu.sample(rng));
    visit(n, static_cast<const GroupElement&>(pos));
  }
}

// Endpoint only; avoids storing the path.
inline GroupElement walk_endpoint(const StepDistribution& mu, std::int64_t N, std::uint64_t master_seed,
                                  std::uint64_t walk_index, Stream stream = Stream::Walk) {
  Rng rng = make_rng(master_seed, stream, walk_index);
  GroupElement pos;
  for (std::int64_t n = 1; n <= N; ++n) mu.group().right_multiply(pos, mu.sample(rng));
  return pos;
}

inline Trajectory sample_trajectory(const StepDistribution& mu, std::int64_t N, std::uint64_t seed,
                                    std::uint64_t walk_index = 0,
                                    AdmissibilityPolicy policy = AdmissibilityPolicy::Require) {
  if (N < 1) throw PreconditionError("trajectory length must be >= 1");
  if (policy == AdmissibilityPolicy::Require) require_admissible(mu);
  Trajectory t;
  t.master_seed = seed;
  t.walk_index = walk_index;
  t.derived_seed = derive_seed(seed, Stream::Walk, walk_index);
  t.positions.reserve(static_cast<std::size_t>(N) + 1);
  run_walk(mu, N, seed, walk_index, [&](std::int64_t, const GroupElement& g) { t.positions.push_back(g); });
  return t;
}

}  // namespace endlab
