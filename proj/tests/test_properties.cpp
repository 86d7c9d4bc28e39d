#include <gtest/gtest.h>

#include "endlab/properties.hpp"
#include "test_support.hpp"

using namespace endlab;
using namespace endlab::testing;

namespace {

void expect_all_pass(const std::vector<PropertyResult>& results, std::uint64_t min_instances) {
  for (const auto& r : results) {
    EXPECT_EQ(r.violations, 0u) << r.module << "/" << r.suite << ": " << r.note;
    EXPECT_GE(r.instances, min_instances) << r.module << "/" << r.suite;
  }
}

}  // namespace

TEST(Properties, Z3Z3SmallBudgets) {
  const auto g = z3z3();
  const auto mu = StepDistribution::simple_random_walk(g);
  PropertyBudget b;
  b.instances = 200;
  b.window_cap = 40000;
  b.refine_cap = 200000;
  expect_all_pass(metric_properties(mu, 0.5, 3, b), 1);
  expect_all_pass(group_properties(g, 3, b), 1);
  expect_all_pass(walk_properties(mu, 3, 6, 10), 1);
  expect_all_pass(dimension_properties(mu, 0.5, 3, b), 1);
}

TEST(Properties, MetricSuitesAtFullSize) {
  for (const auto& g : {f2(), z2z()}) {
    const auto mu = StepDistribution::simple_random_walk(g);
    const auto results = metric_properties(mu, 0.5, 21);
    expect_all_pass(results, 1000);
    for (const auto& r : results) std::printf("%-28s %6llu inst %4llu skipped  %s\n", r.suite.c_str(),
                                              static_cast<unsigned long long>(r.instances),
                                              static_cast<unsigned long long>(r.skipped), r.note.c_str());
  }
}

TEST(Properties, SampledEndsShareAUsablePrecision) {
  const auto g = z3z3();
  const auto mu = StepDistribution::simple_random_walk(g);
  // At 120 steps this seed has a walk ending 4 steps out; it must not drag
  // every end down to precision 0.
  const auto ends = props::sample_ends(mu, 200, 120, 20240918, 6);
  ASSERT_EQ(ends.size(), 200u);
  EXPECT_GE(ends.front().precision, 8);
  for (const auto& e : ends) {
    EXPECT_EQ(e.precision, ends.front().precision);
    EXPECT_GE(g.word_length(e.representative), e.precision + kPrecisionMargin);
  }
  PropertyBudget b;
  b.instances = 300;
  b.walk_length = 120;
  b.window_cap = 60000;
  expect_all_pass({check_shadow_sandwich(mu, 0.5, 20240918, b)}, 300);
}
