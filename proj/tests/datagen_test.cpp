#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "wheelopt/datagen.hpp"

namespace wheelopt {
namespace {

TEST(GenerateSchedule, ZeroStdGivesRoundedMean) {
  const auto d = generate_schedule(DemandGenSpec{{900.0, 12.4, 12.6}, {0.0, 0.0, 0.0}, 24, 5});
  for (std::size_t h = 1; h <= 24; ++h) {
    EXPECT_EQ(d(0, h), 900);
    EXPECT_EQ(d(1, h), 12);
    EXPECT_EQ(d(2, h), 13);
  }
}

TEST(GenerateSchedule, ClampsNegativeDraws) {
  const auto d = generate_schedule(DemandGenSpec{{0.0}, {1.0}, 2000, 17});
  std::size_t zeros = 0;
  for (std::size_t h = 1; h <= 2000; ++h) {
    EXPECT_GE(d(0, h), 0);
    zeros += d(0, h) == 0 ? 1 : 0;
  }
  // P(round(x) <= 0) for standard normal x is P(x < 0.5) ~ 0.69.
  EXPECT_GT(zeros, 1200u);
  EXPECT_LT(zeros, 1560u);
}

TEST(GenerateSchedule, SampleMeanWithinThreeSigmaForMostSeeds) {
  const auto items = oracle::synthetic_items();
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto d = generate_schedule(demand_spec_from_items(items, 24, seed));
    if (std::abs(d.mean(0) - 900.0) <= 3.0 * 100.0 / std::sqrt(24.0)) ++inside;
  }
  EXPECT_GE(inside, 95);
}

TEST(GenerateSchedule, ShapeAndDeterminism) {
  const auto spec = demand_spec_from_items(oracle::synthetic_items(), 24, 3);
  const auto a = generate_schedule(spec);
  const auto b = generate_schedule(spec);
  EXPECT_EQ(a.num_items(), 3u);
  EXPECT_EQ(a.num_periods(), 24u);
  EXPECT_EQ(a, b);
  auto other = spec;
  other.seed = 4;
  EXPECT_NE(a, generate_schedule(other));
}

TEST(DemandGenSpec, Validation) {
  EXPECT_THROW(generate_schedule(DemandGenSpec{{1.0}, {-1.0}, 3, 0}), std::invalid_argument);
  EXPECT_THROW(generate_schedule(DemandGenSpec{{1.0}, {1.0}, 0, 0}), std::invalid_argument);
  EXPECT_THROW(generate_schedule(DemandGenSpec{{1.0, 2.0}, {1.0}, 3, 0}), std::invalid_argument);
  EXPECT_THROW(generate_schedule(DemandGenSpec{{}, {}, 3, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace wheelopt
