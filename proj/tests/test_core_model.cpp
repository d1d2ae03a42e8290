#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "rbcsp/errors.hpp"
#include "rbcsp/generator.hpp"
#include "rbcsp/instance.hpp"
#include "rbcsp/params.hpp"
#include "test_support.hpp"

using namespace rbcsp;
using rbcsp::testing::params_for;
using rbcsp::testing::two_variable_instance;

TEST(DeriveSizes, BenchmarkN59) {
  CspParams params;
  params.k = 2;
  params.n = 59;
  params.alpha = 0.8;
  params.r = 0.8 / std::log(4.0 / 3.0);
  params.p = 0.25;
  const DerivedSizes sizes = derive_sizes(params);
  EXPECT_EQ(sizes.d, 26);
  EXPECT_EQ(sizes.m, 669);
  EXPECT_EQ(sizes.q, 169);
  EXPECT_EQ(sizes.tuple_space, 676);
}

TEST(DeriveSizes, BenchmarkN30) {
  CspParams params;
  params.k = 2;
  params.n = 30;
  params.alpha = std::log(15.0) / std::log(30.0);
  params.r = 250.0 / (30.0 * std::log(30.0));
  params.p = 0.37;
  const DerivedSizes sizes = derive_sizes(params);
  EXPECT_EQ(sizes.d, 15);
  EXPECT_EQ(sizes.m, 250);
}

TEST(DeriveSizes, TinyInstance) {
  CspParams params;
  params.k = 2;
  params.n = 4;
  params.alpha = 0.5;
  params.r = 1.0;
  params.p = 0.0;
  const DerivedSizes sizes = derive_sizes(params);
  EXPECT_EQ(sizes.d, 2);
  EXPECT_EQ(sizes.m, 6);
  EXPECT_EQ(sizes.q, 0);
  EXPECT_EQ(derive_sizes(params), sizes);
}

TEST(DeriveSizes, RoundsHalfAwayFromZero) {
  EXPECT_EQ(round_nearest(2.5), 3);
  EXPECT_EQ(round_nearest(3.5), 4);
  EXPECT_EQ(round_nearest(2.4999), 2);
  // q = 0.5 * 9 = 4.5 -> 5
  const CspParams params = params_for(ModelKind::RB, 2, 6, 3, 4, 0.5);
  EXPECT_EQ(derive_sizes(params).q, 5);
}

TEST(DeriveSizes, RejectsDegenerateAndInvalid) {
  CspParams params;
  params.n = 4;
  params.alpha = 0.1;  // 4^0.1 = 1.15 -> d = 1
  params.r = 1.0;
  EXPECT_THROW(derive_sizes(params), ParamRangeError);
  params.alpha = 0.5;
  params.r = 0.01;  // m = round(0.055) = 0
  EXPECT_THROW(derive_sizes(params), ParamRangeError);
  params.r = 1.0;
  params.p = 1.5;
  EXPECT_THROW(derive_sizes(params), ParamRangeError);
  params.p = 0.5;
  params.k = 1;
  EXPECT_THROW(derive_sizes(params), ParamRangeError);
}

TEST(ModelKind, Names) {
  EXPECT_EQ(to_string(ModelKind::RB), "rb");
  EXPECT_EQ(to_string(ModelKind::RD), "rd");
  EXPECT_EQ(parse_model("rd"), ModelKind::RD);
  EXPECT_THROW(parse_model("RB"), ParamRangeError);
}

TEST(TupleRank, RowMajor) {
  EXPECT_EQ(tuple_rank(std::vector<int>{2, 1, 0}, 3), 2u * 9 + 1u * 3 + 0u);
  for (TupleRank r = 0; r < 27; ++r) EXPECT_EQ(tuple_rank(tuple_from_rank(r, 3, 3), 3), r);
}

TEST(CheckAssignment, SingleConstraint) {
  const CspInstance instance = two_variable_instance();
  const auto bad = check_assignment(instance, Assignment{{0, 1}});
  EXPECT_FALSE(bad.satisfied);
  ASSERT_TRUE(bad.violated.has_value());
  EXPECT_EQ(*bad.violated, 0u);
  EXPECT_TRUE(check_assignment(instance, Assignment{{1, 1}}).satisfied);
}

TEST(CheckAssignment, EmptyIncompatibleSetsAlwaysSatisfied) {
  const CspParams params = params_for(ModelKind::RD, 2, 5, 3, 8, 0.0);
  const CspInstance instance = generate({params, 11, false});
  Assignment t{{0, 1, 2, 0, 1}};
  EXPECT_TRUE(check_assignment(instance, t).satisfied);
}

TEST(CheckAssignment, DimensionErrors) {
  const CspInstance instance = two_variable_instance();
  EXPECT_THROW(check_assignment(instance, Assignment{{0}}), DimensionError);
  EXPECT_THROW(check_assignment(instance, Assignment{{0, 2}}), DimensionError);
}

// Reports the lowest violated index, matching an exhaustive per-constraint scan.
TEST(CheckAssignment, MatchesExhaustiveScan) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const int d = 2 + static_cast<int>(seed % 2);
    const int m = 1 + static_cast<int>(seed % 10);
    const auto model = seed % 3 == 0 ? ModelKind::RD : ModelKind::RB;
    const CspInstance instance = generate({params_for(model, 2, n, d, m, 0.4), seed, false});
    Xoshiro256 rng(seed + 1000);
    for (int trial = 0; trial < 10; ++trial) {
      Assignment t;
      for (int i = 0; i < n; ++i) t.values.push_back(static_cast<int>(rng.below(d)));
      std::optional<std::size_t> first;
      for (std::size_t c = 0; c < instance.constraints().size() && !first; ++c) {
        const auto& constraint = instance.constraints()[c];
        const std::vector<int> tuple{t[constraint.scope()[0]], t[constraint.scope()[1]]};
        for (TupleRank rank : constraint.incompatible())
          if (tuple_from_rank(rank, 2, d) == tuple) first = c;
      }
      const auto report = check_assignment(instance, t);
      EXPECT_EQ(report.satisfied, !first.has_value());
      EXPECT_EQ(report.violated, first);
    }
  }
}

TEST(Instance, RejectsInconsistentConstruction) {
  const CspParams params = params_for(ModelKind::RB, 2, 2, 2, 1, 0.25);
  std::vector<Constraint> two_tuples;
  two_tuples.emplace_back(std::vector<int>{0, 1}, std::vector<TupleRank>{1, 2}, 2, 2);
  EXPECT_THROW(CspInstance(params, two_tuples, 0), ConsistencyError);
  EXPECT_THROW(Constraint(std::vector<int>{1, 1}, {}, 2, 2), ConsistencyError);
  EXPECT_THROW(Constraint(std::vector<int>{0, 1}, {4}, 2, 2), ConsistencyError);
  EXPECT_THROW(Constraint(std::vector<int>{0, 1}, {1, 1}, 2, 2), ConsistencyError);

  std::vector<Constraint> one;
  one.emplace_back(std::vector<int>{0, 1}, std::vector<TupleRank>{1}, 2, 2);
  EXPECT_THROW(CspInstance(params, one, 0, Assignment{{0, 1}}), ConsistencyError);
  EXPECT_NO_THROW(CspInstance(params, one, 0, Assignment{{1, 1}}));
}

TEST(Similarity, Examples) {
  const Assignment t{{0, 1, 2}};
  EXPECT_EQ(similarity(t, t), 3);
  EXPECT_EQ(similarity(Assignment{{0, 1, 2}}, Assignment{{0, 2, 2}}), 2);
  EXPECT_THROW(similarity(Assignment{{0}}, Assignment{{0, 1}}), DimensionError);
}

// All 16 ordered pairs at n = 2, d = 2, tallied by hand: S = 2 for 4 pairs,
// S = 1 for 8, S = 0 for 4.
TEST(Similarity, ExhaustiveTallyN2D2) {
  std::map<int, int> tally;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      ++tally[similarity(Assignment{{a & 1, a >> 1}}, Assignment{{b & 1, b >> 1}})];
  EXPECT_EQ(tally[0], 4);
  EXPECT_EQ(tally[1], 8);
  EXPECT_EQ(tally[2], 4);
}

TEST(Distance, Examples) {
  const Assignment t{{0, 1, 2, 3}};
  EXPECT_EQ(distance(t, t), 0.0);
  EXPECT_EQ(distance(t, Assignment{{1, 2, 3, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(distance(t, Assignment{{0, 1, 2, 0}}), 0.25);
  EXPECT_THROW(distance(t, Assignment{{0}}), DimensionError);
}

TEST(Distance, SymmetricBoundedAndZeroOnlyOnIdentity) {
  Xoshiro256 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const auto d = 1 + rng.below(4);
    Assignment a, b;
    for (int i = 0; i < n; ++i) {
      a.values.push_back(static_cast<int>(rng.below(d)));
      b.values.push_back(static_cast<int>(rng.below(d)));
    }
    const double ab = distance(a, b);
    EXPECT_EQ(ab, distance(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_EQ(ab == 0.0, a == b);
  }
}
