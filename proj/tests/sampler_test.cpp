/*
 * Copyright 2026 The fear-grid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <set>

#include "fear/fixtures.hpp"
#include "fear/sampler.hpp"
#include "fear/scenario_io.hpp"

namespace fear {
namespace {

SamplerParams small(std::size_t n, std::uint64_t seed = 3) {
  SamplerParams p;
  p.instance_count = n;
  p.seed = seed;
  return p;
}

TEST(CounterStreamTest, DependsOnlyOnSeedIndexAndCounter) {
  CounterStream a(7, 11);
  CounterStream b(7, 11);
  for (int n = 0; n < 100; ++n) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(CounterStream(7, 11).next(), CounterStream(7, 12).next());
  EXPECT_NE(CounterStream(7, 11).next(), CounterStream(8, 11).next());
}

TEST(CounterStreamTest, BelowIsInRangeAndCoversIt) {
  CounterStream s(1, 2);
  std::vector<int> hits(7, 0);
  for (int n = 0; n < 7000; ++n) {
    const auto v = s.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (const int h : hits) EXPECT_GT(h, 800);
}

TEST(GenerateInstanceTest, PositionsAreDistinctAndLeftToRight) {
  const SamplerParams p = small(1);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Scenario s = generate_instance(p.seed, i, p);
    ASSERT_EQ(s.agent_count(), 4u);
    for (std::size_t k = 1; k < 4; ++k)
      ASSERT_LT(s.state.origins[k - 1].x, s.state.origins[k].x);
    for (const Action a : s.actions)
      ASSERT_TRUE(a.direction() == Direction::kStay || a.direction() == Direction::kRight);
    ASSERT_EQ(joint_action_code(s.mdr), "S0-S0-S0-S0");
  }
}

TEST(GenerateInstanceTest, EveryPositionAndPoolActionOccurs) {
  const SamplerParams p = small(1);
  std::set<int> xs;
  std::set<std::string> codes;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Scenario s = generate_instance(p.seed, i, p);
    for (const Cell c : s.state.origins) xs.insert(c.x);
    for (const Action a : s.actions) codes.insert(a.code());
  }
  EXPECT_EQ(xs.size(), 10u);
  EXPECT_EQ(codes, (std::set<std::string>{"S0", "R1", "R2", "R3", "R4"}));
}

TEST(GenerateInstanceTest, FrozenInstancesForSeedSeven) {
  const SamplerParams p = case4_params(7);
  const Scenario lo = generate_instance(7, 197, p);
  EXPECT_EQ(lo.state.origins, (std::vector<Cell>{{0, 0}, {3, 0}, {6, 0}, {8, 0}}));
  EXPECT_EQ(joint_action_code(lo.actions), "S0-S0-S0-S0");
  const Scenario hi = generate_instance(7, 5523, p);
  EXPECT_EQ(hi.state.origins, (std::vector<Cell>{{0, 0}, {1, 0}, {2, 0}, {4, 0}}));
  EXPECT_EQ(joint_action_code(hi.actions), "R4-R4-R4-R3");
}

TEST(SamplerParamsTest, RejectsImpossibleBatches) {
  SamplerParams p = small(0);
  EXPECT_THROW(p.validate(), Error);
  p = small(5);
  p.agent_count = 11;
  EXPECT_THROW(p.validate(), Error);
  p = small(5);
  p.action_pool.clear();
  EXPECT_THROW(p.validate(), Error);
  p = small(5);
  p.mdr = *parse_joint_action("S0-S0");
  EXPECT_THROW(p.validate(), Error);
}

TEST(RunBatchTest, SameRecordsForAnyThreadCount) {
  const SamplerParams p = small(700);
  const auto one = run_batch(p, 1);
  EXPECT_EQ(run_batch(p, 3), one);
  EXPECT_EQ(run_batch(p, 8), one);
  for (std::size_t i = 0; i < one.size(); ++i) ASSERT_EQ(one[i].index, i);
}

TEST(RunBatchTest, RecordMatchesDirectEvaluation) {
  const SamplerParams p = small(50);
  for (const auto& r : run_batch(p, 2)) {
    EXPECT_EQ(r.scenario, generate_instance(p.seed, r.index, p));
    EXPECT_EQ(r.fear, fear_matrix(r.scenario));
    EXPECT_EQ(r.stats, aggregate(r.fear));
  }
}

TEST(RunBatchTest, InconsistentMdrNamesTheInstance) {
  SamplerParams p = small(20);
  p.mdr = *parse_joint_action("R4-S0-S0-S0");
  try {
    run_batch(p, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInconsistentMdr);
    EXPECT_EQ(e.location().rfind("instance ", 0), 0u);
  }
}

TEST(SummarizeTest, ExtremesPreferTheLowestIndexOnTies) {
  const auto records = run_batch(small(400), 1);
  const BatchSummary s = summarize(records, 10);
  EXPECT_EQ(s.instance_count, 400u);
  EXPECT_EQ(s.histogram.size(), 10u);
  EXPECT_EQ(s.histogram_max, 12.0);
  std::size_t total = 0;
  for (const auto h : s.histogram) total += h;
  EXPECT_EQ(total, 400u);
  const auto& lo = records[s.extremes.argmin];
  EXPECT_EQ(lo.stats.offdiag_sum_squares, s.min_aggregate);
  for (const auto& r : records) {
    if (r.stats.offdiag_sum_squares == s.min_aggregate) {
      EXPECT_EQ(r.index, s.extremes.argmin);
      break;
    }
  }
  EXPECT_EQ(records[s.extremes.argmax].stats.offdiag_sum_squares, s.max_aggregate);
}

TEST(SummarizeTest, SummaryDocumentIsByteStable) {
  const SamplerParams p = small(300, 9);
  const auto a = run_batch(p, 1);
  const auto b = run_batch(p, 4);
  EXPECT_EQ(summary_to_json(summarize(a), p, a).dump(2),
            summary_to_json(summarize(b), p, b).dump(2));
}

TEST(CaseFourTest, SeedSevenSummary) {
  const auto records = run_batch(case4_params(7), 0);
  const BatchSummary s = summarize(records);
  EXPECT_EQ(s.zero_aggregate_count, 42u);
  EXPECT_EQ(s.collision_count, 9180u);
  EXPECT_EQ(s.extremes.argmin, 197u);
  EXPECT_EQ(s.extremes.argmax, 5523u);
  EXPECT_EQ(s.min_aggregate, 0.0);
  EXPECT_FALSE(records[5523].collision);
}

}  // namespace
}  // namespace fear
