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

#include <string>

#include "fear/feasibility.hpp"
#include "fear/fixtures.hpp"
#include "support/random_instances.hpp"

namespace fear {
namespace {

std::string listed(const FeasibilityReport& r) {
  std::string out;
  for (const Action a : r.feasible_display()) out += (out.empty() ? "" : " ") + a.code();
  return out;
}

FeasibilityReport lane_report(const char* joint, int agent) {
  return feasible_actions(two_agent_lane_state(), *parse_joint_action(joint), AgentId{agent});
}

TEST(FeasibleActionsTest, AgentOneWithAgentTwoStaying) {
  EXPECT_EQ(listed(lane_report("S0-S0", 1)), "L2 L1 S0 R1");
}

TEST(FeasibleActionsTest, AgentTwoWithAgentOneStaying) {
  EXPECT_EQ(listed(lane_report("S0-S0", 2)), "L1 S0 R1 R2 R3 R4");
}

TEST(FeasibleActionsTest, CountsUnderEachOtherAction) {
  EXPECT_EQ(listed(lane_report("L1-S0", 2)), "L2 L1 S0 R1 R2 R3 R4");
  EXPECT_EQ(listed(lane_report("R1-S0", 2)), "S0 R1 R2 R3 R4");
  EXPECT_EQ(listed(lane_report("S0-R1", 1)), "L2 L1 S0 R1 R2");
  EXPECT_EQ(listed(lane_report("S0-L1", 1)), "L2 L1 S0");
  EXPECT_EQ(listed(lane_report("S0-R2", 1)), "L2 L1 S0 R1 R2 R3");
  EXPECT_EQ(listed(lane_report("R2-S0", 2)), "R1 R2 R3 R4");
}

TEST(IsFeasibleTest, MembershipExamples) {
  const State s = two_agent_lane_state();
  const JointAction stay = *parse_joint_action("S0-S0");
  EXPECT_FALSE(is_feasible(s, stay, AgentId{1}, *Action::parse("L3")));
  EXPECT_TRUE(is_feasible(s, stay, AgentId{1}, *Action::parse("R1")));
  EXPECT_FALSE(is_feasible(s, *parse_joint_action("R2-S0"), AgentId{2}, Action::stay()));
}

TEST(IsFeasibleTest, OthersCollidingAmongThemselvesDoesNotMatter) {
  const State s{GridMap::lane(10), {{0, 0}, {2, 0}, {8, 0}}};
  const JointAction joint = *parse_joint_action("R2-S0-S0");
  EXPECT_TRUE(is_feasible(s, joint, AgentId{3}, Action::stay()));
}

TEST(FeasibilityReportTest, InvariantsHold) {
  const FeasibilityReport r = lane_report("S0-S0", 2);
  EXPECT_EQ(r.count(), r.feasible().size());
  EXPECT_EQ(r.count(), 6u);
  EXPECT_LE(r.count(), kCatalogSize);
  EXPECT_EQ(r.agent, AgentId{2});
}

TEST(FeasibilityErrorsTest, UnknownAgentAndArity) {
  const State s = two_agent_lane_state();
  try {
    feasible_actions(s, *parse_joint_action("S0-S0"), AgentId{9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownAgent);
  }
  EXPECT_THROW(count_feasible(s, *parse_joint_action("S0"), AgentId{1}), Error);
  EXPECT_THROW(count_feasible(s, *parse_joint_action("S0-S0"), AgentId{0}), Error);
}

TEST(FeasibilityCounterTest, MemoHitsIgnoreTheAgentsOwnEntry) {
  FeasibilityCounter counter(two_agent_lane_state());
  EXPECT_EQ(counter.count(*parse_joint_action("S0-S0"), AgentId{1}), 4u);
  EXPECT_EQ(counter.count(*parse_joint_action("R4-S0"), AgentId{1}), 4u);
  EXPECT_EQ(counter.misses(), 1u);
  EXPECT_EQ(counter.hits(), 1u);
  EXPECT_EQ(counter.count(*parse_joint_action("S0-S0"), AgentId{2}), 6u);
  EXPECT_EQ(counter.misses(), 2u);
}

// Properties over random instances.

TEST(FeasibilityPropertyTest, SubstitutionIdentity) {
  testing::InstanceGenerator gen(21, {.two_dimensional = true});
  for (int n = 0; n < 1500; ++n) {
    const State s = gen.state();
    JointAction joint = gen.joint(s.agent_count());
    const AgentId j = AgentId::from_index(gen.pick(0, static_cast<int>(s.agent_count()) - 1));
    const FeasibilityReport base = feasible_actions(s, joint, j);
    for (const Action a : action_catalog()) {
      joint[j.index()] = a;
      ASSERT_EQ(feasible_actions(s, joint, j), base);
    }
  }
}

TEST(FeasibilityPropertyTest, CacheTransparency) {
  testing::InstanceGenerator gen(22, {.two_dimensional = true});
  for (int n = 0; n < 3000; ++n) {
    const State s = gen.state();
    FeasibilityCounter counter(s);
    for (int rep = 0; rep < 4; ++rep) {
      const JointAction joint = gen.joint(s.agent_count());
      for (std::size_t j = 0; j < s.agent_count(); ++j) {
        const AgentId id = AgentId::from_index(j);
        ASSERT_EQ(counter.report(joint, id), feasible_actions(s, joint, id));
      }
    }
  }
}

TEST(FeasibilityPropertyTest, BoundedByCandidatesThatStayOnValidCells) {
  testing::InstanceGenerator gen(23, {.two_dimensional = true});
  for (int n = 0; n < 3000; ++n) {
    const State s = gen.state();
    const JointAction joint = gen.joint(s.agent_count());
    for (std::size_t j = 0; j < s.agent_count(); ++j) {
      std::size_t on_map = 0;
      for (const Action a : action_catalog()) {
        bool ok = true;
        for (const Cell c : expand_trajectory(s.origins[j], a).cells)
          ok = ok && s.map.is_valid(c);
        on_map += ok ? 1 : 0;
      }
      const auto report = feasible_actions(s, joint, AgentId::from_index(j));
      ASSERT_LE(report.count(), on_map);
      ASSERT_TRUE(report.contains(Action::stay()) || report.count() < on_map);
    }
  }
}

TEST(FeasibilityPropertyTest, LaneAgentsNeverMoveVertically) {
  testing::InstanceGenerator gen(24);
  for (int n = 0; n < 2000; ++n) {
    const State s = gen.state();
    const JointAction joint = gen.joint(s.agent_count());
    for (std::size_t j = 0; j < s.agent_count(); ++j) {
      const auto report = feasible_actions(s, joint, AgentId::from_index(j));
      for (const Action a : report.feasible())
        ASSERT_TRUE(a.direction() != Direction::kUp && a.direction() != Direction::kDown);
    }
  }
}

State without(const State& s, std::size_t r) {
  State t = s;
  t.origins.erase(t.origins.begin() + static_cast<std::ptrdiff_t>(r));
  return t;
}

// Removing an agent never lowers anyone's count while the others stay put:
// it only removes a static obstacle.
TEST(FeasibilityPropertyTest, RemovalIsMonotoneAmongStationaryAgents) {
  testing::InstanceGenerator gen(25, {.two_dimensional = true});
  for (int n = 0; n < 2000; ++n) {
    const State s = gen.state();
    if (s.agent_count() < 2) continue;
    const JointAction stay(s.agent_count());
    const std::size_t r = static_cast<std::size_t>(gen.pick(0, static_cast<int>(s.agent_count()) - 1));
    const State t = without(s, r);
    const JointAction fewer(t.agent_count());
    for (std::size_t j = 0, jj = 0; j < s.agent_count(); ++j) {
      if (j == r) continue;
      ASSERT_GE(count_feasible(t, fewer, AgentId::from_index(jj)),
                count_feasible(s, stay, AgentId::from_index(j)));
      ++jj;
    }
  }
}

// With moving agents removal is not monotone: a stationary agent can shield
// a third one from a fast agent.
TEST(FeasibilityPropertyTest, RemovingAShieldCanLowerACount) {
  const State s{GridMap::lane(5), {{0, 0}, {1, 0}, {4, 0}}};
  const JointAction joint = *parse_joint_action("R4-S0-S0");
  EXPECT_EQ(count_feasible(s, joint, AgentId{3}), 3u);
  const State t = without(s, 1);
  EXPECT_EQ(count_feasible(t, *parse_joint_action("R4-S0"), AgentId{2}), 0u);
}

}  // namespace
}  // namespace fear
