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

// Built-in case-study scenarios.
//
// Lane cases: a 10x1 strip with agent 1 at x=2 and agent 2 at x=4, the only
// placement that reproduces the published feasible-move lists (agent 1 is
// two cells from the left border, agent 2 ahead of it).

#ifndef FEAR_FIXTURES_HPP_
#define FEAR_FIXTURES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "fear/grid.hpp"
#include "fear/intersection_search.hpp"
#include "fear/sampler.hpp"

namespace fear {

struct NamedScenario {
  std::string name;
  std::string description;
  Scenario scenario;
};

inline State two_agent_lane_state() {
  return State{GridMap::lane(10), {Cell{2, 0}, Cell{4, 0}}};
}

inline Scenario lane_case(const char* actions, const char* mdr) {
  return Scenario{two_agent_lane_state(), *parse_joint_action(actions),
                  *parse_joint_action(mdr)};
}

inline SamplerParams case4_params(std::uint64_t seed = 7) {
  SamplerParams p;
  p.seed = seed;
  return p;
}

inline std::vector<NamedScenario> builtin_fixtures() {
  struct Instance {
    const char* tag;
    const char* actions;
    const char* what;
  };
  static constexpr Instance kLane[] = {
      {"a", "L1-R1", "both agents step away from each other"},
      {"b", "R1-R1", "both agents step right"},
      {"c", "R1-L1", "both agents step towards each other and collide"},
  };
  std::vector<NamedScenario> out;
  for (const auto& i : kLane)
    out.push_back({std::string("case1-") + i.tag,
                   std::string("two agents on a lane, ") + i.what + ", MdR S0-S0",
                   lane_case(i.actions, "S0-S0")});
  for (const char* mdr : {"R1-R1", "R2-R2"}) {
    const std::string lower = mdr[1] == '1' ? "r1" : "r2";
    for (const auto& i : kLane)
      out.push_back({"case2-" + lower + "-" + i.tag,
                     std::string("two agents on a lane, ") + i.what + ", MdR " + mdr,
                     lane_case(i.actions, mdr)});
  }
  const State crossing = locked_intersection_layout().state();
  for (const auto& t : intersection_targets())
    out.push_back({std::string("case3-") + t.label,
                   std::string("three agents at an intersection, ") + t.actions +
                       ", MdR S0-S0-S0",
                   Scenario{crossing, *parse_joint_action(t.actions), JointAction(3)}});
  return out;
}

inline std::optional<NamedScenario> find_fixture(const std::string& name) {
  for (auto& f : builtin_fixtures())
    if (f.name == name) return f;
  return std::nullopt;
}

}  // namespace fear

#endif  // FEAR_FIXTURES_HPP_
