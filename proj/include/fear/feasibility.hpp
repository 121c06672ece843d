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

// Feasible-move counting. A candidate action is feasible for agent j when,
// substituted into the joint action and fully re-simulated, j takes part in
// no collision event, including as a stationary victim. Collisions among the
// other agents do not count against j.

#ifndef FEAR_FEASIBILITY_HPP_
#define FEAR_FEASIBILITY_HPP_

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fear/collision.hpp"
#include "fear/grid.hpp"

namespace fear {

struct FeasibilityReport {
  AgentId agent;
  std::uint32_t mask = 0;  // bit n set <=> catalog action n is feasible

  std::size_t count() const {
    return static_cast<std::size_t>(std::popcount(mask));
  }
  bool contains(Action a) const { return (mask >> a.index()) & 1u; }

  // Catalog order.
  std::vector<Action> feasible() const {
    std::vector<Action> out;
    for (const Action a : action_catalog())
      if (contains(a)) out.push_back(a);
    return out;
  }

  // Displacement order, e.g. "L2 L1 S0 R1".
  std::vector<Action> feasible_display() const {
    std::vector<Action> out;
    for (const Action a : display_order())
      if (contains(a)) out.push_back(a);
    return out;
  }

  friend bool operator==(const FeasibilityReport&,
                         const FeasibilityReport&) = default;
};

namespace detail {

inline void check_agent(const State& state, const JointAction& joint,
                        AgentId j) {
  if (joint.size() != state.agent_count())
    throw Error(ErrorKind::kInvalidScenario,
                "joint action has " + std::to_string(joint.size()) +
                    " entries for " + std::to_string(state.agent_count()) +
                    " agents");
  if (!state.has_agent(j))
    throw Error(ErrorKind::kUnknownAgent,
                "unknown agent id " + std::to_string(j.value));
}

// Scratch buffers reused across the 17 candidate simulations.
struct CandidateScratch {
  JointAction joint;
  std::vector<int> limits;
  std::vector<std::uint8_t> collided;
};

inline std::uint32_t feasible_mask(const State& state, const JointAction& joint,
                                   AgentId j, CollisionRules rules,
                                   CandidateScratch& scratch) {
  const std::size_t k = state.agent_count();
  scratch.joint = joint;
  scratch.limits.resize(k);
  scratch.collided.resize(k);
  std::uint32_t mask = 0;
  for (const Action candidate : action_catalog()) {
    scratch.joint[j.index()] = candidate;
    resolve(state, scratch.joint, rules, scratch.limits, scratch.collided,
            [](const CollisionEvent&) {});
    if (!scratch.collided[j.index()]) mask |= 1u << candidate.index();
  }
  return mask;
}

}  // namespace detail

inline bool is_feasible(const State& state, const JointAction& joint,
                        AgentId j, Action candidate, CollisionRules rules = {}) {
  detail::check_agent(state, joint, j);
  const ResolutionResult r =
      simulate(state, with_action(joint, j, candidate), rules);
  return !r.collided[j.index()];
}

inline FeasibilityReport feasible_actions(const State& state,
                                          const JointAction& joint, AgentId j,
                                          CollisionRules rules = {}) {
  detail::check_agent(state, joint, j);
  detail::CandidateScratch scratch;
  return {j, detail::feasible_mask(state, joint, j, rules, scratch)};
}

// Memoizing feasibility oracle bound to one state. The memo key is the joint
// action with j's own entry masked out, since j's entry is always substituted.
// One instance per evaluation; not safe for concurrent use.
class FeasibilityCounter {
 public:
  explicit FeasibilityCounter(State state, CollisionRules rules = {})
      : state_(std::move(state)), rules_(rules) {}

  const State& state() const { return state_; }
  CollisionRules rules() const { return rules_; }

  FeasibilityReport report(const JointAction& joint, AgentId j) {
    detail::check_agent(state_, joint, j);
    std::string key;
    key.reserve(joint.size() + 1);
    key.push_back(static_cast<char>(j.index()));
    for (std::size_t i = 0; i < joint.size(); ++i)
      key.push_back(i == j.index() ? char(-1)
                                   : static_cast<char>(joint[i].index()));
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return {j, it->second};
    }
    ++misses_;
    const std::uint32_t mask =
        detail::feasible_mask(state_, joint, j, rules_, scratch_);
    memo_.emplace(std::move(key), mask);
    return {j, mask};
  }

  std::size_t count(const JointAction& joint, AgentId j) {
    return report(joint, j).count();
  }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  State state_;
  CollisionRules rules_;
  std::unordered_map<std::string, std::uint32_t> memo_;
  detail::CandidateScratch scratch_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

// n(s, A, j): number of collision-free actions left to j.
inline std::size_t count_feasible(const State& state, const JointAction& joint,
                                  AgentId j, CollisionRules rules = {}) {
  return feasible_actions(state, joint, j, rules).count();
}

}  // namespace fear

#endif  // FEAR_FEASIBILITY_HPP_
