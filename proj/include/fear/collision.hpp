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

// Resolution of one simultaneous step.
//
// Every agent advances one cell per sub-step for its first `magnitude`
// sub-steps and then holds. The earliest conflicting sub-step t is found,
// every participant freezes at the cell it held at t-1, and the scan resumes
// at t until the step is conflict-free. Frozen agents never move again, so
// each pass shortens at least one trajectory.

#ifndef FEAR_COLLISION_HPP_
#define FEAR_COLLISION_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fear/grid.hpp"

namespace fear {

struct CollisionRules {
  // Two agents exchanging cells between consecutive sub-steps collide.
  bool swap_is_collision = true;

  friend bool operator==(const CollisionRules&, const CollisionRules&) = default;
};

enum class ConflictKind : std::uint8_t { kVertex, kSwap, kBoundary };

inline std::string_view conflict_kind_name(ConflictKind k) {
  switch (k) {
    case ConflictKind::kVertex:
      return "vertex";
    case ConflictKind::kSwap:
      return "swap";
    case ConflictKind::kBoundary:
      return "boundary";
  }
  return "vertex";
}

struct CollisionEvent {
  std::vector<AgentId> participants;  // sorted ascending
  int sub_step = 0;
  ConflictKind kind = ConflictKind::kVertex;

  bool same_conflict(const CollisionEvent& o) const {
    return kind == o.kind && participants == o.participants;
  }
  bool involves(AgentId id) const {
    return std::binary_search(participants.begin(), participants.end(), id);
  }
  friend bool operator==(const CollisionEvent&, const CollisionEvent&) = default;
};

// Canonical event order: sub-step, then kind, then participants.
inline bool event_less(const CollisionEvent& a, const CollisionEvent& b) {
  if (a.sub_step != b.sub_step) return a.sub_step < b.sub_step;
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.participants < b.participants;
}

// Appends `e` unless an event with the same participants and kind exists.
inline void add_unique_event(std::vector<CollisionEvent>& events,
                             CollisionEvent e) {
  for (const auto& existing : events)
    if (existing.same_conflict(e)) return;
  events.push_back(std::move(e));
}

// Positions of every agent at sub-steps 0..horizon.
class SubStepTimeline {
 public:
  SubStepTimeline(int horizon, std::size_t agents)
      : horizon_(horizon),
        agents_(agents),
        cells_(static_cast<std::size_t>(horizon + 1) * agents) {}

  int horizon() const { return horizon_; }
  std::size_t agent_count() const { return agents_; }

  Cell at(int t, std::size_t agent) const {
    return cells_[static_cast<std::size_t>(t) * agents_ + agent];
  }
  void set(int t, std::size_t agent, Cell c) {
    cells_[static_cast<std::size_t>(t) * agents_ + agent] = c;
  }

  friend bool operator==(const SubStepTimeline&,
                         const SubStepTimeline&) = default;

 private:
  int horizon_;
  std::size_t agents_;
  std::vector<Cell> cells_;
};

inline int max_magnitude(const JointAction& joint) {
  int t = 0;
  for (const Action a : joint) t = std::max(t, a.magnitude());
  return t;
}

// Timeline where agent i advances for at most `limits[i]` sub-steps.
inline SubStepTimeline build_timeline(const State& state,
                                      const JointAction& joint,
                                      std::span<const int> limits) {
  const int horizon = max_magnitude(joint);
  SubStepTimeline tl(horizon, state.agent_count());
  for (std::size_t i = 0; i < state.agent_count(); ++i) {
    const Cell unit = joint[i].unit();
    for (int t = 0; t <= horizon; ++t)
      tl.set(t, i, state.origins[i] + std::min(t, limits[i]) * unit);
  }
  return tl;
}

inline SubStepTimeline build_timeline(const State& state,
                                      const JointAction& joint) {
  std::vector<int> limits(joint.size());
  for (std::size_t i = 0; i < joint.size(); ++i)
    limits[i] = joint[i].magnitude();
  return build_timeline(state, joint, limits);
}

namespace detail {

// Conflicts at a single sub-step t >= 1. Vertex conflicts are only counted on
// valid cells; an agent outside the valid mask is a boundary conflict.
template <typename PositionAt, typename Emit>
bool conflicts_at(std::size_t k, const GridMap& map, CollisionRules rules,
                  int t, PositionAt&& pos, Emit&& emit) {
  bool found = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (!map.is_valid(pos(t, i))) {
      emit(ConflictKind::kBoundary, std::vector<AgentId>{AgentId::from_index(i)});
      found = true;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Cell ci = pos(t, i);
    if (!map.is_valid(ci)) continue;
    bool first = true;
    for (std::size_t j = 0; j < i && first; ++j) first = pos(t, j) != ci;
    if (!first) continue;
    std::vector<AgentId> group;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (pos(t, j) == ci) {
        if (group.empty()) group.push_back(AgentId::from_index(i));
        group.push_back(AgentId::from_index(j));
      }
    }
    if (!group.empty()) {
      emit(ConflictKind::kVertex, std::move(group));
      found = true;
    }
  }
  if (rules.swap_is_collision) {
    for (std::size_t i = 0; i < k; ++i) {
      const Cell now_i = pos(t, i);
      const Cell was_i = pos(t - 1, i);
      if (now_i == was_i) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (pos(t, j) == was_i && pos(t - 1, j) == now_i) {
          emit(ConflictKind::kSwap, std::vector<AgentId>{AgentId::from_index(i),
                                                         AgentId::from_index(j)});
          found = true;
        }
      }
    }
  }
  return found;
}

// Core fixed point. On return limits[i] is the number of cells agent i
// actually advanced and collided[i] is set for every conflict participant.
template <typename OnEvent>
void resolve(const State& state, const JointAction& joint,
             CollisionRules rules, std::span<int> limits,
             std::span<std::uint8_t> collided, OnEvent&& on_event) {
  const std::size_t k = state.agent_count();
  int horizon = 0;
  for (std::size_t i = 0; i < k; ++i) {
    limits[i] = joint[i].magnitude();
    collided[i] = 0;
    horizon = std::max(horizon, limits[i]);
  }
  auto pos = [&](int t, std::size_t i) {
    return state.origins[i] + std::min(t, limits[i]) * joint[i].unit();
  };
  std::vector<std::size_t> freeze;
  for (int t = 1; t <= horizon; ++t) {
    for (;;) {
      freeze.clear();
      const bool found = conflicts_at(
          k, state.map, rules, t, pos,
          [&](ConflictKind kind, std::vector<AgentId> who) {
            for (const AgentId a : who) freeze.push_back(a.index());
            on_event(CollisionEvent{std::move(who), t, kind});
          });
      if (!found) break;
      for (const std::size_t i : freeze) {
        limits[i] = std::min(limits[i], t - 1);
        collided[i] = 1;
      }
    }
  }
}

}  // namespace detail

// Every conflict present in `timeline`, earliest sub-step first, deduplicated
// by (participants, kind) keeping the earliest stamp. Conflicts after the
// earliest one describe the unresolved motion.
inline std::vector<CollisionEvent> detect_conflicts(
    const SubStepTimeline& timeline, const GridMap& map,
    CollisionRules rules = {}) {
  std::vector<CollisionEvent> events;
  auto pos = [&](int t, std::size_t i) { return timeline.at(t, i); };
  for (int t = 1; t <= timeline.horizon(); ++t) {
    detail::conflicts_at(timeline.agent_count(), map, rules, t, pos,
                         [&](ConflictKind kind, std::vector<AgentId> who) {
                           add_unique_event(events, {std::move(who), t, kind});
                         });
  }
  std::stable_sort(events.begin(), events.end(), event_less);
  return events;
}

struct ResolutionResult {
  std::vector<Trajectory> trajectories;
  std::vector<Cell> final_positions;
  std::vector<CollisionEvent> events;
  std::vector<bool> collided;

  bool any_collision() const { return !events.empty(); }
  friend bool operator==(const ResolutionResult&,
                         const ResolutionResult&) = default;
};

inline ResolutionResult simulate(const State& state, const JointAction& joint,
                                 CollisionRules rules = {}) {
  const std::size_t k = state.agent_count();
  std::vector<int> limits(k);
  std::vector<std::uint8_t> collided(k);
  ResolutionResult out;
  detail::resolve(state, joint, rules, limits, collided,
                  [&](CollisionEvent e) { add_unique_event(out.events, std::move(e)); });
  std::stable_sort(out.events.begin(), out.events.end(), event_less);
  out.trajectories.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Trajectory t = expand_trajectory(state.origins[i], joint[i]);
    t.cells.resize(static_cast<std::size_t>(limits[i]) + 1);
    out.final_positions.push_back(t.last());
    out.trajectories.push_back(std::move(t));
    out.collided.push_back(collided[i] != 0);
  }
  return out;
}

}  // namespace fear

#endif  // FEAR_COLLISION_HPP_
