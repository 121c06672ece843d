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

// Grid-world domain types: maps, agents, the 17-action catalog, scenarios and
// straight-line trajectory expansion.
//
// Coordinates are 0-indexed with x growing rightward and y growing downward,
// so "Up" decreases y.

#ifndef FEAR_GRID_HPP_
#define FEAR_GRID_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fear/error.hpp"

namespace fear {

struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
  friend constexpr Cell operator+(Cell a, Cell b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend constexpr Cell operator*(int s, Cell c) { return {s * c.x, s * c.y}; }
};

inline std::string to_string(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

enum class Direction : std::uint8_t { kStay, kRight, kLeft, kUp, kDown };

inline constexpr int kMaxMagnitude = 4;
inline constexpr std::size_t kCatalogSize = 17;

// One move: a direction and a speed in cells per step. Stay has magnitude 0,
// every other direction has magnitude 1..4.
class Action {
 public:
  constexpr Action() = default;

  static constexpr Action stay() { return Action(); }

  static constexpr std::optional<Action> make(Direction d, int magnitude) {
    if (d == Direction::kStay) {
      if (magnitude != 0) return std::nullopt;
      return Action();
    }
    if (magnitude < 1 || magnitude > kMaxMagnitude) return std::nullopt;
    return Action(d, static_cast<std::uint8_t>(magnitude));
  }

  // Position in the canonical catalog order S0, R1-R4, L1-L4, U1-U4, D1-D4.
  static constexpr Action from_index(std::size_t index) {
    if (index == 0 || index >= kCatalogSize) return Action();
    const auto group = (index - 1) / kMaxMagnitude;
    const auto mag = static_cast<std::uint8_t>((index - 1) % kMaxMagnitude + 1);
    constexpr Direction kGroups[] = {Direction::kRight, Direction::kLeft,
                                     Direction::kUp, Direction::kDown};
    return Action(kGroups[group], mag);
  }

  constexpr std::size_t index() const {
    switch (direction_) {
      case Direction::kStay:
        return 0;
      case Direction::kRight:
        return magnitude_;
      case Direction::kLeft:
        return 4 + magnitude_;
      case Direction::kUp:
        return 8 + magnitude_;
      case Direction::kDown:
        return 12 + magnitude_;
    }
    return 0;
  }

  constexpr Direction direction() const { return direction_; }
  constexpr int magnitude() const { return magnitude_; }

  // Unit displacement of one sub-step.
  constexpr Cell unit() const {
    switch (direction_) {
      case Direction::kStay:
        return {0, 0};
      case Direction::kRight:
        return {1, 0};
      case Direction::kLeft:
        return {-1, 0};
      case Direction::kUp:
        return {0, -1};
      case Direction::kDown:
        return {0, 1};
    }
    return {0, 0};
  }

  std::string code() const {
    static constexpr char kLetters[] = {'S', 'R', 'L', 'U', 'D'};
    std::string out(2, '0');
    out[0] = kLetters[static_cast<int>(direction_)];
    out[1] = static_cast<char>('0' + magnitude_);
    return out;
  }

  static std::optional<Action> parse(std::string_view code) {
    if (code.size() != 2 || code[1] < '0' || code[1] > '9') return std::nullopt;
    Direction d;
    switch (code[0]) {
      case 'S':
        d = Direction::kStay;
        break;
      case 'R':
        d = Direction::kRight;
        break;
      case 'L':
        d = Direction::kLeft;
        break;
      case 'U':
        d = Direction::kUp;
        break;
      case 'D':
        d = Direction::kDown;
        break;
      default:
        return std::nullopt;
    }
    return make(d, code[1] - '0');
  }

  friend constexpr bool operator==(Action, Action) = default;

 private:
  constexpr Action(Direction d, std::uint8_t m) : direction_(d), magnitude_(m) {}

  Direction direction_ = Direction::kStay;
  std::uint8_t magnitude_ = 0;
};

inline constexpr std::array<Action, kCatalogSize> action_catalog() {
  std::array<Action, kCatalogSize> out{};
  for (std::size_t i = 0; i < kCatalogSize; ++i) out[i] = Action::from_index(i);
  return out;
}

// Catalog ordered by displacement (L4..L1, S0, R1..R4, U4..U1, D1..D4); the
// order feasible-move lists are printed in.
inline const std::array<Action, kCatalogSize>& display_order() {
  static const std::array<Action, kCatalogSize> order = [] {
    std::array<Action, kCatalogSize> out{};
    std::size_t n = 0;
    for (int m = kMaxMagnitude; m >= 1; --m)
      out[n++] = *Action::make(Direction::kLeft, m);
    out[n++] = Action::stay();
    for (int m = 1; m <= kMaxMagnitude; ++m)
      out[n++] = *Action::make(Direction::kRight, m);
    for (int m = kMaxMagnitude; m >= 1; --m)
      out[n++] = *Action::make(Direction::kUp, m);
    for (int m = 1; m <= kMaxMagnitude; ++m)
      out[n++] = *Action::make(Direction::kDown, m);
    return out;
  }();
  return order;
}

struct Trajectory {
  std::vector<Cell> cells;

  Cell origin() const { return cells.front(); }
  Cell last() const { return cells.back(); }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Intended swept path of `action` from `origin`, ignoring the map and other
// agents.
inline Trajectory expand_trajectory(Cell origin, Action action) {
  Trajectory t;
  t.cells.reserve(static_cast<std::size_t>(action.magnitude()) + 1);
  t.cells.push_back(origin);
  for (int s = 1; s <= action.magnitude(); ++s)
    t.cells.push_back(origin + s * action.unit());
  return t;
}

// Rectangular lattice with a mask of cells agents may occupy.
class GridMap {
 public:
  GridMap(int width, int height)
      : GridMap(width, height,
                std::vector<bool>(width > 0 && height > 0
                                      ? static_cast<std::size_t>(width) * height
                                      : 0,
                                  true)) {}

  GridMap(int width, int height, std::vector<bool> valid)
      : width_(width), height_(height), valid_(std::move(valid)) {
    if (width < 1 || height < 1)
      throw Error(ErrorKind::kInvalidScenario,
                  "grid dimensions must be at least 1x1");
    if (valid_.size() != static_cast<std::size_t>(width) * height)
      throw Error(ErrorKind::kInvalidScenario, "validity mask size mismatch");
    if (valid_count() == 0)
      throw Error(ErrorKind::kInvalidScenario, "grid has no valid cells");
  }

  // A 1-row strip `length` cells long.
  static GridMap lane(int length) { return GridMap(length, 1); }

  static GridMap with_invalid(int width, int height,
                              std::span<const Cell> invalid) {
    if (width < 1 || height < 1)
      throw Error(ErrorKind::kInvalidScenario,
                  "grid dimensions must be at least 1x1");
    std::vector<bool> mask(static_cast<std::size_t>(width) * height, true);
    for (const Cell c : invalid) {
      if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height)
        throw Error(ErrorKind::kInvalidScenario,
                    "invalid cell " + to_string(c) + " outside the grid");
      mask[static_cast<std::size_t>(c.y) * width + c.x] = false;
    }
    return GridMap(width, height, std::move(mask));
  }

  int width() const { return width_; }
  int height() const { return height_; }

  bool contains(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }

  bool is_valid(Cell c) const {
    return contains(c) && valid_[static_cast<std::size_t>(c.y) * width_ + c.x];
  }

  std::size_t valid_count() const {
    std::size_t n = 0;
    for (bool v : valid_) n += v ? 1 : 0;
    return n;
  }

  // Complement of the valid mask, row-major.
  std::vector<Cell> invalid_cells() const {
    std::vector<Cell> out;
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x)
        if (!is_valid({x, y})) out.push_back({x, y});
    return out;
  }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<bool> valid_;
};

// 1-based agent identifier.
struct AgentId {
  int value = 1;

  constexpr std::size_t index() const {
    return static_cast<std::size_t>(value - 1);
  }
  static constexpr AgentId from_index(std::size_t i) {
    return AgentId{static_cast<int>(i) + 1};
  }
  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

using JointAction = std::vector<Action>;

// The map plus agent origins; agent i+1 sits at origins[i].
struct State {
  GridMap map = GridMap(1, 1);
  std::vector<Cell> origins;

  std::size_t agent_count() const { return origins.size(); }
  bool has_agent(AgentId id) const {
    return id.value >= 1 && id.index() < origins.size();
  }
  friend bool operator==(const State&, const State&) = default;
};

struct Scenario {
  State state;
  JointAction actions;
  JointAction mdr;

  std::size_t agent_count() const { return state.agent_count(); }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Replace agent `id`'s entry in `joint`.
inline JointAction with_action(JointAction joint, AgentId id, Action a) {
  joint[id.index()] = a;
  return joint;
}

// Untyped scenario as it appears in a document, before validation. Action
// codes stay strings so unknown codes can be reported rather than rejected
// at parse time.
struct ScenarioDraft {
  struct Agent {
    int id = 0;
    Cell origin;
  };

  int width = 0;
  int height = 0;
  std::vector<Cell> invalid_cells;
  std::vector<Agent> agents;
  std::map<int, std::string> actions;
  std::map<int, std::string> mdr;
};

enum class ViolationKind {
  kBadDimensions,
  kInvalidCellOutOfRange,
  kNoValidCells,
  kNoAgents,
  kBadAgentIds,
  kInvalidOrigin,
  kDuplicateOrigin,
  kMissingAction,
  kMissingMdr,
  kUnknownAction,
  kAssignmentForUnknownAgent,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.message;
    }
    return out;
  }
};

inline ValidationReport validate_scenario(const ScenarioDraft& d) {
  ValidationReport r;
  auto add = [&r](ViolationKind k, std::string msg) {
    r.violations.push_back({k, std::move(msg)});
  };

  const bool dims_ok = d.width >= 1 && d.height >= 1;
  if (!dims_ok) {
    add(ViolationKind::kBadDimensions,
        "grid dimensions " + std::to_string(d.width) + "x" +
            std::to_string(d.height) + " must be at least 1x1");
  }
  auto in_bounds = [&](Cell c) {
    return c.x >= 0 && c.y >= 0 && c.x < d.width && c.y < d.height;
  };
  std::set<Cell> invalid;
  for (const Cell c : d.invalid_cells) {
    if (dims_ok && !in_bounds(c))
      add(ViolationKind::kInvalidCellOutOfRange,
          "invalid cell " + to_string(c) + " lies outside the grid");
    invalid.insert(c);
  }
  if (dims_ok) {
    std::size_t inside = 0;
    for (const Cell c : invalid) inside += in_bounds(c) ? 1 : 0;
    if (inside >= static_cast<std::size_t>(d.width) * d.height)
      add(ViolationKind::kNoValidCells, "grid has no valid cells");
  }

  if (d.agents.empty()) add(ViolationKind::kNoAgents, "scenario has no agents");

  std::set<int> ids;
  for (const auto& a : d.agents) {
    if (!ids.insert(a.id).second)
      add(ViolationKind::kBadAgentIds,
          "agent id " + std::to_string(a.id) + " appears more than once");
  }
  const int k = static_cast<int>(d.agents.size());
  for (int id : ids) {
    if (id < 1 || id > k)
      add(ViolationKind::kBadAgentIds, "agent ids must be 1.." +
                                           std::to_string(k) + ", found " +
                                           std::to_string(id));
  }

  std::map<Cell, int> occupied;
  for (const auto& a : d.agents) {
    const std::string who = "agent " + std::to_string(a.id);
    if (!dims_ok || !in_bounds(a.origin) || invalid.count(a.origin) > 0)
      add(ViolationKind::kInvalidOrigin,
          who + " origin " + to_string(a.origin) + " is not a valid cell");
    auto [it, fresh] = occupied.emplace(a.origin, a.id);
    if (!fresh)
      add(ViolationKind::kDuplicateOrigin,
          who + " shares cell " + to_string(a.origin) + " with agent " +
              std::to_string(it->second));
  }

  auto check_assignments = [&](const std::map<int, std::string>& table,
                               std::string_view what, ViolationKind missing) {
    for (int id : ids) {
      auto it = table.find(id);
      if (it == table.end()) {
        add(missing, std::string(what) + " missing for agent " +
                         std::to_string(id));
      } else if (!Action::parse(it->second)) {
        add(ViolationKind::kUnknownAction,
            std::string(what) + " '" + it->second + "' for agent " +
                std::to_string(id) + " is not a known action code");
      }
    }
    for (const auto& [id, code] : table) {
      if (ids.count(id) == 0)
        add(ViolationKind::kAssignmentForUnknownAgent,
            std::string(what) + " assigned to unknown agent " +
                std::to_string(id));
    }
  };
  check_assignments(d.actions, "action", ViolationKind::kMissingAction);
  check_assignments(d.mdr, "mdr", ViolationKind::kMissingMdr);
  return r;
}

inline ScenarioDraft to_draft(const Scenario& s) {
  ScenarioDraft d;
  d.width = s.state.map.width();
  d.height = s.state.map.height();
  d.invalid_cells = s.state.map.invalid_cells();
  for (std::size_t i = 0; i < s.state.origins.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    d.agents.push_back({id, s.state.origins[i]});
    if (i < s.actions.size()) d.actions[id] = s.actions[i].code();
    if (i < s.mdr.size()) d.mdr[id] = s.mdr[i].code();
  }
  return d;
}

inline ValidationReport validate_scenario(const Scenario& s) {
  return validate_scenario(to_draft(s));
}

// Validates and converts; throws Error(kInvalidScenario) listing every
// violation.
inline Scenario build_scenario(const ScenarioDraft& d) {
  const ValidationReport report = validate_scenario(d);
  if (!report.ok()) throw Error(ErrorKind::kInvalidScenario, report.summary());
  Scenario s{State{GridMap::with_invalid(d.width, d.height, d.invalid_cells),
                   std::vector<Cell>(d.agents.size())},
             JointAction(d.agents.size()), JointAction(d.agents.size())};
  for (const auto& a : d.agents) {
    const auto i = static_cast<std::size_t>(a.id - 1);
    s.state.origins[i] = a.origin;
    s.actions[i] = *Action::parse(d.actions.at(a.id));
    s.mdr[i] = *Action::parse(d.mdr.at(a.id));
  }
  return s;
}

inline Scenario make_scenario(GridMap map, std::vector<Cell> origins,
                              JointAction actions, JointAction mdr) {
  Scenario s{State{std::move(map), std::move(origins)}, std::move(actions),
             std::move(mdr)};
  if (s.actions.size() != s.agent_count() || s.mdr.size() != s.agent_count())
    throw Error(ErrorKind::kInvalidScenario,
                "every agent needs exactly one action and one mdr");
  const ValidationReport report = validate_scenario(s);
  if (!report.ok()) throw Error(ErrorKind::kInvalidScenario, report.summary());
  return s;
}

// Parses a whitespace/dash separated list of codes such as "R1-R1".
inline std::optional<JointAction> parse_joint_action(std::string_view text) {
  JointAction out;
  std::string token;
  auto flush = [&]() -> bool {
    if (token.empty()) return true;
    auto a = Action::parse(token);
    token.clear();
    if (!a) return false;
    out.push_back(*a);
    return true;
  };
  for (char c : text) {
    if (c == '-' || c == ',' || c == ' ') {
      if (!flush()) return std::nullopt;
    } else {
      token.push_back(c);
    }
  }
  if (!flush()) return std::nullopt;
  return out;
}

inline std::string joint_action_code(const JointAction& joint) {
  std::string out;
  for (const Action a : joint) {
    if (!out.empty()) out += '-';
    out += a.code();
  }
  return out;
}

}  // namespace fear

#endif  // FEAR_GRID_HPP_
