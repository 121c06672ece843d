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

// Brute-force reconstruction of the three-agent intersection layout.
//
// Only the published FeAR values (one decimal) and the qualitative story are
// known: agents 1 and 2 share a lane approaching the crossing from the left,
// agent 3 approaches from above, MdR is S0 for everyone. The search
// enumerates crossing roads of width 1..3 and every placement consistent with
// that story, and keeps layouts whose five instances reproduce every value.

#ifndef FEAR_INTERSECTION_SEARCH_HPP_
#define FEAR_INTERSECTION_SEARCH_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fear/collision.hpp"
#include "fear/metric.hpp"

namespace fear {

struct IntersectionLayout {
  int width = 0;
  int height = 0;
  int road_row = 0;    // first row of the horizontal road
  int road_rows = 1;   // its width in cells
  int road_col = 0;    // first column of the vertical road
  int road_cols = 1;
  std::array<Cell, 3> agents{};

  GridMap map() const {
    std::vector<bool> mask(static_cast<std::size_t>(width) * height, false);
    for (int y = road_row; y < road_row + road_rows; ++y)
      for (int x = 0; x < width; ++x) mask[static_cast<std::size_t>(y) * width + x] = true;
    for (int x = road_col; x < road_col + road_cols; ++x)
      for (int y = 0; y < height; ++y) mask[static_cast<std::size_t>(y) * width + x] = true;
    return GridMap(width, height, std::move(mask));
  }

  State state() const {
    return State{map(), {agents[0], agents[1], agents[2]}};
  }

  friend bool operator==(const IntersectionLayout&,
                         const IntersectionLayout&) = default;
};

// Which pair, if any, collides in an instance.
enum class IntersectionOutcome { kNoCollision, kCollision12, kCollision23, kOther };

struct IntersectionTarget {
  const char* label;
  const char* actions;
  IntersectionOutcome outcome;
  double fear_1_2;
  double fear_3_2;
  std::optional<double> fear_2_1;  // nullopt: only the sign (< 0) is known
  double fear_2_3;
};

// Instances a-e with the published one-decimal values.
inline const std::array<IntersectionTarget, 5>& intersection_targets() {
  static const std::array<IntersectionTarget, 5> targets = {{
      {"a", "R2-S0-D2", IntersectionOutcome::kNoCollision, 0.3, 0.4, 0.0, 0.0},
      {"b", "R4-S0-D2", IntersectionOutcome::kCollision12, 0.7, 0.6, 0.0, 0.0},
      {"c", "R4-R1-D2", IntersectionOutcome::kNoCollision, 0.7, 0.6, -0.2, 0.0},
      {"d", "R4-R2-D2", IntersectionOutcome::kCollision23, 0.7, 0.6, std::nullopt, 0.2},
      {"e", "R4-R2-S0", IntersectionOutcome::kNoCollision, 0.4, 0.0, std::nullopt, 0.2},
  }};
  return targets;
}

inline IntersectionOutcome classify_outcome(const ResolutionResult& r) {
  if (r.events.empty()) return IntersectionOutcome::kNoCollision;
  bool only12 = true;
  bool only23 = true;
  for (const auto& e : r.events) {
    const bool has1 = e.involves(AgentId{1});
    const bool has2 = e.involves(AgentId{2});
    const bool has3 = e.involves(AgentId{3});
    only12 = only12 && has1 && has2 && !has3;
    only23 = only23 && has2 && has3 && !has1;
  }
  if (only12) return IntersectionOutcome::kCollision12;
  if (only23) return IntersectionOutcome::kCollision23;
  return IntersectionOutcome::kOther;
}

struct IntersectionMatch {
  IntersectionLayout layout;
  double deviation = 0.0;  // summed |value - published| over checked entries
  std::array<FearMatrix, 5> matrices;
};

// Scores one layout; nullopt when any instance misses a published value
// after rounding to one decimal, or the outcome differs.
inline std::optional<IntersectionMatch> score_layout(
    const IntersectionLayout& layout, const MetricConfig& config = {}) {
  const State state = layout.state();
  const JointAction mdr(3);
  if (!validate_mdr(state, mdr, config.rules).consistent) return std::nullopt;
  FeasibilityCounter counter(state, config.rules);
  IntersectionMatch match{layout, 0.0, {}};
  auto one_decimal = [](double v) { return std::round(v * 10.0) / 10.0; };
  for (std::size_t n = 0; n < intersection_targets().size(); ++n) {
    const IntersectionTarget& t = intersection_targets()[n];
    const Scenario s{state, *parse_joint_action(t.actions), mdr};
    if (classify_outcome(simulate(state, s.actions, config.rules)) != t.outcome)
      return std::nullopt;
    const FearMatrix m = fear_matrix(s, counter, config);
    auto check = [&](double value, double target) {
      match.deviation += std::fabs(value - target);
      return std::fabs(one_decimal(value) - target) < 1e-9;
    };
    if (!check(m(0, 1), t.fear_1_2) || !check(m(2, 1), t.fear_3_2) ||
        !check(m(1, 2), t.fear_2_3))
      return std::nullopt;
    if (t.fear_2_1 ? !check(m(1, 0), *t.fear_2_1) : !(m(1, 0) < 0.0))
      return std::nullopt;
    match.matrices[n] = m;
  }
  return match;
}

struct IntersectionSearchBounds {
  int min_width = 4;
  int max_width = 11;
  int min_height = 4;
  int max_height = 11;
  int max_road_width = 3;
};

// Agents 1 and 2 sit on one row of the horizontal road with agent 1 left of
// the vertical road and agent 2 ahead of it; agent 3 sits on the vertical road
// above the horizontal one. Matches come back in enumeration order.
inline std::vector<IntersectionMatch> search_intersection(
    const IntersectionSearchBounds& b, const MetricConfig& config = {}) {
  std::vector<IntersectionMatch> out;
  for (int w = b.min_width; w <= b.max_width; ++w)
    for (int h = b.min_height; h <= b.max_height; ++h)
      for (int rows = 1; rows <= b.max_road_width; ++rows)
        for (int cols = 1; cols <= b.max_road_width; ++cols)
          for (int r = 0; r + rows <= h; ++r)
            for (int c = 0; c + cols <= w; ++c)
              for (int row = r; row < r + rows; ++row)
                for (int x1 = 0; x1 < c; ++x1)
                  for (int x2 = x1 + 1; x2 < c + cols; ++x2)
                    for (int col = c; col < c + cols; ++col)
                      for (int y3 = 0; y3 < r; ++y3) {
                        IntersectionLayout l{w, h, r, rows, c, cols,
                                             {Cell{x1, row}, Cell{x2, row},
                                              Cell{col, y3}}};
                        if (auto m = score_layout(l, config))
                          out.push_back(std::move(*m));
                      }
  return out;
}

// Layout locked as the intersection fixture: two-lane roads crossing on a
// 9x8 grid (rows 5-6 horizontal, columns 5-6 vertical). Found by
// search_intersection; exact values are 1/3, 2/3, 4/9 for FeAR[1][2],
// 3/7, 3/5, 0 for FeAR[3][2], -1/5 for FeAR[2][1] and 2/9 for FeAR[2][3].
inline IntersectionLayout locked_intersection_layout() {
  return IntersectionLayout{9, 8, 5, 2, 5, 2, {Cell{0, 6}, Cell{4, 6}, Cell{6, 4}}};
}

}  // namespace fear

#endif  // FEAR_INTERSECTION_SEARCH_HPP_
