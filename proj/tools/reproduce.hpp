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

// Self-checking reproduction of the lane, intersection and batch case
// studies. Each routine prints its tables and returns the number of golden
// values that missed.

#ifndef FEAR_TOOLS_REPRODUCE_HPP_
#define FEAR_TOOLS_REPRODUCE_HPP_

#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "fear/fear.hpp"
#include "render.hpp"

namespace fear::tools {

inline constexpr double kGoldenTolerance = 5e-3;

class GoldenLog {
 public:
  explicit GoldenLog(std::ostream& out) : out_(out) {}

  void value(const std::string& label, double actual, double expected) {
    const bool ok = std::fabs(actual - expected) <= kGoldenTolerance;
    out_ << "    " << label << " = " << format_fixed(actual, 4) << "  expected "
         << format_fixed(expected, 4) << (ok ? "  ok" : "  MISMATCH") << '\n';
    failures_ += ok ? 0 : 1;
  }

  void list(const std::string& label, const FeasibilityReport& r,
            const std::string& expected) {
    const std::string actual = feasible_line(r);
    const bool ok = actual == expected;
    out_ << "    " << label << ": " << actual;
    if (!ok) out_ << "  expected " << expected;
    out_ << (ok ? "  ok" : "  MISMATCH") << '\n';
    failures_ += ok ? 0 : 1;
  }

  void check(const std::string& label, bool ok) {
    out_ << "    " << label << (ok ? "  ok" : "  MISMATCH") << '\n';
    failures_ += ok ? 0 : 1;
  }

  std::ostream& out() { return out_; }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

struct LaneGolden {
  const char* actions;
  double fear_1_2;
  double fear_2_1;
};

// Feasible lists for each agent while the other plays its MdR.
inline void lane_baseline_lists(GoldenLog& log, const char* mdr, const char* list1,
                                const char* list2, const MetricConfig& config) {
  const Scenario s = lane_case("S0-S0", mdr);
  FeasibilityCounter counter(s.state, config.rules);
  log.list("agent 1, agent 2 at MdR",
           counter.report(with_action(s.actions, AgentId{2}, s.mdr[1]), AgentId{1}),
           list1);
  log.list("agent 2, agent 1 at MdR",
           counter.report(with_action(s.actions, AgentId{1}, s.mdr[0]), AgentId{2}),
           list2);
}

inline int reproduce_case1(std::ostream& out, const MetricConfig& config = {}) {
  GoldenLog log(out);
  out << "case1: lane of 10, agent 1 at x=2, agent 2 at x=4, MdR S0-S0\n";
  lane_baseline_lists(log, "S0-S0", "L2 L1 S0 R1 (4)", "L1 S0 R1 R2 R3 R4 (6)",
                      config);
  struct Instance {
    const char* label;
    const char* actions;
    const char* list1;
    const char* list2;
    double m[2][2];
  };
  // Diagonal of (c) follows the printed counts: 3 of 4 and 5 of 6.
  static const Instance kInstances[] = {
      {"a", "L1-R1", "L2 L1 S0 R1 R2 (5)", "L2 L1 S0 R1 R2 R3 R4 (7)",
       {{1.0, -1.0 / 6}, {-0.25, 1.0}}},
      {"b", "R1-R1", "L2 L1 S0 R1 R2 (5)", "S0 R1 R2 R3 R4 (5)",
       {{1.0, 1.0 / 6}, {-0.25, 5.0 / 6}}},
      {"c", "R1-L1", "L2 L1 S0 (3)", "S0 R1 R2 R3 R4 (5)",
       {{0.75, 1.0 / 6}, {0.25, 5.0 / 6}}},
  };
  for (const auto& in : kInstances) {
    const Scenario s = lane_case(in.actions, "S0-S0");
    const Evaluation e = evaluate(s, config);
    out << "  (" << in.label << ") " << in.actions
        << (e.collisions.empty() ? "" : ", collision") << '\n';
    log.list("agent 1", e.actual[0], in.list1);
    log.list("agent 2", e.actual[1], in.list2);
    render_matrix(out, e.fear, config.report_decimals, "    ");
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        log.value("FeAR[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]",
                  e.fear(i, j), in.m[i][j]);
  }
  return log.failures();
}

inline int reproduce_case2(std::ostream& out, const MetricConfig& config = {}) {
  GoldenLog log(out);
  out << "case2: the case1 instances under MdR S0-S0, R1-R1 and R2-R2\n";
  struct Norm {
    const char* mdr;
    const char* list1;
    const char* list2;
    LaneGolden values[3];
  };
  static const Norm kNorms[] = {
      {"S0-S0", "L2 L1 S0 R1 (4)", "L1 S0 R1 R2 R3 R4 (6)",
       {{"L1-R1", -1.0 / 6, -0.25}, {"R1-R1", 1.0 / 6, -0.25}, {"R1-L1", 1.0 / 6, 0.25}}},
      {"R1-R1", "L2 L1 S0 R1 R2 (5)", "S0 R1 R2 R3 R4 (5)",
       {{"L1-R1", -0.4, 0.0}, {"R1-R1", 0.0, 0.0}, {"R1-L1", 0.0, 0.4}}},
      {"R2-R2", "L2 L1 S0 R1 R2 R3 (6)", "R1 R2 R3 R4 (4)",
       {{"L1-R1", -0.75, 1.0 / 6}, {"R1-R1", -0.25, 1.0 / 6}, {"R1-L1", -0.25, 0.5}}},
  };
  double l1_of_1[3];
  double l1_of_2[3];
  double r1_of_1[3];
  double r1_of_2[3];
  for (int n = 0; n < 3; ++n) {
    const Norm& norm = kNorms[n];
    out << "  MdR " << norm.mdr << '\n';
    lane_baseline_lists(log, norm.mdr, norm.list1, norm.list2, config);
    for (int k = 0; k < 3; ++k) {
      const LaneGolden& g = norm.values[k];
      const FearMatrix m = fear_matrix(lane_case(g.actions, norm.mdr), config);
      out << "    " << g.actions << '\n';
      log.value("  FeAR[1][2]", m(0, 1), g.fear_1_2);
      log.value("  FeAR[2][1]", m(1, 0), g.fear_2_1);
      if (k == 0) l1_of_1[n] = m(0, 1), r1_of_2[n] = m(1, 0);
      if (k == 2) l1_of_2[n] = m(1, 0), r1_of_1[n] = m(0, 1);
    }
  }
  out << "  trends from S0-S0 to R2-R2\n";
  log.check("L1 of agent 1 is courteous and increasingly so",
            l1_of_1[0] < 0 && l1_of_1[0] > l1_of_1[1] && l1_of_1[1] > l1_of_1[2]);
  log.check("L1 of agent 2 is assertive and increasingly so",
            l1_of_2[0] > 0 && l1_of_2[0] < l1_of_2[1] && l1_of_2[1] < l1_of_2[2]);
  log.check("R1 of agent 1 turns from assertive to courteous",
            r1_of_1[0] > 0 && r1_of_1[2] < 0);
  log.check("R1 of agent 2 turns from courteous to assertive",
            r1_of_2[0] < 0 && r1_of_2[2] > 0);
  return log.failures();
}

inline int reproduce_case3(std::ostream& out, const MetricConfig& config = {}) {
  GoldenLog log(out);
  const IntersectionLayout layout = locked_intersection_layout();
  out << "case3: " << layout.width << "x" << layout.height
      << " grid, horizontal road rows " << layout.road_row << "-"
      << layout.road_row + layout.road_rows - 1 << ", vertical road columns "
      << layout.road_col << "-" << layout.road_col + layout.road_cols - 1
      << ", agents at " << to_string(layout.agents[0]) << " "
      << to_string(layout.agents[1]) << " " << to_string(layout.agents[2])
      << ", MdR S0-S0-S0\n";
  struct Exact {
    double f12, f32, f21, f23;
  };
  static const Exact kExact[] = {
      {1.0 / 3, 3.0 / 7, 0.0, 0.0},
      {2.0 / 3, 3.0 / 5, 0.0, 0.0},
      {2.0 / 3, 3.0 / 5, -0.2, 0.0},
      {2.0 / 3, 3.0 / 5, -0.2, 2.0 / 9},
      {4.0 / 9, 0.0, -0.2, 2.0 / 9},
  };
  const State state = layout.state();
  for (std::size_t n = 0; n < intersection_targets().size(); ++n) {
    const IntersectionTarget& t = intersection_targets()[n];
    const Scenario s{state, *parse_joint_action(t.actions), JointAction(3)};
    const Evaluation e = evaluate(s, config);
    out << "  (" << t.label << ") " << t.actions << '\n';
    render_matrix(out, e.fear, config.report_decimals, "    ");
    for (const auto& ev : e.collisions) out << "    " << event_line(ev) << '\n';
    log.check("outcome", classify_outcome(simulate(state, s.actions, config.rules)) ==
                             t.outcome);
    log.value("FeAR[1][2]", e.fear(0, 1), kExact[n].f12);
    log.value("FeAR[3][2]", e.fear(2, 1), kExact[n].f32);
    log.value("FeAR[2][1]", e.fear(1, 0), kExact[n].f21);
    log.value("FeAR[2][3]", e.fear(1, 2), kExact[n].f23);
    auto tenth = [](double v) { return std::round(v * 10.0) / 10.0; };
    bool published = tenth(e.fear(0, 1)) == t.fear_1_2 &&
                     tenth(e.fear(2, 1)) == t.fear_3_2 &&
                     tenth(e.fear(1, 2)) == t.fear_2_3;
    published = published && (t.fear_2_1 ? tenth(e.fear(1, 0)) == *t.fear_2_1
                                         : e.fear(1, 0) < 0.0);
    log.check("matches the one-decimal reference values", published);
  }
  return log.failures();
}

// Strictly negative below the diagonal, non-negative above it and positive on
// the superdiagonal; agents are numbered by lane position.
inline bool ahead_behind_pattern(const FearMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i > j && !(m(i, j) < 0.0)) return false;
      if (i < j && !(m(i, j) >= 0.0)) return false;
      if (j == i + 1 && !(m(i, j) > 0.0)) return false;
    }
  return true;
}

inline void render_record(std::ostream& out, const BatchRecord& r, int decimals) {
  out << "    instance " << r.index << ": positions";
  for (const Cell c : r.scenario.state.origins) out << ' ' << c.x;
  out << ", actions " << joint_action_code(r.scenario.actions)
      << (r.collision ? ", collision" : ", no collision")
      << ", sum of squares " << format_number(r.stats.offdiag_sum_squares) << '\n';
  render_matrix(out, r.fear, decimals, "    ");
}

inline int reproduce_case4(std::ostream& out, std::uint64_t seed, unsigned threads,
                           const MetricConfig& config = {}) {
  GoldenLog log(out);
  const SamplerParams params = case4_params(seed);
  out << "case4: " << params.instance_count << " instances, "
      << params.agent_count << " agents on a lane of " << params.lane_length
      << ", actions S0 R1 R2 R3 R4, MdR all S0, seed " << seed << '\n';
  const auto start = std::chrono::steady_clock::now();
  const std::vector<BatchRecord> records = run_batch(params, threads, config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const BatchSummary summary = summarize(records);
  out << "  elapsed " << format_fixed(seconds, 2) << " s\n"
      << "  zero sum of squares: " << summary.zero_aggregate_count
      << ", collisions: " << summary.collision_count << "\n  smallest\n";
  const BatchRecord& lo = records[summary.extremes.argmin];
  const BatchRecord& hi = records[summary.extremes.argmax];
  render_record(out, lo, config.report_decimals);
  out << "  largest\n";
  render_record(out, hi, config.report_decimals);
  out << "  checks\n";
  log.check("smallest sum of squares is 0", lo.stats.offdiag_sum_squares == 0.0);
  bool characterized = true;
  for (const auto& r : records)
    if ((r.stats.offdiag_sum_squares == 0.0) != baseline_preserves_counts(r.scenario, config))
      characterized = false;
  log.check("zero sum of squares <=> MdR substitutions leave every count unchanged",
            characterized);
  log.check("largest instance is collision-free", !hi.collision);
  log.check("largest instance: negative below the diagonal, positive ahead",
            ahead_behind_pattern(hi.fear));
  return log.failures();
}

}  // namespace fear::tools

#endif  // FEAR_TOOLS_REPRODUCE_HPP_
