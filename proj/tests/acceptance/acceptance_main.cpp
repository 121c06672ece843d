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

// Acceptance suite: one PASS/FAIL line per primary criterion. Exit status is
// the number of failed criteria (capped at 1 for ctest).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fear/fear.hpp"
#include "support/naive_collision.hpp"
#include "support/random_instances.hpp"

namespace {

using namespace fear;

constexpr double kValueTolerance = 5e-3;
constexpr double kCaseOneBudgetSeconds = 1.0;
constexpr double kBatchBudgetSeconds = 60.0;
constexpr int kPropertyInstances = 10000;
constexpr int kOracleInstances = 100000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

bool near(double a, double b) { return std::fabs(a - b) <= kValueTolerance; }

std::string listed(const FeasibilityReport& r) {
  std::string out;
  for (const Action a : r.feasible_display()) out += (out.empty() ? "" : " ") + a.code();
  return out;
}

// Criterion 1.
Outcome case_one_values() {
  Outcome o;
  struct Golden {
    const char* label;
    const char* actions;
    double f12, f21, d1, d2;
  };
  const Golden goldens[] = {
      {"a", "L1-R1", -1.0 / 6, -0.25, 1.0, 1.0},
      {"b", "R1-R1", 1.0 / 6, -0.25, 1.0, 5.0 / 6},
      {"c", "R1-L1", 1.0 / 6, 0.25, 5.0 / 6, 0.75},
  };
  const auto start = std::chrono::steady_clock::now();
  std::vector<FearMatrix> matrices;
  for (const auto& g : goldens) matrices.push_back(fear_matrix(lane_case(g.actions, "S0-S0")));
  const double elapsed = seconds_since(start);
  for (std::size_t n = 0; n < 3; ++n) {
    const auto& g = goldens[n];
    const FearMatrix& m = matrices[n];
    auto check = [&](const char* entry, double actual, double expected) {
      o.require(near(actual, expected), std::string("(") + g.label + ") " + entry + " = " +
                                            num(actual) + ", expected " + num(expected));
    };
    check("FeAR[1][2]", m(0, 1), g.f12);
    check("FeAR[2][1]", m(1, 0), g.f21);
    check("FeAR[1][1]", m(0, 0), g.d1);
    check("FeAR[2][2]", m(1, 1), g.d2);
  }
  o.require(elapsed < kCaseOneBudgetSeconds, "runtime " + num(elapsed) + " s");
  return o;
}

// Criterion 2.
Outcome feasibility_lists() {
  Outcome o;
  const State s = two_agent_lane_state();
  struct Golden {
    const char* joint;
    int agent;
    const char* list;
  };
  const Golden goldens[] = {
      {"S0-S0", 1, "L2 L1 S0 R1"},
      {"S0-S0", 2, "L1 S0 R1 R2 R3 R4"},
      {"S0-R1", 1, "L2 L1 S0 R1 R2"},
      {"R1-S0", 2, "S0 R1 R2 R3 R4"},
      {"S0-R2", 1, "L2 L1 S0 R1 R2 R3"},
      {"R2-S0", 2, "R1 R2 R3 R4"},
      {"L1-R1", 2, "L2 L1 S0 R1 R2 R3 R4"},
      {"L1-R1", 1, "L2 L1 S0 R1 R2"},
      {"R1-R1", 2, "S0 R1 R2 R3 R4"},
      {"R1-L1", 1, "L2 L1 S0"},
  };
  for (const auto& g : goldens) {
    const auto r = feasible_actions(s, *parse_joint_action(g.joint), AgentId{g.agent});
    o.require(listed(r) == g.list, std::string("agent ") + std::to_string(g.agent) +
                                       " under " + g.joint + ": " + listed(r) +
                                       ", expected " + g.list);
  }
  return o;
}

// Criterion 3.
Outcome case_two_values() {
  Outcome o;
  const char* norms[] = {"S0-S0", "R1-R1", "R2-R2"};
  double l1_of_1[3], l1_of_2[3];
  for (int n = 0; n < 3; ++n) {
    l1_of_1[n] = fear_matrix(lane_case("L1-R1", norms[n]))(0, 1);
    l1_of_2[n] = fear_matrix(lane_case("R1-L1", norms[n]))(1, 0);
  }
  auto check = [&](const std::string& what, double actual, double expected) {
    o.require(near(actual, expected), what + " = " + num(actual) + ", expected " + num(expected));
  };
  check("L1 of 1 under R1-R1", l1_of_1[1], -0.4);
  check("L1 of 1 under R2-R2", l1_of_1[2], -0.75);
  check("L1 of 2 under R1-R1", l1_of_2[1], 0.4);
  check("L1 of 2 under R2-R2", l1_of_2[2], 0.5);
  o.require(l1_of_1[0] > l1_of_1[1] && l1_of_1[1] > l1_of_1[2],
            "L1 of 1 not increasingly courteous");
  o.require(l1_of_2[0] < l1_of_2[1] && l1_of_2[1] < l1_of_2[2],
            "L1 of 2 not increasingly assertive");
  // R1 of 1 in (b) and (c); R1 of 2 in (a) and (b).
  for (const char* joint : {"R1-R1", "R1-L1"}) {
    const double first = fear_matrix(lane_case(joint, "S0-S0"))(0, 1);
    const double last = fear_matrix(lane_case(joint, "R2-R2"))(0, 1);
    o.require(first > 0 && last < 0, std::string("R1 of 1 in ") + joint + " does not flip");
  }
  for (const char* joint : {"L1-R1", "R1-R1"}) {
    const double first = fear_matrix(lane_case(joint, "S0-S0"))(1, 0);
    const double last = fear_matrix(lane_case(joint, "R2-R2"))(1, 0);
    o.require(first < 0 && last > 0, std::string("R1 of 2 in ") + joint + " does not flip");
  }
  return o;
}

// Criterion 4.
Outcome mdr_row_zero() {
  Outcome o;
  testing::InstanceGenerator gen(101, {.two_dimensional = false});
  testing::InstanceGenerator grid(102, {.two_dimensional = true});
  int violations = 0;
  for (int n = 0; n < kPropertyInstances; ++n) {
    Scenario s = (n % 2 ? grid : gen).scenario();
    const auto i = static_cast<std::size_t>(gen.pick(0, static_cast<int>(s.agent_count()) - 1));
    s.actions[i] = s.mdr[i];
    const FearMatrix m = fear_matrix(s);
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != i && m(i, j) != 0.0) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " non-zero entries");
  return o;
}

// Criterion 5.
Outcome bounds_and_independence() {
  Outcome o;
  testing::InstanceGenerator gen(201, {.two_dimensional = false});
  testing::InstanceGenerator grid(202, {.two_dimensional = true});
  int out_of_range = 0;
  int dependent = 0;
  for (int n = 0; n < kPropertyInstances; ++n) {
    testing::InstanceGenerator& g = n % 2 ? grid : gen;
    const Scenario s = g.scenario();
    const FearMatrix m = fear_matrix(s);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        const double lo = i == j ? 0.0 : -1.0;
        if (!(m(i, j) >= lo && m(i, j) <= 1.0)) ++out_of_range;
      }
    const auto j = static_cast<std::size_t>(g.pick(0, static_cast<int>(s.agent_count()) - 1));
    Scenario t = s;
    t.actions[j] = g.action();
    const FearMatrix mt = fear_matrix(t);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (mt(i, j) != m(i, j)) ++dependent;  // column j and FeAR[j][j]
  }
  o.require(out_of_range == 0, std::to_string(out_of_range) + " entries out of range");
  o.require(dependent == 0, std::to_string(dependent) + " entries moved with the affected "
                                                        "agent's own action");
  return o;
}

// Criterion 6.
Outcome oracle_equivalence() {
  Outcome o;
  testing::InstanceGenerator gen(301, {.max_agents = 4, .max_lane = 10});
  int mismatches = 0;
  std::string first;
  for (int n = 0; n < kOracleInstances; ++n) {
    const State s = gen.state();
    const JointAction a = gen.joint(s.agent_count());
    if (!(simulate(s, a) == testing::naive_simulate(s, a))) {
      if (mismatches++ == 0) first = "first at instance " + std::to_string(n);
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches, " + first);
  return o;
}

// FeAR[i][j] < 0 for i > j, >= 0 for i < j, > 0 just above the diagonal.
bool ahead_behind(const FearMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i > j && !(m(i, j) < 0.0)) return false;
      if (i < j && !(m(i, j) >= 0.0)) return false;
      if (j == i + 1 && !(m(i, j) > 0.0)) return false;
    }
  return true;
}

// Criterion 7.
Outcome case_four_batch() {
  Outcome o;
  const SamplerParams params = case4_params(7);
  const auto start = std::chrono::steady_clock::now();
  const auto records = run_batch(params, 1);
  const double elapsed = seconds_since(start);
  const BatchSummary summary = summarize(records);
  o.require(elapsed < kBatchBudgetSeconds, "runtime " + num(elapsed) + " s");

  const BatchRecord& lo = records[summary.extremes.argmin];
  o.require(lo.stats.offdiag_sum_squares == 0.0,
            "argmin aggregate " + num(lo.stats.offdiag_sum_squares));
  int uncharacterized = 0;
  for (const auto& r : records)
    if ((r.stats.offdiag_sum_squares == 0.0) != baseline_preserves_counts(r.scenario))
      ++uncharacterized;
  o.require(uncharacterized == 0,
            std::to_string(uncharacterized) + " instances break the zero-aggregate characterization");

  const BatchRecord& hi = records[summary.extremes.argmax];
  o.require(!hi.collision, "argmax instance collides");
  o.require(ahead_behind(hi.fear), "argmax sign pattern");

  const auto threaded = run_batch(params, 4);
  const std::string a = summary_to_json(summary, params, records).dump();
  const std::string b = summary_to_json(summarize(threaded), params, threaded).dump();
  o.require(threaded == records && a == b, "results differ across thread counts");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("argmin #") +
              std::to_string(lo.index) + ", argmax #" + std::to_string(hi.index) + " " +
              joint_action_code(hi.scenario.actions) + ", " + num(elapsed) + " s";
  return o;
}

// Criterion 8.
Outcome case_three_layout() {
  Outcome o;
  const State state = locked_intersection_layout().state();
  const double f12[] = {1.0 / 3, 2.0 / 3, 2.0 / 3, 2.0 / 3, 4.0 / 9};
  const double f32[] = {3.0 / 7, 0.6, 0.6, 0.6, 0.0};
  const double f21[] = {0.0, 0.0, -0.2, -0.2, -0.2};
  const double f23[] = {0.0, 0.0, 0.0, 2.0 / 9, 2.0 / 9};
  auto tenth = [](double v) { return std::round(v * 10.0) / 10.0; };
  for (std::size_t n = 0; n < intersection_targets().size(); ++n) {
    const auto& t = intersection_targets()[n];
    const Scenario s{state, *parse_joint_action(t.actions), JointAction(3)};
    const FearMatrix m = fear_matrix(s);
    const std::string tag = std::string("(") + t.label + ") ";
    o.require(near(m(0, 1), f12[n]) && near(m(2, 1), f32[n]) && near(m(1, 0), f21[n]) &&
                  near(m(1, 2), f23[n]),
              tag + "locked values moved");
    o.require(tenth(m(0, 1)) == t.fear_1_2 && tenth(m(2, 1)) == t.fear_3_2 &&
                  tenth(m(1, 2)) == t.fear_2_3 &&
                  (t.fear_2_1 ? tenth(m(1, 0)) == *t.fear_2_1 : m(1, 0) < 0.0),
              tag + "reference values not reproduced");
    o.require(classify_outcome(simulate(state, s.actions)) == t.outcome, tag + "outcome");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"case-1 golden values", case_one_values},
      {"feasibility golden lists", feasibility_lists},
      {"case-2 derived values", case_two_values},
      {"MdR row is exactly zero (1e4 instances)", mdr_row_zero},
      {"bounds and independence (1e4 instances)", bounds_and_independence},
      {"collision engine equals naive oracle (1e5 instances)", oracle_equivalence},
      {"case-4 batch", case_four_batch},
      {"case-3 intersection layout [stretch]", case_three_layout},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %s%s%s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
