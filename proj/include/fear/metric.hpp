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

// Feasible Action-space Reduction (FeAR).
//
// For an actor i and an affected agent j != i:
//
//   FeAR[i][j] = clip((n(A_i <- mdr_i, j) - n(A, j)) / (n(A_i <- mdr_i, j) + eps))
//
// and on the diagonal (feasible action-space *remaining*):
//
//   FeAR[i][i] = clip(n(A, i) / (n(A_others <- mdr_others, i) + eps))
//
// where n(s, A, j) counts j's feasible moves under joint action A. Positive
// off-diagonal values mean i leaves j fewer moves than its MdR would
// (assertive); negative values mean more (courteous).

#ifndef FEAR_METRIC_HPP_
#define FEAR_METRIC_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fear/collision.hpp"
#include "fear/feasibility.hpp"
#include "fear/grid.hpp"

namespace fear {

struct MetricConfig {
  double epsilon = 1e-6;
  int report_decimals = 2;
  CollisionRules rules;

  void validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 1.0) || !std::isfinite(epsilon))
      throw Error(ErrorKind::kInvalidParams, "epsilon must lie in (0, 1)");
    if (report_decimals < 2)
      throw Error(ErrorKind::kInvalidParams, "report_decimals must be >= 2");
  }
};

inline double clip(double x) {
  if (x >= 1.0) return 1.0;
  if (x <= -1.0) return -1.0;
  return x;
}

// Half away from zero; display only.
inline double round_display(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;  // no "-0.00"
}

struct MdrCheck {
  bool consistent = true;
  std::vector<CollisionEvent> events;
};

inline MdrCheck validate_mdr(const State& state, const JointAction& mdr,
                             CollisionRules rules = {}) {
  ResolutionResult r = simulate(state, mdr, rules);
  return {r.events.empty(), std::move(r.events)};
}

class InconsistentMdrError : public Error {
 public:
  explicit InconsistentMdrError(std::vector<CollisionEvent> events)
      : Error(ErrorKind::kInconsistentMdr,
              "joint MdR is inconsistent: following it produces " +
                  std::to_string(events.size()) + " collision event(s)"),
        events_(std::move(events)) {}

  const std::vector<CollisionEvent>& events() const { return events_; }

 private:
  std::vector<CollisionEvent> events_;
};

namespace detail {

inline void require_consistent(const Scenario& s, CollisionRules rules) {
  if (s.actions.size() != s.agent_count() || s.mdr.size() != s.agent_count())
    throw Error(ErrorKind::kInvalidScenario,
                "every agent needs exactly one action and one mdr");
  MdrCheck check = validate_mdr(s.state, s.mdr, rules);
  if (!check.consistent) throw InconsistentMdrError(std::move(check.events));
}

inline JointAction others_at_mdr(const Scenario& s, AgentId i) {
  JointAction out = s.mdr;
  out[i.index()] = s.actions[i.index()];
  return out;
}

inline double reduction(std::size_t baseline, std::size_t actual, double eps) {
  return clip((static_cast<double>(baseline) - static_cast<double>(actual)) /
              (static_cast<double>(baseline) + eps));
}

inline double remaining(std::size_t actual, std::size_t baseline, double eps) {
  return clip(static_cast<double>(actual) /
              (static_cast<double>(baseline) + eps));
}

inline void require_agent(const Scenario& s, AgentId id) {
  if (!s.state.has_agent(id))
    throw Error(ErrorKind::kUnknownAgent,
                "unknown agent id " + std::to_string(id.value));
}

}  // namespace detail

// k x k matrix; row = actor, column = affected agent.
class FearMatrix {
 public:
  FearMatrix() = default;
  explicit FearMatrix(std::size_t k) : k_(k), values_(k * k, 0.0) {}

  std::size_t size() const { return k_; }
  double operator()(std::size_t row, std::size_t col) const {
    return values_[row * k_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return values_[row * k_ + col];
  }
  double at(AgentId actor, AgentId affected) const {
    return (*this)(actor.index(), affected.index());
  }

  friend bool operator==(const FearMatrix&, const FearMatrix&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<double> values_;
};

inline double fear_pair(const Scenario& s, AgentId actor, AgentId affected,
                        const MetricConfig& config = {}) {
  detail::require_agent(s, actor);
  detail::require_agent(s, affected);
  detail::require_consistent(s, config.rules);
  FeasibilityCounter counter(s.state, config.rules);
  if (actor == affected) {
    return detail::remaining(
        counter.count(s.actions, actor),
        counter.count(detail::others_at_mdr(s, actor), actor), config.epsilon);
  }
  return detail::reduction(
      counter.count(with_action(s.actions, actor, s.mdr[actor.index()]),
                    affected),
      counter.count(s.actions, affected), config.epsilon);
}

inline double fear_pair(const State& state, const JointAction& joint,
                        const JointAction& mdr, AgentId actor, AgentId affected,
                        const MetricConfig& config = {}) {
  return fear_pair(Scenario{state, joint, mdr}, actor, affected, config);
}

// Uses a caller-owned counter so repeated evaluations on one state share the
// memo. The counter must be bound to `s.state`.
inline FearMatrix fear_matrix(const Scenario& s, FeasibilityCounter& counter,
                              const MetricConfig& config) {
  detail::require_consistent(s, config.rules);
  const std::size_t k = s.agent_count();
  FearMatrix m(k);
  for (std::size_t i = 0; i < k; ++i) {
    const AgentId actor = AgentId::from_index(i);
    const JointAction baseline =
        with_action(s.actions, actor, s.mdr[i]);
    for (std::size_t j = 0; j < k; ++j) {
      const AgentId affected = AgentId::from_index(j);
      if (i == j) {
        m(i, i) = detail::remaining(
            counter.count(s.actions, actor),
            counter.count(detail::others_at_mdr(s, actor), actor),
            config.epsilon);
      } else {
        m(i, j) = detail::reduction(counter.count(baseline, affected),
                                    counter.count(s.actions, affected),
                                    config.epsilon);
      }
    }
  }
  return m;
}

inline FearMatrix fear_matrix(const Scenario& s,
                              const MetricConfig& config = {}) {
  FeasibilityCounter counter(s.state, config.rules);
  return fear_matrix(s, counter, config);
}

struct MatrixEntry {
  AgentId actor;
  AgentId affected;
  double value = 0.0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Statistics over the off-diagonal entries.
struct AggregateStats {
  double offdiag_sum_squares = 0.0;
  std::size_t positive_count = 0;
  std::size_t negative_count = 0;
  std::size_t zero_count = 0;
  std::optional<MatrixEntry> min;
  std::optional<MatrixEntry> max;

  friend bool operator==(const AggregateStats&,
                         const AggregateStats&) = default;
};

inline AggregateStats aggregate(const FearMatrix& m) {
  AggregateStats a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      const double v = m(i, j);
      a.offdiag_sum_squares += v * v;
      if (v > 0.0)
        ++a.positive_count;
      else if (v < 0.0)
        ++a.negative_count;
      else
        ++a.zero_count;
      const MatrixEntry e{AgentId::from_index(i), AgentId::from_index(j), v};
      if (!a.min || v < a.min->value) a.min = e;
      if (!a.max || v > a.max->value) a.max = e;
    }
  }
  return a;
}

// True when no actor's MdR substitution changes any other agent's feasible
// count. Recomputed without the memo; equivalent to a zero aggregate.
inline bool baseline_preserves_counts(const Scenario& s,
                                      const MetricConfig& config = {}) {
  const std::size_t k = s.agent_count();
  for (std::size_t i = 0; i < k; ++i) {
    const JointAction baseline =
        with_action(s.actions, AgentId::from_index(i), s.mdr[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const AgentId affected = AgentId::from_index(j);
      if (count_feasible(s.state, baseline, affected, config.rules) !=
          count_feasible(s.state, s.actions, affected, config.rules))
        return false;
    }
  }
  return true;
}

// Feasibility of `affected` when `actor` is swapped to its MdR.
struct PairFeasibility {
  AgentId actor;
  FeasibilityReport report;

  friend bool operator==(const PairFeasibility&,
                         const PairFeasibility&) = default;
};

// Everything a result document carries for one scenario.
struct Evaluation {
  FearMatrix fear;
  std::vector<FeasibilityReport> actual;          // n(A, j) per agent
  std::vector<PairFeasibility> actor_at_mdr;      // n(A_i <- mdr_i, j), i != j
  std::vector<FeasibilityReport> others_at_mdr;   // n(A_others <- mdr, i)
  std::vector<CollisionEvent> collisions;         // under A
  AggregateStats stats;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

inline Evaluation evaluate(const Scenario& s, const MetricConfig& config = {}) {
  config.validate();
  FeasibilityCounter counter(s.state, config.rules);
  Evaluation e;
  e.fear = fear_matrix(s, counter, config);
  const std::size_t k = s.agent_count();
  for (std::size_t j = 0; j < k; ++j)
    e.actual.push_back(counter.report(s.actions, AgentId::from_index(j)));
  for (std::size_t i = 0; i < k; ++i) {
    const AgentId actor = AgentId::from_index(i);
    const JointAction baseline = with_action(s.actions, actor, s.mdr[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      e.actor_at_mdr.push_back(
          {actor, counter.report(baseline, AgentId::from_index(j))});
    }
    e.others_at_mdr.push_back(
        counter.report(detail::others_at_mdr(s, actor), actor));
  }
  e.collisions = simulate(s.state, s.actions, config.rules).events;
  e.stats = aggregate(e.fear);
  return e;
}

}  // namespace fear

#endif  // FEAR_METRIC_HPP_
