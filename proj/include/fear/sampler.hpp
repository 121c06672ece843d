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

// Seeded Monte-Carlo batches of random lane instances.
//
// Every instance is derived from (seed, index) alone through a counter-based
// stream, so records do not depend on how the batch is split across threads.

#ifndef FEAR_SAMPLER_HPP_
#define FEAR_SAMPLER_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include "fear/grid.hpp"
#include "fear/metric.hpp"

namespace fear {

struct SamplerParams {
  int lane_length = 10;
  int agent_count = 4;
  std::vector<Action> action_pool = {
      Action::stay(), *Action::make(Direction::kRight, 1),
      *Action::make(Direction::kRight, 2), *Action::make(Direction::kRight, 3),
      *Action::make(Direction::kRight, 4)};
  std::size_t instance_count = 10000;
  std::uint64_t seed = 0;
  JointAction mdr;  // empty means every agent's MdR is S0

  void validate() const {
    if (lane_length < 1)
      throw Error(ErrorKind::kInvalidParams, "lane length must be >= 1");
    if (agent_count < 1 || agent_count > lane_length)
      throw Error(ErrorKind::kInvalidParams,
                  "agent count must lie in 1..lane length");
    if (action_pool.empty())
      throw Error(ErrorKind::kInvalidParams, "action pool must not be empty");
    if (instance_count < 1)
      throw Error(ErrorKind::kInvalidParams, "instance count must be >= 1");
    if (!mdr.empty() && mdr.size() != static_cast<std::size_t>(agent_count))
      throw Error(ErrorKind::kInvalidParams,
                  "mdr must list one action per agent");
  }

  JointAction joint_mdr() const {
    return mdr.empty() ? JointAction(static_cast<std::size_t>(agent_count))
                       : mdr;
  }
};

// SplitMix64 output function over a (key, counter) pair.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t index)
      : key_(mix(mix(seed) ^ (index + 0x632BE59BD9B4E019ull))) {}

  std::uint64_t next() { return mix(key_ + kGamma * ++counter_); }

  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Positions uniformly without replacement, agents numbered left to right;
// actions uniformly with replacement from the pool.
inline Scenario generate_instance(std::uint64_t seed, std::uint64_t index,
                                  const SamplerParams& params) {
  params.validate();
  CounterStream rng(seed, index);
  std::vector<int> cells(static_cast<std::size_t>(params.lane_length));
  std::iota(cells.begin(), cells.end(), 0);
  const auto k = static_cast<std::size_t>(params.agent_count);
  for (std::size_t i = 0; i < k; ++i) {
    const auto pick = i + rng.below(cells.size() - i);
    std::swap(cells[i], cells[pick]);
  }
  std::sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(k));
  Scenario s{State{GridMap::lane(params.lane_length), {}}, {}, params.joint_mdr()};
  for (std::size_t i = 0; i < k; ++i) {
    s.state.origins.push_back({cells[i], 0});
    s.actions.push_back(params.action_pool[rng.below(params.action_pool.size())]);
  }
  return s;
}

struct BatchRecord {
  std::uint64_t index = 0;
  Scenario scenario;
  FearMatrix fear;
  AggregateStats stats;
  bool collision = false;  // any collision under the chosen joint action

  friend bool operator==(const BatchRecord&, const BatchRecord&) = default;
};

inline BatchRecord evaluate_instance(const SamplerParams& params,
                                     std::uint64_t index,
                                     const MetricConfig& config) {
  BatchRecord r;
  r.index = index;
  r.scenario = generate_instance(params.seed, index, params);
  r.fear = fear_matrix(r.scenario, config);
  r.stats = aggregate(r.fear);
  r.collision = simulate(r.scenario.state, r.scenario.actions, config.rules)
                    .any_collision();
  return r;
}

// Records come back in index order for any thread count; threads == 0 uses
// the hardware concurrency.
inline std::vector<BatchRecord> run_batch(const SamplerParams& params,
                                          unsigned threads = 0,
                                          const MetricConfig& config = {}) {
  params.validate();
  config.validate();
  const std::size_t n = params.instance_count;
  std::vector<BatchRecord> records(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  std::mutex failure_mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;

  auto work = [&] {
    constexpr std::size_t kChunk = 64;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          records[i] = evaluate_instance(params, i, config);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (i < failed_index) {
            failed_index = i;
            failure = std::current_exception();
          }
        }
      }
    }
  };

  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      const std::string where = "instance " + std::to_string(failed_index);
      throw Error(e.kind(), e.message(),
                  e.location().empty() ? where : where + " " + e.location());
    }
  }
  return records;
}

struct Extremal {
  std::uint64_t argmin = 0;
  std::uint64_t argmax = 0;

  friend bool operator==(const Extremal&, const Extremal&) = default;
};

// Ties resolve to the lowest instance index.
inline Extremal extremal(const std::vector<BatchRecord>& records) {
  if (records.empty())
    throw Error(ErrorKind::kInvalidParams, "extremal needs at least one record");
  const BatchRecord* lo = &records.front();
  const BatchRecord* hi = &records.front();
  for (const auto& r : records) {
    const double v = r.stats.offdiag_sum_squares;
    if (v < lo->stats.offdiag_sum_squares ||
        (v == lo->stats.offdiag_sum_squares && r.index < lo->index))
      lo = &r;
    if (v > hi->stats.offdiag_sum_squares ||
        (v == hi->stats.offdiag_sum_squares && r.index < hi->index))
      hi = &r;
  }
  return {lo->index, hi->index};
}

struct BatchSummary {
  std::size_t instance_count = 0;
  double histogram_max = 0.0;            // upper edge of the last bin
  std::vector<std::size_t> histogram;    // equal-width bins over [0, max]
  std::size_t zero_aggregate_count = 0;
  std::size_t all_negative_count = 0;    // every off-diagonal entry < 0
  std::size_t all_positive_count = 0;    // every off-diagonal entry > 0
  std::size_t collision_count = 0;
  double collision_fraction = 0.0;
  double min_aggregate = 0.0;
  double max_aggregate = 0.0;
  double mean_aggregate = 0.0;
  Extremal extremes;

  friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

inline BatchSummary summarize(const std::vector<BatchRecord>& records,
                              std::size_t bins = 20) {
  BatchSummary s;
  if (records.empty()) return s;
  if (bins == 0) bins = 1;
  s.instance_count = records.size();
  const double k = static_cast<double>(records.front().fear.size());
  s.histogram_max = std::max(1.0, k * (k - 1.0));
  s.histogram.assign(bins, 0);
  s.extremes = extremal(records);
  s.min_aggregate = records.front().stats.offdiag_sum_squares;
  s.max_aggregate = s.min_aggregate;
  double total = 0.0;
  for (const auto& r : records) {
    const auto& st = r.stats;
    const double v = st.offdiag_sum_squares;
    total += v;
    s.min_aggregate = std::min(s.min_aggregate, v);
    s.max_aggregate = std::max(s.max_aggregate, v);
    auto bin = static_cast<std::size_t>(v / s.histogram_max *
                                        static_cast<double>(bins));
    s.histogram[std::min(bin, bins - 1)]++;
    const std::size_t offdiag =
        st.positive_count + st.negative_count + st.zero_count;
    if (v == 0.0) ++s.zero_aggregate_count;
    if (offdiag > 0 && st.negative_count == offdiag) ++s.all_negative_count;
    if (offdiag > 0 && st.positive_count == offdiag) ++s.all_positive_count;
    if (r.collision) ++s.collision_count;
  }
  s.mean_aggregate = total / static_cast<double>(records.size());
  s.collision_fraction = static_cast<double>(s.collision_count) /
                         static_cast<double>(records.size());
  return s;
}

}  // namespace fear

#endif  // FEAR_SAMPLER_HPP_
