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

// JSON scenario documents, result documents and CSV export.
//
// Scenario document (format_version 1, 0-indexed coordinates):
//
//   {
//     "format_version": 1,
//     "grid": {"width": 10, "height": 1, "invalid_cells": [[x, y], ...]},
//     "agents": [{"id": 1, "x": 2, "y": 0}, {"id": 2, "x": 4, "y": 0}],
//     "actions": {"1": "L1", "2": "R1"},
//     "mdr": {"1": "S0", "2": "S0"}
//   }
//
// Unknown fields are rejected at every level. "invalid_cells" may be omitted.

#ifndef FEAR_SCENARIO_IO_HPP_
#define FEAR_SCENARIO_IO_HPP_

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "fear/collision.hpp"
#include "fear/error.hpp"
#include "fear/feasibility.hpp"
#include "fear/grid.hpp"
#include "fear/metric.hpp"
#include "fear/sampler.hpp"

namespace fear {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Shortest representation that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, end);
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where,
                                      const std::string& what) {
  throw Error(ErrorKind::kSchemaViolation, what, where.empty() ? "/" : where);
}

inline void expect_object(const Json& j, const std::string& where,
                          std::initializer_list<std::string_view> required,
                          std::initializer_list<std::string_view> optional) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || key == k;
    for (auto k : optional) known = known || key == k;
    if (!known) schema_error(where + "/" + key, "unknown field");
  }
  for (auto k : required)
    if (!j.contains(std::string(k)))
      schema_error(where + "/" + std::string(k), "missing required field");
}

inline int expect_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    schema_error(where, "integer out of range");
  return static_cast<int>(v);
}

inline Cell expect_pair(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    schema_error(where, "expected an [x, y] pair");
  return {expect_int(j[0], where + "/0"), expect_int(j[1], where + "/1")};
}

inline std::map<int, std::string> expect_assignments(const Json& j,
                                                     const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object of id -> code");
  std::map<int, std::string> out;
  for (const auto& [key, value] : j.items()) {
    int id = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc() || ptr != key.data() + key.size())
      schema_error(where + "/" + key, "keys must be integer agent ids");
    if (!value.is_string())
      schema_error(where + "/" + key, "expected an action code string");
    out[id] = value.get<std::string>();
  }
  return out;
}

inline Json parse_json(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kMalformedDocument, e.what(),
                "byte " + std::to_string(e.byte));
  }
}

}  // namespace detail

inline ScenarioDraft draft_from_json(const Json& doc) {
  using detail::expect_int;
  detail::expect_object(doc, "", {"format_version", "grid", "agents", "actions", "mdr"},
                        {});
  const int version = expect_int(doc["format_version"], "/format_version");
  if (version != kFormatVersion)
    detail::schema_error("/format_version",
                         "unsupported format version " + std::to_string(version));

  ScenarioDraft d;
  const Json& grid = doc["grid"];
  detail::expect_object(grid, "/grid", {"width", "height"}, {"invalid_cells"});
  d.width = expect_int(grid["width"], "/grid/width");
  d.height = expect_int(grid["height"], "/grid/height");
  if (grid.contains("invalid_cells")) {
    const Json& cells = grid["invalid_cells"];
    if (!cells.is_array())
      detail::schema_error("/grid/invalid_cells", "expected an array");
    for (std::size_t i = 0; i < cells.size(); ++i)
      d.invalid_cells.push_back(detail::expect_pair(
          cells[i], "/grid/invalid_cells/" + std::to_string(i)));
  }

  const Json& agents = doc["agents"];
  if (!agents.is_array()) detail::schema_error("/agents", "expected an array");
  std::set<int> seen;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "/agents/" + std::to_string(i);
    detail::expect_object(agents[i], where, {"id", "x", "y"}, {});
    ScenarioDraft::Agent a;
    a.id = expect_int(agents[i]["id"], where + "/id");
    a.origin = {expect_int(agents[i]["x"], where + "/x"),
                expect_int(agents[i]["y"], where + "/y")};
    if (!seen.insert(a.id).second)
      detail::schema_error(where + "/id",
                           "duplicate agent id " + std::to_string(a.id));
    d.agents.push_back(a);
  }
  d.actions = detail::expect_assignments(doc["actions"], "/actions");
  d.mdr = detail::expect_assignments(doc["mdr"], "/mdr");
  return d;
}

inline ScenarioDraft parse_scenario_document(std::string_view bytes) {
  return draft_from_json(detail::parse_json(bytes));
}

inline Scenario scenario_from_json(const Json& doc) {
  return build_scenario(draft_from_json(doc));
}

// Parse and validate. Errors carry kMalformedDocument, kSchemaViolation or
// kInvalidScenario with the offending location.
inline Scenario load_scenario(std::string_view bytes) {
  return build_scenario(parse_scenario_document(bytes));
}

inline Json scenario_to_json(const Scenario& s) {
  Json invalid = Json::array();
  for (const Cell c : s.state.map.invalid_cells())
    invalid.push_back({c.x, c.y});
  Json agents = Json::array();
  Json actions = Json::object();
  Json mdr = Json::object();
  for (std::size_t i = 0; i < s.agent_count(); ++i) {
    const std::string id = std::to_string(i + 1);
    agents.push_back({{"id", static_cast<int>(i) + 1},
                      {"x", s.state.origins[i].x},
                      {"y", s.state.origins[i].y}});
    actions[id] = s.actions[i].code();
    mdr[id] = s.mdr[i].code();
  }
  return {{"format_version", kFormatVersion},
          {"grid",
           {{"width", s.state.map.width()},
            {"height", s.state.map.height()},
            {"invalid_cells", invalid}}},
          {"agents", agents},
          {"actions", actions},
          {"mdr", mdr}};
}

inline std::string save_scenario(const Scenario& s) {
  return scenario_to_json(s).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

inline Json codes_to_json(const std::vector<Action>& actions) {
  Json out = Json::array();
  for (const Action a : actions) out.push_back(a.code());
  return out;
}

inline Json event_to_json(const CollisionEvent& e) {
  Json who = Json::array();
  for (const AgentId a : e.participants) who.push_back(a.value);
  return {{"participants", who},
          {"sub_step", e.sub_step},
          {"kind", std::string(conflict_kind_name(e.kind))}};
}

inline Json events_to_json(const std::vector<CollisionEvent>& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(event_to_json(e));
  return out;
}

inline Json report_to_json(const FeasibilityReport& r) {
  return {{"agent", r.agent.value},
          {"count", r.count()},
          {"feasible", codes_to_json(r.feasible())}};
}

inline Json matrix_to_json(const FearMatrix& m, int decimals = -1) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j)
      row.push_back(decimals < 0 ? m(i, j) : round_display(m(i, j), decimals));
    rows.push_back(row);
  }
  return rows;
}

inline Json entry_to_json(const std::optional<MatrixEntry>& e) {
  if (!e) return nullptr;
  return {{"actor", e->actor.value},
          {"affected", e->affected.value},
          {"value", e->value}};
}

inline Json stats_to_json(const AggregateStats& a) {
  return {{"offdiag_sum_squares", a.offdiag_sum_squares},
          {"positive_count", a.positive_count},
          {"negative_count", a.negative_count},
          {"zero_count", a.zero_count},
          {"min", entry_to_json(a.min)},
          {"max", entry_to_json(a.max)}};
}

inline Json evaluation_to_json(const Evaluation& e, int decimals = 2) {
  Json actual = Json::array();
  for (const auto& r : e.actual) actual.push_back(report_to_json(r));
  Json pairs = Json::array();
  for (const auto& p : e.actor_at_mdr) {
    Json r = report_to_json(p.report);
    r["actor"] = p.actor.value;
    pairs.push_back(r);
  }
  Json others = Json::array();
  for (const auto& r : e.others_at_mdr) others.push_back(report_to_json(r));
  return {{"format_version", kFormatVersion},
          {"agents", e.fear.size()},
          {"fear", matrix_to_json(e.fear)},
          {"fear_display", matrix_to_json(e.fear, decimals)},
          {"display_decimals", decimals},
          {"feasibility",
           {{"actual", actual}, {"actor_at_mdr", pairs}, {"others_at_mdr", others}}},
          {"collisions", events_to_json(e.collisions)},
          {"aggregate", stats_to_json(e.stats)}};
}

namespace detail {

inline AgentId expect_agent(const Json& j, const std::string& where) {
  const int v = expect_int(j, where);
  if (v < 1) schema_error(where, "agent ids are 1-based");
  return AgentId{v};
}

inline FeasibilityReport report_from_json(const Json& j,
                                          const std::string& where,
                                          bool with_actor) {
  if (with_actor)
    expect_object(j, where, {"agent", "count", "feasible", "actor"}, {});
  else
    expect_object(j, where, {"agent", "count", "feasible"}, {});
  FeasibilityReport r{expect_agent(j["agent"], where + "/agent"), 0};
  const Json& codes = j["feasible"];
  if (!codes.is_array()) schema_error(where + "/feasible", "expected an array");
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::string at = where + "/feasible/" + std::to_string(i);
    if (!codes[i].is_string()) schema_error(at, "expected an action code");
    auto a = Action::parse(codes[i].get<std::string>());
    if (!a) schema_error(at, "unknown action code");
    r.mask |= 1u << a->index();
  }
  if (static_cast<std::size_t>(expect_int(j["count"], where + "/count")) !=
      r.count())
    schema_error(where + "/count", "count disagrees with the feasible list");
  return r;
}

inline std::optional<MatrixEntry> entry_from_json(const Json& j,
                                                  const std::string& where) {
  if (j.is_null()) return std::nullopt;
  expect_object(j, where, {"actor", "affected", "value"}, {});
  if (!j["value"].is_number()) schema_error(where + "/value", "expected a number");
  return MatrixEntry{expect_agent(j["actor"], where + "/actor"),
                     expect_agent(j["affected"], where + "/affected"),
                     j["value"].get<double>()};
}

}  // namespace detail

inline Evaluation evaluation_from_json(const Json& doc) {
  using detail::expect_int;
  detail::expect_object(doc, "",
                        {"format_version", "agents", "fear", "fear_display",
                         "display_decimals", "feasibility", "collisions",
                         "aggregate"},
                        {});
  if (expect_int(doc["format_version"], "/format_version") != kFormatVersion)
    detail::schema_error("/format_version", "unsupported format version");
  const int k = expect_int(doc["agents"], "/agents");
  if (k < 1) detail::schema_error("/agents", "expected at least one agent");
  const auto n = static_cast<std::size_t>(k);
  Evaluation e;
  e.fear = FearMatrix(n);
  const Json& rows = doc["fear"];
  if (!rows.is_array() || rows.size() != n)
    detail::schema_error("/fear", "matrix must have one row per agent");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "/fear/" + std::to_string(i);
    if (!rows[i].is_array() || rows[i].size() != n)
      detail::schema_error(where, "row must have one entry per agent");
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number())
        detail::schema_error(where + "/" + std::to_string(j), "expected a number");
      e.fear(i, j) = rows[i][j].get<double>();
    }
  }
  const Json& feas = doc["feasibility"];
  detail::expect_object(feas, "/feasibility",
                        {"actual", "actor_at_mdr", "others_at_mdr"}, {});
  auto reports = [&](const char* key, bool with_actor, auto&& sink) {
    const std::string where = std::string("/feasibility/") + key;
    const Json& list = feas[key];
    if (!list.is_array()) detail::schema_error(where, "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = where + "/" + std::to_string(i);
      sink(list[i], detail::report_from_json(list[i], at, with_actor), at);
    }
  };
  reports("actual", false, [&](const Json&, FeasibilityReport r, const std::string&) {
    e.actual.push_back(r);
  });
  reports("actor_at_mdr", true,
          [&](const Json& j, FeasibilityReport r, const std::string& at) {
            e.actor_at_mdr.push_back(
                {detail::expect_agent(j["actor"], at + "/actor"), r});
          });
  reports("others_at_mdr", false,
          [&](const Json&, FeasibilityReport r, const std::string&) {
            e.others_at_mdr.push_back(r);
          });

  const Json& events = doc["collisions"];
  if (!events.is_array()) detail::schema_error("/collisions", "expected an array");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string where = "/collisions/" + std::to_string(i);
    detail::expect_object(events[i], where, {"participants", "sub_step", "kind"}, {});
    CollisionEvent ev;
    const Json& who = events[i]["participants"];
    if (!who.is_array()) detail::schema_error(where + "/participants", "expected an array");
    for (std::size_t p = 0; p < who.size(); ++p)
      ev.participants.push_back(detail::expect_agent(
          who[p], where + "/participants/" + std::to_string(p)));
    ev.sub_step = expect_int(events[i]["sub_step"], where + "/sub_step");
    const Json& kind = events[i]["kind"];
    if (kind == "vertex")
      ev.kind = ConflictKind::kVertex;
    else if (kind == "swap")
      ev.kind = ConflictKind::kSwap;
    else if (kind == "boundary")
      ev.kind = ConflictKind::kBoundary;
    else
      detail::schema_error(where + "/kind", "unknown collision kind");
    e.collisions.push_back(std::move(ev));
  }

  const Json& agg = doc["aggregate"];
  detail::expect_object(agg, "/aggregate",
                        {"offdiag_sum_squares", "positive_count", "negative_count",
                         "zero_count", "min", "max"},
                        {});
  if (!agg["offdiag_sum_squares"].is_number())
    detail::schema_error("/aggregate/offdiag_sum_squares", "expected a number");
  e.stats.offdiag_sum_squares = agg["offdiag_sum_squares"].get<double>();
  e.stats.positive_count = static_cast<std::size_t>(
      expect_int(agg["positive_count"], "/aggregate/positive_count"));
  e.stats.negative_count = static_cast<std::size_t>(
      expect_int(agg["negative_count"], "/aggregate/negative_count"));
  e.stats.zero_count = static_cast<std::size_t>(
      expect_int(agg["zero_count"], "/aggregate/zero_count"));
  e.stats.min = detail::entry_from_json(agg["min"], "/aggregate/min");
  e.stats.max = detail::entry_from_json(agg["max"], "/aggregate/max");
  return e;
}

inline Evaluation load_result(std::string_view bytes) {
  return evaluation_from_json(detail::parse_json(bytes));
}

enum class ExportFormat { kJson, kCsv };

// CSV: the FeAR matrix with a header row and column of agent ids, full
// precision. JSON: the whole result document.
inline std::string export_results(const Evaluation& e, ExportFormat format,
                                  int decimals = 2) {
  if (format == ExportFormat::kJson)
    return evaluation_to_json(e, decimals).dump(2) + "\n";
  std::ostringstream out;
  for (std::size_t j = 0; j < e.fear.size(); ++j) out << ',' << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < e.fear.size(); ++i) {
    out << i + 1;
    for (std::size_t j = 0; j < e.fear.size(); ++j)
      out << ',' << format_number(e.fear(i, j));
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Batch output
// ---------------------------------------------------------------------------

inline Json sampler_params_to_json(const SamplerParams& p) {
  Json pool = Json::array();
  for (const Action a : p.action_pool) pool.push_back(a.code());
  return {{"lane_length", p.lane_length},
          {"agent_count", p.agent_count},
          {"action_pool", pool},
          {"instance_count", p.instance_count},
          {"seed", p.seed},
          {"mdr", joint_action_code(p.joint_mdr())}};
}

inline Json record_to_json(const BatchRecord& r, int decimals = 2) {
  return {{"index", r.index},
          {"scenario", scenario_to_json(r.scenario)},
          {"fear", matrix_to_json(r.fear)},
          {"fear_display", matrix_to_json(r.fear, decimals)},
          {"collision", r.collision},
          {"aggregate", stats_to_json(r.stats)}};
}

inline Json summary_to_json(const BatchSummary& s, const SamplerParams& p,
                            const std::vector<BatchRecord>& records) {
  auto find = [&](std::uint64_t index) -> Json {
    for (const auto& r : records)
      if (r.index == index) return record_to_json(r);
    return nullptr;
  };
  return {{"params", sampler_params_to_json(p)},
          {"instance_count", s.instance_count},
          {"histogram", {{"max", s.histogram_max}, {"counts", s.histogram}}},
          {"zero_aggregate_count", s.zero_aggregate_count},
          {"all_negative_count", s.all_negative_count},
          {"all_positive_count", s.all_positive_count},
          {"collision_count", s.collision_count},
          {"collision_fraction", s.collision_fraction},
          {"min_aggregate", s.min_aggregate},
          {"max_aggregate", s.max_aggregate},
          {"mean_aggregate", s.mean_aggregate},
          {"argmin", find(s.extremes.argmin)},
          {"argmax", find(s.extremes.argmax)}};
}

}  // namespace fear

#endif  // FEAR_SCENARIO_IO_HPP_
