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

// Stateless HTTP API for the explorer UI.
//
//   GET  /catalog   -> {"actions": ["S0", "R1", ...]}
//   GET  /fixtures  -> {"fixtures": [{"name", "description", "scenario"}]}
//   POST /evaluate  body: scenario document        -> result document
//   POST /whatif    body: {"scenario": doc, "agent": id} -> per-action sweep
//
// Errors: 400 for malformed, schema or validation failures and unknown
// agents; 422 for an inconsistent MdR (body lists the collision events).

#ifndef FEAR_SERVICE_HPP_
#define FEAR_SERVICE_HPP_

#include <string>
#include <string_view>

#include "httplib.h"
#include "json.hpp"

#include "fear/fixtures.hpp"
#include "fear/metric.hpp"
#include "fear/scenario_io.hpp"

namespace fear {

struct HttpReply {
  int status = 200;
  Json body;
};

inline Json catalog_json() {
  Json codes = Json::array();
  for (const Action a : action_catalog()) codes.push_back(a.code());
  return {{"actions", codes}};
}

inline Json fixtures_json() {
  Json list = Json::array();
  for (const auto& f : builtin_fixtures())
    list.push_back({{"name", f.name},
                    {"description", f.description},
                    {"scenario", scenario_to_json(f.scenario)}});
  return {{"fixtures", list}};
}

inline HttpReply error_reply(const Error& e) {
  Json err = {{"kind", std::string(error_kind_name(e.kind()))},
              {"message", e.message()},
              {"location", e.location()}};
  int status = 400;
  if (const auto* mdr = dynamic_cast<const InconsistentMdrError*>(&e)) {
    status = 422;
    err["events"] = events_to_json(mdr->events());
  }
  return {status, {{"error", err}}};
}

inline HttpReply handle_evaluate(std::string_view body,
                                 const MetricConfig& config = {}) {
  try {
    const Scenario s = load_scenario(body);
    return {200, evaluation_to_json(evaluate(s, config), config.report_decimals)};
  } catch (const Error& e) {
    return error_reply(e);
  }
}

// One evaluation per catalog action substituted for the chosen agent.
inline Json whatif(const Scenario& s, AgentId agent, const MetricConfig& config) {
  config.validate();
  detail::require_agent(s, agent);
  detail::require_consistent(s, config.rules);
  FeasibilityCounter counter(s.state, config.rules);
  const std::size_t i = agent.index();
  const JointAction baseline = with_action(s.actions, agent, s.mdr[i]);
  const FeasibilityReport own = counter.report(s.actions, agent);

  Json entries = Json::array();
  for (const Action candidate : action_catalog()) {
    const JointAction joint = with_action(s.actions, agent, candidate);
    Json row = Json::array();
    for (std::size_t j = 0; j < s.agent_count(); ++j) {
      if (j == i) continue;
      const AgentId affected = AgentId::from_index(j);
      const double v = detail::reduction(counter.count(baseline, affected),
                                         counter.count(joint, affected),
                                         config.epsilon);
      row.push_back({{"affected", affected.value},
                     {"value", v},
                     {"display", round_display(v, config.report_decimals)}});
    }
    entries.push_back(
        {{"action", candidate.code()},
         {"fear_row", row},
         {"feasible", own.contains(candidate)},
         {"collisions", events_to_json(simulate(s.state, joint, config.rules).events)}});
  }
  return {{"agent", agent.value},
          {"current", s.actions[i].code()},
          {"entries", entries}};
}

inline HttpReply handle_whatif(std::string_view body,
                               const MetricConfig& config = {}) {
  try {
    const Json doc = detail::parse_json(body);
    detail::expect_object(doc, "", {"scenario", "agent"}, {});
    const AgentId agent{detail::expect_int(doc["agent"], "/agent")};
    Scenario s;
    try {
      s = scenario_from_json(doc["scenario"]);
    } catch (const Error& e) {
      throw Error(e.kind(), e.message(), "/scenario" + e.location());
    }
    return {200, whatif(s, agent, config)};
  } catch (const Error& e) {
    return error_reply(e);
  }
}

inline bool is_local_origin(const std::string& origin) {
  for (const char* prefix : {"http://localhost", "http://127.0.0.1",
                             "https://localhost", "https://127.0.0.1"}) {
    const std::string p(prefix);
    if (origin.rfind(p, 0) == 0 &&
        (origin.size() == p.size() || origin[p.size()] == ':'))
      return true;
  }
  return false;
}

inline void install_routes(httplib::Server& server, MetricConfig config = {}) {
  // No SO_REUSEPORT, so binding an occupied port fails.
  server.set_socket_options([](auto sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes),
               sizeof(yes));
  });
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
  };
  server.Get("/catalog", [send](const httplib::Request&, httplib::Response& res) {
    send(res, {200, catalog_json()});
  });
  server.Get("/fixtures", [send](const httplib::Request&, httplib::Response& res) {
    send(res, {200, fixtures_json()});
  });
  server.Post("/evaluate",
              [send, config](const httplib::Request& req, httplib::Response& res) {
                send(res, handle_evaluate(req.body, config));
              });
  server.Post("/whatif",
              [send, config](const httplib::Request& req, httplib::Response& res) {
                send(res, handle_whatif(req.body, config));
              });
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.set_post_routing_handler(
      [](const httplib::Request& req, httplib::Response& res) {
        const std::string origin = req.get_header_value("Origin");
        if (!is_local_origin(origin)) return;
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.set_header("Vary", "Origin");
      });
}

}  // namespace fear

#endif  // FEAR_SERVICE_HPP_
