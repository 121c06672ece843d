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

// fear: command-line front end.
//
//   fear evaluate <scenario.json> [--format table|json|csv] [--epsilon E]
//   fear feasible <scenario.json> --agent J [--others-at-mdr]
//   fear reproduce case1|case2|case3|case4 [--seed S] [--threads T]
//   fear sample [--n N] [--agents K] [--lane L] [--pool S0,R1,...] [--seed S]
//               [--mdr S0-S0-...] [--threads T] [--out FILE] [--dump FILE]
//   fear serve [--host H] [--port P]
//   fear fixture [NAME]
//   fear search-intersection [--max-width W] [--max-height H] [--max-road R]
//
// Exit status: 0 success, 1 domain error, 2 usage error. FEAR_EPSILON
// overrides the default epsilon.

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <cstdlib>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "fear/fear.hpp"
#include "fear/service.hpp"
#include "render.hpp"
#include "reproduce.hpp"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fear::Error(fear::ErrorKind::kMalformedDocument, "cannot read file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file " + path);
  out << bytes;
}

fear::Scenario load_from(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    return fear::load_scenario(bytes);
  } catch (const fear::Error& e) {
    throw fear::Error(e.kind(), e.message(), path + ":" + e.location());
  }
}

std::vector<fear::Action> parse_pool(const std::string& text) {
  std::vector<fear::Action> pool;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto a = fear::Action::parse(token);
    if (!a) throw UsageError("unknown action code in --pool: '" + token + "'");
    pool.push_back(*a);
  }
  return pool;
}

struct Options {
  std::string path;
  std::string format = "table";
  double epsilon = fear::MetricConfig{}.epsilon;
  int decimals = 2;
  int agent = 0;
  bool others_at_mdr = false;
  std::string study;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::size_t n = 10000;
  int agents = 4;
  int lane = 10;
  std::string pool = "S0,R1,R2,R3,R4";
  std::string mdr;
  std::size_t bins = 20;
  std::string out;
  std::string dump;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string fixture;
  fear::IntersectionSearchBounds bounds;
};

fear::MetricConfig metric_config(const Options& o) {
  fear::MetricConfig c;
  c.epsilon = o.epsilon;
  c.report_decimals = o.decimals;
  c.validate();
  return c;
}

int cmd_evaluate(const Options& o) {
  const fear::MetricConfig config = metric_config(o);
  const fear::Evaluation e = fear::evaluate(load_from(o.path), config);
  if (o.format == "json")
    std::cout << fear::export_results(e, fear::ExportFormat::kJson, o.decimals);
  else if (o.format == "csv")
    std::cout << fear::export_results(e, fear::ExportFormat::kCsv, o.decimals);
  else
    fear::tools::render_evaluation(std::cout, e, o.decimals);
  return 0;
}

int cmd_feasible(const Options& o) {
  const fear::Scenario s = load_from(o.path);
  const fear::AgentId id{o.agent};
  fear::detail::require_agent(s, id);
  const fear::JointAction joint =
      o.others_at_mdr ? fear::detail::others_at_mdr(s, id) : s.actions;
  std::cout << fear::tools::feasible_line(fear::feasible_actions(s.state, joint, id))
            << '\n';
  return 0;
}

int cmd_reproduce(const Options& o) {
  const fear::MetricConfig config = metric_config(o);
  int failures = 0;
  if (o.study == "case1") failures = fear::tools::reproduce_case1(std::cout, config);
  if (o.study == "case2") failures = fear::tools::reproduce_case2(std::cout, config);
  if (o.study == "case3") failures = fear::tools::reproduce_case3(std::cout, config);
  if (o.study == "case4")
    failures = fear::tools::reproduce_case4(std::cout, o.seed, o.threads, config);
  std::cout << (failures == 0 ? "all values match\n"
                              : std::to_string(failures) + " value(s) mismatched\n");
  return failures == 0 ? 0 : kExitDomain;
}

int cmd_sample(const Options& o) {
  const fear::MetricConfig config = metric_config(o);
  fear::SamplerParams p;
  p.lane_length = o.lane;
  p.agent_count = o.agents;
  p.action_pool = parse_pool(o.pool);
  p.instance_count = o.n;
  p.seed = o.seed;
  if (!o.mdr.empty()) {
    const auto mdr = fear::parse_joint_action(o.mdr);
    if (!mdr) throw UsageError("malformed --mdr '" + o.mdr + "'");
    p.mdr = *mdr;
  }
  try {
    p.validate();
  } catch (const fear::Error& e) {
    throw UsageError(e.what());
  }
  const auto start = std::chrono::steady_clock::now();
  const auto records = fear::run_batch(p, o.threads, config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string summary =
      fear::summary_to_json(fear::summarize(records, o.bins), p, records).dump(2) + "\n";
  if (o.out.empty())
    std::cout << summary;
  else
    write_file(o.out, summary);
  if (!o.dump.empty()) {
    std::string lines;
    for (const auto& r : records)
      lines += fear::record_to_json(r, o.decimals).dump() + "\n";
    write_file(o.dump, lines);
  }
  std::cerr << records.size() << " instances in " << fear::tools::format_fixed(seconds, 2)
            << " s\n";
  return 0;
}

int cmd_serve(const Options& o) {
  const fear::MetricConfig config = metric_config(o);
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  httplib::Server server;
  fear::install_routes(server, config);
  int port = o.port;
  if (port == 0) {
    port = server.bind_to_any_port(o.host);
    if (port < 0) port = 0;
  } else if (!server.bind_to_port(o.host, port)) {
    port = 0;
  }
  if (port == 0) {
    std::cerr << "error: cannot bind " << o.host << ":" << o.port << '\n';
    return kExitDomain;
  }

  std::atomic<bool> interrupted{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    interrupted = true;
    server.stop();
  });
  std::cout << "serving on http://" << o.host << ":" << port << std::endl;
  server.listen_after_bind();
  if (!interrupted) kill(getpid(), SIGTERM);
  waiter.join();
  std::cout << "stopped" << std::endl;
  return 0;
}

int cmd_fixture(const Options& o) {
  if (o.fixture.empty()) {
    for (const auto& f : fear::builtin_fixtures())
      std::cout << f.name << "  " << f.description << '\n';
    return 0;
  }
  const auto f = fear::find_fixture(o.fixture);
  if (!f) throw UsageError("unknown fixture '" + o.fixture + "'");
  std::cout << fear::save_scenario(f->scenario);
  return 0;
}

int cmd_search(const Options& o) {
  const auto matches = fear::search_intersection(o.bounds, metric_config(o));
  for (const auto& m : matches) {
    const auto& l = m.layout;
    std::cout << l.width << "x" << l.height << " rows " << l.road_row << "+"
              << l.road_rows << " cols " << l.road_col << "+" << l.road_cols
              << " agents " << fear::to_string(l.agents[0]) << " "
              << fear::to_string(l.agents[1]) << " " << fear::to_string(l.agents[2])
              << " deviation " << fear::format_number(m.deviation) << '\n';
  }
  std::cout << matches.size() << " layout(s) match\n";
  return matches.empty() ? kExitDomain : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("FEAR_EPSILON")) {
    char* end = nullptr;
    o.epsilon = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(o.epsilon > 0.0 && o.epsilon < 1.0)) {
      std::cerr << "error: FEAR_EPSILON must be a number in (0, 1), got '" << env
                << "'\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Feasible action-space reduction in a grid world"};
  app.require_subcommand(1);

  auto add_metric_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--epsilon", o.epsilon, "Denominator offset (default $FEAR_EPSILON or 1e-6)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--decimals", o.decimals, "Display decimals")
        ->check(CLI::Range(2, 12));
  };

  auto* evaluate = app.add_subcommand("evaluate", "FeAR matrix of a scenario file");
  evaluate->add_option("scenario", o.path, "Scenario document")->required();
  evaluate->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  add_metric_flags(evaluate);

  auto* feasible = app.add_subcommand("feasible", "Feasible actions of one agent");
  feasible->add_option("scenario", o.path, "Scenario document")->required();
  feasible->add_option("--agent", o.agent, "Agent id")->required();
  feasible->add_flag("--others-at-mdr", o.others_at_mdr,
                     "Put every other agent on its MdR first");

  auto* reproduce = app.add_subcommand("reproduce", "Print and check a case study");
  reproduce->add_option("study", o.study, "case1, case2, case3 or case4")
      ->required()
      ->check(CLI::IsMember({"case1", "case2", "case3", "case4"}));
  reproduce->add_option("--seed", o.seed, "Batch seed (case4)");
  reproduce->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
  add_metric_flags(reproduce);

  auto* sample = app.add_subcommand("sample", "Seeded batch of random lane instances");
  sample->add_option("--n", o.n, "Instance count")->check(CLI::PositiveNumber);
  sample->add_option("--agents", o.agents, "Agents per instance")->check(CLI::PositiveNumber);
  sample->add_option("--lane", o.lane, "Lane length")->check(CLI::PositiveNumber);
  sample->add_option("--pool", o.pool, "Comma-separated action codes");
  sample->add_option("--seed", o.seed, "Seed");
  sample->add_option("--mdr", o.mdr, "Joint MdR, e.g. S0-S0-S0-S0 (default all S0)");
  sample->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
  sample->add_option("--bins", o.bins, "Histogram bins")->check(CLI::PositiveNumber);
  sample->add_option("--out", o.out, "Write the summary here instead of stdout");
  sample->add_option("--dump", o.dump, "Write every instance as JSON lines");
  add_metric_flags(sample);

  auto* serve = app.add_subcommand("serve", "Run the HTTP API until interrupted");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port, 0 = any free port")->check(CLI::Range(0, 65535));
  add_metric_flags(serve);

  auto* fixture = app.add_subcommand("fixture", "List built-in fixtures or print one");
  fixture->add_option("name", o.fixture, "Fixture name");

  auto* search = app.add_subcommand("search-intersection",
                                    "Enumerate intersection layouts for case3");
  search->add_option("--min-width", o.bounds.min_width, "Smallest grid width")
      ->check(CLI::PositiveNumber);
  search->add_option("--max-width", o.bounds.max_width, "Largest grid width")
      ->check(CLI::PositiveNumber);
  search->add_option("--min-height", o.bounds.min_height, "Smallest grid height")
      ->check(CLI::PositiveNumber);
  search->add_option("--max-height", o.bounds.max_height, "Largest grid height")
      ->check(CLI::PositiveNumber);
  search->add_option("--max-road", o.bounds.max_road_width, "Widest road in cells")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(o);
    if (*feasible) return cmd_feasible(o);
    if (*reproduce) return cmd_reproduce(o);
    if (*sample) return cmd_sample(o);
    if (*serve) return cmd_serve(o);
    if (*fixture) return cmd_fixture(o);
    if (*search) return cmd_search(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fear::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == fear::ErrorKind::kInvalidParams ? kExitUsage : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
