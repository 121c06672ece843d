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

// Plain-text rendering shared by the CLI subcommands.

#ifndef FEAR_TOOLS_RENDER_HPP_
#define FEAR_TOOLS_RENDER_HPP_

#include <cstdio>
#include <ostream>
#include <string>

#include "fear/fear.hpp"

namespace fear::tools {

inline std::string format_fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, round_display(v, decimals));
  return buf;
}

inline std::string feasible_line(const FeasibilityReport& r) {
  std::string out;
  for (const Action a : r.feasible_display()) out += a.code() + " ";
  return out + "(" + std::to_string(r.count()) + ")";
}

inline std::string event_line(const CollisionEvent& e) {
  std::string out = std::string(conflict_kind_name(e.kind)) + " at sub-step " +
                    std::to_string(e.sub_step) + ":";
  for (const AgentId id : e.participants) out += " " + std::to_string(id.value);
  return out;
}

// Diagonal entries are bracketed.
inline void render_matrix(std::ostream& out, const FearMatrix& m, int decimals,
                          const std::string& indent = "") {
  const int width = decimals + 5;
  auto pad = [](std::string s, int w) {
    return std::string(s.size() < static_cast<std::size_t>(w) ? w - s.size() : 0, ' ') + s;
  };
  out << indent << "    ";
  for (std::size_t j = 0; j < m.size(); ++j)
    out << pad(std::to_string(j + 1), width + 2) << ' ';
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << indent << pad(std::to_string(i + 1), 3) << ' ';
    for (std::size_t j = 0; j < m.size(); ++j) {
      const std::string v = pad(format_fixed(m(i, j), decimals), width);
      out << (i == j ? "[" + v + "]" : " " + v + " ") << ' ';
    }
    out << '\n';
  }
}

inline void render_evaluation(std::ostream& out, const Evaluation& e, int decimals) {
  out << "FeAR (row = actor, column = affected, [diagonal] = remaining)\n";
  render_matrix(out, e.fear, decimals);
  out << "\nfeasible actions under the chosen joint action\n";
  for (const auto& r : e.actual)
    out << "  " << r.agent.value << ": " << feasible_line(r) << '\n';
  out << "\ncollisions\n";
  if (e.collisions.empty()) out << "  none\n";
  for (const auto& ev : e.collisions) out << "  " << event_line(ev) << '\n';
  out << "\noff-diagonal sum of squares: " << format_number(e.stats.offdiag_sum_squares)
      << '\n';
}

}  // namespace fear::tools

#endif  // FEAR_TOOLS_RENDER_HPP_
