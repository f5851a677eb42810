#pragma once

// Run reports for the command-line tool. The JSON and the text rendering
// are produced from the same structure and carry the same fields.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reconf/checker.hpp"
#include "reconf/model_json.hpp"

namespace reconf {

struct run_report {
  std::string command;
  std::string verdict;  // true | false | rejected | error
  std::string reason;
  std::size_t states = 0, transitions = 0, back_edges = 0;
  std::vector<trace_step> counterexample;
  std::vector<configuration> trace_configs;  // filled when tracing is requested
  std::vector<check_warning> warnings;
  std::optional<check_stats> stats;
  std::optional<std::size_t> oracle_depth;
  std::optional<std::size_t> oracle_paths;
  std::optional<std::size_t> oracle_inconclusive;
  std::optional<double> time_ms;
};

inline int exit_code(const std::string& verdict) {
  if (verdict == "true") return 0;
  if (verdict == "false") return 1;
  if (verdict == "rejected") return 2;
  return 3;
}

inline json report_to_json(const run_report& r) {
  json j;
  j["command"] = r.command;
  j["verdict"] = r.verdict;
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["automaton"] = {{"states", r.states}, {"transitions", r.transitions},
                    {"back_edges", r.back_edges}};
  json cex = json::array();
  for (const auto& s : r.counterexample) cex.push_back({{"op", s.op}, {"state", s.state}});
  j["counterexample"] = cex;
  if (!r.trace_configs.empty()) {
    json t = json::array();
    for (const auto& c : r.trace_configs) t.push_back(config_to_json(c));
    j["trace"] = t;
  }
  json ws = json::array();
  for (const auto& w : r.warnings)
    ws.push_back({{"code", w.code}, {"message", w.message}, {"error", w.error}});
  j["warnings"] = ws;
  if (r.stats) {
    json b, l, m;
    for (std::size_t k = 0; k < instance_kinds; ++k) {
      const char* name = to_string(static_cast<instance_kind>(k));
      b[name] = r.stats->bodies[k];
      l[name] = r.stats->launches[k];
      m[name] = r.stats->max_state_bodies[k];
    }
    j["stats"] = {{"bodies", b}, {"launches", l}, {"max_state_bodies", m}};
  }
  if (r.oracle_depth)
    j["oracle"] = {{"max_depth", *r.oracle_depth},
                   {"paths", r.oracle_paths.value_or(0)},
                   {"inconclusive", r.oracle_inconclusive.value_or(0)}};
  if (r.time_ms) j["time_ms"] = *r.time_ms;
  return j;
}

inline std::string report_to_text(const run_report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  out << "verdict: " << r.verdict << "\n";
  if (!r.reason.empty()) out << "reason: " << r.reason << "\n";
  out << "automaton: " << r.states << " states, " << r.transitions << " transitions, "
      << r.back_edges << " back-edges\n";
  if (!r.counterexample.empty()) {
    out << "counterexample:";
    for (const auto& s : r.counterexample) out << " " << s.op << "->q" << s.state;
    out << "\n";
  }
  for (std::size_t i = 0; i < r.trace_configs.size(); ++i)
    out << "trace[" << i << "]: " << config_to_json(r.trace_configs[i]).dump() << "\n";
  for (const auto& w : r.warnings)
    out << (w.error ? "error-warning " : "warning ") << w.code << ": " << w.message << "\n";
  if (r.stats) {
    out << "stats:";
    for (std::size_t k = 0; k < instance_kinds; ++k)
      out << " " << to_string(static_cast<instance_kind>(k)) << "=" << r.stats->bodies[k] << "/"
          << r.stats->launches[k] << "/" << r.stats->max_state_bodies[k];
    out << " (bodies/launches/max per state)\n";
  }
  if (r.oracle_depth)
    out << "oracle: depth " << *r.oracle_depth << ", " << r.oracle_paths.value_or(0)
        << " paths, " << r.oracle_inconclusive.value_or(0) << " inconclusive\n";
  if (r.time_ms) out << "time_ms: " << *r.time_ms << "\n";
  return out.str();
}

}  // namespace reconf
