// reconfcheck: verify temporal properties of reconfiguration paths.
//
//   reconfcheck verify  --model M --ops O --path P (--property F | --formula T) [--defs D]
//   reconfcheck oracle  ... [--max-depth N]
//   reconfcheck compile --path P [--ops O] [--emit-dot FILE]
//
// Exit codes: 0 true, 1 false, 2 rejected, 3 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reconf/automaton.hpp"
#include "reconf/checker.hpp"
#include "reconf/cp_parse.hpp"
#include "reconf/dot.hpp"
#include "reconf/ftpl.hpp"
#include "reconf/model_json.hpp"
#include "reconf/oracle.hpp"
#include "reconf/ops_json.hpp"
#include "reconf/path.hpp"
#include "reconf/report.hpp"

namespace {

using namespace reconf;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Prefixes parse errors with the file they came from.
template <class F>
auto load(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const parse_error& e) {
    throw parse_error(path + ":" + e.what());
  }
}

struct common_args {
  std::string model, ops, path, property, formula, defs, dot;
  std::string marks = "fresh", eventually = "maximal";
  bool strict = false, as_json = false, trace = false, no_timing = false;
  std::size_t max_depth = 0;
  bool max_depth_set = false;
};

struct inputs {
  configuration c0;
  op_table ops;
  automaton a;
  ftpl_ptr formula;
};

automaton compile_file(const common_args& args, const op_table& ops, bool check_names) {
  path_ptr e = load(args.path, [&](const std::string& t) {
    return parse_path(t, check_names ? &ops : nullptr);
  });
  automaton a = compile_path(*e);
  if (!args.dot.empty()) {
    std::ofstream out(args.dot, std::ios::binary);
    if (!out) throw input_error("cannot write file '" + args.dot + "'");
    out << emit_dot(a);
  }
  return a;
}

inputs load_inputs(const common_args& args) {
  inputs in;
  in.c0 = load(args.model, [](const std::string& t) { return parse_config(t); });
  if (auto problems = validate_config(in.c0); !problems.empty())
    throw input_error("invalid model '" + args.model + "': " + problems.front());
  in.ops = load(args.ops, [](const std::string& t) { return parse_ops(t); });
  cp_definitions defs;
  if (!args.defs.empty())
    defs = load(args.defs, [](const std::string& t) { return parse_cp_definitions(t); });
  in.a = compile_file(args, in.ops, true);
  if (args.property.empty() == args.formula.empty())
    throw input_error("give exactly one of --property and --formula");
  if (!args.property.empty())
    in.formula = load(args.property, [&](const std::string& t) { return parse_ftpl(t, defs, in.ops); });
  else
    in.formula = parse_ftpl(args.formula, defs, in.ops);
  return in;
}

check_options options_from(const common_args& args) {
  check_options opt;
  opt.marks = args.marks == "shared" ? mark_sharing::shared : mark_sharing::fresh;
  opt.eventually = args.eventually == "prefix" ? eventually_mode::prefix : eventually_mode::maximal;
  opt.strict = args.strict;
  return opt;
}

void describe_automaton(run_report& r, const automaton& a) {
  r.states = a.num_states();
  r.transitions = a.transitions().size();
  r.back_edges = a.back_edge_count();
}

std::vector<configuration> replay(const configuration& c0, const op_table& ops,
                                  const std::vector<std::string>& labels) {
  std::vector<configuration> out{c0};
  for (const auto& l : labels) out.push_back(apply_op(out.back(), lookup_op(ops, l)));
  return out;
}

run_report do_verify(const common_args& args) {
  inputs in = load_inputs(args);
  run_report r;
  r.command = "verify";
  describe_automaton(r, in.a);
  const auto start = std::chrono::steady_clock::now();
  verdict v = check(*in.formula, in.a, in.c0, in.ops, options_from(args));
  const auto stop = std::chrono::steady_clock::now();
  r.verdict = to_string(v.result);
  r.reason = v.reason;
  r.counterexample = v.counterexample;
  r.warnings = v.warnings;
  if (v.result != outcome::rejected || v.stats.total_bodies() > 0) r.stats = v.stats;
  if (args.trace && !v.counterexample.empty()) {
    std::vector<std::string> labels;
    for (const auto& s : v.counterexample) labels.push_back(s.op);
    r.trace_configs = replay(in.c0, in.ops, labels);
  }
  if (!args.no_timing) r.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

run_report do_oracle(const common_args& args) {
  inputs in = load_inputs(args);
  run_report r;
  r.command = "oracle";
  describe_automaton(r, in.a);
  oracle_options opt;
  opt.max_len = args.max_depth_set ? args.max_depth : 2 * in.a.num_states();
  opt.eventually = args.eventually == "prefix" ? eventually_mode::prefix : eventually_mode::maximal;
  const auto start = std::chrono::steady_clock::now();
  oracle_verdict v = oracle_check(*in.formula, in.a, in.ops, in.c0, opt);
  const auto stop = std::chrono::steady_clock::now();
  r.verdict = v.holds ? "true" : "false";
  r.oracle_depth = opt.max_len;
  r.oracle_paths = v.paths_enumerated;
  r.oracle_inconclusive = v.inconclusive;
  if (v.counterexample) {
    const auto& p = *v.counterexample;
    for (std::size_t i = 0; i < p.ops.size(); ++i) r.counterexample.push_back({p.ops[i], p.states[i + 1]});
    if (args.trace) r.trace_configs = p.configs;
  }
  if (!args.no_timing) r.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

run_report do_compile(const common_args& args) {
  op_table ops = make_op_table();
  if (!args.ops.empty()) ops = load(args.ops, [](const std::string& t) { return parse_ops(t); });
  automaton a = compile_file(args, ops, !args.ops.empty());
  run_report r;
  r.command = "compile";
  r.verdict = "true";
  describe_automaton(r, a);
  return r;
}

void emit(const run_report& r, bool as_json) {
  if (as_json) std::cout << report_to_json(r).dump(2) << "\n";
  else std::cout << report_to_text(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify temporal properties of multiple reconfiguration paths"};
  app.require_subcommand(1);
  common_args args;

  auto add_check_flags = [&](CLI::App* sub) {
    sub->add_option("--model", args.model, "component model (JSON)")->required();
    sub->add_option("--ops", args.ops, "reconfiguration operations (JSON)")->required();
    sub->add_option("--path", args.path, "multiple reconfiguration path (.rpx)")->required();
    sub->add_option("--property", args.property, "temporal property file (.ftpl)");
    sub->add_option("--formula", args.formula, "temporal property given inline");
    sub->add_option("--defs", args.defs, "configuration property definitions");
    sub->add_option("--eventually", args.eventually, "eventually semantics")
        ->check(CLI::IsMember({"maximal", "prefix"}));
    sub->add_option("--emit-dot", args.dot, "write the automaton as GraphViz");
    sub->add_flag("--json", args.as_json, "machine-readable report");
    sub->add_flag("--trace", args.trace, "include the configurations along the counterexample");
    sub->add_flag("--no-timing", args.no_timing, "omit timing from the report");
  };

  CLI::App* verify = app.add_subcommand("verify", "check a property with the marking algorithms");
  add_check_flags(verify);
  verify->add_flag("--strict", args.strict, "reject when a cycle is not idempotent");
  verify->add_option("--marks", args.marks, "mark tables per launch or shared")
      ->check(CLI::IsMember({"fresh", "shared"}));

  CLI::App* oracle = app.add_subcommand("oracle", "check a property by bounded path enumeration");
  add_check_flags(oracle);
  oracle->add_option("--max-depth", args.max_depth, "path length bound (default 2 x states)")
      ->each([&](const std::string&) { args.max_depth_set = true; });

  CLI::App* compile = app.add_subcommand("compile", "compile a path and print automaton size");
  compile->add_option("--path", args.path, "multiple reconfiguration path (.rpx)")->required();
  compile->add_option("--ops", args.ops, "operations; names in the path are checked against it");
  compile->add_option("--emit-dot", args.dot, "write the automaton as GraphViz");
  compile->add_flag("--json", args.as_json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  run_report report;
  try {
    if (*verify) report = do_verify(args);
    else if (*oracle) report = do_oracle(args);
    else report = do_compile(args);
  } catch (const std::exception& e) {
    report = run_report{};
    report.command = verify->parsed() ? "verify" : oracle->parsed() ? "oracle" : "compile";
    report.verdict = "error";
    report.reason = e.what();
    std::cerr << "error: " << e.what() << "\n";
  }
  emit(report, args.as_json);
  return exit_code(report.verdict);
}
