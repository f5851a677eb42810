#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "reconf/automaton.hpp"
#include "reconf/cp_parse.hpp"
#include "reconf/model_json.hpp"
#include "reconf/ops_json.hpp"
#include "reconf/path.hpp"

namespace reconf::testing {

inline std::string data_path(const std::string& name) {
  return std::string(RECONF_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline configuration httpd() { return parse_config(slurp(data_path("httpd.json"))); }
inline op_table httpd_ops() { return parse_ops(slurp(data_path("httpd_ops.json"))); }
inline cp_definitions httpd_defs() { return parse_cp_definitions(slurp(data_path("httpd.cp"))); }

inline automaton example3() {
  return compile_path(*parse_path(slurp(data_path("example3.rpx")), httpd_ops()));
}

inline configuration without_cache() {
  configuration c = httpd();
  c = apply_op(c, lookup_op(httpd_ops(), "RemoveCacheHandler"));
  return c;
}

inline automaton compile(const std::string& text, const op_table& ops) {
  return compile_path(*parse_path(text, ops));
}

/// Operations that leave every configuration unchanged.
inline op_table identity_ops(std::initializer_list<const char*> names) {
  op_table t = make_op_table();
  for (const char* n : names) t.emplace(n, named_op{n, {run_op{}}});
  return t;
}

/// One component `X` with an integer parameter `p` set to 0.
inline configuration counter_model() {
  configuration c;
  component x{"X", "K", {}, {}, {}, {}};
  x.parameters["p"] = parameter{value_type::integer, value(0)};
  c.components.emplace("X", x);
  return c;
}

inline named_op set_p(const std::string& name, int v) {
  return {name, {set_param_op{"X", "p", assign_value{value(v)}}}};
}

inline named_op add_p(const std::string& name, int delta) {
  return {name, {set_param_op{"X", "p", add_to_value{delta}}}};
}

}  // namespace reconf::testing
