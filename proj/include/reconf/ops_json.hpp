#pragma once

// JSON operations format:
//   { "operations": [ { "name": str, "steps": [ {"kind": ..., ...} ] } ] }

#include <string>

#include "reconf/model_json.hpp"
#include "reconf/ops.hpp"

namespace reconf {

namespace detail {

inline primitive_op step_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw parse_error("expected an object " + where(path));
  const std::string kind = require_string(j, "kind", path);

  if (kind == "add-component") {
    require_object(j, path, {"kind", "component", "parent", "bindings", "delegations"});
    add_component_op op;
    op.spec = component_from_json(require_key(j, "component", path), path + "/component");
    if (j.contains("parent")) op.parent = require_string(j, "parent", path);
    if (const json* bs = optional_array(j, "bindings", path))
      for (std::size_t i = 0; i < bs->size(); ++i)
        op.bindings.push_back(binding_from_json((*bs)[i], path + "/bindings/" + std::to_string(i)));
    if (const json* ds = optional_array(j, "delegations", path))
      for (std::size_t i = 0; i < ds->size(); ++i)
        op.delegations.push_back(
            delegation_from_json((*ds)[i], path + "/delegations/" + std::to_string(i)));
    return op;
  }
  if (kind == "remove-component") {
    require_object(j, path, {"kind", "component"});
    return remove_component_op{require_string(j, "component", path)};
  }
  if (kind == "add-binding" || kind == "remove-binding") {
    require_object(j, path, {"kind", "from", "to"});
    binding b{port_ref_from_json(require_key(j, "from", path), path + "/from"),
              port_ref_from_json(require_key(j, "to", path), path + "/to")};
    if (kind == "add-binding") return add_binding_op{b};
    return remove_binding_op{b};
  }
  if (kind == "set-param") {
    require_object(j, path, {"kind", "component", "param", "expr"});
    set_param_op op;
    op.component = require_string(j, "component", path);
    op.param = require_string(j, "param", path);
    const json& e = require_key(j, "expr", path);
    const std::string epath = path + "/expr";
    if (!e.is_object() || e.size() != 1)
      throw parse_error("expr must be {\"const\": v} or {\"add\": int} " + where(epath));
    if (e.contains("const")) {
      const json& v = e["const"];
      if (v.is_number_integer()) op.expr = assign_value{value(v.get<std::int64_t>())};
      else if (v.is_boolean()) op.expr = assign_value{value(v.get<bool>())};
      else if (v.is_string()) op.expr = assign_value{value(v.get<std::string>())};
      else throw parse_error("const must be an int, bool or string " + where(epath));
    } else if (e.contains("add")) {
      if (!e["add"].is_number_integer())
        throw parse_error("add must be an integer " + where(epath));
      op.expr = add_to_value{e["add"].get<std::int64_t>()};
    } else {
      throw parse_error("expr must be {\"const\": v} or {\"add\": int} " + where(epath));
    }
    return op;
  }
  if (kind == "run") {
    require_object(j, path, {"kind"});
    return run_op{};
  }
  throw parse_error("unknown step kind '" + kind + "' " + where(path));
}

inline json value_expr_to_json(const value_expr& e) {
  if (const auto* a = std::get_if<assign_value>(&e)) return json{{"const", value_to_json(a->v)}};
  return json{{"add", std::get<add_to_value>(e).delta}};
}

inline json step_to_json(const primitive_op& op) {
  json j{{"kind", kind_name(op)}};
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, add_component_op>) {
          j["component"] = component_to_json(o.spec);
          if (o.parent) j["parent"] = *o.parent;
          json bs = json::array(), ds = json::array();
          for (const auto& b : o.bindings) bs.push_back(binding_to_json(b));
          for (const auto& d : o.delegations) ds.push_back(delegation_to_json(d));
          j["bindings"] = bs;
          j["delegations"] = ds;
        } else if constexpr (std::is_same_v<T, remove_component_op>) {
          j["component"] = o.name;
        } else if constexpr (std::is_same_v<T, add_binding_op> ||
                             std::is_same_v<T, remove_binding_op>) {
          j["from"] = port_ref_to_json(o.b.from);
          j["to"] = port_ref_to_json(o.b.to);
        } else if constexpr (std::is_same_v<T, set_param_op>) {
          j["component"] = o.component;
          j["param"] = o.param;
          j["expr"] = value_expr_to_json(o.expr);
        }
      },
      op);
  return j;
}

}  // namespace detail

/// Parses an operations file. `run` is always present in the result and
/// may not be redefined; empty (or whitespace-only) text yields just `run`.
inline op_table parse_ops(const std::string& text) {
  using namespace detail;
  op_table table = make_op_table();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return table;

  const json j = parse_json_text(text);
  require_object(j, "", {"operations"});
  const json* ops = optional_array(j, "operations", "");
  if (!ops) return table;
  for (std::size_t i = 0; i < ops->size(); ++i) {
    const std::string path = "/operations/" + std::to_string(i);
    require_object((*ops)[i], path, {"name", "steps"});
    named_op op;
    op.name = require_string((*ops)[i], "name", path);
    if (op.name == run_op_name)
      throw parse_error("'run' is reserved and registered automatically " + where(path));
    const json& steps = require_key((*ops)[i], "steps", path);
    if (!steps.is_array() || steps.empty())
      throw parse_error("'steps' must be a non-empty array " + where(path));
    for (std::size_t k = 0; k < steps.size(); ++k)
      op.steps.push_back(step_from_json(steps[k], path + "/steps/" + std::to_string(k)));
    std::string name = op.name;
    if (!table.emplace(name, std::move(op)).second)
      throw parse_error("duplicate operation name '" + name + "' " + where(path));
  }
  return table;
}

inline std::string serialize_ops(const op_table& table) {
  json ops = json::array();
  for (const auto& [name, op] : table) {
    if (name == run_op_name) continue;
    json steps = json::array();
    for (const auto& s : op.steps) steps.push_back(detail::step_to_json(s));
    ops.push_back(json{{"name", name}, {"steps", steps}});
  }
  return json{{"operations", ops}}.dump(2) + "\n";
}

}  // namespace reconf
