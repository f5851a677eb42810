#pragma once

// JSON (de)serialization of component models.

#include <string>

#include <json.hpp>

#include "reconf/error.hpp"
#include "reconf/model.hpp"

namespace reconf {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string where(const std::string& path) {
  return path.empty() ? "at top level" : "at " + path;
}

inline void require_object(const json& j, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw parse_error("expected an object " + where(path));
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw parse_error("unexpected key '" + key + "' " + where(path));
  }
}

inline const json& require_key(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end())
    throw parse_error(std::string("missing key '") + key + "' " + where(path));
  return *it;
}

inline std::string require_string(const json& j, const char* key, const std::string& path) {
  const json& v = require_key(j, key, path);
  if (!v.is_string())
    throw parse_error(std::string("key '") + key + "' must be a string " + where(path));
  return v.get<std::string>();
}

inline const json* optional_array(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) return nullptr;
  if (!it->is_array())
    throw parse_error(std::string("key '") + key + "' must be an array " + where(path));
  return &*it;
}

inline value value_from_json(const json& v, value_type declared, const std::string& path) {
  switch (declared) {
  case value_type::integer:
    if (v.is_number_integer()) return value(v.get<std::int64_t>());
    break;
  case value_type::boolean:
    if (v.is_boolean()) return value(v.get<bool>());
    break;
  case value_type::string:
    if (v.is_string()) return value(v.get<std::string>());
    break;
  }
  throw parse_error(std::string("value does not match declared type ") +
                    to_string(declared) + " " + where(path));
}

inline json value_to_json(const value& v) {
  switch (v.type()) {
  case value_type::integer: return v.as_int();
  case value_type::boolean: return v.as_bool();
  case value_type::string: return v.as_string();
  }
  return nullptr;
}

inline port_ref port_ref_from_json(const json& j, const std::string& path) {
  require_object(j, path, {"component", "port"});
  return {require_string(j, "component", path), require_string(j, "port", path)};
}

inline json port_ref_to_json(const port_ref& p) {
  return json{{"component", p.component}, {"port", p.port}};
}

}  // namespace detail

inline component component_from_json(const json& j, const std::string& path) {
  using namespace detail;
  require_object(j, path,
                 {"name", "class", "parameters", "inputs", "outputs", "subcomponents"});
  component c;
  c.name = require_string(j, "name", path);
  c.class_name = require_string(j, "class", path);

  if (const json* params = optional_array(j, "parameters", path)) {
    for (std::size_t i = 0; i < params->size(); ++i) {
      const std::string p = path + "/parameters/" + std::to_string(i);
      const json& pj = (*params)[i];
      require_object(pj, p, {"name", "type", "value"});
      const std::string name = require_string(pj, "name", p);
      const std::string ty = require_string(pj, "type", p);
      auto vt = value_type_from_string(ty);
      if (!vt) throw parse_error("unknown parameter type '" + ty + "' " + where(p));
      value v = value_from_json(require_key(pj, "value", p), *vt, p);
      if (!c.parameters.emplace(name, parameter{*vt, std::move(v)}).second)
        throw parse_error("duplicate parameter '" + name + "' " + where(p));
    }
  }
  auto read_ports = [&](const char* key, std::map<std::string, std::string>& dst) {
    const json* ports = optional_array(j, key, path);
    if (!ports) return;
    for (std::size_t i = 0; i < ports->size(); ++i) {
      const std::string p = path + "/" + key + "/" + std::to_string(i);
      require_object((*ports)[i], p, {"name", "type"});
      const std::string name = require_string((*ports)[i], "name", p);
      if (!dst.emplace(name, require_string((*ports)[i], "type", p)).second)
        throw parse_error("duplicate port '" + name + "' " + where(p));
    }
  };
  read_ports("inputs", c.inputs);
  read_ports("outputs", c.outputs);

  if (const json* subs = optional_array(j, "subcomponents", path)) {
    for (std::size_t i = 0; i < subs->size(); ++i) {
      if (!(*subs)[i].is_string())
        throw parse_error("subcomponent names must be strings " +
                          where(path + "/subcomponents/" + std::to_string(i)));
      c.subcomponents.insert((*subs)[i].get<std::string>());
    }
  }
  return c;
}

inline json component_to_json(const component& c) {
  json params = json::array(), inputs = json::array(), outputs = json::array();
  for (const auto& [name, p] : c.parameters)
    params.push_back(json{{"name", name},
                          {"type", to_string(p.type)},
                          {"value", detail::value_to_json(p.current)}});
  for (const auto& [name, ty] : c.inputs) inputs.push_back(json{{"name", name}, {"type", ty}});
  for (const auto& [name, ty] : c.outputs) outputs.push_back(json{{"name", name}, {"type", ty}});
  json subs = json::array();
  for (const auto& s : c.subcomponents) subs.push_back(s);
  return json{{"name", c.name},       {"class", c.class_name}, {"parameters", params},
              {"inputs", inputs},     {"outputs", outputs},    {"subcomponents", subs}};
}

inline binding binding_from_json(const json& j, const std::string& path) {
  detail::require_object(j, path, {"from", "to"});
  return {detail::port_ref_from_json(detail::require_key(j, "from", path), path + "/from"),
          detail::port_ref_from_json(detail::require_key(j, "to", path), path + "/to")};
}

inline json binding_to_json(const binding& b) {
  return json{{"from", detail::port_ref_to_json(b.from)},
              {"to", detail::port_ref_to_json(b.to)}};
}

inline delegation delegation_from_json(const json& j, const std::string& path) {
  detail::require_object(j, path, {"outer", "inner"});
  return {detail::port_ref_from_json(detail::require_key(j, "outer", path), path + "/outer"),
          detail::port_ref_from_json(detail::require_key(j, "inner", path), path + "/inner")};
}

inline json delegation_to_json(const delegation& d) {
  return json{{"outer", detail::port_ref_to_json(d.outer)},
              {"inner", detail::port_ref_to_json(d.inner)}};
}

/// Parses JSON text into a JSON value, mapping syntax errors to line/column.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0, column = 0;
    detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw parse_error(std::string("invalid JSON: ") + e.what(), line, column);
  }
}

inline configuration config_from_json(const json& j) {
  using namespace detail;
  require_object(j, "", {"components", "bindings", "delegations"});
  const json& comps = require_key(j, "components", "");
  if (!comps.is_array()) throw parse_error("key 'components' must be an array at top level");

  configuration c;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string path = "/components/" + std::to_string(i);
    component comp = component_from_json(comps[i], path);
    std::string name = comp.name;
    if (!c.components.emplace(name, std::move(comp)).second)
      throw parse_error("duplicate component name '" + name + "' " + where(path));
  }
  if (const json* bs = optional_array(j, "bindings", ""))
    for (std::size_t i = 0; i < bs->size(); ++i)
      c.bindings.insert(binding_from_json((*bs)[i], "/bindings/" + std::to_string(i)));
  if (const json* ds = optional_array(j, "delegations", ""))
    for (std::size_t i = 0; i < ds->size(); ++i)
      c.delegations.insert(delegation_from_json((*ds)[i], "/delegations/" + std::to_string(i)));
  return c;
}

inline json config_to_json(const configuration& c) {
  json comps = json::array(), bs = json::array(), ds = json::array();
  for (const auto& [_, comp] : c.components) comps.push_back(component_to_json(comp));
  for (const auto& b : c.bindings) bs.push_back(binding_to_json(b));
  for (const auto& d : c.delegations) ds.push_back(delegation_to_json(d));
  return json{{"components", comps}, {"bindings", bs}, {"delegations", ds}};
}

/// Parses the JSON model format. Structural problems throw parse_error;
/// semantic rules are left to validate_config.
inline configuration parse_config(const std::string& text) {
  return config_from_json(parse_json_text(text));
}

/// Canonical serialization: collections appear in name order.
inline std::string serialize_config(const configuration& c) {
  return config_to_json(c).dump(2) + "\n";
}

}  // namespace reconf
