#pragma once

// Component models: components with typed parameters and ports, bindings
// between ports, and delegation links from composites to their parts.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace reconf {

enum class value_type { integer, boolean, string };

inline const char* to_string(value_type t) {
  switch (t) {
  case value_type::integer: return "int";
  case value_type::boolean: return "bool";
  case value_type::string: return "string";
  }
  return "?";
}

inline std::optional<value_type> value_type_from_string(const std::string& s) {
  if (s == "int") return value_type::integer;
  if (s == "bool") return value_type::boolean;
  if (s == "string") return value_type::string;
  return std::nullopt;
}

/// A parameter value. The variant index doubles as the type tag.
class value {
public:
  value() : v_(std::int64_t{0}) {}
  value(std::int64_t i) : v_(i) {}
  value(int i) : v_(std::int64_t{i}) {}
  value(bool b) : v_(b) {}
  value(std::string s) : v_(std::move(s)) {}
  value(const char* s) : v_(std::string(s)) {}

  value_type type() const { return static_cast<value_type>(v_.index()); }

  bool is_int() const { return type() == value_type::integer; }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }
  const std::string& as_string() const { return std::get<std::string>(v_); }

  std::string to_string() const {
    switch (type()) {
    case value_type::integer: return std::to_string(as_int());
    case value_type::boolean: return as_bool() ? "true" : "false";
    case value_type::string: return '"' + as_string() + '"';
    }
    return {};
  }

  friend bool operator==(const value&, const value&) = default;
  friend auto operator<=>(const value&, const value&) = default;

private:
  std::variant<std::int64_t, bool, std::string> v_;
};

enum class relation { eq, ne, lt, le, gt, ge };

inline const char* to_string(relation r) {
  switch (r) {
  case relation::eq: return "=";
  case relation::ne: return "!=";
  case relation::lt: return "<";
  case relation::le: return "<=";
  case relation::gt: return ">";
  case relation::ge: return ">=";
  }
  return "?";
}

inline bool is_ordering(relation r) {
  return r != relation::eq && r != relation::ne;
}

/// Compares two values. Values of different types are incomparable, and
/// ordering is only defined on integers; both cases yield nullopt.
inline std::optional<bool> compare(const value& a, relation r, const value& b) {
  if (a.type() != b.type()) return std::nullopt;
  switch (r) {
  case relation::eq: return a == b;
  case relation::ne: return a != b;
  default: break;
  }
  if (!a.is_int()) return std::nullopt;
  const auto x = a.as_int(), y = b.as_int();
  switch (r) {
  case relation::lt: return x < y;
  case relation::le: return x <= y;
  case relation::gt: return x > y;
  case relation::ge: return x >= y;
  default: return std::nullopt;
  }
}

struct port_ref {
  std::string component;
  std::string port;

  std::string to_string() const { return component + "." + port; }
  friend auto operator<=>(const port_ref&, const port_ref&) = default;
};

struct parameter {
  value_type type = value_type::integer;
  value current;

  friend bool operator==(const parameter&, const parameter&) = default;
};

struct component {
  std::string name;
  std::string class_name;
  std::map<std::string, parameter> parameters;
  std::map<std::string, std::string> inputs;   // port -> type name
  std::map<std::string, std::string> outputs;  // port -> type name
  std::set<std::string> subcomponents;

  bool is_composite() const { return !subcomponents.empty(); }

  friend bool operator==(const component&, const component&) = default;
};

/// `from` is an output port, `to` an input port.
struct binding {
  port_ref from;
  port_ref to;

  std::string to_string() const {
    return from.to_string() + "->" + to.to_string();
  }
  friend auto operator<=>(const binding&, const binding&) = default;
};

/// Links a port of a composite to a port of one of its subcomponents.
struct delegation {
  port_ref outer;
  port_ref inner;

  friend auto operator<=>(const delegation&, const delegation&) = default;
};

/// A configuration (component model). All collections are ordered by name,
/// which makes defaulted equality coincide with set equality.
struct configuration {
  std::map<std::string, component> components;
  std::set<binding> bindings;
  std::set<delegation> delegations;

  const component* find(const std::string& name) const {
    auto it = components.find(name);
    return it == components.end() ? nullptr : &it->second;
  }

  friend bool operator==(const configuration&, const configuration&) = default;
};

inline bool config_equal(const configuration& a, const configuration& b) {
  return a == b;
}

enum class port_direction { input, output };

/// Type name of a port, if the port exists with the requested direction.
inline const std::string* port_type(const configuration& c, const port_ref& p,
                                    port_direction dir) {
  const component* comp = c.find(p.component);
  if (!comp) return nullptr;
  const auto& ports = dir == port_direction::input ? comp->inputs : comp->outputs;
  auto it = ports.find(p.port);
  return it == ports.end() ? nullptr : &it->second;
}

inline bool binding_is_valid(const configuration& c, const binding& b) {
  const std::string* out = port_type(c, b.from, port_direction::output);
  const std::string* in = port_type(c, b.to, port_direction::input);
  return out && in && *out == *in;
}

inline bool delegation_is_valid(const configuration& c, const delegation& d) {
  const component* outer = c.find(d.outer.component);
  if (!outer || !outer->subcomponents.contains(d.inner.component)) return false;
  for (auto dir : {port_direction::input, port_direction::output}) {
    const std::string* o = port_type(c, d.outer, dir);
    const std::string* i = port_type(c, d.inner, dir);
    if (o && i && *o == *i) return true;
  }
  return false;
}

namespace detail {

// Returns one cycle of the subcomponent relation, or an empty vector.
inline std::vector<std::string> find_subcomponent_cycle(const configuration& c) {
  enum class color { white, grey, black };
  std::map<std::string, color> colors;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;

  auto visit = [&](auto&& self, const std::string& n) -> bool {
    colors[n] = color::grey;
    stack.push_back(n);
    if (const component* comp = c.find(n)) {
      for (const auto& s : comp->subcomponents) {
        if (!c.find(s)) continue;
        auto col = colors[s];
        if (col == color::grey) {
          auto it = std::find(stack.begin(), stack.end(), s);
          cycle.assign(it, stack.end());
          return true;
        }
        if (col == color::white && self(self, s)) return true;
      }
    }
    stack.pop_back();
    colors[n] = color::black;
    return false;
  };
  for (const auto& [name, comp] : c.components)
    if (colors[name] == color::white && visit(visit, name)) break;
  return cycle;
}

}  // namespace detail

/// Checks every structural rule of a component model. An empty result means
/// the configuration is valid; otherwise each entry names the culprit.
inline std::vector<std::string> validate_config(const configuration& c) {
  std::vector<std::string> out;

  for (const auto& [key, comp] : c.components) {
    if (key != comp.name)
      out.push_back("component key '" + key + "' differs from its name '" +
                    comp.name + "'");
    for (const auto& [pname, p] : comp.parameters) {
      if (comp.inputs.contains(pname) || comp.outputs.contains(pname))
        out.push_back("component " + comp.name + ": name '" + pname +
                      "' used by a parameter and a port");
      if (p.current.type() != p.type)
        out.push_back("component " + comp.name + ": parameter " + pname +
                      " value " + p.current.to_string() +
                      " does not match declared type " + to_string(p.type));
    }
    for (const auto& [port, ty] : comp.inputs)
      if (comp.outputs.contains(port))
        out.push_back("component " + comp.name + ": port '" + port +
                      "' is both an input and an output");
    if (comp.is_composite() && !comp.parameters.empty())
      out.push_back("component " + comp.name +
                    ": composite component cannot have parameters");
    for (const auto& s : comp.subcomponents)
      if (!c.find(s))
        out.push_back("component " + comp.name + ": unknown subcomponent " + s);
  }

  if (auto cycle = detail::find_subcomponent_cycle(c); !cycle.empty()) {
    std::string msg = "subcomponent cycle ";
    for (std::size_t i = 0; i < cycle.size(); ++i)
      msg += (i ? "," : "") + cycle[i];
    out.push_back(msg);
  }

  for (const auto& b : c.bindings) {
    const std::string* out_ty = port_type(c, b.from, port_direction::output);
    const std::string* in_ty = port_type(c, b.to, port_direction::input);
    if (!out_ty)
      out.push_back("binding " + b.to_string() + ": " + b.from.to_string() +
                    " is not an output port");
    if (!in_ty)
      out.push_back("binding " + b.to_string() + ": " + b.to.to_string() +
                    " is not an input port");
    if (out_ty && in_ty && *out_ty != *in_ty)
      out.push_back("binding type mismatch " + b.to_string() + " (" + *out_ty +
                    " vs " + *in_ty + ")");
  }

  for (const auto& d : c.delegations)
    if (!delegation_is_valid(c, d))
      out.push_back("delegation " + d.outer.to_string() + "=>" +
                    d.inner.to_string() +
                    ": must link a composite port to a same-type, "
                    "same-direction port of one of its subcomponents");
  return out;
}

}  // namespace reconf
