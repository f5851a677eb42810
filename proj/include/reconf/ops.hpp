#pragma once

// Primitive reconfiguration operations, the `run` evolution operation, and
// named compositions of them. Every operation is total: when it cannot be
// performed it returns its input unchanged.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/model.hpp"

namespace reconf {

struct assign_value {
  value v;
  friend bool operator==(const assign_value&, const assign_value&) = default;
};

/// Only applies to int-typed parameters.
struct add_to_value {
  std::int64_t delta = 0;
  friend bool operator==(const add_to_value&, const add_to_value&) = default;
};

using value_expr = std::variant<assign_value, add_to_value>;

struct add_component_op {
  component spec;
  std::optional<std::string> parent;
  std::vector<binding> bindings;
  std::vector<delegation> delegations;
  friend bool operator==(const add_component_op&, const add_component_op&) = default;
};

struct remove_component_op {
  std::string name;
  friend bool operator==(const remove_component_op&, const remove_component_op&) = default;
};

struct add_binding_op {
  binding b;
  friend bool operator==(const add_binding_op&, const add_binding_op&) = default;
};

struct remove_binding_op {
  binding b;
  friend bool operator==(const remove_binding_op&, const remove_binding_op&) = default;
};

struct set_param_op {
  std::string component;
  std::string param;
  value_expr expr;
  friend bool operator==(const set_param_op&, const set_param_op&) = default;
};

struct run_op {
  friend bool operator==(const run_op&, const run_op&) = default;
};

using primitive_op = std::variant<add_component_op, remove_component_op, add_binding_op,
                                  remove_binding_op, set_param_op, run_op>;

inline const char* kind_name(const primitive_op& op) {
  constexpr const char* names[] = {"add-component",  "remove-component", "add-binding",
                                   "remove-binding", "set-param",        "run"};
  return names[op.index()];
}

struct named_op {
  std::string name;
  std::vector<primitive_op> steps;
};

inline constexpr const char* run_op_name = "run";

using op_table = std::map<std::string, named_op>;

inline op_table make_op_table() {
  op_table t;
  t.emplace(run_op_name, named_op{run_op_name, {run_op{}}});
  return t;
}

inline const named_op& lookup_op(const op_table& table, const std::string& name) {
  auto it = table.find(name);
  if (it == table.end()) throw input_error("unknown operation '" + name + "'");
  return it->second;
}

namespace detail {

inline bool apply_in_place(configuration& c, const add_component_op& op) {
  if (c.find(op.spec.name)) return false;
  configuration next = c;
  next.components.emplace(op.spec.name, op.spec);
  if (op.parent) {
    auto it = next.components.find(*op.parent);
    if (it == next.components.end()) return false;
    it->second.subcomponents.insert(op.spec.name);
  }
  if (!validate_config(next).empty()) return false;
  for (const auto& b : op.bindings)
    if (binding_is_valid(next, b)) next.bindings.insert(b);
  for (const auto& d : op.delegations)
    if (delegation_is_valid(next, d)) next.delegations.insert(d);
  c = std::move(next);
  return true;
}

inline bool apply_in_place(configuration& c, const remove_component_op& op) {
  if (!c.components.erase(op.name)) return false;
  std::erase_if(c.bindings, [&](const binding& b) {
    return b.from.component == op.name || b.to.component == op.name;
  });
  std::erase_if(c.delegations, [&](const delegation& d) {
    return d.outer.component == op.name || d.inner.component == op.name;
  });
  for (auto& [_, comp] : c.components) comp.subcomponents.erase(op.name);
  return true;
}

inline bool apply_in_place(configuration& c, const add_binding_op& op) {
  if (!binding_is_valid(c, op.b)) return false;
  return c.bindings.insert(op.b).second;
}

inline bool apply_in_place(configuration& c, const remove_binding_op& op) {
  return c.bindings.erase(op.b) > 0;
}

inline bool apply_in_place(configuration& c, const set_param_op& op) {
  auto comp = c.components.find(op.component);
  if (comp == c.components.end()) return false;
  auto param = comp->second.parameters.find(op.param);
  if (param == comp->second.parameters.end()) return false;
  parameter& p = param->second;
  value next;
  if (const auto* a = std::get_if<assign_value>(&op.expr)) {
    if (a->v.type() != p.type) return false;
    next = a->v;
  } else {
    if (p.type != value_type::integer) return false;
    next = value(p.current.as_int() + std::get<add_to_value>(op.expr).delta);
  }
  if (next == p.current) return false;
  p.current = std::move(next);
  return true;
}

inline bool apply_in_place(configuration&, const run_op&) { return false; }

}  // namespace detail

/// Applies one primitive in place; returns whether the configuration changed.
inline bool apply_primitive_in_place(configuration& c, const primitive_op& op) {
  return std::visit([&](const auto& o) { return detail::apply_in_place(c, o); }, op);
}

inline configuration apply_primitive(const configuration& c, const primitive_op& op) {
  configuration next = c;
  apply_primitive_in_place(next, op);
  return next;
}

/// Left fold of the operation's steps. When `diagnostics` is given, steps
/// that left the configuration unchanged are reported there.
inline configuration apply_op(const configuration& c, const named_op& op,
                              std::vector<std::string>* diagnostics = nullptr) {
  configuration next = c;
  for (std::size_t i = 0; i < op.steps.size(); ++i) {
    bool changed = apply_primitive_in_place(next, op.steps[i]);
    if (diagnostics && !changed && !std::holds_alternative<run_op>(op.steps[i]))
      diagnostics->push_back("operation " + op.name + ": step " + std::to_string(i + 1) +
                             " (" + kind_name(op.steps[i]) + ") had no effect");
  }
  return next;
}

enum class idempotence { idempotent, non_idempotent, unknown };

inline const char* to_string(idempotence i) {
  switch (i) {
  case idempotence::idempotent: return "idempotent";
  case idempotence::non_idempotent: return "non-idempotent";
  case idempotence::unknown: return "unknown";
  }
  return "?";
}

namespace detail {

// Elements of the model a step reads or writes. Two steps with disjoint
// footprints commute.
inline std::set<std::string> footprint(const primitive_op& op) {
  std::set<std::string> fp;
  auto comp = [&](const std::string& n) { fp.insert("component:" + n); };
  auto bind = [&](const binding& b) {
    fp.insert("binding:" + b.to_string());
    comp(b.from.component);
    comp(b.to.component);
  };
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, add_component_op>) {
          comp(o.spec.name);
          if (o.parent) comp(*o.parent);
          for (const auto& s : o.spec.subcomponents) comp(s);
          for (const auto& b : o.bindings) bind(b);
          for (const auto& d : o.delegations) {
            comp(d.outer.component);
            comp(d.inner.component);
          }
        } else if constexpr (std::is_same_v<T, remove_component_op>) {
          comp(o.name);
        } else if constexpr (std::is_same_v<T, add_binding_op> ||
                             std::is_same_v<T, remove_binding_op>) {
          bind(o.b);
        } else if constexpr (std::is_same_v<T, set_param_op>) {
          comp(o.component);
          fp.insert("param:" + o.component + "." + o.param);
        }
      },
      op);
  return fp;
}

}  // namespace detail

/// Syntactic idempotence verdict. Every primitive except an additive
/// parameter update is idempotent on its own; a composition is reported
/// idempotent only when its steps touch pairwise-disjoint model elements.
inline idempotence classify_idempotence(const named_op& op) {
  for (const auto& s : op.steps)
    if (const auto* sp = std::get_if<set_param_op>(&s);
        sp && std::holds_alternative<add_to_value>(sp->expr))
      return idempotence::non_idempotent;

  std::set<std::string> seen;
  for (const auto& s : op.steps) {
    for (const auto& element : detail::footprint(s))
      if (!seen.insert(element).second) return idempotence::unknown;
  }
  return idempotence::idempotent;
}

}  // namespace reconf
