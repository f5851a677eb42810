#pragma once

// Configuration properties: first-order formulas over a single component
// model, evaluated on concrete (finite) configurations.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "reconf/model.hpp"

namespace reconf {

/// A reference to a component, either by name or through a bound variable.
struct cp_ref {
  std::string name;
  bool is_variable = false;
};

struct cp_formula;
using cp_ptr = std::shared_ptr<const cp_formula>;

struct cp_formula {
  enum class kind {
    constant,
    component_present,
    binding_present,
    param_cmp,
    conjunction,
    disjunction,
    negation,
    forall,
    exists,
  };

  kind k = kind::constant;

  bool constant = true;                  // constant
  cp_ref target;                         // component_present, param_cmp
  cp_ref from, to;                       // binding_present endpoints
  std::string from_port, to_port;        //
  std::string param;                     // param_cmp
  relation rel = relation::eq;           //
  value literal;                         //
  std::vector<cp_ptr> operands;          // conjunction, disjunction, negation
  std::string variable;                  // forall, exists
  std::string class_filter;              // empty = every component
  cp_ptr body;                           //
};

namespace cp {

inline cp_ptr constant(bool b) {
  auto f = std::make_shared<cp_formula>();
  f->k = cp_formula::kind::constant;
  f->constant = b;
  return f;
}

inline cp_ptr component_present(cp_ref r) {
  auto f = std::make_shared<cp_formula>();
  f->k = cp_formula::kind::component_present;
  f->target = std::move(r);
  return f;
}

inline cp_ptr binding_present(cp_ref from, std::string from_port, cp_ref to, std::string to_port) {
  auto f = std::make_shared<cp_formula>();
  f->k = cp_formula::kind::binding_present;
  f->from = std::move(from);
  f->from_port = std::move(from_port);
  f->to = std::move(to);
  f->to_port = std::move(to_port);
  return f;
}

inline cp_ptr param_cmp(cp_ref target, std::string param, relation rel, value literal) {
  auto f = std::make_shared<cp_formula>();
  f->k = cp_formula::kind::param_cmp;
  f->target = std::move(target);
  f->param = std::move(param);
  f->rel = rel;
  f->literal = std::move(literal);
  return f;
}

inline cp_ptr nary(cp_formula::kind k, std::vector<cp_ptr> ops) {
  auto f = std::make_shared<cp_formula>();
  f->k = k;
  f->operands = std::move(ops);
  return f;
}

inline cp_ptr conj(cp_ptr a, cp_ptr b) {
  return nary(cp_formula::kind::conjunction, {std::move(a), std::move(b)});
}
inline cp_ptr disj(cp_ptr a, cp_ptr b) {
  return nary(cp_formula::kind::disjunction, {std::move(a), std::move(b)});
}
inline cp_ptr negate(cp_ptr a) { return nary(cp_formula::kind::negation, {std::move(a)}); }

inline cp_ptr quantified(cp_formula::kind k, std::string var, std::string class_filter,
                         cp_ptr body) {
  auto f = std::make_shared<cp_formula>();
  f->k = k;
  f->variable = std::move(var);
  f->class_filter = std::move(class_filter);
  f->body = std::move(body);
  return f;
}

inline cp_ptr forall(std::string var, std::string class_filter, cp_ptr body) {
  return quantified(cp_formula::kind::forall, std::move(var), std::move(class_filter),
                    std::move(body));
}
inline cp_ptr exists(std::string var, std::string class_filter, cp_ptr body) {
  return quantified(cp_formula::kind::exists, std::move(var), std::move(class_filter),
                    std::move(body));
}

}  // namespace cp

/// Membership in the conjunctive, universally quantified fragment: only
/// atoms, conjunctions and universal quantifiers.
inline bool is_cp_flat(const cp_formula& f) {
  using k = cp_formula::kind;
  switch (f.k) {
  case k::constant:
  case k::component_present:
  case k::binding_present:
  case k::param_cmp:
    return true;
  case k::conjunction:
    for (const auto& op : f.operands)
      if (!is_cp_flat(*op)) return false;
    return true;
  case k::forall:
    return is_cp_flat(*f.body);
  case k::disjunction:
  case k::negation:
  case k::exists:
    return false;
  }
  return false;
}

/// Variable bindings: variable name -> component name.
using cp_env = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline const std::string* resolve(const cp_ref& r, const cp_env& env) {
  if (!r.is_variable) return &r.name;
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == r.name) return &it->second;
  return nullptr;
}

}  // namespace detail

/// Total evaluation. A comparison on a missing component or parameter, or
/// between incompatible types, is false. A binding atom is satisfied by a
/// binding in either direction between the two ports.
inline bool eval_cp(const cp_formula& f, const configuration& c, cp_env& env) {
  using k = cp_formula::kind;
  switch (f.k) {
  case k::constant:
    return f.constant;
  case k::component_present: {
    const std::string* n = detail::resolve(f.target, env);
    return n && c.find(*n);
  }
  case k::binding_present: {
    const std::string* a = detail::resolve(f.from, env);
    const std::string* b = detail::resolve(f.to, env);
    if (!a || !b) return false;
    port_ref pa{*a, f.from_port}, pb{*b, f.to_port};
    return c.bindings.contains(binding{pa, pb}) || c.bindings.contains(binding{pb, pa});
  }
  case k::param_cmp: {
    const std::string* n = detail::resolve(f.target, env);
    const component* comp = n ? c.find(*n) : nullptr;
    if (!comp) return false;
    auto it = comp->parameters.find(f.param);
    if (it == comp->parameters.end()) return false;
    return compare(it->second.current, f.rel, f.literal).value_or(false);
  }
  case k::conjunction:
    for (const auto& op : f.operands)
      if (!eval_cp(*op, c, env)) return false;
    return true;
  case k::disjunction:
    for (const auto& op : f.operands)
      if (eval_cp(*op, c, env)) return true;
    return false;
  case k::negation:
    return !eval_cp(*f.operands.front(), c, env);
  case k::forall:
  case k::exists: {
    const bool universal = f.k == k::forall;
    for (const auto& [name, comp] : c.components) {
      if (!f.class_filter.empty() && comp.class_name != f.class_filter) continue;
      env.emplace_back(f.variable, name);
      const bool r = eval_cp(*f.body, c, env);
      env.pop_back();
      if (r != universal) return r;
    }
    return universal;
  }
  }
  return false;
}

inline bool eval_cp(const cp_formula& f, const configuration& c) {
  cp_env env;
  return eval_cp(f, c, env);
}

/// Renders a formula in the property language (parseable back).
inline std::string to_string(const cp_formula& f) {
  using k = cp_formula::kind;
  auto paren = [](const cp_formula& g) {
    const bool atomic = g.k != k::conjunction && g.k != k::disjunction;
    return atomic ? to_string(g) : "(" + to_string(g) + ")";
  };
  switch (f.k) {
  case k::constant:
    return f.constant ? "true" : "false";
  case k::component_present:
    return "component(" + f.target.name + ")";
  case k::binding_present:
    return "binding(" + f.from.name + "." + f.from_port + ", " + f.to.name + "." + f.to_port + ")";
  case k::param_cmp:
    return "param(" + f.target.name + "." + f.param + ") " + reconf::to_string(f.rel) + " " +
           f.literal.to_string();
  case k::conjunction:
  case k::disjunction: {
    std::string out;
    for (std::size_t i = 0; i < f.operands.size(); ++i) {
      if (i) out += f.k == k::conjunction ? " and " : " or ";
      out += paren(*f.operands[i]);
    }
    return out;
  }
  case k::negation:
    return "not " + paren(*f.operands.front());
  case k::forall:
  case k::exists:
    return std::string(f.k == k::forall ? "forall " : "exists ") + f.variable + " in " +
           (f.class_filter.empty() ? "components" : "class(" + f.class_filter + ")") + " : (" +
           to_string(*f.body) + ")";
  }
  return {};
}

}  // namespace reconf
