#pragma once

// Parser for configuration properties and for `Name := cp` definition files.
//
//   cp   := term ("and" term)* | term ("or" term)*
//   term := "component" "(" ref ")"
//         | "binding" "(" ref "." NAME "," ref "." NAME ")"
//         | "param" "(" ref "." NAME ")" REL literal
//         | ("forall" | "exists") VAR "in" ("components" | "class" "(" NAME ")") ":" "(" cp ")"
//         | "not" term | "true" | "false" | "(" cp ")" | DEFINITION-NAME
//
// A `ref` names a bound variable if one is in scope, otherwise a component.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "reconf/cp.hpp"
#include "reconf/lexer.hpp"

namespace reconf {

using cp_definitions = std::map<std::string, cp_ptr>;

inline bool is_cp_keyword(const std::string& w) {
  static const std::set<std::string> words = {
      "and",   "or",     "not",        "forall", "exists", "in",     "components", "class",
      "component", "binding", "param", "true",   "false",  "after",  "before",     "always",
      "eventually", "normal", "exceptional", "terminates"};
  return words.contains(w);
}

class cp_parser {
public:
  cp_parser(token_stream& ts, const cp_definitions& defs) : ts_(ts), defs_(defs) {}

  cp_ptr parse_formula() {
    cp_ptr first = parse_term();
    const bool is_and = ts_.peek().is_word("and");
    const bool is_or = ts_.peek().is_word("or");
    if (!is_and && !is_or) return first;

    std::vector<cp_ptr> ops{first};
    const char* connective = is_and ? "and" : "or";
    const char* other = is_and ? "or" : "and";
    while (ts_.accept_word(connective)) ops.push_back(parse_term());
    if (ts_.peek().is_word(other))
      ts_.fail("mixing 'and' and 'or' requires parentheses");
    return cp::nary(is_and ? cp_formula::kind::conjunction : cp_formula::kind::disjunction,
                    std::move(ops));
  }

private:
  cp_ptr parse_term() {
    const token& t = ts_.peek();
    if (ts_.accept_symbol("(")) {
      cp_ptr inner = parse_formula();
      ts_.expect_symbol(")");
      return inner;
    }
    if (t.kind != token_kind::identifier)
      ts_.fail("expected a configuration property but found " + describe(t));

    if (ts_.accept_word("true")) return cp::constant(true);
    if (ts_.accept_word("false")) return cp::constant(false);
    if (ts_.accept_word("not")) return cp::negate(parse_term());
    if (ts_.accept_word("component")) {
      ts_.expect_symbol("(");
      cp_ref r = parse_ref();
      ts_.expect_symbol(")");
      return cp::component_present(std::move(r));
    }
    if (ts_.accept_word("binding")) {
      ts_.expect_symbol("(");
      cp_ref a = parse_ref();
      ts_.expect_symbol(".");
      std::string pa = ts_.expect_identifier("a port name").text;
      ts_.expect_symbol(",");
      cp_ref b = parse_ref();
      ts_.expect_symbol(".");
      std::string pb = ts_.expect_identifier("a port name").text;
      ts_.expect_symbol(")");
      return cp::binding_present(std::move(a), std::move(pa), std::move(b), std::move(pb));
    }
    if (ts_.accept_word("param")) {
      ts_.expect_symbol("(");
      cp_ref target = parse_ref();
      ts_.expect_symbol(".");
      std::string param = ts_.expect_identifier("a parameter name").text;
      ts_.expect_symbol(")");
      const token& rel_tok = ts_.peek();
      relation rel = parse_relation();
      value lit = parse_literal();
      if (is_ordering(rel) && !lit.is_int())
        ts_.fail_at(rel_tok, std::string("relation '") + to_string(rel) +
                                 "' needs an integer literal");
      return cp::param_cmp(std::move(target), std::move(param), rel, std::move(lit));
    }
    if (t.is_word("forall") || t.is_word("exists")) {
      const bool universal = t.is_word("forall");
      ts_.next();
      const token& var_tok = ts_.expect_identifier("a variable name");
      if (is_cp_keyword(var_tok.text))
        ts_.fail_at(var_tok, "'" + var_tok.text + "' is a keyword");
      if (std::find(scope_.begin(), scope_.end(), var_tok.text) != scope_.end())
        ts_.fail_at(var_tok, "variable '" + var_tok.text + "' shadows an enclosing variable");
      std::string var = var_tok.text;
      if (!ts_.accept_word("in")) ts_.fail("expected 'in' but found " + describe(ts_.peek()));
      std::string class_filter;
      if (ts_.accept_word("class")) {
        ts_.expect_symbol("(");
        class_filter = ts_.expect_identifier("a class name").text;
        ts_.expect_symbol(")");
      } else if (!ts_.accept_word("components")) {
        ts_.fail("expected 'components' or 'class(...)' but found " + describe(ts_.peek()));
      }
      ts_.expect_symbol(":");
      ts_.expect_symbol("(");
      scope_.push_back(var);
      cp_ptr body = parse_formula();
      scope_.pop_back();
      ts_.expect_symbol(")");
      return universal ? cp::forall(var, class_filter, body) : cp::exists(var, class_filter, body);
    }
    if (is_cp_keyword(t.text)) ts_.fail("unexpected keyword '" + t.text + "'");

    auto def = defs_.find(t.text);
    if (def == defs_.end()) ts_.fail("unknown property definition '" + t.text + "'");
    ts_.next();
    return def->second;
  }

  cp_ref parse_ref() {
    const token& t = ts_.expect_identifier("a component or variable name");
    if (is_cp_keyword(t.text)) ts_.fail_at(t, "'" + t.text + "' is a keyword");
    const bool bound = std::find(scope_.begin(), scope_.end(), t.text) != scope_.end();
    return cp_ref{t.text, bound};
  }

  relation parse_relation() {
    static const std::pair<const char*, relation> table[] = {
        {"=", relation::eq}, {"!=", relation::ne}, {"<", relation::lt},
        {"<=", relation::le}, {">", relation::gt}, {">=", relation::ge}};
    for (const auto& [sym, rel] : table)
      if (ts_.accept_symbol(sym)) return rel;
    ts_.fail("expected a relation (=, !=, <, <=, >, >=) but found " + describe(ts_.peek()));
  }

  value parse_literal() {
    const token& t = ts_.peek();
    if (t.kind == token_kind::integer) {
      ts_.next();
      try {
        return value(static_cast<std::int64_t>(std::stoll(t.text)));
      } catch (const std::out_of_range&) {
        ts_.fail_at(t, "integer literal out of range");
      }
    }
    if (t.kind == token_kind::string) {
      ts_.next();
      return value(t.text);
    }
    if (ts_.accept_word("true")) return value(true);
    if (ts_.accept_word("false")) return value(false);
    ts_.fail("expected a literal but found " + describe(t));
  }

  token_stream& ts_;
  const cp_definitions& defs_;
  std::vector<std::string> scope_;
};

inline cp_ptr parse_cp(const std::string& text, const cp_definitions& defs = {}) {
  token_stream ts(tokenize(text));
  cp_ptr f = cp_parser(ts, defs).parse_formula();
  if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()) + " after property");
  return f;
}

/// Parses `Name := cp` lines. Later definitions may use earlier ones.
inline cp_definitions parse_cp_definitions(const std::string& text,
                                           cp_definitions defs = {}) {
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    std::vector<token> toks = tokenize(line);
    for (auto& t : toks) t.line = line_no;
    token_stream ts(std::move(toks));
    if (ts.at_end()) continue;
    const token& name = ts.expect_identifier("a definition name");
    if (is_cp_keyword(name.text)) ts.fail_at(name, "'" + name.text + "' is a keyword");
    if (defs.contains(name.text)) ts.fail_at(name, "duplicate definition '" + name.text + "'");
    std::string def_name = name.text;
    ts.expect_symbol(":=");
    cp_ptr f = cp_parser(ts, defs).parse_formula();
    if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()) + " after property");
    defs.emplace(std::move(def_name), std::move(f));
  }
  return defs;
}

}  // namespace reconf
