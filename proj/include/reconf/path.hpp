#pragma once

// Multiple reconfiguration paths: regular expressions over operation names.
//
//   alt     := seq ("|" seq)*
//   seq     := postfix postfix*
//   postfix := atom ("?" | "*" | "+")*
//   atom    := NAME | "(" alt ")"

#include <memory>
#include <string>
#include <vector>

#include "reconf/lexer.hpp"
#include "reconf/ops.hpp"

namespace reconf {

struct path_expr;
using path_ptr = std::shared_ptr<const path_expr>;

struct path_expr {
  enum class kind { op, seq, alt, opt, star, plus };
  kind k = kind::op;
  std::string name;  // op
  path_ptr lhs;      // seq, alt; operand of opt/star/plus
  path_ptr rhs;      // seq, alt
};

namespace path {

inline path_ptr op(std::string name) {
  auto p = std::make_shared<path_expr>();
  p->k = path_expr::kind::op;
  p->name = std::move(name);
  return p;
}

inline path_ptr binary(path_expr::kind k, path_ptr a, path_ptr b) {
  auto p = std::make_shared<path_expr>();
  p->k = k;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}

inline path_ptr seq(path_ptr a, path_ptr b) {
  return binary(path_expr::kind::seq, std::move(a), std::move(b));
}
inline path_ptr alt(path_ptr a, path_ptr b) {
  return binary(path_expr::kind::alt, std::move(a), std::move(b));
}

inline path_ptr unary(path_expr::kind k, path_ptr a) {
  auto p = std::make_shared<path_expr>();
  p->k = k;
  p->lhs = std::move(a);
  return p;
}

inline path_ptr opt(path_ptr a) { return unary(path_expr::kind::opt, std::move(a)); }
inline path_ptr star(path_ptr a) { return unary(path_expr::kind::star, std::move(a)); }
inline path_ptr plus(path_ptr a) { return unary(path_expr::kind::plus, std::move(a)); }

}  // namespace path

inline bool structurally_equal(const path_expr& a, const path_expr& b) {
  if (a.k != b.k || a.name != b.name) return false;
  auto same = [](const path_ptr& x, const path_ptr& y) {
    return (!x && !y) || (x && y && structurally_equal(*x, *y));
  };
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

/// Fully parenthesized rendering; parses back to the same tree.
inline std::string to_string(const path_expr& e) {
  using k = path_expr::kind;
  switch (e.k) {
  case k::op: return e.name;
  case k::seq: return "(" + to_string(*e.lhs) + " " + to_string(*e.rhs) + ")";
  case k::alt: return "(" + to_string(*e.lhs) + " | " + to_string(*e.rhs) + ")";
  case k::opt: return "(" + to_string(*e.lhs) + ")?";
  case k::star: return "(" + to_string(*e.lhs) + ")*";
  case k::plus: return "(" + to_string(*e.lhs) + ")+";
  }
  return {};
}

inline void collect_op_names(const path_expr& e, std::vector<std::string>& out) {
  if (e.k == path_expr::kind::op) out.push_back(e.name);
  if (e.lhs) collect_op_names(*e.lhs, out);
  if (e.rhs) collect_op_names(*e.rhs, out);
}

namespace detail {

class path_parser {
public:
  path_parser(token_stream& ts, const op_table* ops) : ts_(ts), ops_(ops) {}

  path_ptr parse_alt() {
    path_ptr e = parse_seq();
    while (ts_.accept_symbol("|")) e = path::alt(e, parse_seq());
    return e;
  }

private:
  bool starts_atom() const {
    const token& t = ts_.peek();
    return t.kind == token_kind::identifier || t.is_symbol("(");
  }

  path_ptr parse_seq() {
    if (!starts_atom())
      ts_.fail("expected an operation name or '(' but found " + describe(ts_.peek()));
    path_ptr e = parse_postfix();
    while (starts_atom()) e = path::seq(e, parse_postfix());
    return e;
  }

  path_ptr parse_postfix() {
    path_ptr e = parse_atom();
    for (;;) {
      if (ts_.accept_symbol("?")) e = path::opt(e);
      else if (ts_.accept_symbol("*")) e = path::star(e);
      else if (ts_.accept_symbol("+")) e = path::plus(e);
      else return e;
    }
  }

  path_ptr parse_atom() {
    if (ts_.accept_symbol("(")) {
      path_ptr e = parse_alt();
      ts_.expect_symbol(")");
      return e;
    }
    const token& t = ts_.expect_identifier("an operation name");
    if (ops_ && !ops_->contains(t.text))
      ts_.fail_at(t, "unknown operation '" + t.text + "'");
    return path::op(t.text);
  }

  token_stream& ts_;
  const op_table* ops_;
};

}  // namespace detail

/// Parses a path expression. When `ops` is given, every operation name must
/// be defined there.
inline path_ptr parse_path(const std::string& text, const op_table* ops = nullptr) {
  token_stream ts(tokenize(text));
  if (ts.at_end()) ts.fail("empty reconfiguration path");
  path_ptr e = detail::path_parser(ts, ops).parse_alt();
  if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()));
  return e;
}

inline path_ptr parse_path(const std::string& text, const op_table& ops) {
  return parse_path(text, &ops);
}

}  // namespace reconf
