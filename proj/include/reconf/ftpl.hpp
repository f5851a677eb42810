#pragma once

// Temporal properties over evolution paths.
//
//   prop  := "after" event prop | "before" event trace | trace
//   trace := ("always" | "eventually") cp
//   event := OPNAME ("normal" | "exceptional" | "terminates")

#include <memory>
#include <string>
#include <vector>

#include "reconf/cp_parse.hpp"
#include "reconf/model.hpp"
#include "reconf/ops.hpp"

namespace reconf {

enum class termination { normal, exceptional, terminates };

inline const char* to_string(termination t) {
  switch (t) {
  case termination::normal: return "normal";
  case termination::exceptional: return "exceptional";
  case termination::terminates: return "terminates";
  }
  return "?";
}

struct event {
  std::string op;
  termination term = termination::terminates;
};

/// Whether a transition that produced `after` from `before` matches the
/// event's termination kind.
inline bool term_check(const event& e, const configuration& after, const configuration& before) {
  switch (e.term) {
  case termination::normal: return !config_equal(after, before);
  case termination::exceptional: return config_equal(after, before);
  case termination::terminates: return true;
  }
  return false;
}

struct trace_formula {
  enum class kind { always, eventually };
  kind k = kind::always;
  cp_ptr prop;
};

struct ftpl_formula;
using ftpl_ptr = std::shared_ptr<const ftpl_formula>;

struct ftpl_formula {
  enum class kind { after, before, trace };
  kind k = kind::trace;
  event ev;             // after, before
  ftpl_ptr inner;       // after
  trace_formula trace;  // before, trace
};

namespace ftpl {

inline ftpl_ptr always(cp_ptr p) {
  auto f = std::make_shared<ftpl_formula>();
  f->trace = {trace_formula::kind::always, std::move(p)};
  return f;
}

inline ftpl_ptr eventually(cp_ptr p) {
  auto f = std::make_shared<ftpl_formula>();
  f->trace = {trace_formula::kind::eventually, std::move(p)};
  return f;
}

inline ftpl_ptr after(event e, ftpl_ptr inner) {
  auto f = std::make_shared<ftpl_formula>();
  f->k = ftpl_formula::kind::after;
  f->ev = std::move(e);
  f->inner = std::move(inner);
  return f;
}

inline ftpl_ptr before(event e, trace_formula t) {
  auto f = std::make_shared<ftpl_formula>();
  f->k = ftpl_formula::kind::before;
  f->ev = std::move(e);
  f->trace = std::move(t);
  return f;
}

}  // namespace ftpl

/// All configuration properties embedded in the formula, outermost first.
inline std::vector<cp_ptr> embedded_properties(const ftpl_formula& f) {
  std::vector<cp_ptr> out;
  const ftpl_formula* g = &f;
  while (g->k == ftpl_formula::kind::after) g = g->inner.get();
  out.push_back(g->trace.prop);
  return out;
}

inline bool is_ftpl_flat(const ftpl_formula& f) {
  for (const auto& p : embedded_properties(f))
    if (!is_cp_flat(*p)) return false;
  return true;
}

inline std::string to_string(const trace_formula& t) {
  return std::string(t.k == trace_formula::kind::always ? "always " : "eventually ") +
         to_string(*t.prop);
}

inline std::string to_string(const ftpl_formula& f) {
  switch (f.k) {
  case ftpl_formula::kind::after:
    return "after " + f.ev.op + " " + to_string(f.ev.term) + " " + to_string(*f.inner);
  case ftpl_formula::kind::before:
    return "before " + f.ev.op + " " + to_string(f.ev.term) + " " + to_string(f.trace);
  case ftpl_formula::kind::trace:
    return to_string(f.trace);
  }
  return {};
}

namespace detail {

class ftpl_parser {
public:
  ftpl_parser(token_stream& ts, const cp_definitions& defs, const op_table* ops)
      : ts_(ts), defs_(defs), ops_(ops) {}

  ftpl_ptr parse_prop() {
    if (ts_.accept_word("after")) {
      event e = parse_event();
      return ftpl::after(std::move(e), parse_prop());
    }
    if (ts_.accept_word("before")) {
      event e = parse_event();
      return ftpl::before(std::move(e), parse_trace());
    }
    auto f = std::make_shared<ftpl_formula>();
    f->trace = parse_trace();
    return f;
  }

private:
  event parse_event() {
    const token& op = ts_.expect_identifier("an operation name");
    if (is_cp_keyword(op.text)) ts_.fail_at(op, "'" + op.text + "' is a keyword");
    if (ops_ && !ops_->contains(op.text)) ts_.fail_at(op, "unknown operation '" + op.text + "'");
    event e{op.text, termination::terminates};
    if (ts_.accept_word("normal")) e.term = termination::normal;
    else if (ts_.accept_word("exceptional")) e.term = termination::exceptional;
    else if (!ts_.accept_word("terminates"))
      ts_.fail("expected 'normal', 'exceptional' or 'terminates' but found " +
               describe(ts_.peek()));
    return e;
  }

  trace_formula parse_trace() {
    trace_formula t;
    if (ts_.accept_word("always")) t.k = trace_formula::kind::always;
    else if (ts_.accept_word("eventually")) t.k = trace_formula::kind::eventually;
    else ts_.fail("expected 'always', 'eventually', 'after' or 'before' but found " +
                  describe(ts_.peek()));
    t.prop = cp_parser(ts_, defs_).parse_formula();
    return t;
  }

  token_stream& ts_;
  const cp_definitions& defs_;
  const op_table* ops_;
};

}  // namespace detail

inline ftpl_ptr parse_ftpl(const std::string& text, const cp_definitions& defs = {},
                           const op_table* ops = nullptr) {
  token_stream ts(tokenize(text));
  if (ts.at_end()) ts.fail("empty temporal property");
  ftpl_ptr f = detail::ftpl_parser(ts, defs, ops).parse_prop();
  if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()) + " after property");
  return f;
}

inline ftpl_ptr parse_ftpl(const std::string& text, const cp_definitions& defs,
                           const op_table& ops) {
  return parse_ftpl(text, defs, &ops);
}

}  // namespace reconf
