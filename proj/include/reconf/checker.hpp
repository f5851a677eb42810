#pragma once

// Marking-based verification of temporal properties over the automaton of a
// multiple reconfiguration path.
//
// Each checker instance owns a mark table. `after` marks a state `again` on
// entry and answers `true` when it meets such a state again; `always` marks
// `checked` after evaluating the property and stops there on the next visit.
// `before` and `eventually` keep two cells per state: `before` is keyed by
// the accumulated trace value, `eventually` by the traversal number of a
// cycle whose configurations have not yet settled.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reconf/automaton.hpp"
#include "reconf/ftpl.hpp"
#include "reconf/oracle.hpp"
#include "reconf/ops.hpp"

namespace reconf {

enum class mark : std::uint8_t { unchecked, again, checked };

enum class mark_sharing { fresh, shared };

inline const char* to_string(mark_sharing m) {
  return m == mark_sharing::fresh ? "fresh" : "shared";
}

struct check_options {
  mark_sharing marks = mark_sharing::fresh;
  eventually_mode eventually = eventually_mode::maximal;
  bool strict = false;
  bool check_invariants = false;
};

enum class outcome { holds, violated, rejected };

inline const char* to_string(outcome o) {
  switch (o) {
  case outcome::holds: return "true";
  case outcome::violated: return "false";
  case outcome::rejected: return "rejected";
  }
  return "?";
}

struct trace_step {
  std::string op;
  state_id state = 0;  // target of the transition
};

struct check_warning {
  std::string code;
  std::string message;
  bool error = false;
};

inline constexpr const char* non_idempotent_cycle = "NON_IDEMPOTENT_CYCLE";
inline constexpr const char* cycle_op_not_idempotent = "CYCLE_OP_NOT_IDEMPOTENT";

enum class instance_kind : std::uint8_t { after, always, before, eventually };
inline constexpr std::size_t instance_kinds = 4;

inline const char* to_string(instance_kind k) {
  switch (k) {
  case instance_kind::after: return "after";
  case instance_kind::always: return "always";
  case instance_kind::before: return "before";
  case instance_kind::eventually: return "eventually";
  }
  return "?";
}

struct check_stats {
  // Executions of the per-state body, summed over all instances of a kind.
  std::array<std::size_t, instance_kinds> bodies{};
  // Instances launched, per kind.
  std::array<std::size_t, instance_kinds> launches{};
  // Largest number of body executions on a single state within one
  // instance (one mark table), per kind.
  std::array<std::size_t, instance_kinds> max_state_bodies{};
  std::size_t invariant_checks = 0;
  std::size_t invariant_violations = 0;

  std::size_t total_bodies() const {
    std::size_t s = 0;
    for (auto b : bodies) s += b;
    return s;
  }
};

struct verdict {
  outcome result = outcome::holds;
  std::vector<trace_step> counterexample;
  std::optional<configuration> violating;
  std::vector<check_warning> warnings;
  std::string reason;  // why the input was rejected
  check_stats stats;

  bool holds() const { return result == outcome::holds; }
  bool has_error_warning() const {
    return std::any_of(warnings.begin(), warnings.end(),
                       [](const check_warning& w) { return w.error; });
  }
};

/// Whether σ↑i ⊨ f implies σ↑j ⊨ f for all j > i. When it does not, an
/// `after` check has to keep looking for later events past the first one.
inline bool suffix_closed(const ftpl_formula& f) {
  switch (f.k) {
  case ftpl_formula::kind::after: return true;
  case ftpl_formula::kind::before:
  case ftpl_formula::kind::trace: return f.trace.k == trace_formula::kind::always;
  }
  return true;
}

namespace detail {

struct mark_table {
  instance_kind kind = instance_kind::always;
  std::size_t cells_per_state = 1;
  std::vector<mark> marks;
  std::vector<std::optional<configuration>> witness;
  std::vector<bool> on_chain;
  std::vector<std::size_t> entry_depth;  // trace length when the cell was entered
  std::vector<std::uint32_t> bodies;     // per state
  std::vector<state_id> chain;           // after: states on the current recursion

  mark_table(instance_kind k, std::size_t states, std::size_t cells)
      : kind(k), cells_per_state(cells), marks(states * cells, mark::unchecked),
        witness(states * cells), on_chain(states * cells, false),
        entry_depth(states * cells, 0), bodies(states, 0) {}
};

class check_engine {
public:
  check_engine(const automaton& a, const op_table& ops, const check_options& opt)
      : a_(a), opt_(opt) {
    op_of_.reserve(a.transitions().size());
    for (const auto& t : a.transitions()) op_of_.push_back(&lookup_op(ops, t.label));
  }

  verdict run(const ftpl_formula& f, const configuration& c0) {
    const bool ok = launch(f, a_.initial(), c0, /*top=*/true);
    for (auto& [node, table] : shared_) finish(table);
    out_.result = ok ? outcome::holds : outcome::violated;
    if (ok) {
      out_.counterexample.clear();
      out_.violating.reset();
    }
    return std::move(out_);
  }

private:
  // Launches a fresh instance of `f` at (q, c); nested launches reuse a
  // shared table per formula node when marks are shared.
  bool launch(const ftpl_formula& f, state_id q, const configuration& c, bool top = false) {
    switch (f.k) {
    case ftpl_formula::kind::after:
      return with_table(f, instance_kind::after, 1, top,
                        [&](mark_table& t) { return after_rec(t, f, q, c, q); });
    case ftpl_formula::kind::before:
      return with_table(f, instance_kind::before, 2, top, [&](mark_table& t) {
        const bool acc = eval_cp(*f.trace.prop, c);
        // A shared table may already cover this cell from an earlier launch.
        const std::size_t cell = q * 2 + (acc ? 1 : 0);
        if (t.marks[cell] != mark::unchecked) {
          guard(t, cell, c);
          return true;
        }
        return before_rec(t, f, q, c, acc);
      });
    case ftpl_formula::kind::trace:
      break;
    }
    const cp_formula& p = *f.trace.prop;
    if (f.trace.k == trace_formula::kind::always)
      return with_table(f, instance_kind::always, 1, top,
                        [&](mark_table& t) { return always_rec(t, p, q, c); });
    if (opt_.eventually == eventually_mode::prefix) {
      // Over a prefix-closed set of paths the prefix ending here is one of
      // them, so only the current configuration can witness the property.
      const bool r = eval_cp(p, c);
      if (!r) fail(c);
      return r;
    }
    return with_table(f, instance_kind::eventually, 2, top,
                      [&](mark_table& t) { return eventually_next(t, p, q, c); });
  }

  template <class Body>
  bool with_table(const ftpl_formula& f, instance_kind kind, std::size_t cells, bool top,
                  Body&& body) {
    ++out_.stats.launches[static_cast<std::size_t>(kind)];
    if (opt_.marks == mark_sharing::shared && !top) {
      auto it = shared_.find(&f);
      if (it == shared_.end())
        it = shared_.emplace(&f, mark_table(kind, a_.num_states(), cells)).first;
      return body(it->second);
    }
    mark_table t(kind, a_.num_states(), cells);
    const bool r = body(t);
    finish(t);
    return r;
  }

  void finish(const mark_table& t) {
    const auto k = static_cast<std::size_t>(t.kind);
    for (auto b : t.bodies) {
      out_.stats.bodies[k] += b;
      out_.stats.max_state_bodies[k] = std::max<std::size_t>(out_.stats.max_state_bodies[k], b);
    }
  }

  configuration step(std::size_t transition_index, const configuration& c) const {
    return apply_op(c, *op_of_[transition_index]);
  }

  std::size_t index_of(const transition& t) const {
    return static_cast<std::size_t>(&t - a_.transitions().data());
  }

  void enter(mark_table& t, std::size_t cell, const configuration& c) {
    t.witness[cell] = c;
    t.on_chain[cell] = true;
    t.entry_depth[cell] = trace_.size();
    ++t.bodies[cell / t.cells_per_state];
  }

  void fail(const configuration& c) {
    if (failed_) return;
    failed_ = true;
    out_.counterexample = trace_;
    out_.violating = c;
  }

  // Called when a transition reaches a cell that is on the current chain,
  // i.e. it closes a cycle. If the configuration differs from the one
  // recorded at the first visit, the cycle is replayed once more: an
  // idempotent cycle reproduces the configuration it has just produced.
  void guard(const mark_table& t, std::size_t cell, const configuration& c) {
    if (!t.on_chain[cell] || !t.witness[cell] || config_equal(*t.witness[cell], c)) return;
    const state_id target = static_cast<state_id>(cell / t.cells_per_state);
    configuration again = c;
    for (std::size_t i = t.entry_depth[cell]; i < trace_.size(); ++i)
      again = apply_op(again, *op_by_label(trace_[i].op));
    if (config_equal(again, c)) return;
    report_cycle(target, cycle_labels(t.entry_depth[cell]));
  }

  std::string cycle_labels(std::size_t from) const {
    std::string labels;
    for (std::size_t i = from; i < trace_.size(); ++i) {
      if (!labels.empty()) labels += ' ';
      labels += trace_[i].op;
    }
    return labels;
  }

  void report_cycle(state_id target, const std::string& labels) {
    if (!reported_cycles_.insert(target).second) return;
    out_.warnings.push_back(
        {non_idempotent_cycle,
         "cycle through state " + std::to_string(target) + " (" + labels +
             ") does not return to the configuration it produced; verdicts on paths through "
             "it may be unsound",
         true});
  }

  const named_op* op_by_label(const std::string& label) const {
    for (std::size_t i = 0; i < op_of_.size(); ++i)
      if (a_.transitions()[i].label == label) return op_of_[i];
    return nullptr;
  }

  bool after_rec(mark_table& t, const ftpl_formula& f, state_id q, const configuration& c,
                 state_id root) {
    if (t.marks[q] == mark::again) {
      guard(t, q, c);
      return true;
    }
    t.marks[q] = mark::again;
    enter(t, q, c);
    t.chain.push_back(q);
    if (opt_.check_invariants) check_chain(t, root, q);

    bool ok = true;
    for (const auto& tr : a_.outgoing(q)) {
      configuration c0 = step(index_of(tr), c);
      trace_.push_back({tr.label, tr.to});
      bool r;
      if (tr.label == f.ev.op && term_check(f.ev, c0, c)) {
        r = launch(*f.inner, tr.to, c0);
        if (r && !suffix_closed(*f.inner)) r = after_rec(t, f, tr.to, c0, root);
      } else {
        r = after_rec(t, f, tr.to, c0, root);
      }
      trace_.pop_back();
      if (!r) {
        ok = false;
        break;
      }
    }
    t.chain.pop_back();
    t.on_chain[q] = false;
    return ok;
  }

  // Every state q with root <= q < current on the chain carries `again`.
  void check_chain(const mark_table& t, state_id root, state_id current) {
    ++out_.stats.invariant_checks;
    for (state_id s : t.chain) {
      if (s == current) continue;
      const bool in_range = (s == root || a_.less(root, s)) && a_.less(s, current);
      if (in_range && t.marks[s] != mark::again) {
        ++out_.stats.invariant_violations;
        return;
      }
    }
  }

  bool always_rec(mark_table& t, const cp_formula& p, state_id q, const configuration& c) {
    if (!eval_cp(p, c)) {
      fail(c);
      return false;
    }
    if (t.marks[q] == mark::checked) {
      guard(t, q, c);
      return true;
    }
    t.marks[q] = mark::checked;
    enter(t, q, c);
    bool ok = true;
    for (const auto& tr : a_.outgoing(q)) {
      configuration c0 = step(index_of(tr), c);
      trace_.push_back({tr.label, tr.to});
      const bool r = always_rec(t, p, tr.to, c0);
      trace_.pop_back();
      if (!r) {
        ok = false;
        break;
      }
    }
    t.on_chain[q] = false;
    return ok;
  }

  // acc is the trace value over the configurations from the launch point up
  // to and including c.
  bool before_rec(mark_table& t, const ftpl_formula& f, state_id q, const configuration& c,
                  bool acc) {
    const std::size_t cell = q * 2 + (acc ? 1 : 0);
    t.marks[cell] = mark::checked;
    enter(t, cell, c);
    const bool always = f.trace.k == trace_formula::kind::always;
    bool ok = true;
    for (const auto& tr : a_.outgoing(q)) {
      configuration c0 = step(index_of(tr), c);
      trace_.push_back({tr.label, tr.to});
      bool r = true;
      if (!acc && tr.label == f.ev.op && term_check(f.ev, c0, c)) {
        fail(c0);
        r = false;
      } else {
        const bool p0 = eval_cp(*f.trace.prop, c0);
        const bool acc0 = always ? (acc && p0) : (acc || p0);
        const std::size_t next = tr.to * 2 + (acc0 ? 1 : 0);
        if (t.marks[next] == mark::unchecked) r = before_rec(t, f, tr.to, c0, acc0);
        else guard(t, next, c0);
      }
      trace_.pop_back();
      if (!r) {
        ok = false;
        break;
      }
    }
    t.on_chain[cell] = false;
    return ok;
  }

  // True iff every maximal run from (q, c) visits a configuration that
  // satisfies p. Everything on the current chain violates p, so closing a
  // cycle on an unchanged configuration yields a run that never satisfies
  // it. A cycle whose configuration changed gets a second traversal.
  bool eventually_rec(mark_table& t, const cp_formula& p, state_id q, const configuration& c,
                      std::size_t pass) {
    if (eval_cp(p, c)) return true;
    const std::size_t cell = q * 2 + pass;
    t.marks[cell] = mark::again;
    enter(t, cell, c);
    const auto outs = a_.outgoing(q);
    if (outs.empty()) {
      fail(c);
      return false;
    }
    bool ok = true;
    for (const auto& tr : outs) {
      configuration c0 = step(index_of(tr), c);
      trace_.push_back({tr.label, tr.to});
      const bool r = eventually_next(t, p, tr.to, c0);
      trace_.pop_back();
      if (!r) {
        ok = false;
        break;
      }
    }
    t.marks[cell] = mark::checked;
    t.on_chain[cell] = false;
    return ok;
  }

  bool eventually_next(mark_table& t, const cp_formula& p, state_id q, const configuration& c) {
    if (eval_cp(p, c)) return true;
    for (std::size_t pass = 0; pass < 2; ++pass) {
      const std::size_t cell = q * 2 + pass;
      switch (t.marks[cell]) {
      case mark::unchecked:
        return eventually_rec(t, p, q, c, pass);
      case mark::checked:
        return true;
      case mark::again:
        if (config_equal(*t.witness[cell], c)) {
          fail(c);
          return false;
        }
        break;
      }
    }
    // Two traversals of the cycle and the configuration still moves.
    report_cycle(q, cycle_labels(t.entry_depth[q * 2 + 1]));
    fail(c);
    return false;
  }

  const automaton& a_;
  const check_options& opt_;
  std::vector<const named_op*> op_of_;
  std::map<const ftpl_formula*, mark_table> shared_;
  std::vector<trace_step> trace_;
  std::set<state_id> reported_cycles_;
  verdict out_;
  bool failed_ = false;
};

}  // namespace detail

/// Operations on cycles of the automaton that are not syntactically
/// idempotent, one warning per operation name.
inline std::vector<check_warning> cycle_idempotence_warnings(const automaton& a,
                                                             const op_table& ops) {
  std::vector<check_warning> out;
  std::set<std::string> seen;
  const auto cyclic = a.cyclic_transitions();
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    if (!cyclic[i]) continue;
    const std::string& label = a.transitions()[i].label;
    if (!seen.insert(label).second) continue;
    const idempotence k = classify_idempotence(lookup_op(ops, label));
    if (k != idempotence::idempotent)
      out.push_back({cycle_op_not_idempotent,
                     "operation " + label + " lies on a cycle and is classified " +
                         to_string(k),
                     false});
  }
  return out;
}

/// Checks `f` from the initial state of `a` and configuration `c0`.
inline verdict check(const ftpl_formula& f, const automaton& a, const configuration& c0,
                     const op_table& ops, const check_options& opt = {}) {
  for (const auto& label : a.alphabet()) lookup_op(ops, label);

  if (!is_ftpl_flat(f)) {
    verdict v;
    v.result = outcome::rejected;
    for (const auto& p : embedded_properties(f))
      if (!is_cp_flat(*p))
        v.reason = "configuration property '" + to_string(*p) +
                   "' is outside the checkable fragment (only atoms, 'and' and 'forall' "
                   "are allowed)";
    return v;
  }

  verdict v = detail::check_engine(a, ops, opt).run(f, c0);
  auto syntactic = cycle_idempotence_warnings(a, ops);
  v.warnings.insert(v.warnings.begin(), syntactic.begin(), syntactic.end());
  if (opt.strict && v.has_error_warning()) {
    v.result = outcome::rejected;
    v.reason = "a cycle is not idempotent and strict mode is on";
  }
  return v;
}

}  // namespace reconf
