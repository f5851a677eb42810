#pragma once

// Brute-force reference semantics. Every label sequence of bounded length
// accepted by the automaton is replayed from the initial configuration and
// the temporal formula is evaluated on the resulting sequence of
// configurations, clause by clause.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reconf/automaton.hpp"
#include "reconf/ftpl.hpp"
#include "reconf/ops.hpp"

namespace reconf {

class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct evolution_path {
  enum class ending {
    open,       // shorter than the bound and can still be extended
    dead_end,   // last state has no outgoing transition
    lasso,      // last (state, configuration) pair occurred earlier
    truncated,  // reached the length bound
  };

  std::vector<configuration> configs;  // c0 .. cn
  std::vector<std::string> ops;        // n labels
  std::vector<state_id> states;        // n + 1 states
  ending end = ending::open;
  std::optional<std::size_t> loop_start;  // for lasso: latest earlier index with the same pair

  std::size_t length() const { return ops.size(); }
};

inline const char* to_string(evolution_path::ending e) {
  switch (e) {
  case evolution_path::ending::open: return "open";
  case evolution_path::ending::dead_end: return "dead-end";
  case evolution_path::ending::lasso: return "lasso";
  case evolution_path::ending::truncated: return "truncated";
  }
  return "?";
}

inline constexpr std::size_t default_path_cap = 1'000'000;

/// Calls `visit` on every path of length <= max_len from the initial state,
/// in depth-first order with labels in lexicographic order. Throws
/// resource_error when more than `cap` paths would be produced.
inline std::size_t for_each_prefix(const automaton& a, const op_table& ops,
                                   const configuration& c0, std::size_t max_len,
                                   const std::function<void(const evolution_path&)>& visit,
                                   std::size_t cap = default_path_cap) {
  std::vector<const named_op*> op_of;
  op_of.reserve(a.transitions().size());
  for (const auto& t : a.transitions()) op_of.push_back(&lookup_op(ops, t.label));

  evolution_path p;
  p.configs.push_back(c0);
  p.states.push_back(a.initial());
  std::size_t count = 0;

  auto classify = [&] {
    const std::size_t n = p.length();
    p.loop_start.reset();
    for (std::size_t j = n; j-- > 0;)
      if (p.states[j] == p.states[n] && config_equal(p.configs[j], p.configs[n])) {
        p.loop_start = j;
        break;
      }
    if (p.loop_start) p.end = evolution_path::ending::lasso;
    else if (a.outgoing(p.states[n]).empty()) p.end = evolution_path::ending::dead_end;
    else if (n == max_len) p.end = evolution_path::ending::truncated;
    else p.end = evolution_path::ending::open;
  };

  auto rec = [&](auto&& self) -> void {
    if (++count > cap)
      throw resource_error("path enumeration exceeded the cap of " + std::to_string(cap) +
                           " paths");
    classify();
    visit(p);
    if (p.length() == max_len) return;
    const state_id q = p.states.back();
    for (const auto& t : a.outgoing(q)) {
      const auto idx = static_cast<std::size_t>(&t - a.transitions().data());
      p.configs.push_back(apply_op(p.configs.back(), *op_of[idx]));
      p.ops.push_back(t.label);
      p.states.push_back(t.to);
      self(self);
      p.configs.pop_back();
      p.ops.pop_back();
      p.states.pop_back();
    }
  };
  rec(rec);
  return count;
}

inline std::vector<evolution_path> enumerate_prefixes(const automaton& a, const op_table& ops,
                                                      const configuration& c0,
                                                      std::size_t max_len,
                                                      std::size_t cap = default_path_cap) {
  std::vector<evolution_path> out;
  for_each_prefix(a, ops, c0, max_len, [&](const evolution_path& p) { out.push_back(p); }, cap);
  return out;
}

/// Builds a path by replaying `labels` without consulting an automaton.
inline evolution_path make_path(const op_table& ops, const configuration& c0,
                                const std::vector<std::string>& labels) {
  evolution_path p;
  p.configs.push_back(c0);
  p.states.push_back(0);
  for (const auto& l : labels) {
    p.configs.push_back(apply_op(p.configs.back(), lookup_op(ops, l)));
    p.ops.push_back(l);
    p.states.push_back(0);
  }
  return p;
}

namespace detail {

// Positions of the run visible from index `s`. On a finite path that is
// s..n. On a lasso the run continues with the loop forever, so positions
// inside the loop recur and everything from min(s, loop + 1) onwards is
// visible.
struct position_range {
  std::size_t first, last;
};

inline position_range visible_from(const evolution_path& p, std::size_t s, bool infinite) {
  const std::size_t n = p.length();
  if (infinite && p.loop_start) return {std::min(s, *p.loop_start + 1), n};
  return {s, n};
}

// Positions strictly after `s`. A loop position can follow itself.
inline position_range strictly_after(const evolution_path& p, std::size_t s, bool infinite) {
  const std::size_t n = p.length();
  if (infinite && p.loop_start && s > *p.loop_start) return {*p.loop_start + 1, n};
  return {s + 1, n};
}

inline bool event_at(const event& e, const evolution_path& p, std::size_t i) {
  if (i == 0 || i > p.length()) return false;
  if (p.ops[i - 1] != e.op) return false;
  return term_check(e, p.configs[i], p.configs[i - 1]);
}

// Trace property on the positions first..last.
inline bool eval_trace(const trace_formula& t, const evolution_path& p, std::size_t first,
                       std::size_t last) {
  if (t.k == trace_formula::kind::always) {
    for (std::size_t i = first; i <= last; ++i)
      if (!eval_cp(*t.prop, p.configs[i])) return false;
    return true;
  }
  for (std::size_t i = first; i <= last; ++i)
    if (eval_cp(*t.prop, p.configs[i])) return true;
  return false;
}

inline bool eval_from(const ftpl_formula& f, const evolution_path& p, std::size_t s,
                      bool infinite) {
  switch (f.k) {
  case ftpl_formula::kind::trace: {
    auto r = visible_from(p, s, infinite);
    return eval_trace(f.trace, p, r.first, r.last);
  }
  case ftpl_formula::kind::after: {
    auto r = strictly_after(p, s, infinite);
    for (std::size_t i = r.first; i <= r.last; ++i)
      if (event_at(f.ev, p, i) && !eval_from(*f.inner, p, i, infinite)) return false;
    return true;
  }
  case ftpl_formula::kind::before: {
    // The segment before an event is a finite sequence and never wraps.
    for (std::size_t i = s + 1; i <= p.length(); ++i)
      if (event_at(f.ev, p, i) && !eval_trace(f.trace, p, s, i - 1)) return false;
    return true;
  }
  }
  return false;
}

}  // namespace detail

/// Evaluates `f` on the finite sequence of configurations of `p`. With
/// `infinite` set and `p` a lasso, the path is read as the infinite run that
/// repeats its loop forever.
inline bool eval_on_path(const ftpl_formula& f, const evolution_path& p, bool infinite = false) {
  return detail::eval_from(f, p, 0, infinite);
}

enum class eventually_mode { maximal, prefix };

inline const char* to_string(eventually_mode m) {
  return m == eventually_mode::maximal ? "maximal" : "prefix";
}

/// Whether the formula's verdict depends on how runs continue beyond a
/// finite prefix: an `eventually` reached only through `after`.
inline bool depends_on_continuation(const ftpl_formula& f) {
  const ftpl_formula* g = &f;
  while (g->k == ftpl_formula::kind::after) g = g->inner.get();
  return g->k == ftpl_formula::kind::trace && g->trace.k == trace_formula::kind::eventually;
}

struct oracle_options {
  std::size_t max_len = 0;
  eventually_mode eventually = eventually_mode::maximal;
  std::size_t cap = default_path_cap;
};

struct oracle_verdict {
  bool holds = true;
  std::optional<evolution_path> counterexample;
  std::size_t paths_enumerated = 0;
  std::size_t paths_evaluated = 0;
  // Maximal-run mode only: paths cut by the bound whose run is not yet
  // determined. They are not counted against the formula.
  std::size_t inconclusive = 0;
};

/// Conjunction of eval_on_path over every path of length <= max_len. For an
/// `eventually` that depends on how runs continue, only runs whose whole
/// future is known are evaluated: those ending in a dead end and lassos.
inline oracle_verdict oracle_check(const ftpl_formula& f, const automaton& a, const op_table& ops,
                                   const configuration& c0, const oracle_options& opt) {
  oracle_verdict v;
  const bool maximal = opt.eventually == eventually_mode::maximal && depends_on_continuation(f);
  v.paths_enumerated = for_each_prefix(
      a, ops, c0, opt.max_len,
      [&](const evolution_path& p) {
        if (!v.holds) return;
        bool ok = true;
        if (!maximal) {
          ok = eval_on_path(f, p, false);
          ++v.paths_evaluated;
        } else if (p.end == evolution_path::ending::dead_end ||
                   p.end == evolution_path::ending::lasso) {
          ok = eval_on_path(f, p, true);
          ++v.paths_evaluated;
        } else if (p.end == evolution_path::ending::truncated) {
          ++v.inconclusive;
        }
        if (!ok) {
          v.holds = false;
          v.counterexample = p;
        }
      },
      opt.cap);
  return v;
}

}  // namespace reconf
