#pragma once

// Deterministic automata for multiple reconfiguration paths. Every state is
// accepting, so the recognized language is the set of all prefixes of the
// words denoted by the path expression.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/path.hpp"

namespace reconf {

using state_id = std::uint32_t;

struct transition {
  state_id from = 0;
  std::string label;
  state_id to = 0;
  bool back_edge = false;
};

class automaton {
public:
  automaton() = default;

  /// Builds an automaton from explicit transitions. States are 0..n-1.
  /// Throws input_error unless the transitions are deterministic and every
  /// state is reachable from `initial`.
  static automaton from_transitions(std::size_t num_states, std::vector<transition> ts,
                                    state_id initial = 0) {
    automaton a;
    a.num_states_ = num_states;
    a.initial_ = initial;
    if (num_states == 0 || initial >= num_states)
      throw input_error("automaton needs at least one state and a valid initial state");
    for (const auto& t : ts)
      if (t.from >= num_states || t.to >= num_states)
        throw input_error("transition refers to an unknown state");
    std::sort(ts.begin(), ts.end(), [](const transition& x, const transition& y) {
      return std::tie(x.from, x.label) < std::tie(y.from, y.label);
    });
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (ts[i].from == ts[i - 1].from && ts[i].label == ts[i - 1].label)
        throw input_error("automaton is not deterministic on label '" + ts[i].label + "'");
    a.transitions_ = std::move(ts);
    a.index();
    a.order_states();
    return a;
  }

  std::size_t num_states() const { return num_states_; }
  state_id initial() const { return initial_; }
  const std::vector<transition>& transitions() const { return transitions_; }

  std::span<const transition> outgoing(state_id q) const {
    return {transitions_.data() + offsets_[q], transitions_.data() + offsets_[q + 1]};
  }

  std::optional<state_id> step(state_id q, const std::string& label) const {
    for (const auto& t : outgoing(q))
      if (t.label == label) return t.to;
    return std::nullopt;
  }

  /// Whether `word` labels a path from the initial state.
  bool accepts(std::span<const std::string> word) const {
    state_id q = initial_;
    for (const auto& l : word) {
      auto next = step(q, l);
      if (!next) return false;
      q = *next;
    }
    return true;
  }

  /// The strict order on states: q < q' when q' is reachable from q without
  /// closing a cycle of the depth-first exploration.
  bool less(state_id q, state_id r) const { return less_[q * num_states_ + r]; }

  std::size_t back_edge_count() const {
    return static_cast<std::size_t>(std::count_if(
        transitions_.begin(), transitions_.end(), [](const transition& t) { return t.back_edge; }));
  }

  /// Labels sorted and deduplicated.
  std::vector<std::string> alphabet() const {
    std::set<std::string> s;
    for (const auto& t : transitions_) s.insert(t.label);
    return {s.begin(), s.end()};
  }

  /// Per transition: whether both ends lie in the same strongly connected
  /// component, i.e. the transition is on some cycle.
  std::vector<bool> cyclic_transitions() const;

private:
  void index() {
    offsets_.assign(num_states_ + 1, 0);
    for (const auto& t : transitions_) ++offsets_[t.from + 1];
    for (std::size_t q = 0; q < num_states_; ++q) offsets_[q + 1] += offsets_[q];

    std::vector<bool> seen(num_states_, false);
    std::vector<state_id> work{initial_};
    seen[initial_] = true;
    while (!work.empty()) {
      state_id q = work.back();
      work.pop_back();
      for (const auto& t : outgoing(q))
        if (!seen[t.to]) {
          seen[t.to] = true;
          work.push_back(t.to);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw input_error("automaton has states unreachable from the initial state");
  }

  // Depth-first exploration from the initial state, children in label order.
  // Transitions into a state on the current chain are back-edges; `<` is the
  // transitive closure of all other transitions.
  void order_states() {
    enum class mark : std::uint8_t { fresh, on_chain, done };
    std::vector<mark> marks(num_states_, mark::fresh);
    std::vector<state_id> postorder;
    postorder.reserve(num_states_);

    struct frame {
      state_id q;
      std::size_t next;
    };
    std::vector<frame> stack{{initial_, 0}};
    marks[initial_] = mark::on_chain;
    while (!stack.empty()) {
      frame& f = stack.back();
      const std::size_t end = offsets_[f.q + 1];
      std::size_t i = offsets_[f.q] + f.next;
      if (i == end) {
        marks[f.q] = mark::done;
        postorder.push_back(f.q);
        stack.pop_back();
        continue;
      }
      ++f.next;
      transition& t = transitions_[i];
      if (marks[t.to] == mark::on_chain) {
        t.back_edge = true;
      } else if (marks[t.to] == mark::fresh) {
        marks[t.to] = mark::on_chain;
        stack.push_back({t.to, 0});
      }
    }

    less_.assign(num_states_ * num_states_, false);
    for (state_id q : postorder) {
      for (const auto& t : outgoing(q)) {
        if (t.back_edge) continue;
        less_[q * num_states_ + t.to] = true;
        for (std::size_t r = 0; r < num_states_; ++r)
          if (less_[t.to * num_states_ + r]) less_[q * num_states_ + r] = true;
      }
    }
  }

  std::size_t num_states_ = 0;
  state_id initial_ = 0;
  std::vector<transition> transitions_;
  std::vector<std::size_t> offsets_;
  std::vector<bool> less_;
};

inline std::vector<bool> automaton::cyclic_transitions() const {
  // Tarjan's strongly connected components.
  const std::size_t n = num_states_;
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<state_id> stack;
  int counter = 0, comps = 0;
  auto strongconnect = [&](auto&& self, state_id v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& t : outgoing(v)) {
      if (index[t.to] < 0) {
        self(self, t.to);
        low[v] = std::min(low[v], low[t.to]);
      } else if (on_stack[t.to]) {
        low[v] = std::min(low[v], index[t.to]);
      }
    }
    if (low[v] == index[v]) {
      state_id w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (state_id v = 0; v < n; ++v)
    if (index[v] < 0) strongconnect(strongconnect, v);

  std::vector<bool> out(transitions_.size(), false);
  for (std::size_t i = 0; i < transitions_.size(); ++i)
    out[i] = comp[transitions_[i].from] == comp[transitions_[i].to];
  return out;
}

namespace detail {

// Position (Glushkov) automaton of a path expression. Position 0 is the
// initial position; positions 1..n are the operation occurrences.
struct glushkov {
  std::vector<std::string> labels{""};
  std::vector<std::set<std::size_t>> follow{{}};

  struct info {
    bool nullable = false;
    std::set<std::size_t> first, last;
  };

  info build(const path_expr& e) {
    using k = path_expr::kind;
    switch (e.k) {
    case k::op: {
      std::size_t p = labels.size();
      labels.push_back(e.name);
      follow.emplace_back();
      return {false, {p}, {p}};
    }
    case k::seq: {
      info a = build(*e.lhs), b = build(*e.rhs);
      for (auto x : a.last) follow[x].insert(b.first.begin(), b.first.end());
      info r{a.nullable && b.nullable, a.first, b.last};
      if (a.nullable) r.first.insert(b.first.begin(), b.first.end());
      if (b.nullable) r.last.insert(a.last.begin(), a.last.end());
      return r;
    }
    case k::alt: {
      info a = build(*e.lhs), b = build(*e.rhs);
      a.nullable = a.nullable || b.nullable;
      a.first.insert(b.first.begin(), b.first.end());
      a.last.insert(b.last.begin(), b.last.end());
      return a;
    }
    case k::opt: {
      info a = build(*e.lhs);
      a.nullable = true;
      return a;
    }
    case k::star:
    case k::plus: {
      info a = build(*e.lhs);
      for (auto x : a.last) follow[x].insert(a.first.begin(), a.first.end());
      if (e.k == k::star) a.nullable = true;
      return a;
    }
    }
    return {};
  }
};

}  // namespace detail

/// Compiles a path expression into the minimal deterministic automaton of
/// its prefix language (all states accepting), numbered breadth-first from
/// the initial state with labels visited in lexicographic order.
inline automaton compile_path(const path_expr& e) {
  detail::glushkov g;
  const auto top = g.build(e);
  g.follow[0] = top.first;

  // Subset construction. Every position lies on some word of the language,
  // so every subset state is a prefix of some word; no trimming is needed.
  using subset = std::vector<std::size_t>;
  std::map<subset, state_id> ids;
  std::vector<subset> subsets{{0}};
  ids[{0}] = 0;
  std::vector<transition> dfa;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::map<std::string, std::set<std::size_t>> moves;
    for (auto p : subsets[i])
      for (auto q : g.follow[p]) moves[g.labels[q]].insert(q);
    for (auto& [label, targets] : moves) {
      subset s(targets.begin(), targets.end());
      auto [it, inserted] = ids.emplace(s, static_cast<state_id>(subsets.size()));
      if (inserted) subsets.push_back(s);
      dfa.push_back({static_cast<state_id>(i), label, it->second, false});
    }
  }

  // Moore partition refinement, starting from a single block since every
  // state accepts. A missing transition goes to the implicit rejecting sink.
  const std::size_t n = subsets.size();
  std::vector<std::vector<std::pair<std::string, state_id>>> out(n);
  for (const auto& t : dfa) out[t.from].emplace_back(t.label, t.to);
  std::vector<std::size_t> block(n, 0);
  std::size_t num_blocks = 1;
  for (;;) {
    std::map<std::pair<std::size_t, std::vector<std::pair<std::string, std::size_t>>>, std::size_t>
        sig_ids;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::pair<std::string, std::size_t>> sig;
      for (const auto& [l, to] : out[q]) sig.emplace_back(l, block[to]);
      auto [it, _] = sig_ids.emplace(std::make_pair(block[q], std::move(sig)), sig_ids.size());
      next[q] = it->second;
    }
    const std::size_t count = sig_ids.size();
    block = std::move(next);
    if (count == num_blocks) break;
    num_blocks = count;
  }

  // Breadth-first renumbering of the quotient.
  std::vector<std::optional<state_id>> number(num_blocks);
  std::vector<std::size_t> representative;
  std::queue<std::size_t> work;
  number[block[0]] = 0;
  representative.push_back(0);
  work.push(0);
  std::vector<transition> ts;
  while (!work.empty()) {
    std::size_t q = work.front();
    work.pop();
    for (const auto& [l, to] : out[q]) {  // already in label order
      auto& num = number[block[to]];
      if (!num) {
        num = static_cast<state_id>(representative.size());
        representative.push_back(to);
        work.push(to);
      }
      ts.push_back({*number[block[q]], l, *num, false});
    }
  }
  return automaton::from_transitions(representative.size(), std::move(ts), 0);
}

}  // namespace reconf
