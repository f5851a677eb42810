#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reconf/checker.hpp"
#include "reconf/oracle.hpp"

using namespace reconf;
using namespace reconf::testing;

namespace {

ftpl_ptr prop(const std::string& text) { return parse_ftpl(text, httpd_defs(), httpd_ops()); }

verdict on_example3(const std::string& text, check_options opt = {}) {
  return check(*prop(text), example3(), httpd(), httpd_ops(), opt);
}

std::vector<std::string> labels_of(const std::vector<trace_step>& t) {
  std::vector<std::string> out;
  for (const auto& s : t) out.push_back(s.op);
  return out;
}

configuration replay(const configuration& c0, const op_table& ops,
                     const std::vector<std::string>& labels) {
  configuration c = c0;
  for (const auto& l : labels) c = apply_op(c, lookup_op(ops, l));
  return c;
}

bool has_warning(const verdict& v, const std::string& code) {
  return std::any_of(v.warnings.begin(), v.warnings.end(),
                     [&](const check_warning& w) { return w.code == code; });
}

// Adds component W of class L with parameter p = value.
named_op add_w(const std::string& name, int value) {
  add_component_op add;
  add.spec = component{"W", "L", {}, {}, {}, {}};
  add.spec.parameters["p"] = parameter{value_type::integer, reconf::value(value)};
  return {name, {add}};
}

op_table alternative_ops() {
  op_table ops = make_op_table();
  ops.emplace("op0", add_w("op0", 1));
  ops.emplace("op1", named_op{"op1", {run_op{}}});
  ops.emplace("op2", add_w("op2", 2));
  return ops;
}

}  // namespace

TEST(Check, ExampleTwoHolds) {
  const auto v = on_example3(slurp(data_path("example2.ftpl")));
  EXPECT_EQ(v.result, outcome::holds);
  EXPECT_TRUE(v.counterexample.empty());
  EXPECT_FALSE(v.violating);
  EXPECT_FALSE(v.has_error_warning());
}

TEST(Check, AlwaysCacheConnectedFails) {
  const auto v = on_example3("always CacheConnected");
  ASSERT_EQ(v.result, outcome::violated);
  EXPECT_EQ(labels_of(v.counterexample), (std::vector<std::string>{"run", "RemoveCacheHandler"}));
  ASSERT_TRUE(v.violating);
  EXPECT_TRUE(config_equal(*v.violating, replay(httpd(), httpd_ops(), labels_of(v.counterexample))));
  EXPECT_FALSE(eval_cp(*httpd_defs().at("CacheConnected"), *v.violating));
  // States along the trace follow the automaton.
  const auto a = example3();
  state_id q = a.initial();
  for (const auto& s : v.counterexample) {
    q = *a.step(q, s.op);
    EXPECT_EQ(s.state, q);
  }
}

TEST(Check, AfterRemoveFailsAtTheEventTarget) {
  const auto v = on_example3("after RemoveCacheHandler normal always CacheConnected");
  ASSERT_EQ(v.result, outcome::violated);
  EXPECT_EQ(labels_of(v.counterexample), (std::vector<std::string>{"run", "RemoveCacheHandler"}));
  EXPECT_TRUE(config_equal(*v.violating, without_cache()));
}

TEST(Check, AlwaysExamples) {
  EXPECT_TRUE(on_example3("always ReceiverPresent").holds());
  EXPECT_TRUE(on_example3("always true").holds());
  EXPECT_TRUE(on_example3("always forall x in components : (component(x))").holds());
}

TEST(Check, AlwaysAcrossTheLoopAfterAddCacheHandler) {
  const auto ops = httpd_ops();
  const auto a = compile(
      "(MemorySizeUp run (AddFileServer DurationValidityUp | DurationValidityUp AddFileServer) "
      "run? DeleteFileServer)+ AddFileServer",
      ops);
  const auto v = check(*prop("always CacheConnected"), a, httpd(), ops);
  EXPECT_TRUE(v.holds());
  EXPECT_FALSE(v.has_error_warning());
}

TEST(Check, BeforeExamples) {
  EXPECT_EQ(on_example3("before AddCacheHandler normal always CacheConnected").result,
            outcome::violated);
  const auto ops = httpd_ops();
  const auto v = check(*prop("before RemoveCacheHandler normal always CacheConnected"),
                       compile("run RemoveCacheHandler", ops), httpd(), ops);
  EXPECT_TRUE(v.holds());
  EXPECT_TRUE(on_example3("before AddCacheHandler normal eventually CacheConnected").holds());
  EXPECT_FALSE(on_example3("before AddFileServer normal eventually SecondServer").holds());
}

TEST(Check, BeforeCounterexampleEndsAtTheEvent) {
  const auto v = on_example3("before AddCacheHandler normal always CacheConnected");
  ASSERT_EQ(v.result, outcome::violated);
  EXPECT_EQ(labels_of(v.counterexample),
            (std::vector<std::string>{"run", "RemoveCacheHandler", "AddCacheHandler"}));
}

TEST(Check, EventuallyExamples) {
  EXPECT_TRUE(on_example3("eventually SecondServer").holds());
  EXPECT_TRUE(on_example3("eventually ReceiverPresent").holds());
  const auto ops = httpd_ops();
  const auto v = check(*prop("eventually SecondServer"), compile("run+", ops), httpd(), ops);
  EXPECT_EQ(v.result, outcome::violated);

  check_options prefix;
  prefix.eventually = eventually_mode::prefix;
  EXPECT_FALSE(on_example3("eventually SecondServer", prefix).holds());
  EXPECT_TRUE(on_example3("eventually ReceiverPresent", prefix).holds());
}

TEST(Check, Vacuity) {
  // MemoryInc is a known operation that labels no transition of the path.
  EXPECT_TRUE(on_example3("after MemoryInc normal always false").holds());
  EXPECT_TRUE(on_example3("after MemoryInc terminates eventually false").holds());
  EXPECT_TRUE(on_example3("before MemoryInc terminates always false").holds());
  EXPECT_TRUE(on_example3("before MemoryInc normal eventually false").holds());
}

TEST(Check, DeadEnd) {
  const auto ops = httpd_ops();
  const auto a = compile("run", ops);
  EXPECT_TRUE(check(*prop("after RemoveCacheHandler normal always false"), a, httpd(), ops).holds());
  EXPECT_TRUE(check(*prop("always CacheConnected"), a, httpd(), ops).holds());
  EXPECT_FALSE(check(*prop("after run terminates always false"), a, httpd(), ops).holds());
}

TEST(Check, NestedAfter) {
  EXPECT_TRUE(on_example3("after RemoveCacheHandler normal after AddCacheHandler normal always "
                          "CacheConnected")
                  .holds());
  EXPECT_FALSE(on_example3("after AddCacheHandler normal after DeleteFileServer normal always "
                           "SecondServer")
                   .holds());
  EXPECT_TRUE(on_example3("after AddCacheHandler normal after AddFileServer normal eventually "
                          "SecondServer")
                  .holds());
}

TEST(Check, RejectsOutsideTheFragment) {
  const auto ops = alternative_ops();
  const auto f = parse_ftpl("always (component(W) or param(X.p) = 0)", {}, ops);
  const auto v = check(*f, compile("(op0 | op1) op2", ops), counter_model(), ops);
  EXPECT_EQ(v.result, outcome::rejected);
  EXPECT_NE(v.reason.find("'and' and 'forall'"), std::string::npos);
  EXPECT_FALSE(v.holds());
  EXPECT_EQ(v.stats.total_bodies(), 0u);
  EXPECT_EQ(on_example3(slurp(data_path("not_flat.ftpl"))).result, outcome::rejected);
}

TEST(Check, UnknownOperationIsAnInputError) {
  const auto ops = identity_ops({"a"});
  const auto a = compile("a", ops);
  EXPECT_THROW(check(*parse_ftpl("always true"), a, counter_model(), make_op_table()), input_error);
}

TEST(Check, PerStateBodyBounds) {
  for (const char* text :
       {"after AddCacheHandler normal always CacheConnected", "always ReceiverPresent",
        "before DeleteFileServer normal always CacheConnected",
        "before AddFileServer terminates eventually SecondServer", "eventually SecondServer",
        "after run terminates after MemorySizeUp normal eventually SecondServer"}) {
    for (auto sharing : {mark_sharing::fresh, mark_sharing::shared}) {
      check_options opt;
      opt.marks = sharing;
      const auto s = on_example3(text, opt).stats;
      EXPECT_LE(s.max_state_bodies[std::size_t(instance_kind::after)], 1u) << text;
      EXPECT_LE(s.max_state_bodies[std::size_t(instance_kind::always)], 1u) << text;
      EXPECT_LE(s.max_state_bodies[std::size_t(instance_kind::before)], 2u) << text;
      EXPECT_LE(s.max_state_bodies[std::size_t(instance_kind::eventually)], 2u) << text;
    }
  }
}

TEST(Check, ChainInvariantOfAfter) {
  check_options opt;
  opt.check_invariants = true;
  for (const char* text : {"after AddCacheHandler normal always CacheConnected",
                           "after run terminates after DeleteFileServer normal always true",
                           "after MemorySizeUp normal eventually SecondServer"}) {
    const auto v = on_example3(text, opt);
    EXPECT_GT(v.stats.invariant_checks, 0u) << text;
    EXPECT_EQ(v.stats.invariant_violations, 0u) << text;
  }
}

TEST(Guard, NonIdempotentCycleIsDetected) {
  const auto ops = httpd_ops();
  const auto a = compile(slurp(data_path("memory_inc.rpx")), ops);
  const auto v = check(*prop("always ReceiverPresent"), a, httpd(), ops);
  EXPECT_TRUE(has_warning(v, cycle_op_not_idempotent));
  EXPECT_TRUE(has_warning(v, non_idempotent_cycle));
  EXPECT_TRUE(v.has_error_warning());
  EXPECT_EQ(v.result, outcome::holds);

  check_options strict;
  strict.strict = true;
  const auto r = check(*prop("always ReceiverPresent"), a, httpd(), ops, strict);
  EXPECT_EQ(r.result, outcome::rejected);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Guard, IdempotentCyclesStayQuiet) {
  check_options strict;
  strict.strict = true;
  for (const char* text : {"always CacheConnected", "after AddCacheHandler normal always CacheConnected",
                           "eventually SecondServer", "before DeleteFileServer normal always true"}) {
    const auto v = on_example3(text, strict);
    EXPECT_TRUE(v.warnings.empty()) << text;
    EXPECT_NE(v.result, outcome::rejected) << text;
  }
}

TEST(Guard, SyntacticWarningNeedsTheOperationOnACycle) {
  const auto ops = httpd_ops();
  const auto v = check(*prop("always true"), compile("MemoryInc run+", ops), httpd(), ops);
  EXPECT_FALSE(has_warning(v, cycle_op_not_idempotent));
  EXPECT_FALSE(has_warning(v, non_idempotent_cycle));
  const auto w = cycle_idempotence_warnings(compile("(MemoryInc | run)+", ops), ops);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_FALSE(w[0].error);
}

// Two launches of the inner `always` reach the same state with different
// configurations. A shared table stops the second launch there.
TEST(MarkSharing, FreshAndSharedDiverge) {
  op_table ops = make_op_table();
  ops.emplace("e", set_p("e", 1));
  ops.emplace("d", add_p("d", 1));
  ops.emplace("c", add_p("c", 1));
  const auto a = compile("e d c | d e c", ops);
  const auto f = parse_ftpl("after e terminates always param(X.p) < 3", {}, ops);

  check_options fresh, shared;
  shared.marks = mark_sharing::shared;
  const auto vf = check(*f, a, counter_model(), ops, fresh);
  const auto vs = check(*f, a, counter_model(), ops, shared);
  oracle_options o;
  o.max_len = 2 * a.num_states();
  EXPECT_EQ(vf.result, outcome::violated);
  EXPECT_EQ(labels_of(vf.counterexample), (std::vector<std::string>{"e", "d", "c"}));
  EXPECT_EQ(vs.result, outcome::holds);
  EXPECT_FALSE(oracle_check(*f, a, ops, counter_model(), o).holds);
  EXPECT_LT(vs.stats.total_bodies(), vf.stats.total_bodies());
}

TEST(MarkSharing, LaterLaunchesReuseTheSharedTable) {
  auto ops = identity_ops({"a", "e"});
  ops.emplace("b", set_p("b", 1));
  // Three ways into the state after e, each launching the inner check there.
  const auto a = compile("(e | a e | a a e) b", ops);
  check_options shared;
  shared.marks = mark_sharing::shared;
  for (const char* text : {"after e terminates before b terminates always true",
                           "after e terminates eventually param(X.p) = 1"}) {
    const auto f = parse_ftpl(text, {}, ops);
    const auto v = check(*f, a, counter_model(), ops, shared);
    EXPECT_EQ(v.result, check(*f, a, counter_model(), ops).result) << text;
    EXPECT_GE(v.stats.launches[static_cast<std::size_t>(f->inner->k == ftpl_formula::kind::before
                                                            ? instance_kind::before
                                                            : instance_kind::eventually)],
              3u);
    EXPECT_LE(v.stats.max_state_bodies[static_cast<std::size_t>(instance_kind::before)], 2u);
    EXPECT_LE(v.stats.max_state_bodies[static_cast<std::size_t>(instance_kind::eventually)], 2u);
  }
}

// Alternatives that reach the same state with different configurations are
// merged by the marks, even with all operations idempotent and the property
// inside the checkable fragment.
TEST(Merging, AlternativesWithDistinctConfigurationsAreMissed) {
  const auto ops = alternative_ops();
  const auto a = compile("(op0 | op1) op2", ops);
  const auto f = parse_ftpl("always forall x in class(L) : (param(x.p) = 1)", {}, ops);
  ASSERT_TRUE(is_ftpl_flat(*f));
  for (const char* name : {"op0", "op1", "op2"})
    ASSERT_EQ(classify_idempotence(lookup_op(ops, name)), idempotence::idempotent);

  const auto v = check(*f, a, counter_model(), ops);
  oracle_options o;
  o.max_len = 2 * a.num_states();
  const auto truth = oracle_check(*f, a, ops, counter_model(), o);
  EXPECT_EQ(v.result, outcome::holds);
  ASSERT_FALSE(truth.holds);
  EXPECT_EQ(truth.counterexample->ops, (std::vector<std::string>{"op1", "op2"}));
}
