#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reconf/automaton.hpp"
#include "reconf/dot.hpp"
#include "reconf/path.hpp"

using namespace reconf;
using namespace reconf::testing;

namespace {

std::vector<std::string> words(std::initializer_list<const char*> w) { return {w.begin(), w.end()}; }

}  // namespace

TEST(PathParse, Precedence) {
  EXPECT_EQ(to_string(*parse_path("a b | c")), "((a b) | c)");
  EXPECT_EQ(to_string(*parse_path("a | b c")), "(a | (b c))");
  EXPECT_EQ(to_string(*parse_path("a b+")), "(a (b)+)");
  EXPECT_EQ(to_string(*parse_path("(a b)* c?")), "(((a b))* (c)?)");
  EXPECT_EQ(to_string(*parse_path("a b c")), "((a b) c)");
  EXPECT_EQ(to_string(*parse_path("run")), "run");
}

TEST(PathParse, ExampleThreeText) {
  const auto e = parse_path(slurp(data_path("example3.rpx")), httpd_ops());
  using namespace path;
  auto loop = plus(seq(seq(seq(seq(op("MemorySizeUp"), op("run")),
                               alt(seq(op("AddFileServer"), op("DurationValidityUp")),
                                   seq(op("DurationValidityUp"), op("AddFileServer")))),
                           opt(op("run"))),
                       op("DeleteFileServer")));
  auto expected = seq(seq(seq(seq(op("run"), op("RemoveCacheHandler")), op("AddCacheHandler")), loop),
                      op("AddFileServer"));
  EXPECT_TRUE(structurally_equal(*e, *expected)) << to_string(*e);
}

TEST(PathParse, PrintParsesBack) {
  const auto e = parse_path(slurp(data_path("example3.rpx")));
  EXPECT_TRUE(structurally_equal(*parse_path(to_string(*e)), *e));
}

TEST(PathParse, Errors) {
  EXPECT_THROW(parse_path(""), parse_error);
  EXPECT_THROW(parse_path("a |"), parse_error);
  EXPECT_THROW(parse_path("(a b"), parse_error);
  EXPECT_THROW(parse_path("a )"), parse_error);
  EXPECT_THROW(parse_path("+ a"), parse_error);
  try {
    parse_path("run\n  Missing", httpd_ops());
    FAIL() << "expected an unknown-operation error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("Missing"), std::string::npos);
  }
}

TEST(Compile, SingleOperation) {
  const auto a = compile_path(*parse_path("run"));
  EXPECT_EQ(a.num_states(), 2u);
  EXPECT_EQ(a.transitions().size(), 1u);
  EXPECT_EQ(a.back_edge_count(), 0u);
}

TEST(Compile, Sequence) {
  const auto a = compile_path(*parse_path("a b"));
  EXPECT_EQ(a.num_states(), 3u);
  EXPECT_TRUE(a.accepts(words({"a", "b"})));
  EXPECT_TRUE(a.accepts(words({"a"})));
  EXPECT_TRUE(a.accepts(words({})));
  EXPECT_FALSE(a.accepts(words({"b"})));
}

TEST(Compile, PlusOnItsOwnIsMinimal) {
  // All states accept, so the prefixes of a+ are those of a* and one state suffices.
  const auto a = compile_path(*parse_path("a+"));
  ASSERT_EQ(a.num_states(), 1u);
  EXPECT_EQ(a.step(0, "a"), std::optional<state_id>(0));
  EXPECT_EQ(a.back_edge_count(), 1u);
  EXPECT_FALSE(a.less(0, 0));
  for (int n = 0; n <= 6; ++n) EXPECT_TRUE(a.accepts(std::vector<std::string>(n, "a")));
}

TEST(Compile, PlusHasSelfLoopBackEdge) {
  const auto a = compile_path(*parse_path("b a+"));
  ASSERT_EQ(a.num_states(), 2u);
  ASSERT_EQ(a.transitions().size(), 2u);
  EXPECT_EQ(a.step(0, "b"), std::optional<state_id>(1));
  EXPECT_EQ(a.step(1, "a"), std::optional<state_id>(1));
  EXPECT_EQ(a.back_edge_count(), 1u);
  EXPECT_TRUE(a.less(0, 1));
  EXPECT_FALSE(a.less(1, 1));
  EXPECT_FALSE(a.less(0, 0));
  for (int n = 0; n <= 6; ++n) {
    std::vector<std::string> w{"b"};
    w.insert(w.end(), n, "a");
    EXPECT_TRUE(a.accepts(w));
  }
  EXPECT_FALSE(a.accepts(words({"a"})));
  const auto c = a.cyclic_transitions();
  EXPECT_EQ(std::count(c.begin(), c.end(), true), 1);
}

TEST(Compile, StarAndOptionalCollapse) {
  // Every prefix of a* is accepted at the single state.
  EXPECT_EQ(compile_path(*parse_path("a*")).num_states(), 1u);
  EXPECT_EQ(compile_path(*parse_path("a?")).num_states(), 2u);
  EXPECT_EQ(compile_path(*parse_path("a | a b")).num_states(), 3u);
}

TEST(Compile, ExampleThreeShape) {
  const auto a = example3();
  EXPECT_EQ(a.num_states(), 12u);
  EXPECT_EQ(a.transitions().size(), 14u);
  EXPECT_EQ(a.back_edge_count(), 1u);
  const auto w = words({"run", "RemoveCacheHandler", "AddCacheHandler", "MemorySizeUp", "run",
                        "AddFileServer", "DurationValidityUp", "DeleteFileServer", "MemorySizeUp",
                        "run", "DurationValidityUp", "AddFileServer", "run", "DeleteFileServer",
                        "AddFileServer"});
  EXPECT_TRUE(a.accepts(w));
  EXPECT_FALSE(a.accepts(words({"run", "RemoveCacheHandler", "AddCacheHandler", "AddFileServer"})));
}

TEST(Compile, DeterministicAcrossRuns) {
  const std::string text = slurp(data_path("example3.rpx"));
  EXPECT_EQ(emit_dot(compile_path(*parse_path(text))), emit_dot(compile_path(*parse_path(text))));
}

TEST(Automaton, FromTransitionsChecksShape) {
  EXPECT_THROW(automaton::from_transitions(2, {{0, "a", 1, false}, {0, "a", 0, false}}), input_error);
  EXPECT_THROW(automaton::from_transitions(3, {{0, "a", 1, false}}), input_error);
  EXPECT_THROW(automaton::from_transitions(1, {{0, "a", 4, false}}), input_error);
  const auto a = automaton::from_transitions(3, {{0, "a", 1, false}, {1, "b", 2, false}, {2, "c", 0, false}});
  EXPECT_EQ(a.back_edge_count(), 1u);
  EXPECT_TRUE(a.less(0, 2));
  EXPECT_FALSE(a.less(2, 0));
}

TEST(Dot, SingleOperation) {
  const std::string dot = emit_dot(compile_path(*parse_path("run")));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("q0 -> q1 [label=\"run\"]"), std::string::npos);
  EXPECT_EQ(dot.find("dashed"), std::string::npos);
}

TEST(Dot, BackEdgesAreDashed) {
  const std::string dot = emit_dot(compile_path(*parse_path("b a+")));
  EXPECT_NE(dot.find("q1 -> q1 [label=\"a\", style=dashed]"), std::string::npos);
}
