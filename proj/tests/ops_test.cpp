#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reconf/ops.hpp"
#include "reconf/ops_json.hpp"

using namespace reconf;
using namespace reconf::testing;

namespace {

std::int64_t memory_size(const configuration& c) {
  return c.find("CacheHandler")->parameters.at("memorySize").current.as_int();
}

}  // namespace

TEST(Ops, RunIsIdentity) {
  const auto c = httpd();
  EXPECT_TRUE(config_equal(apply_op(c, lookup_op(httpd_ops(), "run")), c));
}

TEST(Ops, RemoveComponentDropsItsBindings) {
  const auto c = without_cache();
  EXPECT_EQ(c.find("CacheHandler"), nullptr);
  EXPECT_EQ(c.bindings.size(), 3u);
  for (const auto& b : c.bindings) {
    EXPECT_NE(b.from.component, "CacheHandler");
    EXPECT_NE(b.to.component, "CacheHandler");
  }
  EXPECT_TRUE(validate_config(c).empty());
}

TEST(Ops, AddCacheHandlerRestoresTheFixture) {
  const auto ops = httpd_ops();
  const auto c = apply_op(without_cache(), lookup_op(ops, "AddCacheHandler"));
  EXPECT_TRUE(config_equal(c, httpd()));
}

TEST(Ops, AddToValueIsNotIdempotent) {
  const auto ops = httpd_ops();
  const auto& inc = lookup_op(ops, "MemoryInc");
  const auto once = apply_op(httpd(), inc);
  const auto twice = apply_op(once, inc);
  EXPECT_EQ(memory_size(once), 150);
  EXPECT_EQ(memory_size(twice), 200);
  EXPECT_FALSE(config_equal(once, twice));
}

TEST(Ops, ConstSetParamIsIdempotent) {
  const auto ops = httpd_ops();
  const auto& up = lookup_op(ops, "MemorySizeUp");
  const auto once = apply_op(httpd(), up);
  EXPECT_EQ(memory_size(once), 200);
  EXPECT_TRUE(config_equal(apply_op(once, up), once));
}

TEST(Ops, InapplicableStepsAreIdentity) {
  const auto c = httpd();
  // Existing name.
  add_component_op dup;
  dup.spec = *c.find("FileServer1");
  EXPECT_TRUE(config_equal(apply_primitive(c, dup), c));
  // Unknown component.
  EXPECT_TRUE(config_equal(apply_primitive(c, remove_component_op{"Nope"}), c));
  // Type mismatch.
  add_binding_op bad{{{"RequestReceiver", "getHandler"}, {"FileServer1", "server"}}};
  EXPECT_TRUE(config_equal(apply_primitive(c, bad), c));
  // Missing binding.
  remove_binding_op gone{{{"RequestReceiver", "getHandler"}, {"FileServer1", "server"}}};
  EXPECT_TRUE(config_equal(apply_primitive(c, gone), c));
  // Wrong value type and unknown parameter.
  EXPECT_TRUE(config_equal(
      apply_primitive(c, set_param_op{"CacheHandler", "memorySize", assign_value{value(true)}}), c));
  EXPECT_TRUE(config_equal(
      apply_primitive(c, set_param_op{"CacheHandler", "colour", assign_value{value(true)}}), c));
  // Parent that does not exist.
  add_component_op orphan;
  orphan.spec = component{"X", "K", {}, {}, {}, {}};
  orphan.parent = "Nope";
  EXPECT_TRUE(config_equal(apply_primitive(c, orphan), c));
}

TEST(Ops, AddComponentUnderParent) {
  configuration c;
  c.components["P"] = component{"P", "K", {}, {{"in", "T"}}, {}, {}};
  add_component_op add;
  add.spec = component{"Q", "K", {}, {{"in", "T"}}, {}, {}};
  add.parent = "P";
  add.delegations.push_back({{"P", "in"}, {"Q", "in"}});
  const auto d = apply_primitive(c, add);
  EXPECT_TRUE(d.find("P")->subcomponents.contains("Q"));
  EXPECT_EQ(d.delegations.size(), 1u);
  EXPECT_TRUE(validate_config(d).empty());
  // Removing the child unlinks it from the parent and drops the delegation.
  const auto e = apply_primitive(d, remove_component_op{"Q"});
  EXPECT_TRUE(config_equal(e, c));
}

TEST(Ops, DiagnosticsNameStepsWithoutEffect) {
  const auto ops = httpd_ops();
  std::vector<std::string> diag;
  apply_op(httpd(), lookup_op(ops, "AddCacheHandler"), &diag);
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_NE(diag[0].find("AddCacheHandler"), std::string::npos);
}

TEST(Idempotence, Classification) {
  const auto ops = httpd_ops();
  for (const char* name : {"AddCacheHandler", "RemoveCacheHandler", "MemorySizeUp",
                           "DurationValidityUp", "AddFileServer", "DeleteFileServer", "run"})
    EXPECT_EQ(classify_idempotence(lookup_op(ops, name)), idempotence::idempotent) << name;
  EXPECT_EQ(classify_idempotence(lookup_op(ops, "MemoryInc")), idempotence::non_idempotent);

  named_op overlap{"swap", {remove_component_op{"A"},
                            add_component_op{component{"A", "K", {}, {}, {}, {}}, {}, {}, {}}}};
  EXPECT_EQ(classify_idempotence(overlap), idempotence::unknown);
}

TEST(OpsJson, ParseAndRoundTrip) {
  const auto ops = httpd_ops();
  EXPECT_EQ(ops.size(), 8u);  // seven defined plus run
  const auto again = parse_ops(serialize_ops(ops));
  ASSERT_EQ(again.size(), ops.size());
  const auto c = httpd();
  for (const auto& [name, op] : ops)
    EXPECT_TRUE(config_equal(apply_op(c, op), apply_op(c, again.at(name)))) << name;
}

TEST(OpsJson, EmptyTextGivesRunOnly) {
  const auto ops = parse_ops("  \n");
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_TRUE(ops.contains("run"));
}

TEST(OpsJson, Errors) {
  EXPECT_THROW(parse_ops(R"({"operations":[{"name":"run","steps":[{"kind":"run"}]}]})"), parse_error);
  EXPECT_THROW(parse_ops(R"({"operations":[{"name":"a","steps":[]}]})"), parse_error);
  EXPECT_THROW(parse_ops(R"({"operations":[{"name":"a","steps":[{"kind":"run"}]},
                                           {"name":"a","steps":[{"kind":"run"}]}]})"),
               parse_error);
  EXPECT_THROW(parse_ops(R"({"operations":[{"name":"a","steps":[{"kind":"teleport"}]}]})"),
               parse_error);
  EXPECT_THROW(parse_ops(R"({"operations":[{"name":"a","steps":[{"kind":"set-param",
               "component":"X","param":"p","expr":{"mul":2}}]}]})"),
               parse_error);
  EXPECT_THROW(lookup_op(make_op_table(), "missing"), input_error);
}
