#include <gtest/gtest.h>

#include "apg/error.hpp"
#include "apg/graph.hpp"
#include "support/fixtures.hpp"

using namespace apg;

namespace {

Graph edges_with(std::string_view d1_value) {
  return GraphBuilder()
      .label("User", "1")
      .label("Trip", "1")
      .label("driver", "Trip * User")
      .element("u1", "User", "()")
      .element("t1", "Trip", "()")
      .element("d1", "driver", d1_value)
      .build();
}

}  // namespace

TEST(Graph, EdgeFixtureConforms) {
  Graph g = apgtest::load_graph("edges.apg");
  EXPECT_TRUE(validate_graph(g).ok()) << validate_graph(g).to_string();
  EXPECT_EQ(g.elements().size(), 5u);
  EXPECT_EQ(g.label_of(Key::atom("d1")), Key::atom("driver"));
  EXPECT_EQ(g.elements_with_label(Key::atom("User")).size(), 2u);
}

TEST(Graph, WrongReferenceTargetIsLocalized) {
  Graph g = edges_with("(@t1,@t1)");
  ValidationReport r = validate_graph(g);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].subject, "d1");
  EXPECT_EQ(r.findings[0].path, ".snd");
  EXPECT_NE(r.findings[0].message.find("expected Lbl User, found Trip"), std::string::npos);
  EXPECT_NE(r.to_string().find("d1.snd:"), std::string::npos);
}

TEST(Graph, DanglingReferenceIsReported) {
  ValidationReport r = validate_graph(edges_with("(@t1,@nobody)"));
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.to_string().find("nobody"), std::string::npos);
}

TEST(Graph, UnknownElementLabel) {
  Schema s({{Key::atom("A"), Type::one()}}, PrimRegistry::standard());
  Graph g(s, {{Key::atom("e"), Element{Key::atom("B"), Value::unit()}}});
  ValidationReport r = validate_graph(g);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].subject, "e");
  EXPECT_EQ(r.findings[0].path, "");
}

TEST(Graph, SchemaWithUndeclaredPrimitive) {
  PrimRegistry reg = PrimRegistry::empty();
  Schema s({{Key::atom("A"), Type::prim("String")}}, reg);
  EXPECT_FALSE(validate_schema(s).ok());
}

TEST(Graph, EmptyGraphIsValid) {
  EXPECT_TRUE(validate_graph(Graph{}).ok());
}

TEST(Graph, BuilderRejectsBadTypeText) {
  EXPECT_THROW(GraphBuilder().label("A", "1 + ").build(), Error);
}

TEST(Constraints, UniqueProperty) {
  Graph g = GraphBuilder()
                .label("User", "1")
                .label("name", "User * String")
                .element("u1", "User", "()")
                .element("n1", "name", "(@u1,String \"a\")")
                .element("n2", "name", "(@u1,String \"a\")")
                .element("n3", "name", "(@u1,String \"b\")")
                .build();
  auto pairs = check_unique_property(g, Key::atom("name"));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], std::make_pair(Key::atom("n1"), Key::atom("n2")));
}

TEST(Constraints, PrimaryKey) {
  Graph g = apgtest::load_graph("names.apg");
  auto pairs = check_primary_key(g, Key::atom("name"));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], std::make_pair(Key::atom("n1"), Key::atom("n2")));
  EXPECT_THROW(check_primary_key(g, Key::atom("User")), Error);
}
