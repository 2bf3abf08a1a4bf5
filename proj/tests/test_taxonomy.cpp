#include <gtest/gtest.h>

#include <cstdlib>

#include "apg/error.hpp"
#include "apg/taxonomy.hpp"
#include "support/fixtures.hpp"

using namespace apg;
using K = Classification::Kind;

namespace {

Classification of(const std::map<Label, Classification>& m, const char* l) {
  return m.at(Key::atom(l));
}

Schema schema_of(std::initializer_list<std::pair<const char*, const char*>> labels) {
  GraphBuilder b;
  for (const auto& [l, t] : labels) b.label(l, t);
  return b.build().schema();
}

}  // namespace

TEST(Taxonomy, EdgesFixture) {
  auto m = classify_graph(apgtest::load_graph("edges.apg").schema());
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(of(m, "User"), K::Vertex);
  EXPECT_EQ(of(m, "Trip"), K::Vertex);
  EXPECT_EQ(of(m, "driver"), K::Edge);
  EXPECT_EQ(of(m, "rider"), K::Edge);
}

TEST(Taxonomy, PropertiesAndAliases) {
  auto m = classify_graph(apgtest::load_graph("driver_status.apg").schema());
  EXPECT_EQ(of(m, "driverStatus"), K::EdgeProperty);
  auto n = classify_graph(apgtest::load_graph("names.apg").schema());
  EXPECT_EQ(of(n, "name"), K::VertexProperty);
  auto a = classify_graph(apgtest::load_graph("aliases.apg").schema());
  for (const auto& [l, c] : a) EXPECT_EQ(c, K::DataTypeAlias) << l.str();
}

TEST(Taxonomy, TripsFixtureStrict) {
  auto m = classify_graph(apgtest::load_graph("trips.apg").schema());
  EXPECT_EQ(of(m, "Trip"), K::Hyperelement);
  EXPECT_EQ(of(m, "UnixTimeSeconds"), K::DataTypeAlias);
  EXPECT_EQ(of(m, "PlaceEvent"), K::Hyperelement);
  EXPECT_EQ(of(m, "Place"), K::Vertex);
}

TEST(Taxonomy, TripsFixtureGeneralized) {
  auto m = classify_graph(apgtest::load_graph("trips.apg").schema(), TaxonomyOptions{false});
  EXPECT_EQ(of(m, "PlaceEvent"), K::VertexProperty);
  EXPECT_EQ(of(m, "Trip"), K::Hyperelement);
}

TEST(Taxonomy, Tags) {
  auto m = classify_graph(apgtest::load_graph("tags.apg").schema());
  for (const char* l : {"Completed", "Updated", "Cancelled"}) {
    EXPECT_EQ(of(m, l), Classification::tag(K::Vertex)) << l;
    EXPECT_EQ(of(m, l).str(), "Tag(Vertex)");
  }
}

TEST(Taxonomy, MixedFixture) {
  Schema s = apgtest::load_graph("properties.apg").schema();
  auto strict = classify_graph(s);
  EXPECT_EQ(of(strict, "confidence"), K::MetaProperty);
  EXPECT_EQ(of(strict, "owner"), K::Hyperelement);
  EXPECT_EQ(of(strict, "Status"), K::DataTypeAlias);
  EXPECT_EQ(of(strict, "driverStatus"), K::Hyperelement);
  auto general = classify_graph(s, TaxonomyOptions{false});
  EXPECT_EQ(of(general, "driverStatus"), K::EdgeProperty);
  EXPECT_EQ(of(general, "owner"), K::Hyperelement);
}

TEST(Taxonomy, HigherOrderEdges) {
  auto m = classify_graph(schema_of({{"V", "1"}, {"e", "V * V"}, {"h", "e * V"}, {"hh", "h * V"}}));
  EXPECT_EQ(of(m, "h"), K::HigherOrderEdge);
  EXPECT_EQ(of(m, "hh"), K::HigherOrderEdge);
}

TEST(Taxonomy, CycleIsHyperelement) {
  auto m = classify_graph(schema_of({{"a", "b"}, {"b", "a"}}));
  EXPECT_EQ(of(m, "a"), K::Hyperelement);
  EXPECT_EQ(of(m, "b"), K::Hyperelement);
}

TEST(Taxonomy, TagOfTagAndUnlabeled) {
  auto m = classify_graph(schema_of({{"V", "1"}, {"t", "V"}, {"tt", "t"}}));
  EXPECT_EQ(of(m, "tt"), Classification::tag(Classification::tag(K::Vertex)));
  EXPECT_EQ(of(m, "tt").str(), "Tag(Tag(Vertex))");
  Schema unl({{Key::atom(""), Type::one()}}, PrimRegistry::standard());
  EXPECT_EQ(classify_label(unl, Key::atom("")), K::Vertex);
}

TEST(Taxonomy, EmptySchemaAndUnknownLabel) {
  EXPECT_TRUE(classify_graph(Schema{}).empty());
  try {
    classify_label(Schema{}, Key::atom("nope"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unknown);
  }
}

TEST(Taxonomy, EnvironmentSwitch) {
  ::setenv("APG_STRICT_TAXONOMY", "0", 1);
  EXPECT_FALSE(TaxonomyOptions::from_environment().strict);
  ::setenv("APG_STRICT_TAXONOMY", "1", 1);
  EXPECT_TRUE(TaxonomyOptions::from_environment().strict);
  ::unsetenv("APG_STRICT_TAXONOMY");
  EXPECT_TRUE(TaxonomyOptions::from_environment().strict);
}
