#include <gtest/gtest.h>

#include "apg/error.hpp"
#include "apg/morphism.hpp"
#include "support/fixtures.hpp"

using namespace apg;

namespace {

std::map<Label, Label> ident_labels(const Graph& g) {
  std::map<Label, Label> m;
  for (const auto& [l, _] : g.schema().labels()) m.emplace(l, l);
  return m;
}

}  // namespace

TEST(Morphism, IdentityIsValidAndNatural) {
  GraphPtr g = apgtest::load_shared("edges.apg");
  Morphism id = Morphism::identity(g);
  EXPECT_TRUE(check_morphism(id).ok());
  EXPECT_TRUE(check_sigma_preserving(id));
  EXPECT_TRUE(check_upsilon_natural(id));
}

TEST(Morphism, CollapsingUsersBreaksNaturalityOfValues) {
  GraphPtr g = apgtest::load_shared("edges.apg");
  std::map<ElementId, ElementId> e;
  for (const auto& [id, _] : g->elements()) e.emplace(id, id);
  e[Key::atom("u2")] = Key::atom("u1");
  Morphism h(g, g, ident_labels(*g), e);
  EXPECT_TRUE(check_morphism(h).ok());
  EXPECT_TRUE(check_sigma_preserving(h));
  // r1 = (t1,u2) would have to map to (t1,u1), but it maps to r1 itself.
  EXPECT_FALSE(check_upsilon_natural(h));
}

TEST(Morphism, LabelNaturalityViolation) {
  GraphPtr g = apgtest::load_shared("edges.apg");
  std::map<ElementId, ElementId> e;
  for (const auto& [id, _] : g->elements()) e.emplace(id, id);
  e[Key::atom("u1")] = Key::atom("t1");
  ValidationReport r = check_morphism(Morphism(g, g, ident_labels(*g), e));
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.to_string().find("u1"), std::string::npos);
}

TEST(Morphism, PartialMapIsReported) {
  GraphPtr g = apgtest::load_shared("vertices.apg");
  Morphism h(g, g, ident_labels(*g), {{Key::atom("u1"), Key::atom("u1")}});
  EXPECT_FALSE(check_morphism(h).ok());
  EXPECT_THROW(h.map_element(Key::atom("t1")), Error);
}

TEST(Morphism, CompositionAndIsomorphism) {
  GraphPtr g = apgtest::load_shared("edges.apg");
  Morphism id = Morphism::identity(g);
  EXPECT_TRUE(compose(id, id).same_maps(id));
  auto iso = find_isomorphism(g, g);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(check_morphism(*iso).ok());
  EXPECT_FALSE(find_isomorphism(g, apgtest::load_shared("vertices.apg")));
}

TEST(Morphism, IsomorphismIgnoresNames) {
  Graph a = GraphBuilder().label("V", "1").label("E", "V * V")
                .element("x", "V", "()").element("y", "V", "()").element("e", "E", "(@x,@y)").build();
  Graph b = GraphBuilder().label("N", "1").label("R", "N * N")
                .element("p", "N", "()").element("q", "N", "()").element("f", "R", "(@q,@p)").build();
  auto iso = find_isomorphism(share(a), share(b));
  ASSERT_TRUE(iso);
  EXPECT_EQ(iso->map_element(Key::atom("x")), Key::atom("q"));
}
