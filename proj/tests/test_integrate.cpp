#include <gtest/gtest.h>

#include "apg/error.hpp"
#include "apg/integrate.hpp"
#include "support/fixtures.hpp"

using namespace apg;

TEST(Integrate, PlateMatchFindsOnePair) {
  GraphPtr d1 = apgtest::load_shared("plates1.apg");
  GraphPtr d2 = apgtest::load_shared("plates2.apg");
  Match m = match_by_key(d1, d2);
  ASSERT_EQ(m.apex->elements().size(), 1u);
  EXPECT_EQ(m.apex->elements().begin()->first, Key::pair(Key::atom("p1"), Key::atom("q1")));
  EXPECT_TRUE(check_morphism(m.left).ok());
  EXPECT_TRUE(check_upsilon_natural(m.left));
  EXPECT_TRUE(check_upsilon_natural(m.right));
}

TEST(Integrate, MergeGivesThreePlates) {
  ConstructionResult r = merge_by_key(apgtest::load_shared("plates1.apg"), apgtest::load_shared("plates2.apg"));
  EXPECT_EQ(r.graph->elements().size(), 3u);
  EXPECT_TRUE(validate_graph(*r.graph).ok());
  EXPECT_TRUE(check_sigma_preserving(r.leg("k")));
  EXPECT_TRUE(check_sigma_preserving(r.leg("m")));
}

TEST(Integrate, KeyPathMatchesOnCountryOnly) {
  GraphPtr d1 = apgtest::load_shared("plates1.apg");
  GraphPtr d2 = apgtest::load_shared("plates2.apg");
  Match m = match_by_key(d1, d2, ValuePath{"fst"});
  // US~US and MX~MX
  EXPECT_EQ(m.apex->elements().size(), 2u);
}

TEST(Integrate, RejectsLabelledTypes) {
  GraphPtr b = apgtest::load_shared("edges.apg");
  EXPECT_THROW(match_by_key(b, b), Error);
}

TEST(Integrate, MergeWithItselfIsIdentityUpToIso) {
  GraphPtr d1 = apgtest::load_shared("plates1.apg");
  EXPECT_TRUE(find_isomorphism(merge_by_key(d1, d1).graph, d1));
}
