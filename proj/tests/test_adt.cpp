#include <gtest/gtest.h>

#include "apg/adt.hpp"
#include "apg/error.hpp"

using namespace apg;

namespace {

const PrimRegistry kReg = PrimRegistry::standard();

std::optional<Label> no_elements(const ElementId&) { return std::nullopt; }

LabelOf fixed(std::map<ElementId, Label> m) {
  return [m = std::move(m)](const ElementId& e) -> std::optional<Label> {
    auto it = m.find(e);
    if (it == m.end()) return std::nullopt;
    return it->second;
  };
}

}  // namespace

TEST(CheckValue, AcceptsWellTypedValues) {
  Type t = Type::prod(Type::prim("String"), Type::sum(Type::one(), Type::prim("Nat")));
  EXPECT_FALSE(check_value(Value::pair(Value::text("a"), Value::inl(Value::unit())), t, kReg, no_elements));
  EXPECT_FALSE(check_value(Value::pair(Value::text("a"), Value::inr(Value::nat(3))), t, kReg, no_elements));
}

TEST(CheckValue, NothingInhabitsZero) {
  auto m = check_value(Value::unit(), Type::zero(), kReg, no_elements);
  ASSERT_TRUE(m);
  EXPECT_TRUE(m->path.empty());
}

TEST(CheckValue, MismatchPathPointsAtTheOffendingNode) {
  Type t = Type::prod(Type::prim("String"), Type::sum(Type::one(), Type::prim("Nat")));
  auto m = check_value(Value::pair(Value::text("a"), Value::inr(Value::text("b"))), t, kReg, no_elements);
  ASSERT_TRUE(m);
  EXPECT_EQ(render_path(m->path), ".snd.inr");
  EXPECT_NE(m->message.find("Nat"), std::string::npos);
}

TEST(CheckValue, NatDomainRejectsNegatives) {
  auto m = check_value(Value::nat(-1), Type::prim("Nat"), kReg, no_elements);
  ASSERT_TRUE(m);
  EXPECT_FALSE(check_value(Value::nat(0), Type::prim("Nat"), kReg, no_elements));
}

TEST(CheckValue, ReferencesAreCheckedAgainstLabels) {
  auto lookup = fixed({{Key::atom("u1"), Key::atom("User")}, {Key::atom("t1"), Key::atom("Trip")}});
  Type user = Type::lbl(Key::atom("User"));
  EXPECT_FALSE(check_value(Value::ref(Key::atom("u1")), user, kReg, lookup));
  auto wrong = check_value(Value::ref(Key::atom("t1")), user, kReg, lookup);
  ASSERT_TRUE(wrong);
  EXPECT_NE(wrong->message.find("expected Lbl User, found Trip"), std::string::npos);
  auto missing = check_value(Value::ref(Key::atom("zz")), user, kReg, lookup);
  ASSERT_TRUE(missing);
  EXPECT_NE(missing->message.find("missing element zz"), std::string::npos);
}

TEST(Transport, TypesAndValuesMoveTogether) {
  Label a = Key::atom("A"), b = Key::atom("B");
  Type t = Type::prod(Type::lbl(a), Type::sum(Type::one(), Type::lbl(a)));
  std::map<Label, Type> f{{a, Type::prod(Type::lbl(b), Type::prim("String"))}};
  Type moved = transport_type(f, t);
  EXPECT_EQ(render_type(moved), "(B * String) * (1 + B * String)");

  std::map<ElementId, Value> g{{Key::atom("x"), Value::pair(Value::ref(Key::atom("y")), Value::text("s"))}};
  Value v = Value::pair(Value::ref(Key::atom("x")), Value::inr(Value::ref(Key::atom("x"))));
  Value w = transport_value(g, v, t);
  auto lookup = fixed({{Key::atom("y"), b}});
  EXPECT_FALSE(check_value(w, moved, kReg, lookup));
}

TEST(Transport, UnknownLabelThrows) {
  EXPECT_THROW(transport_type(std::map<Label, Type>{}, Type::lbl(Key::atom("Q"))), Error);
}

TEST(ValueAt, FollowsTakenBranchesOnly) {
  Value v = Value::pair(Value::inl(Value::text("a")), Value::nat(2));
  EXPECT_EQ(value_at(v, {"fst", "inl"}), Value::text("a"));
  EXPECT_FALSE(value_at(v, {"fst", "inr"}));
  EXPECT_EQ(value_at(v, {}), v);
}
