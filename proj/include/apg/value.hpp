#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "apg/key.hpp"

namespace apg {

using Literal = std::variant<std::string, std::int64_t, double, bool>;

// Bit-exact for doubles.
bool literal_equal(const Literal& a, const Literal& b);

// () | inl v | inr v | (v, v) | Prim p lit | Id e
//
// Values carry no injection annotations; their type is only meaningful
// relative to an expected Type (see check_value).
class Value {
 public:
  enum class Kind { Unit, Inl, Inr, Pair, Prim, Ref };

  static Value unit();
  static Value inl(Value v);
  static Value inr(Value v);
  static Value pair(Value a, Value b);
  static Value prim(std::string type, Literal lit);
  static Value ref(ElementId e);

  static Value text(std::string s) { return prim("String", std::move(s)); }
  static Value integer(std::int64_t i) { return prim("Integer", i); }
  static Value nat(std::int64_t i) { return prim("Nat", i); }
  static Value real(double d) { return prim("Double", d); }
  static Value boolean(bool b) { return prim("Boolean", b); }

  Kind kind() const { return node_->kind; }
  // Inl/Inr payload; Pair first component.
  const Value& first() const { return *node_->a; }
  const Value& second() const { return *node_->b; }
  const std::string& prim_type() const { return node_->prim; }
  const Literal& literal() const { return node_->lit; }
  const ElementId& element() const { return node_->ref; }

  friend bool operator==(const Value& a, const Value& b);

 private:
  struct Node {
    Kind kind = Kind::Unit;
    std::shared_ptr<const Value> a;
    std::shared_ptr<const Value> b;
    std::string prim;
    Literal lit;
    ElementId ref;
  };
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Canonical value text:
//   ()   (v,w)   inl v   inr v   @key   String "a\"b"   Nat 7   Double 0.5
// Doubles print in shortest round-trip form.
std::string render_value(const Value& v);
Value parse_value(std::string_view text);
Value parse_value_at(std::string_view text, std::size_t& pos);

std::string render_literal(const Literal& lit);
// JSON-style string quoting used in value text.
std::string quote_string(std::string_view s);

// Strict ordering by canonical rendering.
struct ValueLess {
  bool operator()(const Value& a, const Value& b) const {
    return render_value(a) < render_value(b);
  }
};

}  // namespace apg
