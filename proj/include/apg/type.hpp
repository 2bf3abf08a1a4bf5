#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "apg/key.hpp"

namespace apg {

enum class PrimDomain { Text, Natural, Integer, Real, Boolean };

// Primitive type names and the literal domain of each.
class PrimRegistry {
 public:
  // String, Nat, Integer, Double, Boolean.
  static PrimRegistry standard();
  static PrimRegistry empty() { return PrimRegistry{}; }

  void add(std::string name, PrimDomain domain);
  bool contains(std::string_view name) const;
  PrimDomain domain(std::string_view name) const;
  std::vector<std::string> names() const;

  friend bool operator==(const PrimRegistry&, const PrimRegistry&) = default;

 private:
  std::map<std::string, PrimDomain, std::less<>> entries_;
};

const char* domain_name(PrimDomain d);
PrimDomain parse_domain_name(std::string_view name);

// Algebraic type: 0 | 1 | t + t | t * t | Prim p | Lbl l
class Type {
 public:
  enum class Kind { Zero, One, Sum, Prod, Prim, Lbl };

  static Type zero();
  static Type one();
  static Type sum(Type l, Type r);
  static Type prod(Type l, Type r);
  static Type prim(std::string name);
  static Type lbl(Label name);

  Kind kind() const { return node_->kind; }
  const Type& left() const { return *node_->l; }
  const Type& right() const { return *node_->r; }
  const std::string& prim_name() const { return node_->prim; }
  const Label& label() const { return node_->label; }

  bool is_label_free() const;
  void collect_labels(std::set<Label>& out) const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node {
    Kind kind = Kind::One;
    std::shared_ptr<const Type> l;
    std::shared_ptr<const Type> r;
    std::string prim;
    Label label;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar:
//   type := prod ('+' type)?
//   prod := atom ('*' prod)?
//   atom := '0' | '1' | IDENT | '`' key '`' | '(' type ')'
// IDENT resolves to a label when it is one of `labels`, else to a primitive
// of `registry`. Backquotes hold the canonical rendering of a structured
// label, e.g. `(Person,Org)`.
Type parse_type(std::string_view text, const std::set<Label>& labels,
                const PrimRegistry& registry);

// Minimal parentheses; inverse of parse_type.
std::string render_type(const Type& t);

}  // namespace apg
