#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>

namespace apg {

class Value;

// Structured identifier used for both labels and elements.
//
// Constructions (product, coproduct, coequalizer, migration) derive new ids
// from old ones, so ids are trees rather than flat strings. Every key has a
// canonical text rendering which is injective and parses back:
//
//   atom       Person, u1, ⊤          (quoted as 'a\'b' when it contains
//                                      any of  ( ) , : ' \  or whitespace)
//   pair       (a,b)
//   left       L:a
//   right      R:a
//   class      C:a
//   encoding   E:<label>=<value-text>
//
// Ordering and equality are those of the rendering, which makes the
// "least canonical id" of a set well defined.
class Key {
 public:
  enum class Kind { Atom, Pair, Left, Right, Class, Enc };

  Key();  // the empty atom
  static Key atom(std::string text);
  static Key pair(Key first, Key second);
  static Key left(Key inner);
  static Key right(Key inner);
  static Key cls(Key representative);
  static Key enc(Key label, Value witness);

  static Key parse(std::string_view text);

  Kind kind() const { return node_->kind; }
  // Atom text. Empty for other kinds.
  const std::string& atom_text() const { return node_->atom; }
  // Pair components; Left/Right/Class inner is first(); Enc label is first().
  const Key& first() const;
  const Key& second() const;
  const Value& witness() const;

  const std::string& str() const { return node_->text; }

  friend bool operator==(const Key& a, const Key& b) {
    return a.node_ == b.node_ || a.node_->text == b.node_->text;
  }
  friend std::strong_ordering operator<=>(const Key& a, const Key& b) {
    return a.node_->text <=> b.node_->text;
  }

 private:
  struct Node {
    Kind kind = Kind::Atom;
    std::string atom;
    std::shared_ptr<const Key> a;
    std::shared_ptr<const Key> b;
    std::shared_ptr<const Value> witness;
    std::string text;
  };
  explicit Key(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Key unary(Kind kind, const char* prefix, Key inner);

  std::shared_ptr<const Node> node_;
};

using Label = Key;
using ElementId = Key;

// True if the atom can be rendered without quotes.
bool is_bare_atom(std::string_view text);

// Key parser over a cursor; used by the value and type parsers to read keys
// embedded in larger texts. Advances pos past the key.
Key parse_key_at(std::string_view text, std::size_t& pos);

}  // namespace apg
