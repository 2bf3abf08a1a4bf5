#include "apg/key.hpp"

#include "apg/error.hpp"
#include "apg/value.hpp"

namespace apg {

namespace {

bool is_structural(char c) {
  switch (c) {
    case '(': case ')': case ',': case ':': case '\'': case '\\':
    case '=': case '@': case '`': case '"':
    case ' ': case '\t': case '\n': case '\r':
      return true;
    default:
      return false;
  }
}

std::string render_atom(const std::string& s) {
  if (is_bare_atom(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

}  // namespace

// The empty atom renders as nothing; it only appears as the reserved label
// of unlabeled vertices.
bool is_bare_atom(std::string_view text) {
  for (char c : text)
    if (is_structural(c)) return false;
  return true;
}

Key::Key() : node_(std::make_shared<Node>()) {}

Key Key::atom(std::string text) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->text = render_atom(text);
  n->atom = std::move(text);
  return Key(std::move(n));
}

Key Key::pair(Key first, Key second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->text = "(" + first.str() + "," + second.str() + ")";
  n->a = std::make_shared<const Key>(std::move(first));
  n->b = std::make_shared<const Key>(std::move(second));
  return Key(std::move(n));
}

Key Key::unary(Kind kind, const char* prefix, Key inner) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->text = prefix + inner.str();
  n->a = std::make_shared<const Key>(std::move(inner));
  return Key(std::move(n));
}

Key Key::left(Key inner) { return unary(Kind::Left, "L:", std::move(inner)); }
Key Key::right(Key inner) { return unary(Kind::Right, "R:", std::move(inner)); }
Key Key::cls(Key rep) { return unary(Kind::Class, "C:", std::move(rep)); }

Key Key::enc(Key label, Value witness) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Enc;
  n->text = "E:" + label.str() + "=" + render_value(witness);
  n->a = std::make_shared<const Key>(std::move(label));
  n->witness = std::make_shared<const Value>(std::move(witness));
  return Key(std::move(n));
}

const Key& Key::first() const {
  if (!node_->a)
    throw Error(ErrorKind::Precondition, "key has no components: " + str());
  return *node_->a;
}

const Key& Key::second() const {
  if (!node_->b)
    throw Error(ErrorKind::Precondition, "key is not a pair: " + str());
  return *node_->b;
}

const Value& Key::witness() const {
  if (!node_->witness)
    throw Error(ErrorKind::Precondition, "key is not an encoding: " + str());
  return *node_->witness;
}

Key parse_key_at(std::string_view text, std::size_t& pos) {
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    Key a = parse_key_at(text, pos);
    if (pos >= text.size() || text[pos] != ',')
      throw ParseError("expected ',' in pair key", pos);
    ++pos;
    Key b = parse_key_at(text, pos);
    if (pos >= text.size() || text[pos] != ')')
      throw ParseError("expected ')' in pair key", pos);
    ++pos;
    return Key::pair(std::move(a), std::move(b));
  }
  if (pos < text.size() && text[pos] == '\'') {
    std::size_t start = pos++;
    std::string out;
    while (true) {
      if (pos >= text.size()) throw ParseError("unterminated quoted atom", start);
      char c = text[pos++];
      if (c == '\'') break;
      if (c == '\\') {
        if (pos >= text.size()) throw ParseError("dangling escape", pos);
        c = text[pos++];
      }
      out += c;
    }
    return Key::atom(std::move(out));
  }
  std::size_t start = pos;
  while (pos < text.size() && !is_structural(text[pos])) ++pos;
  std::string_view word = text.substr(start, pos - start);
  if (word.size() == 1 && pos < text.size() && text[pos] == ':') {
    switch (word[0]) {
      case 'L': ++pos; return Key::left(parse_key_at(text, pos));
      case 'R': ++pos; return Key::right(parse_key_at(text, pos));
      case 'C': ++pos; return Key::cls(parse_key_at(text, pos));
      case 'E': {
        ++pos;
        Key label = parse_key_at(text, pos);
        if (pos >= text.size() || text[pos] != '=')
          throw ParseError("expected '=' in encoded key", pos);
        ++pos;
        Value w = parse_value_at(text, pos);
        return Key::enc(std::move(label), std::move(w));
      }
      default:
        break;
    }
  }
  return Key::atom(std::string(word));
}

Key Key::parse(std::string_view text) {
  std::size_t pos = 0;
  Key k = parse_key_at(text, pos);
  if (pos != text.size()) throw ParseError("trailing characters in key", pos);
  return k;
}

}  // namespace apg
