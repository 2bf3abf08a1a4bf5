#include "apg/type.hpp"

#include <cctype>

#include "apg/error.hpp"

namespace apg {

PrimRegistry PrimRegistry::standard() {
  PrimRegistry r;
  r.add("String", PrimDomain::Text);
  r.add("Nat", PrimDomain::Natural);
  r.add("Integer", PrimDomain::Integer);
  r.add("Double", PrimDomain::Real);
  r.add("Boolean", PrimDomain::Boolean);
  return r;
}

void PrimRegistry::add(std::string name, PrimDomain domain) {
  auto [it, inserted] = entries_.emplace(std::move(name), domain);
  if (!inserted && it->second != domain)
    throw Error(ErrorKind::Precondition,
                "primitive '" + it->first + "' registered twice with different domains");
}

bool PrimRegistry::contains(std::string_view name) const {
  return entries_.find(name) != entries_.end();
}

PrimDomain PrimRegistry::domain(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw Error(ErrorKind::Unknown, "unknown primitive type '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> PrimRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

const char* domain_name(PrimDomain d) {
  switch (d) {
    case PrimDomain::Text: return "text";
    case PrimDomain::Natural: return "natural";
    case PrimDomain::Integer: return "integer";
    case PrimDomain::Real: return "real";
    case PrimDomain::Boolean: return "boolean";
  }
  return "?";
}

PrimDomain parse_domain_name(std::string_view name) {
  if (name == "text") return PrimDomain::Text;
  if (name == "natural") return PrimDomain::Natural;
  if (name == "integer") return PrimDomain::Integer;
  if (name == "real") return PrimDomain::Real;
  if (name == "boolean") return PrimDomain::Boolean;
  throw Error(ErrorKind::Unknown, "unknown primitive domain '" + std::string(name) + "'");
}

Type Type::zero() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Zero;
  return Type(std::move(n));
}

Type Type::one() {
  static const Type unit = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::One;
    return Type(std::move(n));
  }();
  return unit;
}

Type Type::sum(Type l, Type r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->l = std::make_shared<const Type>(std::move(l));
  n->r = std::make_shared<const Type>(std::move(r));
  return Type(std::move(n));
}

Type Type::prod(Type l, Type r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prod;
  n->l = std::make_shared<const Type>(std::move(l));
  n->r = std::make_shared<const Type>(std::move(r));
  return Type(std::move(n));
}

Type Type::prim(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prim;
  n->prim = std::move(name);
  return Type(std::move(n));
}

Type Type::lbl(Label name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lbl;
  n->label = std::move(name);
  return Type(std::move(n));
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return true;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      return a.left() == b.left() && a.right() == b.right();
    case Type::Kind::Prim:
      return a.prim_name() == b.prim_name();
    case Type::Kind::Lbl:
      return a.label() == b.label();
  }
  return false;
}

bool Type::is_label_free() const {
  switch (kind()) {
    case Kind::Lbl: return false;
    case Kind::Sum:
    case Kind::Prod: return left().is_label_free() && right().is_label_free();
    default: return true;
  }
}

void Type::collect_labels(std::set<Label>& out) const {
  switch (kind()) {
    case Kind::Lbl: out.insert(label()); break;
    case Kind::Sum:
    case Kind::Prod:
      left().collect_labels(out);
      right().collect_labels(out);
      break;
    default: break;
  }
}

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

class TypeParser {
 public:
  TypeParser(std::string_view text, const std::set<Label>& labels,
             const PrimRegistry& registry)
      : text_(text), labels_(labels), registry_(registry) {}

  Type parse() {
    Type t = sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character in type", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Type sum() {
    Type l = prod();
    if (eat('+')) return Type::sum(std::move(l), sum());
    return l;
  }

  Type prod() {
    Type l = atom();
    if (eat('*')) return Type::prod(std::move(l), prod());
    return l;
  }

  Type atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of type", pos_);
    char c = text_[pos_];
    if (c == '0') { ++pos_; return Type::zero(); }
    if (c == '1') { ++pos_; return Type::one(); }
    if (c == '(') {
      ++pos_;
      Type t = sum();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return t;
    }
    if (c == '`') {
      std::size_t start = pos_++;
      Label l = parse_key_at(text_, pos_);
      if (pos_ >= text_.size() || text_[pos_] != '`')
        throw ParseError("expected closing '`'", pos_);
      ++pos_;
      if (!labels_.contains(l))
        throw Error(ErrorKind::Unknown,
                    "unknown label '" + l.str() + "' at position " + std::to_string(start));
      return Type::lbl(std::move(l));
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      Label as_label = Label::atom(name);
      if (labels_.contains(as_label)) return Type::lbl(std::move(as_label));
      if (registry_.contains(name)) return Type::prim(std::move(name));
      throw Error(ErrorKind::Unknown,
                  "unknown identifier '" + name + "' at position " + std::to_string(start));
    }
    throw ParseError(std::string("unexpected character '") + c + "' in type", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const std::set<Label>& labels_;
  const PrimRegistry& registry_;
};

// Precedence: sum 0, product 1, atom 2.
void render(const Type& t, int context, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Zero: out += '0'; return;
    case Type::Kind::One: out += '1'; return;
    case Type::Kind::Prim: out += t.prim_name(); return;
    case Type::Kind::Lbl: {
      const Label& l = t.label();
      if (l.kind() == Key::Kind::Atom && is_ident(l.atom_text()))
        out += l.atom_text();
      else
        out += "`" + l.str() + "`";
      return;
    }
    case Type::Kind::Sum: {
      bool paren = context > 0;
      if (paren) out += '(';
      // right-associative: the left operand needs parens if it is a sum
      render(t.left(), 1, out);
      out += " + ";
      render(t.right(), 0, out);
      if (paren) out += ')';
      return;
    }
    case Type::Kind::Prod: {
      bool paren = context > 1;
      if (paren) out += '(';
      render(t.left(), 2, out);
      out += " * ";
      render(t.right(), 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

Type parse_type(std::string_view text, const std::set<Label>& labels,
                const PrimRegistry& registry) {
  return TypeParser(text, labels, registry).parse();
}

std::string render_type(const Type& t) {
  std::string out;
  render(t, 0, out);
  return out;
}

}  // namespace apg
