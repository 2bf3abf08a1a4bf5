#include "apg/value.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>

#include "apg/error.hpp"

namespace apg {

bool literal_equal(const Literal& a, const Literal& b) {
  if (a.index() != b.index()) return false;
  if (const double* da = std::get_if<double>(&a))
    return std::bit_cast<std::uint64_t>(*da) ==
           std::bit_cast<std::uint64_t>(std::get<double>(b));
  return a == b;
}

Value Value::unit() {
  static const Value u(std::make_shared<Node>());
  return u;
}

Value Value::inl(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inl;
  n->a = std::make_shared<const Value>(std::move(v));
  return Value(std::move(n));
}

Value Value::inr(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inr;
  n->a = std::make_shared<const Value>(std::move(v));
  return Value(std::move(n));
}

Value Value::pair(Value a, Value b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->a = std::make_shared<const Value>(std::move(a));
  n->b = std::make_shared<const Value>(std::move(b));
  return Value(std::move(n));
}

Value Value::prim(std::string type, Literal lit) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prim;
  n->prim = std::move(type);
  n->lit = std::move(lit);
  return Value(std::move(n));
}

Value Value::ref(ElementId e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ref;
  n->ref = std::move(e);
  return Value(std::move(n));
}

bool operator==(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Unit: return true;
    case Value::Kind::Inl:
    case Value::Kind::Inr: return a.first() == b.first();
    case Value::Kind::Pair: return a.first() == b.first() && a.second() == b.second();
    case Value::Kind::Prim:
      return a.prim_type() == b.prim_type() && literal_equal(a.literal(), b.literal());
    case Value::Kind::Ref: return a.element() == b.element();
  }
  return false;
}

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string render_literal(const Literal& lit) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return quote_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(x)) return "nan";
          if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
          char buf[64];
          auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
          std::string s(buf, end);
          // keep doubles distinguishable from integers in text
          if (s.find_first_of(".eE") == std::string::npos) s += ".0";
          return s;
        } else {
          return std::to_string(x);
        }
      },
      lit);
}

namespace {

void render(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Unit: out += "()"; return;
    case Value::Kind::Inl: out += "inl "; render(v.first(), out); return;
    case Value::Kind::Inr: out += "inr "; render(v.first(), out); return;
    case Value::Kind::Pair:
      out += '(';
      render(v.first(), out);
      out += ',';
      render(v.second(), out);
      out += ')';
      return;
    case Value::Kind::Prim:
      out += v.prim_type();
      out += ' ';
      out += render_literal(v.literal());
      return;
    case Value::Kind::Ref:
      out += '@';
      out += v.element().str();
      return;
  }
}

class ValueParser {
 public:
  ValueParser(std::string_view text, std::size_t& pos) : text_(text), pos_(pos) {}

  Value value() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of value", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (peek(')')) {
        ++pos_;
        return Value::unit();
      }
      Value a = value();
      skip_ws();
      expect(',');
      Value b = value();
      skip_ws();
      expect(')');
      return Value::pair(std::move(a), std::move(b));
    }
    if (c == '@') {
      ++pos_;
      return Value::ref(parse_key_at(text_, pos_));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string word(text_.substr(start, pos_ - start));
      if (word == "inl") return Value::inl(value());
      if (word == "inr") return Value::inr(value());
      skip_ws();
      return Value::prim(std::move(word), literal());
    }
    throw ParseError(std::string("unexpected character '") + c + "' in value", pos_);
  }

  Literal literal() {
    if (pos_ >= text_.size()) throw ParseError("expected literal", pos_);
    char c = text_[pos_];
    if (c == '"') return string_literal();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '-' || text_[pos_] == '+' || text_[pos_] == '.'))
      ++pos_;
    std::string_view tok = text_.substr(start, pos_ - start);
    if (tok.empty()) throw ParseError("expected literal", start);
    return parse_literal_token(tok, start);
  }

  static Literal parse_literal_token(std::string_view tok, std::size_t at) {
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok == "nan") return std::nan("");
    if (tok == "inf") return HUGE_VAL;
    if (tok == "-inf") return -HUGE_VAL;
    bool is_real = tok.find_first_of(".eE") != std::string_view::npos;
    if (!is_real) {
      std::int64_t i = 0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), i);
      if (ec == std::errc() && end == tok.data() + tok.size()) return i;
      throw ParseError("bad integer literal '" + std::string(tok) + "'", at);
    }
    double d = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec == std::errc() && end == tok.data() + tok.size()) return d;
    throw ParseError("bad real literal '" + std::string(tok) + "'", at);
  }

 private:
  Literal string_literal() {
    std::size_t start = pos_++;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) throw ParseError("unterminated string", start);
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError("dangling escape", pos_);
        char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case 'r': c = '\r'; break;
          default: c = e;
        }
      }
      out += c;
    }
    return out;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "' in value", pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t& pos_;
};

}  // namespace

std::string render_value(const Value& v) {
  std::string out;
  render(v, out);
  return out;
}

Value parse_value_at(std::string_view text, std::size_t& pos) {
  return ValueParser(text, pos).value();
}

Value parse_value(std::string_view text) {
  std::size_t pos = 0;
  Value v = parse_value_at(text, pos);
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  if (pos != text.size()) throw ParseError("trailing characters in value", pos);
  return v;
}

}  // namespace apg
