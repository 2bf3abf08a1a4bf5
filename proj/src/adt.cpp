#include "apg/adt.hpp"

#include "apg/error.hpp"

namespace apg {

std::string render_path(const ValuePath& p) {
  std::string out;
  for (const auto& c : p) out += "." + c;
  return out;
}

bool literal_in_domain(const Literal& lit, PrimDomain domain) {
  switch (domain) {
    case PrimDomain::Text: return std::holds_alternative<std::string>(lit);
    case PrimDomain::Natural:
      return std::holds_alternative<std::int64_t>(lit) && std::get<std::int64_t>(lit) >= 0;
    case PrimDomain::Integer: return std::holds_alternative<std::int64_t>(lit);
    case PrimDomain::Real: return std::holds_alternative<double>(lit);
    case PrimDomain::Boolean: return std::holds_alternative<bool>(lit);
  }
  return false;
}

namespace {

const char* shape_name(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit: return "unit value";
    case Value::Kind::Inl: return "left injection";
    case Value::Kind::Inr: return "right injection";
    case Value::Kind::Pair: return "pair";
    case Value::Kind::Prim: return "primitive";
    case Value::Kind::Ref: return "element reference";
  }
  return "?";
}

class Checker {
 public:
  Checker(const PrimRegistry& registry, const LabelOf& label_of)
      : registry_(registry), label_of_(label_of) {}

  std::optional<TypeMismatch> check(const Value& v, const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Zero:
        return fail("type 0 is uninhabited, found " + std::string(shape_name(v)));
      case Type::Kind::One:
        if (v.kind() == Value::Kind::Unit) return std::nullopt;
        break;
      case Type::Kind::Sum:
        if (v.kind() == Value::Kind::Inl) return descend("inl", v.first(), t.left());
        if (v.kind() == Value::Kind::Inr) return descend("inr", v.first(), t.right());
        break;
      case Type::Kind::Prod:
        if (v.kind() == Value::Kind::Pair) {
          if (auto m = descend("fst", v.first(), t.left())) return m;
          return descend("snd", v.second(), t.right());
        }
        break;
      case Type::Kind::Prim:
        if (v.kind() == Value::Kind::Prim) {
          if (v.prim_type() != t.prim_name())
            return fail("expected " + t.prim_name() + ", found " + v.prim_type() + " " +
                        render_literal(v.literal()));
          if (!registry_.contains(t.prim_name()))
            return fail("unknown primitive type " + t.prim_name());
          if (!literal_in_domain(v.literal(), registry_.domain(t.prim_name())))
            return fail("literal " + render_literal(v.literal()) + " is not in the domain of " +
                        t.prim_name());
          return std::nullopt;
        }
        break;
      case Type::Kind::Lbl:
        if (v.kind() == Value::Kind::Ref) {
          std::optional<Label> actual = label_of_(v.element());
          if (!actual)
            return fail("reference to missing element " + v.element().str());
          if (*actual != t.label())
            return fail("expected Lbl " + t.label().str() + ", found " + actual->str() +
                        " (element " + v.element().str() + ")");
          return std::nullopt;
        }
        break;
    }
    return fail("expected " + render_type(t) + ", found " + shape_name(v) + " " +
                render_value(v));
  }

 private:
  std::optional<TypeMismatch> descend(const char* step, const Value& v, const Type& t) {
    path_.push_back(step);
    auto m = check(v, t);
    path_.pop_back();
    return m;
  }

  std::optional<TypeMismatch> fail(std::string msg) const {
    return TypeMismatch{path_, std::move(msg)};
  }

  const PrimRegistry& registry_;
  const LabelOf& label_of_;
  ValuePath path_;
};

}  // namespace

std::optional<TypeMismatch> check_value(const Value& v, const Type& expected,
                                        const PrimRegistry& registry,
                                        const LabelOf& label_of) {
  return Checker(registry, label_of).check(v, expected);
}

Type transport_type(const LabelTransport& f, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
    case Type::Kind::Prim:
      return t;
    case Type::Kind::Lbl:
      return f(t.label());
    case Type::Kind::Sum:
      return Type::sum(transport_type(f, t.left()), transport_type(f, t.right()));
    case Type::Kind::Prod:
      return Type::prod(transport_type(f, t.left()), transport_type(f, t.right()));
  }
  return t;
}

Type transport_type(const std::map<Label, Type>& f, const Type& t) {
  return transport_type(
      [&](const Label& l) -> Type {
        auto it = f.find(l);
        if (it == f.end())
          throw Error(ErrorKind::Unknown, "label " + l.str() + " is outside the transport map");
        return it->second;
      },
      t);
}

Type rename_labels(const std::map<Label, Label>& rename, const Type& t) {
  return transport_type(
      [&](const Label& l) -> Type {
        auto it = rename.find(l);
        if (it == rename.end())
          throw Error(ErrorKind::Unknown, "label " + l.str() + " is outside the label map");
        return Type::lbl(it->second);
      },
      t);
}

Value transport_value(const ElementTransport& g, const Value& v, const Type& at) {
  auto shape_error = [&] {
    return Error(ErrorKind::Type,
                 "value " + render_value(v) + " does not have the shape of " + render_type(at));
  };
  switch (at.kind()) {
    case Type::Kind::Zero:
      throw shape_error();
    case Type::Kind::One:
      if (v.kind() != Value::Kind::Unit) throw shape_error();
      return v;
    case Type::Kind::Prim:
      if (v.kind() != Value::Kind::Prim) throw shape_error();
      return v;
    case Type::Kind::Lbl:
      if (v.kind() != Value::Kind::Ref) throw shape_error();
      return g(v.element());
    case Type::Kind::Sum:
      if (v.kind() == Value::Kind::Inl) return Value::inl(transport_value(g, v.first(), at.left()));
      if (v.kind() == Value::Kind::Inr) return Value::inr(transport_value(g, v.first(), at.right()));
      throw shape_error();
    case Type::Kind::Prod:
      if (v.kind() != Value::Kind::Pair) throw shape_error();
      return Value::pair(transport_value(g, v.first(), at.left()),
                         transport_value(g, v.second(), at.right()));
  }
  throw shape_error();
}

Value transport_value(const std::map<ElementId, Value>& g, const Value& v, const Type& at) {
  return transport_value(
      [&](const ElementId& e) -> Value {
        auto it = g.find(e);
        if (it == g.end())
          throw Error(ErrorKind::Unknown, "element " + e.str() + " is outside the transport map");
        return it->second;
      },
      v, at);
}

Value rename_elements(const std::map<ElementId, ElementId>& rename, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit:
    case Value::Kind::Prim:
      return v;
    case Value::Kind::Ref: {
      auto it = rename.find(v.element());
      if (it == rename.end())
        throw Error(ErrorKind::Unknown, "element " + v.element().str() + " is outside the element map");
      return Value::ref(it->second);
    }
    case Value::Kind::Inl: return Value::inl(rename_elements(rename, v.first()));
    case Value::Kind::Inr: return Value::inr(rename_elements(rename, v.first()));
    case Value::Kind::Pair:
      return Value::pair(rename_elements(rename, v.first()), rename_elements(rename, v.second()));
  }
  return v;
}

std::optional<Value> value_at(const Value& v, const ValuePath& path) {
  const Value* cur = &v;
  for (const auto& step : path) {
    if (step == "fst" && cur->kind() == Value::Kind::Pair) cur = &cur->first();
    else if (step == "snd" && cur->kind() == Value::Kind::Pair) cur = &cur->second();
    else if (step == "inl" && cur->kind() == Value::Kind::Inl) cur = &cur->first();
    else if (step == "inr" && cur->kind() == Value::Kind::Inr) cur = &cur->first();
    else return std::nullopt;
  }
  return *cur;
}

}  // namespace apg
