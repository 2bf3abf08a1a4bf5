#include "apg/io.hpp"

#include <cmath>
#include "json.hpp"

#include "apg/error.hpp"

namespace apg {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

[[noreturn]] void shape_error(const std::string& what) {
  throw ParseError(what, 0);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) shape_error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) shape_error(where + ": expected a string");
  return j.get<std::string>();
}

Key parse_key_field(const std::string& text, const std::string& where) {
  try {
    return Key::parse(text);
  } catch (const ParseError& e) {
    shape_error(where + ": bad key '" + text + "': " + e.what());
  }
}

PrimRegistry read_primitives(const json& doc) {
  if (!doc.contains("primitives")) return PrimRegistry::standard();
  const json& arr = doc.at("primitives");
  if (!arr.is_array()) shape_error("\"primitives\" must be an array");
  PrimRegistry std_reg = PrimRegistry::standard();
  PrimRegistry reg = PrimRegistry::empty();
  for (const auto& p : arr) {
    if (p.is_string()) {
      std::string name = p.get<std::string>();
      if (!std_reg.contains(name))
        shape_error("primitive '" + name + "' needs an explicit domain");
      reg.add(name, std_reg.domain(name));
    } else if (p.is_object()) {
      std::string name = as_string(member(p, "name", "primitive"), "primitive name");
      std::string dom = as_string(member(p, "domain", "primitive " + name), "primitive domain");
      try {
        reg.add(name, parse_domain_name(dom));
      } catch (const Error& e) {
        shape_error("primitive " + name + ": " + e.what());
      }
    } else {
      shape_error("primitive entries are names or {name, domain} objects");
    }
  }
  return reg;
}

json write_primitives(const PrimRegistry& reg) {
  PrimRegistry std_reg = PrimRegistry::standard();
  json arr = json::array();
  for (const auto& name : reg.names()) {
    if (std_reg.contains(name) && std_reg.domain(name) == reg.domain(name))
      arr.push_back(name);
    else
      arr.push_back({{"name", name}, {"domain", domain_name(reg.domain(name))}});
  }
  return arr;
}

Schema read_schema_object(const json& labels, const PrimRegistry& reg) {
  if (!labels.is_object()) shape_error("\"schema\" must be an object");
  std::set<Label> names;
  for (const auto& [k, _] : labels.items()) names.insert(parse_key_field(k, "schema label"));
  std::map<Label, Type> types;
  for (const auto& [k, v] : labels.items()) {
    std::string text = as_string(v, "type of label " + k);
    try {
      types.emplace(Key::parse(k), parse_type(text, names, reg));
    } catch (const ParseError& e) {
      shape_error("type of label " + k + ": " + e.what());
    } catch (const Error& e) {
      shape_error("type of label " + k + ": " + e.what());
    }
  }
  return Schema(std::move(types), reg);
}

json write_schema_object(const Schema& s) {
  json out = json::object();
  for (const auto& [l, t] : s.labels()) out[l.str()] = render_type(t);
  return out;
}

bool is_full_document(const json& j) {
  if (!j.is_object() || !j.contains("schema") || !j.at("schema").is_object()) return false;
  for (const auto& [k, _] : j.items())
    if (k != "schema" && k != "primitives" && k != "elements") return false;
  return true;
}

Schema schema_from(const json& j) {
  if (is_full_document(j)) return read_schema_object(j.at("schema"), read_primitives(j));
  return read_schema_object(j, PrimRegistry::standard());
}

json write_schema_json(const Schema& s) {
  return json{{"primitives", write_primitives(s.registry())}, {"schema", write_schema_object(s)}};
}

Literal read_literal(const json& j, PrimDomain dom, const std::string& where) {
  switch (dom) {
    case PrimDomain::Text:
      if (j.is_string()) return j.get<std::string>();
      break;
    case PrimDomain::Natural:
    case PrimDomain::Integer:
      if (j.is_number_integer()) return j.get<std::int64_t>();
      break;
    case PrimDomain::Real:
      if (j.is_number()) return j.get<double>();
      if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "nan") return std::nan("");
        if (s == "inf") return HUGE_VAL;
        if (s == "-inf") return -HUGE_VAL;
      }
      break;
    case PrimDomain::Boolean:
      if (j.is_boolean()) return j.get<bool>();
      break;
  }
  shape_error(where + ": literal " + j.dump() + " does not fit domain " + domain_name(dom));
}

json write_literal(const Literal& lit) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(v)) return "nan";
          if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
          return v;
        } else {
          return v;
        }
      },
      lit);
}

Value read_value(const json& j, const PrimRegistry& reg, const std::string& where) {
  if (!j.is_object() || j.size() != 1) shape_error(where + ": a value is an object with one key");
  const auto& [tag, body] = *j.items().begin();
  if (tag == "unit") return Value::unit();
  if (tag == "pair") {
    if (!body.is_array() || body.size() != 2) shape_error(where + ": \"pair\" takes two values");
    return Value::pair(read_value(body[0], reg, where), read_value(body[1], reg, where));
  }
  if (tag == "inl") return Value::inl(read_value(body, reg, where));
  if (tag == "inr") return Value::inr(read_value(body, reg, where));
  if (tag == "ref") return Value::ref(parse_key_field(as_string(body, where), where));
  if (tag == "prim") {
    std::string type = as_string(member(body, "type", where), where);
    if (!reg.contains(type)) shape_error(where + ": unknown primitive " + type);
    return Value::prim(type, read_literal(member(body, "value", where), reg.domain(type), where));
  }
  shape_error(where + ": unknown value tag \"" + tag + "\"");
}

json write_value(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit: return {{"unit", json::object()}};
    case Value::Kind::Pair: return {{"pair", json::array({write_value(v.first()), write_value(v.second())})}};
    case Value::Kind::Inl: return {{"inl", write_value(v.first())}};
    case Value::Kind::Inr: return {{"inr", write_value(v.first())}};
    case Value::Kind::Ref: return {{"ref", v.element().str()}};
    case Value::Kind::Prim:
      return {{"prim", {{"type", v.prim_type()}, {"value", write_literal(v.literal())}}}};
  }
  return nullptr;
}

std::map<Key, Key> read_key_map(const json& j, const std::string& where) {
  if (!j.is_object()) shape_error(where + " must be an object");
  std::map<Key, Key> out;
  for (const auto& [k, v] : j.items())
    out.emplace(parse_key_field(k, where), parse_key_field(as_string(v, where), where));
  return out;
}

}  // namespace

Graph read_graph(std::string_view json_text, bool validate) {
  json doc = parse_json(json_text);
  if (!doc.is_object()) shape_error("graph document must be an object");
  PrimRegistry reg = read_primitives(doc);
  Schema schema = doc.contains("schema") ? read_schema_object(doc.at("schema"), reg)
                                         : Schema({}, reg);
  std::map<ElementId, Element> elements;
  if (doc.contains("elements")) {
    const json& els = doc.at("elements");
    if (!els.is_object()) shape_error("\"elements\" must be an object");
    for (const auto& [k, e] : els.items()) {
      std::string where = "element " + k;
      ElementId id = parse_key_field(k, where);
      Label l = parse_key_field(as_string(member(e, "label", where), where), where);
      elements.emplace(std::move(id), Element{std::move(l), read_value(member(e, "value", where), reg, where)});
    }
  }
  Graph g(std::move(schema), std::move(elements));
  if (validate) {
    ValidationReport r = validate_graph(g);
    if (!r.ok()) throw Error(ErrorKind::Type, "invalid graph:\n" + r.to_string());
  }
  return g;
}

std::string write_graph(const Graph& g) {
  json doc = write_schema_json(g.schema());
  json els = json::object();
  for (const auto& [id, el] : g.elements())
    els[id.str()] = {{"label", el.label.str()}, {"value", write_value(el.value)}};
  doc["elements"] = std::move(els);
  return doc.dump(2) + "\n";
}

Schema read_schema(std::string_view json_text) { return schema_from(parse_json(json_text)); }

std::string write_schema(const Schema& s) { return write_schema_json(s).dump(2) + "\n"; }

Morphism read_morphism(std::string_view json_text, const GraphPtr& source, const GraphPtr& target) {
  json doc = parse_json(json_text);
  auto labels = read_key_map(member(doc, "onLabels", "morphism"), "onLabels");
  auto elements = read_key_map(member(doc, "onElements", "morphism"), "onElements");
  for (const auto& [a, b] : labels) {
    if (!source->schema().has_label(a)) throw Error(ErrorKind::Unknown, "onLabels: " + a.str() + " is not a source label");
    if (!target->schema().has_label(b)) throw Error(ErrorKind::Unknown, "onLabels: " + b.str() + " is not a target label");
  }
  for (const auto& [a, b] : elements) {
    if (!source->has_element(a)) throw Error(ErrorKind::Unknown, "onElements: " + a.str() + " is not a source element");
    if (!target->has_element(b)) throw Error(ErrorKind::Unknown, "onElements: " + b.str() + " is not a target element");
  }
  return Morphism(source, target, std::move(labels), std::move(elements));
}

std::string write_morphism(const Morphism& m) {
  json labels = json::object(), elements = json::object();
  for (const auto& [a, b] : m.on_labels()) labels[a.str()] = b.str();
  for (const auto& [a, b] : m.on_elements()) elements[a.str()] = b.str();
  return json{{"onLabels", labels}, {"onElements", elements}}.dump(2) + "\n";
}

SchemaMapping read_mapping(std::string_view json_text) {
  json doc = parse_json(json_text);
  SchemaMapping m;
  m.source = schema_from(member(doc, "source", "mapping"));
  m.target = schema_from(member(doc, "target", "mapping"));
  const json& ol = member(doc, "onLabels", "mapping");
  const json& ot = member(doc, "onTerms", "mapping");
  if (!ol.is_object() || !ot.is_object()) shape_error("onLabels and onTerms must be objects");
  std::set<Label> target_labels = m.target.label_set();
  for (const auto& [k, v] : ol.items()) {
    std::string where = "onLabels." + k;
    try {
      m.on_labels.emplace(parse_key_field(k, where),
                          parse_type(as_string(v, where), target_labels, m.target.registry()));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      shape_error(where + ": " + e.what());
    }
  }
  for (const auto& [k, v] : ot.items()) {
    std::string where = "onTerms." + k;
    try {
      m.on_terms.emplace(parse_key_field(k, where), parse_term(as_string(v, where)));
    } catch (const ParseError& e) {
      shape_error(where + ": " + e.what());
    }
  }
  return m;
}

std::string write_mapping(const SchemaMapping& m) {
  json ol = json::object(), ot = json::object();
  for (const auto& [l, t] : m.on_labels) ol[l.str()] = render_type(t);
  for (const auto& [l, t] : m.on_terms) ot[l.str()] = render_term(t);
  return json{{"source", write_schema_json(m.source)},
              {"target", write_schema_json(m.target)},
              {"onLabels", ol},
              {"onTerms", ot}}
             .dump(2) + "\n";
}

}  // namespace apg
