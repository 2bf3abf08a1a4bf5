#include "apg/graph.hpp"

#include <unordered_map>

#include "apg/error.hpp"

namespace apg {

const Type& Schema::type_of(const Label& l) const {
  auto it = labels_.find(l);
  if (it == labels_.end()) throw Error(ErrorKind::Unknown, "unknown label " + l.str());
  return it->second;
}

std::set<Label> Schema::label_set() const {
  std::set<Label> out;
  for (const auto& [l, _] : labels_) out.insert(l);
  return out;
}

const Element& Graph::element(const ElementId& e) const {
  auto it = elements_.find(e);
  if (it == elements_.end()) throw Error(ErrorKind::Unknown, "unknown element " + e.str());
  return it->second;
}

std::optional<Label> Graph::label_of(const ElementId& e) const {
  auto it = elements_.find(e);
  if (it == elements_.end()) return std::nullopt;
  return it->second.label;
}

LabelOf Graph::label_lookup() const {
  return [this](const ElementId& e) { return label_of(e); };
}

std::vector<ElementId> Graph::elements_with_label(const Label& l) const {
  std::vector<ElementId> out;
  for (const auto& [id, el] : elements_)
    if (el.label == l) out.push_back(id);
  return out;
}

GraphBuilder& GraphBuilder::registry(PrimRegistry r) {
  registry_ = std::move(r);
  return *this;
}

GraphBuilder& GraphBuilder::label(Label l, Type t) {
  labels_.emplace_back(std::move(l), std::move(t));
  return *this;
}

GraphBuilder& GraphBuilder::label(std::string_view name, std::string type_text) {
  labels_.emplace_back(Label::atom(std::string(name)), std::move(type_text));
  return *this;
}

GraphBuilder& GraphBuilder::element(ElementId id, Label label, Value v) {
  elements_.insert_or_assign(std::move(id), Element{std::move(label), std::move(v)});
  return *this;
}

GraphBuilder& GraphBuilder::element(std::string_view id, std::string_view label, Value v) {
  return element(ElementId::atom(std::string(id)), Label::atom(std::string(label)), std::move(v));
}

GraphBuilder& GraphBuilder::element(std::string_view id, std::string_view label,
                                    std::string_view value_text) {
  return element(id, label, parse_value(value_text));
}

Graph GraphBuilder::build() const {
  std::set<Label> names;
  for (const auto& [l, _] : labels_) names.insert(l);
  std::map<Label, Type> resolved;
  for (const auto& [l, t] : labels_) {
    if (const Type* ty = std::get_if<Type>(&t))
      resolved.insert_or_assign(l, *ty);
    else
      resolved.insert_or_assign(l, parse_type(std::get<std::string>(t), names, registry_));
  }
  return Graph(Schema(std::move(resolved), registry_), elements_);
}

bool ValidationReport::ok() const {
  for (const auto& f : findings)
    if (f.severity == Severity::Error) return false;
  return true;
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& f : findings) {
    out += f.severity == Severity::Error ? "error: " : "warning: ";
    out += f.subject + f.path + ": " + f.message + "\n";
  }
  return out;
}

namespace {

void check_type_wf(const Type& t, const Schema& s, const std::string& subject,
                   ValidationReport& report) {
  switch (t.kind()) {
    case Type::Kind::Lbl:
      if (!s.has_label(t.label()))
        report.findings.push_back({subject, "", "type mentions unknown label " + t.label().str()});
      break;
    case Type::Kind::Prim:
      if (!s.registry().contains(t.prim_name()))
        report.findings.push_back({subject, "", "unknown primitive type " + t.prim_name()});
      break;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      check_type_wf(t.left(), s, subject, report);
      check_type_wf(t.right(), s, subject, report);
      break;
    default:
      break;
  }
}

}  // namespace

ValidationReport validate_schema(const Schema& s) {
  ValidationReport report;
  for (const auto& [l, t] : s.labels()) {
    if (l.kind() == Key::Kind::Atom && s.registry().contains(l.atom_text()))
      report.findings.push_back({l.str(), "", "label shadows primitive type " + l.atom_text()});
    check_type_wf(t, s, l.str(), report);
  }
  return report;
}

ValidationReport validate_graph(const Graph& g) {
  ValidationReport report = validate_schema(g.schema());
  LabelOf label_of = g.label_lookup();
  for (const auto& [id, el] : g.elements()) {
    if (!g.schema().has_label(el.label)) {
      report.findings.push_back({id.str(), "", "label " + el.label.str() + " is not in the schema"});
      continue;
    }
    auto mismatch = check_value(el.value, g.schema().type_of(el.label), g.schema().registry(),
                                label_of);
    if (mismatch)
      report.findings.push_back({id.str(), render_path(mismatch->path), mismatch->message});
  }
  return report;
}

namespace {

template <typename KeyFn>
ViolatingPairs pairs_sharing(const Graph& g, const Label& l, KeyFn key_of) {
  std::unordered_map<std::string, std::vector<ElementId>> groups;
  ViolatingPairs out;
  for (const auto& [id, el] : g.elements()) {
    if (el.label != l) continue;
    auto& bucket = groups[key_of(el.value)];
    for (const auto& prev : bucket) out.emplace_back(prev, id);
    bucket.push_back(id);
  }
  return out;
}

}  // namespace

ViolatingPairs check_unique_property(const Graph& g, const Label& l) {
  g.schema().type_of(l);
  return pairs_sharing(g, l, [](const Value& v) { return render_value(v); });
}

ViolatingPairs check_primary_key(const Graph& g, const Label& l) {
  const Type& t = g.schema().type_of(l);
  if (t.kind() != Type::Kind::Prod)
    throw Error(ErrorKind::Precondition,
                "primary key requires a product type for " + l.str() + ", found " + render_type(t));
  return pairs_sharing(g, l, [](const Value& v) {
    if (v.kind() != Value::Kind::Pair)
      throw Error(ErrorKind::Type, "value " + render_value(v) + " is not a pair");
    return render_value(v.first());
  });
}

}  // namespace apg
