#include "apg/taxonomy.hpp"

#include <cstdlib>
#include <optional>
#include <set>

#include "apg/error.hpp"

namespace apg {

Classification Classification::tag(Classification of) {
  Classification c(Kind::Tag);
  c.of_ = std::make_shared<const Classification>(std::move(of));
  return c;
}

std::string Classification::str() const {
  switch (kind_) {
    case Kind::Vertex: return "Vertex";
    case Kind::Edge: return "Edge";
    case Kind::HigherOrderEdge: return "HigherOrderEdge";
    case Kind::VertexProperty: return "VertexProperty";
    case Kind::EdgeProperty: return "EdgeProperty";
    case Kind::MetaProperty: return "MetaProperty";
    case Kind::DataTypeAlias: return "DataTypeAlias";
    case Kind::Tag: return "Tag(" + of_->str() + ")";
    case Kind::Hyperelement: return "Hyperelement";
  }
  return "?";
}

bool operator==(const Classification& a, const Classification& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Classification::Kind::Tag) return true;
  return *a.of_ == *b.of_;
}

TaxonomyOptions TaxonomyOptions::from_environment() {
  TaxonomyOptions o;
  if (const char* v = std::getenv("APG_STRICT_TAXONOMY")) o.strict = std::string(v) != "0";
  return o;
}

namespace {

using Kinds = std::map<Label, Classification>;

std::set<Label> labels_in(const Type& t) {
  std::set<Label> out;
  t.collect_labels(out);
  return out;
}

// Least fixed point: a non-unit label whose type mentions only aliases.
std::set<Label> alias_labels(const Schema& s) {
  std::set<Label> aliases;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [l, t] : s.labels()) {
      if (aliases.contains(l) || t.kind() == Type::Kind::One) continue;
      bool ok = true;
      for (const auto& m : labels_in(t))
        if (!aliases.contains(m)) ok = false;
      if (ok) {
        aliases.insert(l);
        changed = true;
      }
    }
  }
  return aliases;
}

bool is_data(const Type& t, const std::set<Label>& aliases, bool strict) {
  if (strict) return t.is_label_free();
  for (const auto& m : labels_in(t))
    if (!aliases.contains(m)) return false;
  return true;
}

// nullopt while a label this decision depends on is still undetermined.
std::optional<Classification> decide(const Type& t, const Kinds& known, const std::set<Label>& aliases,
                                     bool strict) {
  using K = Classification::Kind;
  if (t.kind() == Type::Kind::Lbl) {
    auto it = known.find(t.label());
    if (it == known.end()) return std::nullopt;
    return Classification::tag(it->second);
  }
  if (t.kind() != Type::Kind::Prod || t.left().kind() != Type::Kind::Lbl) return K::Hyperelement;

  auto first = known.find(t.left().label());
  if (first == known.end()) return std::nullopt;
  const Classification& k1 = first->second;

  if (t.right().kind() == Type::Kind::Lbl) {
    auto second = known.find(t.right().label());
    if (second == known.end()) return std::nullopt;
    const Classification& k2 = second->second;
    if (k1.kind() == K::Vertex && k2.kind() == K::Vertex) return K::Edge;
    if ((k1.kind() == K::Edge || k1.kind() == K::HigherOrderEdge) && k2.kind() == K::Vertex)
      return K::HigherOrderEdge;
  }

  if (is_data(t.right(), aliases, strict)) {
    if (k1.kind() == K::Vertex) return K::VertexProperty;
    if (k1.kind() == K::Edge) return K::EdgeProperty;
    if (k1.is_property()) return K::MetaProperty;
  }
  return K::Hyperelement;
}

}  // namespace

std::map<Label, Classification> classify_graph(const Schema& s, TaxonomyOptions opts) {
  using K = Classification::Kind;
  std::set<Label> aliases = alias_labels(s);
  Kinds known;
  for (const auto& [l, t] : s.labels()) {
    if (t.kind() == Type::Kind::One)
      known.emplace(l, K::Vertex);
    else if (aliases.contains(l))
      known.emplace(l, K::DataTypeAlias);
  }
  // Decide labels as soon as their dependencies are known; decisions only
  // read already-final kinds, so the order of passes does not matter.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [l, t] : s.labels()) {
      if (known.contains(l)) continue;
      if (auto c = decide(t, known, aliases, opts.strict)) {
        known.emplace(l, *c);
        changed = true;
      }
    }
  }
  for (const auto& [l, _] : s.labels())
    if (!known.contains(l)) known.emplace(l, K::Hyperelement);
  return known;
}

Classification classify_label(const Schema& s, const Label& l, TaxonomyOptions opts) {
  if (!s.has_label(l)) throw Error(ErrorKind::Unknown, "unknown label " + l.str());
  return classify_graph(s, opts).at(l);
}

}  // namespace apg
