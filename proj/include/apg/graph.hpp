#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apg/adt.hpp"

namespace apg {

// Label -> type assignment over a primitive registry.
class Schema {
 public:
  Schema() : registry_(PrimRegistry::standard()) {}
  Schema(std::map<Label, Type> labels, PrimRegistry registry)
      : labels_(std::move(labels)), registry_(std::move(registry)) {}

  const std::map<Label, Type>& labels() const { return labels_; }
  const PrimRegistry& registry() const { return registry_; }

  bool has_label(const Label& l) const { return labels_.contains(l); }
  // Throws Error(Unknown) for labels outside the schema.
  const Type& type_of(const Label& l) const;
  std::set<Label> label_set() const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::map<Label, Type> labels_;
  PrimRegistry registry_;
};

struct Element {
  Label label;
  Value value;

  friend bool operator==(const Element&, const Element&) = default;
};

// An algebraic property graph. Immutable once built.
class Graph {
 public:
  Graph() = default;
  Graph(Schema schema, std::map<ElementId, Element> elements)
      : schema_(std::move(schema)), elements_(std::move(elements)) {}

  const Schema& schema() const { return schema_; }
  const std::map<ElementId, Element>& elements() const { return elements_; }

  bool has_element(const ElementId& e) const { return elements_.contains(e); }
  const Element& element(const ElementId& e) const;
  std::optional<Label> label_of(const ElementId& e) const;
  LabelOf label_lookup() const;
  std::vector<ElementId> elements_with_label(const Label& l) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Schema schema_;
  std::map<ElementId, Element> elements_;
};

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

// Single-owner construction helper. Type and value texts are parsed at
// build() time so labels may be declared in any order.
class GraphBuilder {
 public:
  GraphBuilder() : registry_(PrimRegistry::standard()) {}

  GraphBuilder& registry(PrimRegistry r);
  GraphBuilder& label(Label l, Type t);
  GraphBuilder& label(std::string_view name, std::string type_text);
  GraphBuilder& element(ElementId id, Label label, Value v);
  GraphBuilder& element(std::string_view id, std::string_view label, Value v);
  // value_text uses the canonical value syntax, e.g. "(@t1,@u1)".
  GraphBuilder& element(std::string_view id, std::string_view label,
                        std::string_view value_text);

  Graph build() const;

 private:
  PrimRegistry registry_;
  std::vector<std::pair<Label, std::variant<Type, std::string>>> labels_;
  std::map<ElementId, Element> elements_;
};

enum class Severity { Error, Warning };

struct Finding {
  std::string subject;  // element id or label, rendered
  std::string path;     // value path, "" for the root
  std::string message;
  Severity severity = Severity::Error;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const;
  // One finding per line: "<subject><path>: <message>".
  std::string to_string() const;
};

// Schema well-formedness, element labels, dangling references and the
// conformance law (every element's value inhabits its label's type).
ValidationReport validate_graph(const Graph& g);
ValidationReport validate_schema(const Schema& s);

using ViolatingPairs = std::vector<std::pair<ElementId, ElementId>>;

// Distinct l-elements sharing one value. Empty means the constraint holds.
ViolatingPairs check_unique_property(const Graph& g, const Label& l);

// Distinct l-elements whose values share a first component. Requires the
// type of l to be a product.
ViolatingPairs check_primary_key(const Graph& g, const Label& l);

}  // namespace apg
