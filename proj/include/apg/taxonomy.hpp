#pragma once

#include <map>
#include <memory>
#include <string>

#include "apg/graph.hpp"

namespace apg {

// Shape-based kind of a label.
class Classification {
 public:
  enum class Kind {
    Vertex,
    Edge,
    HigherOrderEdge,
    VertexProperty,
    EdgeProperty,
    MetaProperty,
    DataTypeAlias,
    Tag,
    Hyperelement
  };

  Classification(Kind k) : kind_(k) {}  // NOLINT: implicit for convenience
  static Classification tag(Classification of);

  Kind kind() const { return kind_; }
  // Kind of the tagged label; only for Tag.
  const Classification& tagged() const { return *of_; }

  bool is_property() const {
    return kind_ == Kind::VertexProperty || kind_ == Kind::EdgeProperty || kind_ == Kind::MetaProperty;
  }

  // "Vertex", "Tag(Vertex)", ...
  std::string str() const;

  friend bool operator==(const Classification& a, const Classification& b);

 private:
  Kind kind_;
  std::shared_ptr<const Classification> of_;
};

struct TaxonomyOptions {
  // Strict: a property's data part must be literally label-free.
  // Otherwise it may also mention data type aliases.
  bool strict = true;

  // APG_STRICT_TAXONOMY=0 turns strict mode off; unset or anything else keeps it.
  static TaxonomyOptions from_environment();
};

// Rules, first match wins:
//   Vertex          σ(l) = 1
//   DataTypeAlias   σ(l) mentions only aliases, transitively
//   Tag(k)          σ(l) = l1, with l1 of kind k
//   Edge            σ(l) = l1 * l2, both vertices
//   HigherOrderEdge σ(l) = l1 * l2, l1 an edge or higher-order edge, l2 a vertex
//   VertexProperty  σ(l) = l1 * t, l1 a vertex, t data
//   EdgeProperty    σ(l) = l1 * t, l1 an edge
//   MetaProperty    σ(l) = l1 * t, l1 a property
//   Hyperelement    anything else, including labels caught in a cycle
std::map<Label, Classification> classify_graph(const Schema& s, TaxonomyOptions opts = {});

// Throws Error(Unknown) if l is not in s.
Classification classify_label(const Schema& s, const Label& l, TaxonomyOptions opts = {});

}  // namespace apg
