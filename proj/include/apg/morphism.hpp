#pragma once

#include <map>
#include <optional>

#include "apg/graph.hpp"

namespace apg {

// A pair of finite maps (labels, elements) between two graphs.
class Morphism {
 public:
  Morphism(GraphPtr source, GraphPtr target, std::map<Label, Label> on_labels,
           std::map<ElementId, ElementId> on_elements);

  static Morphism identity(const GraphPtr& g);

  const GraphPtr& source() const { return source_; }
  const GraphPtr& target() const { return target_; }
  const std::map<Label, Label>& on_labels() const { return on_labels_; }
  const std::map<ElementId, ElementId>& on_elements() const { return on_elements_; }

  // Throw Error(Unknown) outside the domain.
  const Label& map_label(const Label& l) const;
  const ElementId& map_element(const ElementId& e) const;

  // Same label and element maps (endpoints are not compared).
  bool same_maps(const Morphism& other) const {
    return on_labels_ == other.on_labels_ && on_elements_ == other.on_elements_;
  }

 private:
  GraphPtr source_;
  GraphPtr target_;
  std::map<Label, Label> on_labels_;
  std::map<ElementId, ElementId> on_elements_;
};

// Totality, images in the target, and naturality on labels:
// on_labels(label(e)) == label(on_elements(e)) for every source element e.
ValidationReport check_morphism(const Morphism& h);

// h after g. Requires g.target == h.source.
Morphism compose(const Morphism& h, const Morphism& g);

// Transporting each source label's type along on_labels gives the type of
// the image label.
bool check_sigma_preserving(const Morphism& h);

// Transporting each source element's value along the maps gives the value of
// the image element. Requires a σ-preserving morphism.
bool check_upsilon_natural(const Morphism& h);

// Label bijection plus element bijection carrying types to types and values
// to values. Exhaustive search; intended for small graphs.
std::optional<Morphism> find_isomorphism(const GraphPtr& a, const GraphPtr& b);

}  // namespace apg
