#pragma once

#include <map>
#include <string>

#include "apg/morphism.hpp"

namespace apg {

// A constructed graph together with its structure morphisms, keyed by
// name: proj1/proj2, inj1/inj2, eq, coeq, k/m.
struct ConstructionResult {
  GraphPtr graph;
  std::map<std::string, Morphism> legs;

  const Morphism& leg(const std::string& name) const;
};

// No labels, no elements.
GraphPtr initial_graph();

// One label ⊤ of type 1 and one element ⊤ with value ().
GraphPtr terminal_graph();

enum class Universal { FromInitial, ToTerminal };

Morphism unique_morphism(const GraphPtr& g, Universal direction);

// Labels and elements are pairs; the type of (l1,l2) is the type of l1 with
// each label x replaced by (x,l2), times the type of l2 with each label y
// replaced by (l1,y). Values follow the same pairing.
ConstructionResult product(const GraphPtr& g1, const GraphPtr& g2);

// Pairing into an already-built product (whose legs are proj1/proj2).
Morphism pair(const Morphism& f, const Morphism& g, const ConstructionResult& prod);
Morphism pair(const Morphism& f, const Morphism& g);

// Tagged disjoint union of labels and elements (L:x / R:x).
ConstructionResult coproduct(const GraphPtr& g1, const GraphPtr& g2);

// Coproduct of two graphs on one schema: the labels are shared, the
// elements are tagged. Injections are the identity on labels.
ConstructionResult coproduct_over_schema(const GraphPtr& g1, const GraphPtr& g2);

// Case analysis out of an already-built coproduct (legs inj1/inj2), tagged
// either way.
Morphism case_analysis(const Morphism& f, const Morphism& g, const ConstructionResult& sum);
Morphism case_analysis(const Morphism& f, const Morphism& g);

// Subgraph where the parallel pair h, j agrees. Label references to labels on
// which h and j disagree collapse to 1; references to agreeing labels become
// 1 + l, with inl () standing for an element the pair does not agree on.
ConstructionResult equalizer(const Morphism& h, const Morphism& j);

// Quotient of the target by the equivalence generated by h(e) ~ j(e).
// Requires source and target on the same labels and types, identity label
// maps, and label-homogeneous classes. Each class is named by its least
// member: C:<least id>.
ConstructionResult coequalizer(const Morphism& h, const Morphism& j);

// Pushout of a span G1 <-f- G -g-> G2.
//
// When G, G1, G2 share one schema and f, g are the identity on labels, this
// is coproduct_over_schema followed by coequalizer, and the result keeps the
// schema. A span out of a graph with no labels gives the plain coproduct.
// Any other span has no pushout in these categories and is rejected.
ConstructionResult pushout(const Morphism& f, const Morphism& g);

}  // namespace apg
