#include "apg/catops.hpp"

#include "apg/error.hpp"
#include "apg/union_find.hpp"

namespace apg {

const Morphism& ConstructionResult::leg(const std::string& name) const {
  auto it = legs.find(name);
  if (it == legs.end()) throw Error(ErrorKind::Unknown, "construction has no leg " + name);
  return it->second;
}

GraphPtr initial_graph() {
  static const GraphPtr g = share(Graph());
  return g;
}

GraphPtr terminal_graph() {
  static const GraphPtr g = [] {
    Label top = Label::atom("⊤");
    std::map<Label, Type> labels{{top, Type::one()}};
    std::map<ElementId, Element> elements{{ElementId::atom("⊤"), Element{top, Value::unit()}}};
    return share(Graph(Schema(std::move(labels), PrimRegistry::standard()), std::move(elements)));
  }();
  return g;
}

Morphism unique_morphism(const GraphPtr& g, Universal direction) {
  if (direction == Universal::FromInitial) return Morphism(initial_graph(), g, {}, {});
  GraphPtr t = terminal_graph();
  const Label& top_label = t->schema().labels().begin()->first;
  const ElementId& top_elem = t->elements().begin()->first;
  std::map<Label, Label> labels;
  for (const auto& [l, _] : g->schema().labels()) labels.emplace(l, top_label);
  std::map<ElementId, ElementId> elements;
  for (const auto& [e, _] : g->elements()) elements.emplace(e, top_elem);
  return Morphism(g, t, std::move(labels), std::move(elements));
}

namespace {

// Registries of both operands; constructions never drop primitives.
PrimRegistry merged_registry(const Schema& a, const Schema& b) {
  PrimRegistry r = a.registry();
  for (const auto& name : b.registry().names()) r.add(name, b.registry().domain(name));
  return r;
}

void require_valid_leg(const Morphism& m, const char* what) {
  auto report = check_morphism(m);
  if (!report.ok())
    throw Error(ErrorKind::Precondition, std::string(what) + " is not a morphism:\n" + report.to_string());
}

}  // namespace

ConstructionResult product(const GraphPtr& g1, const GraphPtr& g2) {
  const Schema& s1 = g1->schema();
  const Schema& s2 = g2->schema();

  std::map<Label, Type> labels;
  std::map<Label, Label> proj1_l, proj2_l;
  for (const auto& [l1, t1] : s1.labels()) {
    for (const auto& [l2, t2] : s2.labels()) {
      Label pl = Label::pair(l1, l2);
      const Label& fixed2 = l2;
      const Label& fixed1 = l1;
      Type left = transport_type([&](const Label& x) { return Type::lbl(Label::pair(x, fixed2)); }, t1);
      Type right = transport_type([&](const Label& y) { return Type::lbl(Label::pair(fixed1, y)); }, t2);
      labels.emplace(pl, Type::prod(std::move(left), std::move(right)));
      proj1_l.emplace(pl, l1);
      proj2_l.emplace(pl, l2);
    }
  }

  std::map<ElementId, Element> elements;
  std::map<ElementId, ElementId> proj1_e, proj2_e;
  for (const auto& [e1, el1] : g1->elements()) {
    for (const auto& [e2, el2] : g2->elements()) {
      ElementId pe = ElementId::pair(e1, e2);
      const ElementId& fixed2 = e2;
      const ElementId& fixed1 = e1;
      Value left = transport_value([&](const ElementId& x) { return Value::ref(ElementId::pair(x, fixed2)); },
                                   el1.value, s1.type_of(el1.label));
      Value right = transport_value([&](const ElementId& y) { return Value::ref(ElementId::pair(fixed1, y)); },
                                    el2.value, s2.type_of(el2.label));
      elements.emplace(pe, Element{Label::pair(el1.label, el2.label),
                                   Value::pair(std::move(left), std::move(right))});
      proj1_e.emplace(pe, e1);
      proj2_e.emplace(pe, e2);
    }
  }

  GraphPtr g = share(Graph(Schema(std::move(labels), merged_registry(s1, s2)), std::move(elements)));
  ConstructionResult r{g, {}};
  r.legs.emplace("proj1", Morphism(g, g1, std::move(proj1_l), std::move(proj1_e)));
  r.legs.emplace("proj2", Morphism(g, g2, std::move(proj2_l), std::move(proj2_e)));
  return r;
}

Morphism pair(const Morphism& f, const Morphism& g, const ConstructionResult& prod) {
  if (f.source() != g.source() && !(*f.source() == *g.source()))
    throw Error(ErrorKind::Precondition, "pairing needs morphisms with a common source");
  std::map<Label, Label> labels;
  for (const auto& [l, a] : f.on_labels()) labels.emplace(l, Label::pair(a, g.map_label(l)));
  std::map<ElementId, ElementId> elements;
  for (const auto& [e, a] : f.on_elements()) elements.emplace(e, ElementId::pair(a, g.map_element(e)));
  return Morphism(f.source(), prod.graph, std::move(labels), std::move(elements));
}

Morphism pair(const Morphism& f, const Morphism& g) {
  return pair(f, g, product(f.target(), g.target()));
}

ConstructionResult coproduct(const GraphPtr& g1, const GraphPtr& g2) {
  const Schema& s1 = g1->schema();
  const Schema& s2 = g2->schema();
  std::map<Label, Type> labels;
  std::map<Label, Label> inj1_l, inj2_l;
  for (const auto& [l, t] : s1.labels()) {
    labels.emplace(Label::left(l), transport_type([](const Label& x) { return Type::lbl(Label::left(x)); }, t));
    inj1_l.emplace(l, Label::left(l));
  }
  for (const auto& [l, t] : s2.labels()) {
    labels.emplace(Label::right(l), transport_type([](const Label& x) { return Type::lbl(Label::right(x)); }, t));
    inj2_l.emplace(l, Label::right(l));
  }
  std::map<ElementId, Element> elements;
  std::map<ElementId, ElementId> inj1_e, inj2_e;
  for (const auto& [e, el] : g1->elements()) {
    Value v = transport_value([](const ElementId& x) { return Value::ref(ElementId::left(x)); }, el.value,
                              s1.type_of(el.label));
    elements.emplace(ElementId::left(e), Element{Label::left(el.label), std::move(v)});
    inj1_e.emplace(e, ElementId::left(e));
  }
  for (const auto& [e, el] : g2->elements()) {
    Value v = transport_value([](const ElementId& x) { return Value::ref(ElementId::right(x)); }, el.value,
                              s2.type_of(el.label));
    elements.emplace(ElementId::right(e), Element{Label::right(el.label), std::move(v)});
    inj2_e.emplace(e, ElementId::right(e));
  }
  GraphPtr g = share(Graph(Schema(std::move(labels), merged_registry(s1, s2)), std::move(elements)));
  ConstructionResult r{g, {}};
  r.legs.emplace("inj1", Morphism(g1, g, std::move(inj1_l), std::move(inj1_e)));
  r.legs.emplace("inj2", Morphism(g2, g, std::move(inj2_l), std::move(inj2_e)));
  return r;
}

ConstructionResult coproduct_over_schema(const GraphPtr& g1, const GraphPtr& g2) {
  if (!(g1->schema() == g2->schema()))
    throw Error(ErrorKind::Precondition, "coproduct over a schema needs both graphs on the same schema");
  const Schema& s = g1->schema();
  std::map<Label, Label> ident;
  for (const auto& [l, _] : s.labels()) ident.emplace(l, l);

  std::map<ElementId, Element> elements;
  std::map<ElementId, ElementId> inj1_e, inj2_e;
  for (const auto& [e, el] : g1->elements()) {
    Value v = transport_value([](const ElementId& x) { return Value::ref(ElementId::left(x)); }, el.value,
                              s.type_of(el.label));
    elements.emplace(ElementId::left(e), Element{el.label, std::move(v)});
    inj1_e.emplace(e, ElementId::left(e));
  }
  for (const auto& [e, el] : g2->elements()) {
    Value v = transport_value([](const ElementId& x) { return Value::ref(ElementId::right(x)); }, el.value,
                              s.type_of(el.label));
    elements.emplace(ElementId::right(e), Element{el.label, std::move(v)});
    inj2_e.emplace(e, ElementId::right(e));
  }
  GraphPtr g = share(Graph(s, std::move(elements)));
  ConstructionResult r{g, {}};
  r.legs.emplace("inj1", Morphism(g1, g, ident, std::move(inj1_e)));
  r.legs.emplace("inj2", Morphism(g2, g, ident, std::move(inj2_e)));
  return r;
}

Morphism case_analysis(const Morphism& f, const Morphism& g, const ConstructionResult& sum) {
  if (f.target() != g.target() && !(*f.target() == *g.target()))
    throw Error(ErrorKind::Precondition, "case analysis needs morphisms with a common target");
  const Morphism& inj1 = sum.leg("inj1");
  const Morphism& inj2 = sum.leg("inj2");
  std::map<Label, Label> labels;
  for (const auto& [l, tagged] : inj1.on_labels()) labels.insert_or_assign(tagged, f.map_label(l));
  for (const auto& [l, tagged] : inj2.on_labels()) {
    auto [it, inserted] = labels.emplace(tagged, g.map_label(l));
    if (!inserted && it->second != g.map_label(l))
      throw Error(ErrorKind::Precondition,
                  "case analysis over a shared label " + tagged.str() + " maps it two ways");
  }
  std::map<ElementId, ElementId> elements;
  for (const auto& [e, tagged] : inj1.on_elements()) elements.emplace(tagged, f.map_element(e));
  for (const auto& [e, tagged] : inj2.on_elements()) elements.emplace(tagged, g.map_element(e));
  return Morphism(sum.graph, f.target(), std::move(labels), std::move(elements));
}

Morphism case_analysis(const Morphism& f, const Morphism& g) {
  return case_analysis(f, g, coproduct(f.source(), g.source()));
}

namespace {

void require_parallel(const Morphism& h, const Morphism& j, const char* what) {
  bool same_src = h.source() == j.source() || *h.source() == *j.source();
  bool same_tgt = h.target() == j.target() || *h.target() == *j.target();
  if (!same_src || !same_tgt)
    throw Error(ErrorKind::Precondition, std::string(what) + " needs a parallel pair of morphisms");
}

}  // namespace

ConstructionResult equalizer(const Morphism& h, const Morphism& j) {
  require_parallel(h, j, "equalizer");
  const GraphPtr& src = h.source();
  const Schema& s = src->schema();

  auto label_agrees = [&](const Label& l) { return h.map_label(l) == j.map_label(l); };

  auto eq_type = [&](const Label& l) {
    return label_agrees(l) ? Type::sum(Type::one(), Type::lbl(l)) : Type::one();
  };
  auto eq_value = [&](const ElementId& e) {
    const Label& l = src->element(e).label;
    if (!label_agrees(l)) return Value::unit();
    if (h.map_element(e) == j.map_element(e)) return Value::inr(Value::ref(e));
    return Value::inl(Value::unit());
  };

  std::map<Label, Type> labels;
  std::map<Label, Label> eq_l;
  for (const auto& [l, t] : s.labels()) {
    if (!label_agrees(l)) continue;
    labels.emplace(l, transport_type(eq_type, t));
    eq_l.emplace(l, l);
  }
  std::map<ElementId, Element> elements;
  std::map<ElementId, ElementId> eq_e;
  for (const auto& [e, el] : src->elements()) {
    if (!(h.map_element(e) == j.map_element(e))) continue;
    elements.emplace(e, Element{el.label, transport_value(eq_value, el.value, s.type_of(el.label))});
    eq_e.emplace(e, e);
  }
  GraphPtr g = share(Graph(Schema(std::move(labels), s.registry()), std::move(elements)));
  ConstructionResult r{g, {}};
  r.legs.emplace("eq", Morphism(g, src, std::move(eq_l), std::move(eq_e)));
  return r;
}

ConstructionResult coequalizer(const Morphism& h, const Morphism& j) {
  require_parallel(h, j, "coequalizer");
  const Graph& src = *h.source();
  const GraphPtr& tgt = h.target();
  if (!(src.schema().labels() == tgt->schema().labels()))
    throw Error(ErrorKind::Precondition,
                "coequalizer: schema mismatch, source and target must have the same labels and types");
  for (const auto& [l, _] : src.schema().labels())
    if (h.map_label(l) != l || j.map_label(l) != l)
      throw Error(ErrorKind::Precondition,
                  "coequalizer: non-identity label map at " + l.str());

  UnionFind<ElementId> classes;
  for (const auto& [e, _] : tgt->elements()) classes.add(e);
  for (const auto& [e, _] : src.elements()) classes.unite(h.map_element(e), j.map_element(e));

  // Least member of each class is its representative.
  std::map<ElementId, ElementId> least;
  for (const auto& [e, _] : tgt->elements()) {
    const ElementId& root = classes.find(e);
    auto [it, inserted] = least.emplace(root, e);
    if (!inserted && e < it->second) it->second = e;
  }
  std::map<ElementId, ElementId> to_class;
  for (const auto& [e, el] : tgt->elements()) {
    const ElementId& rep = least.at(classes.find(e));
    if (tgt->element(rep).label != el.label)
      throw Error(ErrorKind::Precondition,
                  "coequalizer: incompatible labels in one class: " + e.str() + " has label " +
                      el.label.str() + " but " + rep.str() + " has label " +
                      tgt->element(rep).label.str());
    to_class.emplace(e, ElementId::cls(rep));
  }

  std::map<ElementId, Element> elements;
  for (const auto& [_, rep] : least) {
    const Element& el = tgt->element(rep);
    elements.emplace(ElementId::cls(rep), Element{el.label, rename_elements(to_class, el.value)});
  }
  std::map<Label, Label> ident;
  for (const auto& [l, _] : tgt->schema().labels()) ident.emplace(l, l);

  GraphPtr g = share(Graph(tgt->schema(), std::move(elements)));
  ConstructionResult r{g, {}};
  r.legs.emplace("coeq", Morphism(tgt, g, std::move(ident), std::move(to_class)));
  return r;
}

ConstructionResult pushout(const Morphism& f, const Morphism& g) {
  if (f.source() != g.source() && !(*f.source() == *g.source()))
    throw Error(ErrorKind::Precondition, "pushout needs a span: morphisms with a common source");
  require_valid_leg(f, "left leg of the span");
  require_valid_leg(g, "right leg of the span");
  const Graph& apex = *f.source();

  if (apex.schema().labels().empty()) {
    ConstructionResult sum = coproduct(f.target(), g.target());
    ConstructionResult r{sum.graph, {}};
    r.legs.emplace("k", sum.leg("inj1"));
    r.legs.emplace("m", sum.leg("inj2"));
    return r;
  }

  const Schema& s = apex.schema();
  auto identity_on_labels = [&](const Morphism& m) {
    for (const auto& [l, img] : m.on_labels())
      if (l != img) return false;
    return true;
  };
  if (!(f.target()->schema().labels() == s.labels()) ||
      !(g.target()->schema().labels() == s.labels()) || !identity_on_labels(f) ||
      !identity_on_labels(g))
    throw Error(ErrorKind::Precondition,
                "pushout needs a span over one schema with identity label maps "
                "(or an apex without labels)");

  ConstructionResult sum = coproduct_over_schema(f.target(), g.target());
  Morphism left = compose(sum.leg("inj1"), f);
  Morphism right = compose(sum.leg("inj2"), g);
  ConstructionResult q = coequalizer(left, right);
  const Morphism& coeq = q.leg("coeq");
  ConstructionResult r{q.graph, {}};
  r.legs.emplace("k", compose(coeq, sum.leg("inj1")));
  r.legs.emplace("m", compose(coeq, sum.leg("inj2")));
  return r;
}

}  // namespace apg
