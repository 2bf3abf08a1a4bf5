#include "apg/morphism.hpp"

#include <algorithm>
#include <functional>

#include "apg/error.hpp"

namespace apg {

Morphism::Morphism(GraphPtr source, GraphPtr target, std::map<Label, Label> on_labels,
                   std::map<ElementId, ElementId> on_elements)
    : source_(std::move(source)),
      target_(std::move(target)),
      on_labels_(std::move(on_labels)),
      on_elements_(std::move(on_elements)) {
  if (!source_ || !target_) throw Error(ErrorKind::Precondition, "morphism endpoints must be set");
}

Morphism Morphism::identity(const GraphPtr& g) {
  std::map<Label, Label> labels;
  for (const auto& [l, _] : g->schema().labels()) labels.emplace(l, l);
  std::map<ElementId, ElementId> elements;
  for (const auto& [e, _] : g->elements()) elements.emplace(e, e);
  return Morphism(g, g, std::move(labels), std::move(elements));
}

const Label& Morphism::map_label(const Label& l) const {
  auto it = on_labels_.find(l);
  if (it == on_labels_.end()) throw Error(ErrorKind::Unknown, "label map undefined on " + l.str());
  return it->second;
}

const ElementId& Morphism::map_element(const ElementId& e) const {
  auto it = on_elements_.find(e);
  if (it == on_elements_.end())
    throw Error(ErrorKind::Unknown, "element map undefined on " + e.str());
  return it->second;
}

ValidationReport check_morphism(const Morphism& h) {
  ValidationReport report;
  const Graph& src = *h.source();
  const Graph& tgt = *h.target();
  for (const auto& [l, _] : src.schema().labels()) {
    auto it = h.on_labels().find(l);
    if (it == h.on_labels().end())
      report.findings.push_back({l.str(), "", "label map is undefined here"});
    else if (!tgt.schema().has_label(it->second))
      report.findings.push_back({l.str(), "", "image label " + it->second.str() + " is not in the target"});
  }
  for (const auto& [l, _] : h.on_labels())
    if (!src.schema().has_label(l))
      report.findings.push_back({l.str(), "", "label map is defined outside the source"});
  for (const auto& [e, el] : src.elements()) {
    auto it = h.on_elements().find(e);
    if (it == h.on_elements().end()) {
      report.findings.push_back({e.str(), "", "element map is undefined here"});
      continue;
    }
    auto image_label = tgt.label_of(it->second);
    if (!image_label) {
      report.findings.push_back({e.str(), "", "image element " + it->second.str() + " is not in the target"});
      continue;
    }
    auto lit = h.on_labels().find(el.label);
    if (lit != h.on_labels().end() && lit->second != *image_label)
      report.findings.push_back(
          {e.str(), "",
           "not natural on labels: label maps to " + lit->second.str() + " but image element " +
               it->second.str() + " has label " + image_label->str()});
  }
  for (const auto& [e, _] : h.on_elements())
    if (!src.has_element(e))
      report.findings.push_back({e.str(), "", "element map is defined outside the source"});
  return report;
}

Morphism compose(const Morphism& h, const Morphism& g) {
  if (g.target() != h.source() && !(*g.target() == *h.source()))
    throw Error(ErrorKind::Precondition, "cannot compose: target of the first morphism is not the source of the second");
  std::map<Label, Label> labels;
  for (const auto& [l, m] : g.on_labels()) labels.emplace(l, h.map_label(m));
  std::map<ElementId, ElementId> elements;
  for (const auto& [e, f] : g.on_elements()) elements.emplace(e, h.map_element(f));
  return Morphism(g.source(), h.target(), std::move(labels), std::move(elements));
}

bool check_sigma_preserving(const Morphism& h) {
  const Schema& s1 = h.source()->schema();
  const Schema& s2 = h.target()->schema();
  for (const auto& [l, t] : s1.labels()) {
    auto it = h.on_labels().find(l);
    if (it == h.on_labels().end() || !s2.has_label(it->second)) return false;
    Type moved = transport_type([&](const Label& x) { return Type::lbl(h.map_label(x)); }, t);
    if (!(moved == s2.type_of(it->second))) return false;
  }
  return true;
}

bool check_upsilon_natural(const Morphism& h) {
  if (!check_sigma_preserving(h))
    throw Error(ErrorKind::Precondition, "υ-naturality is only defined for σ-preserving morphisms");
  const Graph& src = *h.source();
  const Graph& tgt = *h.target();
  for (const auto& [e, el] : src.elements()) {
    Value moved = transport_value(
        [&](const ElementId& x) { return Value::ref(h.map_element(x)); }, el.value,
        src.schema().type_of(el.label));
    if (!(moved == tgt.element(h.map_element(e)).value)) return false;
  }
  return true;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const GraphPtr& a, const GraphPtr& b) : a_(a), b_(b) {
    for (const auto& [l, _] : a->schema().labels()) a_labels_.push_back(l);
    for (const auto& [l, _] : b->schema().labels()) b_labels_.push_back(l);
    for (const auto& [e, _] : a->elements()) a_elems_.push_back(e);
  }

  std::optional<Morphism> run() {
    if (a_labels_.size() != b_labels_.size() || a_->elements().size() != b_->elements().size())
      return std::nullopt;
    if (assign_label(0)) return Morphism(a_, b_, label_map_, element_map_);
    return std::nullopt;
  }

 private:
  std::size_t count(const Graph& g, const Label& l) const {
    return g.elements_with_label(l).size();
  }

  bool assign_label(std::size_t i) {
    if (i == a_labels_.size()) {
      // σ must transport exactly.
      for (const auto& l : a_labels_) {
        Type moved = rename_labels(label_map_, a_->schema().type_of(l));
        if (!(moved == b_->schema().type_of(label_map_.at(l)))) return false;
      }
      return assign_element(0);
    }
    const Label& l = a_labels_[i];
    for (const auto& cand : b_labels_) {
      if (used_labels_.contains(cand)) continue;
      if (count(*a_, l) != count(*b_, cand)) continue;
      label_map_[l] = cand;
      used_labels_.insert(cand);
      if (assign_label(i + 1)) return true;
      used_labels_.erase(cand);
      label_map_.erase(l);
    }
    return false;
  }

  bool assign_element(std::size_t i) {
    if (i == a_elems_.size()) {
      for (const auto& [e, el] : a_->elements()) {
        Value moved = rename_elements(element_map_, el.value);
        if (!(moved == b_->element(element_map_.at(e)).value)) return false;
      }
      return true;
    }
    const ElementId& e = a_elems_[i];
    const Label& want = label_map_.at(a_->element(e).label);
    for (const auto& cand : b_->elements_with_label(want)) {
      if (used_elems_.contains(cand)) continue;
      element_map_[e] = cand;
      used_elems_.insert(cand);
      if (assign_element(i + 1)) return true;
      used_elems_.erase(cand);
      element_map_.erase(e);
    }
    return false;
  }

  GraphPtr a_, b_;
  std::vector<Label> a_labels_, b_labels_;
  std::vector<ElementId> a_elems_;
  std::map<Label, Label> label_map_;
  std::set<Label> used_labels_;
  std::map<ElementId, ElementId> element_map_;
  std::set<ElementId> used_elems_;
};

}  // namespace

std::optional<Morphism> find_isomorphism(const GraphPtr& a, const GraphPtr& b) {
  return IsoSearch(a, b).run();
}

}  // namespace apg
