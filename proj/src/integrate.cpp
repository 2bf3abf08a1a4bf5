#include "apg/integrate.hpp"

#include <unordered_map>

#include "apg/error.hpp"

namespace apg {

Match match_by_key(const GraphPtr& g1, const GraphPtr& g2, const std::optional<ValuePath>& key_path) {
  const Schema& s = g1->schema();
  if (!(s == g2->schema()))
    throw Error(ErrorKind::Precondition, "key matching needs both graphs on the same schema");
  for (const auto& [l, t] : s.labels())
    if (!t.is_label_free())
      throw Error(ErrorKind::Precondition,
                  "key matching needs label-free types; " + l.str() + " has type " + render_type(t));

  auto key_of = [&](const Element& el) -> std::optional<std::string> {
    if (!key_path) return el.label.str() + "\n" + render_value(el.value);
    auto sub = value_at(el.value, *key_path);
    if (!sub) return std::nullopt;
    return el.label.str() + "\n" + render_value(*sub);
  };

  std::unordered_map<std::string, std::vector<ElementId>> index;
  for (const auto& [e2, el2] : g2->elements())
    if (auto k = key_of(el2)) index[*k].push_back(e2);

  std::map<ElementId, Element> elements;
  std::map<ElementId, ElementId> left_e, right_e;
  for (const auto& [e1, el1] : g1->elements()) {
    auto k = key_of(el1);
    if (!k) continue;
    auto it = index.find(*k);
    if (it == index.end()) continue;
    for (const auto& e2 : it->second) {
      ElementId pe = ElementId::pair(e1, e2);
      elements.emplace(pe, el1);
      left_e.emplace(pe, e1);
      right_e.emplace(pe, e2);
    }
  }

  std::map<Label, Label> ident;
  for (const auto& [l, _] : s.labels()) ident.emplace(l, l);
  GraphPtr apex = share(Graph(s, std::move(elements)));
  return Match{apex, Morphism(apex, g1, ident, std::move(left_e)),
               Morphism(apex, g2, ident, std::move(right_e))};
}

ConstructionResult merge_by_key(const GraphPtr& g1, const GraphPtr& g2,
                                const std::optional<ValuePath>& key_path) {
  Match m = match_by_key(g1, g2, key_path);
  return pushout(m.left, m.right);
}

}  // namespace apg
