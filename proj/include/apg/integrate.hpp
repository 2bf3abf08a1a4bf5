#pragma once

#include <optional>

#include "apg/catops.hpp"

namespace apg {

// G1 <-left- apex -right-> G2
struct Match {
  GraphPtr apex;
  Morphism left;
  Morphism right;
};

// Pairs every element of g1 with every element of g2 carrying the same label
// and the same key. The key is the whole value unless `key_path` selects a
// sub-value (e.g. {"fst"} for a (key, payload) pair). Both graphs must share
// one schema whose types mention no labels.
//
// The apex has elements (e1,e2) with e1's value; the legs project.
Match match_by_key(const GraphPtr& g1, const GraphPtr& g2,
                   const std::optional<ValuePath>& key_path = std::nullopt);

// Pushout of match_by_key.
ConstructionResult merge_by_key(const GraphPtr& g1, const GraphPtr& g2,
                                const std::optional<ValuePath>& key_path = std::nullopt);

}  // namespace apg
