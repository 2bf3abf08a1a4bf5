#pragma once

#include <string>
#include <string_view>

#include "apg/migrate.hpp"
#include "apg/morphism.hpp"

namespace apg {

// APG-JSON:
//   {"primitives": [...], "schema": {"<label>": "<type>"},
//    "elements": {"<id>": {"label": "<label>", "value": V}}}
// V is one of {"unit": {}}, {"pair": [V, V]}, {"inl": V}, {"inr": V},
// {"prim": {"type": "<prim>", "value": <literal>}}, {"ref": "<id>"}.
// Primitives are names of standard primitives or {"name": .., "domain": ..}.
// A missing "primitives" key means the standard set.

// Throws ParseError on malformed input and Error(Type) carrying the
// validation report when `validate` is set and the graph is invalid.
Graph read_graph(std::string_view json_text, bool validate = true);
std::string write_graph(const Graph& g);

// Schema part only; accepts either a full document or a bare label map.
Schema read_schema(std::string_view json_text);
std::string write_schema(const Schema& s);

// {"onLabels": {...}, "onElements": {...}} between given graphs.
Morphism read_morphism(std::string_view json_text, const GraphPtr& source, const GraphPtr& target);
std::string write_morphism(const Morphism& m);

// {"source": <schema>, "target": <schema>, "onLabels": {"l": "<type>"},
//  "onTerms": {"l": "<term>"}}
SchemaMapping read_mapping(std::string_view json_text);
std::string write_mapping(const SchemaMapping& m);

}  // namespace apg
