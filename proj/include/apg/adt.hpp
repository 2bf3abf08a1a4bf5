#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apg/type.hpp"
#include "apg/value.hpp"

namespace apg {

// Access path into a value: components are "fst", "snd", "inl", "inr".
using ValuePath = std::vector<std::string>;

// ".snd.fst"; the root renders as "".
std::string render_path(const ValuePath& p);

struct TypeMismatch {
  ValuePath path;
  std::string message;
};

using LabelOf = std::function<std::optional<Label>(const ElementId&)>;

// Bidirectional check of an annotation-free value against an expected type.
// Ref e inhabits Lbl l iff label_of(e) == l. Nothing inhabits 0.
std::optional<TypeMismatch> check_value(const Value& v, const Type& expected,
                                        const PrimRegistry& registry,
                                        const LabelOf& label_of);

// True if the literal belongs to the domain of the named primitive.
bool literal_in_domain(const Literal& lit, PrimDomain domain);

using LabelTransport = std::function<Type(const Label&)>;
using ElementTransport = std::function<Value(const ElementId&)>;

// Structural recursion replacing every Lbl l by f(l).
Type transport_type(const LabelTransport& f, const Type& t);
// Map form; throws Error(Unknown) for labels outside the map.
Type transport_type(const std::map<Label, Type>& f, const Type& t);
// Relabelling form: Lbl l becomes Lbl rename(l).
Type rename_labels(const std::map<Label, Label>& rename, const Type& t);

// Structural recursion replacing every Id e by g(e). `at` is the type v
// inhabits; the result inhabits transport_type(f, at) whenever g(e) inhabits
// f(label of e). Throws Error(Type) when v does not have the shape of `at`.
Value transport_value(const ElementTransport& g, const Value& v,
                      const Type& at);
Value transport_value(const std::map<ElementId, Value>& g, const Value& v,
                      const Type& at);
// Element-renaming form: Id e becomes Id rename(e).
Value rename_elements(const std::map<ElementId, ElementId>& rename,
                      const Value& v);

// Sub-value at a path, or nullopt if an injection on the path is not taken.
std::optional<Value> value_at(const Value& v, const ValuePath& path);

}  // namespace apg
