#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apg/graph.hpp"

namespace apg {

// ---------------------------------------------------------------- RDF

// Sorted N-Triples. Per element: an rdf:type triple, then one triple per
// leaf of its value (primitive, reference, or unit), with predicate
// <apg:p/LABEL/path> where path joins fst/snd/inl/inr by '/'.
std::string export_rdf(const Graph& g);

// Number of leaves export_rdf emits for one value.
std::size_t rdf_leaf_count(const Value& v);

// RFC 3986 unreserved characters pass, everything else becomes %XX.
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

// ---------------------------------------------------------------- relational

enum class ColumnKind { Id, Fk, Prim, Discriminator };

const char* column_kind_name(ColumnKind k);

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Id;
  std::string ref;  // referenced label (Fk) or primitive name (Prim)
  ValuePath path;   // position in the value; unused for Id
  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::optional<std::string>;  // nullopt: inactive branch

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;  // sorted by id
  friend bool operator==(const Table&, const Table&) = default;
};

struct TableSet {
  std::map<Label, Table> tables;
  friend bool operator==(const TableSet&, const TableSet&) = default;
};

// Columns for a label: id, then leaves of the type in path order. Column
// names join the path by '.'; a leaf at the root is "value". Each sum adds a
// discriminator "<path>#" holding l or r.
std::vector<Column> columns_for(const Label& l, const Type& t);

TableSet export_relational(const Graph& g);

// Inverse of export_relational. Throws Error(Precondition) on missing
// discriminators, dangling foreign keys, duplicate ids, and cells that do
// not fit their column.
Graph import_relational(const TableSet& tables, const Schema& s);

// On disk: one <label>.csv per label (file name percent-encoded) and a
// manifest.json with the schema and column kinds. Present cells are always
// quoted; an absent cell is an empty unquoted field.
void write_tableset(const TableSet& tables, const Schema& s, const std::filesystem::path& dir);
std::pair<TableSet, Schema> read_tableset(const std::filesystem::path& dir);

std::string write_csv(const Table& t);
// Rows of cells; the first row is the header.
std::vector<std::vector<Cell>> parse_csv(std::string_view text);

// ---------------------------------------------------------------- key-value

// (fst, snd) of every l-element's value, in element id order. Throws
// Error(Precondition) listing the offending pairs if fst is not a key.
std::vector<std::pair<Value, Value>> export_kv(const Graph& g, const Label& l);

}  // namespace apg
