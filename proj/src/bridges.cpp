#include "apg/bridges.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "apg/error.hpp"
#include "apg/io.hpp"
#include "json.hpp"

namespace apg {

// ---------------------------------------------------------------- RDF

std::string percent_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

std::string percent_decode(std::string_view s) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ParseError("bad percent escape", 0);
  };
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%') {
      if (i + 2 >= s.size()) throw ParseError("truncated percent escape", i);
      out += static_cast<char>(nibble(s[i + 1]) * 16 + nibble(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

namespace {

const char* xsd_for(PrimDomain d) {
  switch (d) {
    case PrimDomain::Text: return "http://www.w3.org/2001/XMLSchema#string";
    case PrimDomain::Natural: return "http://www.w3.org/2001/XMLSchema#nonNegativeInteger";
    case PrimDomain::Integer: return "http://www.w3.org/2001/XMLSchema#integer";
    case PrimDomain::Real: return "http://www.w3.org/2001/XMLSchema#double";
    case PrimDomain::Boolean: return "http://www.w3.org/2001/XMLSchema#boolean";
  }
  return "";
}

std::string nt_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

// Lexical form of a literal without the value-syntax quoting.
std::string lexical(const Literal& lit) {
  if (const auto* s = std::get_if<std::string>(&lit)) return *s;
  if (const auto* d = std::get_if<double>(&lit)) {
    if (std::isnan(*d)) return "NaN";
    if (std::isinf(*d)) return *d > 0 ? "INF" : "-INF";
  }
  return render_literal(lit);
}

std::string element_iri(const ElementId& e) { return "<apg:e/" + percent_encode(e.str()) + ">"; }

void leaves(const Value& v, const PrimRegistry& reg, const std::string& pred, std::vector<std::pair<std::string, std::string>>& out) {
  switch (v.kind()) {
    case Value::Kind::Unit: out.emplace_back(pred, "<apg:unit>"); return;
    case Value::Kind::Ref: out.emplace_back(pred, element_iri(v.element())); return;
    case Value::Kind::Prim: {
      PrimDomain d = reg.contains(v.prim_type()) ? reg.domain(v.prim_type()) : PrimDomain::Text;
      out.emplace_back(pred, "\"" + nt_escape(lexical(v.literal())) + "\"^^<" + xsd_for(d) + ">");
      return;
    }
    case Value::Kind::Pair:
      leaves(v.first(), reg, pred + "/fst", out);
      leaves(v.second(), reg, pred + "/snd", out);
      return;
    case Value::Kind::Inl: leaves(v.first(), reg, pred + "/inl", out); return;
    case Value::Kind::Inr: leaves(v.first(), reg, pred + "/inr", out); return;
  }
}

}  // namespace

std::size_t rdf_leaf_count(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Pair: return rdf_leaf_count(v.first()) + rdf_leaf_count(v.second());
    case Value::Kind::Inl:
    case Value::Kind::Inr: return rdf_leaf_count(v.first());
    default: return 1;
  }
}

std::string export_rdf(const Graph& g) {
  std::vector<std::string> lines;
  for (const auto& [id, el] : g.elements()) {
    std::string subj = element_iri(id);
    std::string label = percent_encode(el.label.str());
    lines.push_back(subj + " <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <apg:l/" + label + "> .");
    std::vector<std::pair<std::string, std::string>> po;
    leaves(el.value, g.schema().registry(), "apg:p/" + label, po);
    for (const auto& [p, o] : po) lines.push_back(subj + " <" + p + "> " + o + " .");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// ---------------------------------------------------------------- relational

const char* column_kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::Id: return "id";
    case ColumnKind::Fk: return "fk";
    case ColumnKind::Prim: return "prim";
    case ColumnKind::Discriminator: return "tag";
  }
  return "?";
}

namespace {

ColumnKind parse_column_kind(std::string_view s) {
  if (s == "id") return ColumnKind::Id;
  if (s == "fk") return ColumnKind::Fk;
  if (s == "prim") return ColumnKind::Prim;
  if (s == "tag") return ColumnKind::Discriminator;
  throw ParseError("unknown column kind '" + std::string(s) + "'", 0);
}

std::string column_name(const ValuePath& p) {
  if (p.empty()) return "value";
  std::string out;
  for (const auto& c : p) {
    if (!out.empty()) out += '.';
    out += c;
  }
  return out;
}

void flatten(const Type& t, ValuePath& path, std::vector<Column>& out) {
  switch (t.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return;
    case Type::Kind::Prim:
      out.push_back({column_name(path), ColumnKind::Prim, t.prim_name(), path});
      return;
    case Type::Kind::Lbl:
      out.push_back({column_name(path), ColumnKind::Fk, t.label().str(), path});
      return;
    case Type::Kind::Sum:
      out.push_back({column_name(path) + "#", ColumnKind::Discriminator, "", path});
      path.push_back("inl");
      flatten(t.left(), path, out);
      path.back() = "inr";
      flatten(t.right(), path, out);
      path.pop_back();
      return;
    case Type::Kind::Prod:
      path.push_back("fst");
      flatten(t.left(), path, out);
      path.back() = "snd";
      flatten(t.right(), path, out);
      path.pop_back();
      return;
  }
}

std::string cell_text(const Value& v) {
  if (v.kind() == Value::Kind::Ref) return v.element().str();
  const Literal& lit = v.literal();
  if (const auto* s = std::get_if<std::string>(&lit)) return *s;
  return render_literal(lit);
}

// Fills cells of `row` for value v at type t, following the same walk as
// flatten; `col` advances over the columns of t.
void shred(const Value& v, const Type& t, std::vector<Cell>& row, std::size_t& col, bool active) {
  switch (t.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return;
    case Type::Kind::Prim:
    case Type::Kind::Lbl:
      row[col++] = active ? Cell(cell_text(v)) : std::nullopt;
      return;
    case Type::Kind::Sum: {
      bool left = active && v.kind() == Value::Kind::Inl;
      bool right = active && v.kind() == Value::Kind::Inr;
      row[col++] = active ? Cell(left ? "l" : "r") : std::nullopt;
      Value inner = active ? v.first() : Value::unit();
      shred(inner, t.left(), row, col, left);
      shred(inner, t.right(), row, col, right);
      return;
    }
    case Type::Kind::Prod:
      shred(active ? v.first() : v, t.left(), row, col, active);
      shred(active ? v.second() : v, t.right(), row, col, active);
      return;
  }
}

Literal parse_cell_literal(const std::string& cell, PrimDomain d, const std::string& where) {
  if (d == PrimDomain::Text) return cell;
  try {
    Value v = parse_value("P " + cell);
    Literal lit = v.literal();
    if (d == PrimDomain::Real) {
      if (const auto* i = std::get_if<std::int64_t>(&lit)) lit = static_cast<double>(*i);
    }
    if (literal_in_domain(lit, d)) return lit;
  } catch (const ParseError&) {
  }
  throw Error(ErrorKind::Precondition, where + ": cell '" + cell + "' is not a " + domain_name(d));
}

class Unshredder {
 public:
  Unshredder(const Schema& s, const std::map<Label, std::set<std::string>>& ids,
             const std::vector<Cell>& row, std::string where)
      : s_(s), ids_(ids), row_(row), where_(std::move(where)) {}

  Value run(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Zero:
        throw Error(ErrorKind::Precondition, where_ + ": row inhabits the empty type");
      case Type::Kind::One:
        return Value::unit();
      case Type::Kind::Prim: {
        const std::string& c = take("primitive");
        return Value::prim(t.prim_name(), parse_cell_literal(c, s_.registry().domain(t.prim_name()), where_));
      }
      case Type::Kind::Lbl: {
        const std::string& c = take("foreign key");
        auto it = ids_.find(t.label());
        if (it == ids_.end() || !it->second.contains(c))
          throw Error(ErrorKind::Precondition,
                      where_ + ": dangling foreign key '" + c + "' into " + t.label().str());
        return Value::ref(Key::parse(c));
      }
      case Type::Kind::Sum: {
        std::string d = take("discriminator");
        if (d == "l") {
          Value v = run(t.left());
          skip(t.right());
          return Value::inl(std::move(v));
        }
        if (d == "r") {
          skip(t.left());
          return Value::inr(run(t.right()));
        }
        throw Error(ErrorKind::Precondition, where_ + ": discriminator '" + d + "' is neither l nor r");
      }
      case Type::Kind::Prod: {
        Value a = run(t.left());
        Value b = run(t.right());
        return Value::pair(std::move(a), std::move(b));
      }
    }
    return Value::unit();
  }

 private:
  const std::string& take(const char* what) {
    if (col_ >= row_.size() || !row_[col_])
      throw Error(ErrorKind::Precondition, where_ + ": missing " + std::string(what) + " cell");
    return *row_[col_++];
  }

  void skip(const Type& t) {
    std::vector<Column> cols;
    ValuePath p;
    flatten(t, p, cols);
    for (std::size_t i = 0; i < cols.size(); ++i, ++col_)
      if (col_ < row_.size() && row_[col_])
        throw Error(ErrorKind::Precondition, where_ + ": inactive branch has a value");
  }

  const Schema& s_;
  const std::map<Label, std::set<std::string>>& ids_;
  const std::vector<Cell>& row_;
  std::string where_;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Column> columns_for(const Label&, const Type& t) {
  std::vector<Column> cols{{"id", ColumnKind::Id, "", {}}};
  ValuePath p;
  flatten(t, p, cols);
  return cols;
}

TableSet export_relational(const Graph& g) {
  TableSet ts;
  for (const auto& [l, t] : g.schema().labels()) ts.tables.emplace(l, Table{columns_for(l, t), {}});
  for (const auto& [id, el] : g.elements()) {
    Table& tbl = ts.tables.at(el.label);
    std::vector<Cell> row(tbl.columns.size());
    row[0] = id.str();
    std::size_t col = 1;
    shred(el.value, g.schema().type_of(el.label), row, col, true);
    tbl.rows.push_back(std::move(row));
  }
  return ts;
}

Graph import_relational(const TableSet& tables, const Schema& s) {
  for (const auto& [l, _] : tables.tables)
    if (!s.has_label(l)) throw Error(ErrorKind::Precondition, "table for unknown label " + l.str());

  std::map<Label, std::set<std::string>> ids;
  for (const auto& [l, tbl] : tables.tables) {
    auto& set = ids[l];
    for (const auto& row : tbl.rows) {
      if (row.empty() || !row[0]) throw Error(ErrorKind::Precondition, "row without id in " + l.str());
      if (!set.insert(*row[0]).second)
        throw Error(ErrorKind::Precondition, "duplicate id " + *row[0] + " in " + l.str());
    }
  }

  std::map<ElementId, Element> elements;
  for (const auto& [l, tbl] : tables.tables) {
    const Type& t = s.type_of(l);
    if (!(tbl.columns == columns_for(l, t)))
      throw Error(ErrorKind::Precondition, "columns of table " + l.str() + " do not match its type");
    for (const auto& row : tbl.rows) {
      std::string where = l.str() + " row " + *row[0];
      if (row.size() != tbl.columns.size())
        throw Error(ErrorKind::Precondition, where + ": wrong number of cells");
      Unshredder u(s, ids, row, where);
      Value v = u.run(t);
      ElementId id = Key::parse(*row[0]);
      if (!elements.emplace(id, Element{l, std::move(v)}).second)
        throw Error(ErrorKind::Precondition, "id " + id.str() + " appears under two labels");
    }
  }
  return Graph(s, std::move(elements));
}

// ---------------------------------------------------------------- CSV

namespace {

std::string quote_csv(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      if (cells[i]) out += quote_csv(*cells[i]);
    }
    out += "\r\n";
  };
  std::vector<Cell> header;
  for (const auto& c : t.columns) header.push_back(c.name);
  line(header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::vector<std::vector<Cell>> parse_csv(std::string_view text) {
  std::vector<std::vector<Cell>> rows;
  std::vector<Cell> row;
  std::size_t i = 0;
  bool pending = false;  // a field has started on this line
  while (i < text.size()) {
    char c = text[i];
    if (c == '"') {
      std::string field;
      std::size_t start = i++;
      while (true) {
        if (i >= text.size()) throw ParseError("unterminated quoted CSV field", start);
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += text[i++];
      }
      row.emplace_back(std::move(field));
      pending = false;
      if (i < text.size() && text[i] == ',') {
        ++i;
        pending = true;
      } else if (i < text.size() && text[i] != '\r' && text[i] != '\n') {
        throw ParseError("unexpected character after quoted CSV field", i);
      }
    } else if (c == ',') {
      row.emplace_back(std::nullopt);
      ++i;
      pending = true;
    } else if (c == '\r' || c == '\n') {
      if (pending) row.emplace_back(std::nullopt);
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      rows.push_back(std::move(row));
      row.clear();
      pending = false;
    } else {
      // Unquoted, non-empty field.
      std::size_t start = i;
      while (i < text.size() && text[i] != ',' && text[i] != '\r' && text[i] != '\n') ++i;
      row.emplace_back(std::string(text.substr(start, i - start)));
      pending = false;
      if (i < text.size() && text[i] == ',') {
        ++i;
        pending = true;
      }
    }
  }
  if (pending) row.emplace_back(std::nullopt);
  if (!row.empty()) rows.push_back(std::move(row));
  return rows;
}

void write_tableset(const TableSet& tables, const Schema& s, const std::filesystem::path& dir) {
  using nlohmann::json;
  std::filesystem::create_directories(dir);
  json manifest = json::parse(write_schema(s));
  json jt = json::object();
  for (const auto& [l, tbl] : tables.tables) {
    std::string file = percent_encode(l.str()) + ".csv";
    json cols = json::array();
    for (const auto& c : tbl.columns) {
      json jc = {{"name", c.name}, {"kind", column_kind_name(c.kind)}};
      if (!c.ref.empty()) jc["ref"] = c.ref;
      cols.push_back(std::move(jc));
    }
    jt[l.str()] = {{"file", file}, {"columns", cols}};
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / file).string());
    out << write_csv(tbl);
  }
  manifest["tables"] = std::move(jt);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << "\n";
}

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::pair<TableSet, Schema> read_tableset(const std::filesystem::path& dir) {
  using nlohmann::json;
  std::string text = slurp(dir / "manifest.json");
  json manifest;
  try {
    manifest = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what(), e.byte);
  }
  if (!manifest.is_object() || !manifest.contains("tables"))
    throw ParseError("manifest lacks \"tables\"", 0);
  json schema_part = manifest;
  schema_part.erase("tables");
  Schema s = read_schema(schema_part.dump());

  TableSet ts;
  for (const auto& [name, jt] : manifest.at("tables").items()) {
    Label l = Key::parse(name);
    if (!s.has_label(l)) throw Error(ErrorKind::Precondition, "table for unknown label " + name);
    Table tbl;
    tbl.columns = columns_for(l, s.type_of(l));
    const json& cols = jt.at("columns");
    if (cols.size() != tbl.columns.size())
      throw Error(ErrorKind::Precondition, "manifest columns of " + name + " do not match its type");
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const Column& c = tbl.columns[i];
      if (cols[i].at("name").get<std::string>() != c.name ||
          parse_column_kind(cols[i].at("kind").get<std::string>()) != c.kind ||
          cols[i].value("ref", std::string()) != c.ref)
        throw Error(ErrorKind::Precondition, "manifest column " + std::to_string(i) + " of " + name +
                                                 " does not match its type");
    }
    auto rows = parse_csv(slurp(dir / jt.at("file").get<std::string>()));
    if (rows.empty()) throw ParseError("CSV for " + name + " has no header", 0);
    std::vector<Cell> header;
    for (const auto& c : tbl.columns) header.push_back(c.name);
    if (rows.front() != header) throw Error(ErrorKind::Precondition, "CSV header of " + name + " does not match");
    tbl.rows.assign(rows.begin() + 1, rows.end());
    ts.tables.emplace(std::move(l), std::move(tbl));
  }
  return {std::move(ts), std::move(s)};
}

// ---------------------------------------------------------------- key-value

std::vector<std::pair<Value, Value>> export_kv(const Graph& g, const Label& l) {
  ViolatingPairs bad = check_primary_key(g, l);
  if (!bad.empty()) {
    std::string msg = "primary key violated for " + l.str() + ":";
    for (const auto& [a, b] : bad) msg += " (" + a.str() + ", " + b.str() + ")";
    throw Error(ErrorKind::Precondition, msg);
  }
  std::vector<std::pair<Value, Value>> out;
  for (const auto& e : g.elements_with_label(l)) {
    const Value& v = g.element(e).value;
    out.emplace_back(v.first(), v.second());
  }
  return out;
}

}  // namespace apg
