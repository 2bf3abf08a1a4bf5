#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "apg/bridges.hpp"
#include "apg/error.hpp"
#include "support/fixtures.hpp"

using namespace apg;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t count_subject(const std::vector<std::string>& ls, const std::string& iri) {
  std::size_t n = 0;
  for (const auto& l : ls)
    if (l.rfind(iri + " ", 0) == 0) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("apg_bridges_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

const Table& table(const TableSet& ts, const char* l) { return ts.tables.at(Key::atom(l)); }

std::vector<std::string> column_names(const Table& t) {
  std::vector<std::string> v;
  for (const auto& c : t.columns) v.push_back(c.name);
  return v;
}

}  // namespace

TEST(Rdf, DriverEdgeAndVertex) {
  auto ls = lines(export_rdf(apgtest::load_graph("edges.apg")));
  EXPECT_EQ(count_subject(ls, "<apg:e/d1>"), 3u);
  EXPECT_EQ(count_subject(ls, "<apg:e/u1>"), 2u);
  EXPECT_NE(std::find(ls.begin(), ls.end(), "<apg:e/d1> <apg:p/driver/fst> <apg:e/t1> ."), ls.end());
  EXPECT_NE(std::find(ls.begin(), ls.end(), "<apg:e/u1> <apg:p/User> <apg:unit> ."), ls.end());
  EXPECT_TRUE(std::is_sorted(ls.begin(), ls.end()));
}

TEST(Rdf, TripsFixtureCount) {
  Graph g = apgtest::load_graph("trips.apg");
  auto ls = lines(export_rdf(g));
  std::size_t expect = 0;
  for (const auto& [_, el] : g.elements()) expect += 1 + rdf_leaf_count(el.value);
  EXPECT_EQ(ls.size(), expect);
  EXPECT_EQ(ls.size(), 42u);
}

TEST(Rdf, TypedLiteralsAndEncoding) {
  Graph g = GraphBuilder().label("a b", "String * Integer").element("x/1", "a b", "(String \"q\\\"\",Integer -3)").build();
  auto ls = lines(export_rdf(g));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_NE(export_rdf(g).find("<apg:e/x%2F1> <apg:p/%27a%20b%27/snd> \"-3\"^^<http://www.w3.org/2001/XMLSchema#integer> ."),
            std::string::npos);
  EXPECT_NE(export_rdf(g).find("\"q\\\"\"^^<http://www.w3.org/2001/XMLSchema#string>"), std::string::npos);
}

TEST(Rdf, PercentCoding) {
  EXPECT_EQ(percent_encode("a b/(c)"), "a%20b%2F%28c%29");
  EXPECT_EQ(percent_decode(percent_encode("Ω,:'")), "Ω,:'");
  EXPECT_THROW(percent_decode("%4"), Error);
}

TEST(Relational, PlatesColumns) {
  TableSet ts = export_relational(apgtest::load_graph("plates1.apg"));
  const Table& t = table(ts, "PlateNumber");
  EXPECT_EQ(column_names(t), (std::vector<std::string>{"id", "fst", "snd.fst", "snd.snd"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0], (std::vector<Cell>{"p1", "US", "CA", "6TRJ244"}));
}

TEST(Relational, TripTable) {
  TableSet ts = export_relational(apgtest::load_graph("trips.apg"));
  const Table& t = table(ts, "Trip");
  auto names = column_names(t);
  std::vector<std::string> prefix{"id", "fst", "snd.fst", "snd.snd.fst#", "snd.snd.fst.inr"};
  ASSERT_GE(names.size(), prefix.size());
  EXPECT_EQ(std::vector<std::string>(names.begin(), names.begin() + 5), prefix);
  EXPECT_EQ(t.columns[1].kind, ColumnKind::Fk);
  EXPECT_EQ(t.columns[1].ref, "User");
  EXPECT_EQ(t.columns[4].ref, "PlaceEvent");
  auto col = [&](const std::string& n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
  };
  std::size_t disc = col("snd.snd.snd#"), fk = col("snd.snd.snd.inr");
  ASSERT_LT(fk, names.size());
  for (const auto& row : t.rows)
    if (row[0] == "t2") {
      EXPECT_EQ(row[disc], "l");
      EXPECT_FALSE(row[fk].has_value());
    }
  EXPECT_EQ(column_names(table(ts, "User")), std::vector<std::string>{"id"});
}

TEST(Relational, RootSumDiscriminator) {
  auto cols = columns_for(Key::atom("s"), Type::sum(Type::one(), Type::prim("Nat")));
  ASSERT_EQ(cols.size(), 3u);
  EXPECT_EQ(cols[1].name, "value#");
  EXPECT_EQ(cols[1].kind, ColumnKind::Discriminator);
  EXPECT_EQ(cols[2].name, "inr");
  auto leaf = columns_for(Key::atom("p"), Type::prim("Nat"));
  EXPECT_EQ(leaf[1].name, "value");
}

TEST(Relational, RoundTripsFixtures) {
  for (const char* name : apgtest::kGraphFixtures) {
    Graph g = apgtest::load_graph(name);
    EXPECT_EQ(import_relational(export_relational(g), g.schema()), g) << name;
  }
}

TEST(Relational, RoundTripsThroughDisk) {
  for (const char* name : {"trips.apg", "properties.apg", "aliases.apg"}) {
    Graph g = apgtest::load_graph(name);
    fs::path dir = scratch(name);
    write_tableset(export_relational(g), g.schema(), dir);
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    auto [ts, s] = read_tableset(dir);
    EXPECT_EQ(s, g.schema());
    EXPECT_EQ(import_relational(ts, s), g) << name;
    fs::remove_all(dir);
  }
}

TEST(Relational, EmptyTablesGiveEmptyGraph) {
  Schema s = apgtest::load_graph("edges.apg").schema();
  Graph empty(s, {});
  EXPECT_EQ(import_relational(export_relational(empty), s), empty);
}

TEST(Relational, ImportRejectsBrokenTables) {
  Graph g = apgtest::load_graph("trips.apg");
  TableSet ts = export_relational(g);
  TableSet dangling = ts;
  dangling.tables.at(Key::atom("Trip")).rows[0][1] = "nobody";
  EXPECT_THROW(import_relational(dangling, g.schema()), Error);

  TableSet no_disc = ts;
  Table& trip = no_disc.tables.at(Key::atom("Trip"));
  std::size_t d = 3;
  ASSERT_EQ(trip.columns[d].kind, ColumnKind::Discriminator);
  trip.rows[0][d] = std::nullopt;
  EXPECT_THROW(import_relational(no_disc, g.schema()), Error);

  TableSet dup = ts;
  Table& users = dup.tables.at(Key::atom("User"));
  users.rows.push_back(users.rows[0]);
  EXPECT_THROW(import_relational(dup, g.schema()), Error);

  TableSet bad = ts;
  Table& secs = bad.tables.at(Key::atom("UnixTimeSeconds"));
  secs.rows[0][1] = "soon";
  EXPECT_THROW(import_relational(bad, g.schema()), Error);
}

TEST(Csv, QuotingAndAbsentCells) {
  Table t;
  t.columns = {{"id", ColumnKind::Id, "", {}}, {"v", ColumnKind::Prim, "String", {}}};
  t.rows = {{"a", "x,\"y\"\nz"}, {"b", std::nullopt}, {"c", ""}};
  std::string text = write_csv(t);
  EXPECT_EQ(text, "\"id\",\"v\"\r\n\"a\",\"x,\"\"y\"\"\nz\"\r\n\"b\",\r\n\"c\",\"\"\r\n");
  auto rows = parse_csv(text);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][1], Cell("x,\"y\"\nz"));
  EXPECT_FALSE(rows[2][1].has_value());
  EXPECT_EQ(rows[3][1], Cell(""));
  EXPECT_THROW(parse_csv("\"open\r\n"), Error);
}

TEST(Kv, PlatesSplitAtTheKey) {
  auto kv = export_kv(apgtest::load_graph("plates1.apg"), Key::atom("PlateNumber"));
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].first, Value::text("US"));
  EXPECT_EQ(kv[0].second, Value::pair(Value::text("CA"), Value::text("6TRJ244")));
  EXPECT_EQ(kv[1].first, Value::text("MX"));
}

TEST(Kv, EmptyLabelAndDuplicateKeys) {
  Schema s = apgtest::load_graph("plates1.apg").schema();
  EXPECT_TRUE(export_kv(Graph(s, {}), Key::atom("PlateNumber")).empty());
  Graph dup = GraphBuilder()
                  .label("PlateNumber", "String * String * String")
                  .element("a", "PlateNumber", "(String \"US\",(String \"CA\",String \"1\"))")
                  .element("b", "PlateNumber", "(String \"US\",(String \"NY\",String \"2\"))")
                  .build();
  try {
    export_kv(dup, Key::atom("PlateNumber"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_NE(std::string(e.what()).find("(a, b)"), std::string::npos) << e.what();
  }
}
