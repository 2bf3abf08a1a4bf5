#include "apg/apg.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "apg/bridges.hpp"
#include "apg/catops.hpp"
#include "apg/error.hpp"
#include "apg/integrate.hpp"
#include "apg/io.hpp"
#include "apg/taxonomy.hpp"

struct apg_graph {
  apg::GraphPtr g;
};
struct apg_morphism {
  apg::Morphism m;
};
struct apg_mapping {
  apg::SchemaMapping m;
};

namespace {

thread_local std::string last_error;

int fail(int code, std::string msg) {
  last_error = std::move(msg);
  return code;
}

int status_of(apg::ErrorKind k) {
  switch (k) {
    case apg::ErrorKind::Parse: return APG_ERR_PARSE;
    case apg::ErrorKind::Unknown: return APG_ERR_UNKNOWN;
    case apg::ErrorKind::Type: return APG_ERR_TYPE;
    case apg::ErrorKind::Precondition: return APG_ERR_PRECONDITION;
    case apg::ErrorKind::Io: return APG_ERR_IO;
  }
  return APG_ERR_INTERNAL;
}

template <typename F>
int guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const apg::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(APG_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw apg::Error(apg::ErrorKind::Io, std::string("cannot read ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit_graph(apg::Graph g, apg_graph** out) {
  *out = new apg_graph{apg::share(std::move(g))};
  return APG_OK;
}

apg::ValuePath split_path(const char* s) {
  apg::ValuePath p;
  std::string cur;
  for (const char* c = s; *c; ++c) {
    if (*c == '.') {
      p.push_back(cur);
      cur.clear();
    } else {
      cur += *c;
    }
  }
  if (!cur.empty() || !p.empty()) p.push_back(cur);
  for (const auto& comp : p)
    if (comp != "fst" && comp != "snd" && comp != "inl" && comp != "inr")
      throw apg::Error(apg::ErrorKind::Parse, "bad key path component '" + comp + "'");
  return p;
}

#define APG_REQUIRE(cond)                                            \
  do {                                                               \
    if (!(cond)) return fail(APG_ERR_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* apg_last_error(void) { return last_error.c_str(); }

void apg_string_free(char* s) { std::free(s); }

int apg_graph_read(const char* json, int validate, apg_graph** out) {
  APG_REQUIRE(json && out);
  return guard([&] { return emit_graph(apg::read_graph(json, validate != 0), out); });
}

int apg_graph_read_file(const char* path, int validate, apg_graph** out) {
  APG_REQUIRE(path && out);
  return guard([&] { return emit_graph(apg::read_graph(slurp(path), validate != 0), out); });
}

int apg_graph_write(const apg_graph* g, char** out_json) {
  APG_REQUIRE(g && out_json);
  return guard([&] {
    *out_json = dup(apg::write_graph(*g->g));
    return APG_OK;
  });
}

void apg_graph_free(apg_graph* g) { delete g; }

size_t apg_graph_label_count(const apg_graph* g) { return g ? g->g->schema().labels().size() : 0; }

size_t apg_graph_element_count(const apg_graph* g) { return g ? g->g->elements().size() : 0; }

int apg_graph_validate(const apg_graph* g, char** out_report) {
  APG_REQUIRE(g && out_report);
  return guard([&] {
    apg::ValidationReport r = apg::validate_graph(*g->g);
    *out_report = dup(r.to_string());
    return r.ok() ? APG_OK : fail(APG_ERR_INVALID, "graph is invalid");
  });
}

int apg_graph_classify(const apg_graph* g, int strict, char** out_tsv) {
  APG_REQUIRE(g && out_tsv);
  return guard([&] {
    apg::TaxonomyOptions opts = strict < 0 ? apg::TaxonomyOptions::from_environment()
                                           : apg::TaxonomyOptions{strict != 0};
    std::string out;
    for (const auto& [l, c] : apg::classify_graph(g->g->schema(), opts))
      out += l.str() + "\t" + c.str() + "\n";
    *out_tsv = dup(out);
    return APG_OK;
  });
}

int apg_graph_isomorphic(const apg_graph* a, const apg_graph* b, int* out) {
  APG_REQUIRE(a && b && out);
  return guard([&] {
    *out = apg::find_isomorphism(a->g, b->g).has_value() ? 1 : 0;
    return APG_OK;
  });
}

int apg_morphism_read(const char* json, const apg_graph* source, const apg_graph* target,
                      apg_morphism** out) {
  APG_REQUIRE(json && source && target && out);
  return guard([&] {
    *out = new apg_morphism{apg::read_morphism(json, source->g, target->g)};
    return APG_OK;
  });
}

void apg_morphism_free(apg_morphism* m) { delete m; }

int apg_morphism_check(const apg_morphism* m, char** out_report) {
  APG_REQUIRE(m && out_report);
  return guard([&] {
    apg::ValidationReport r = apg::check_morphism(m->m);
    *out_report = dup(r.to_string());
    return r.ok() ? APG_OK : fail(APG_ERR_INVALID, "not a morphism");
  });
}

int apg_product(const apg_graph* a, const apg_graph* b, apg_graph** out) {
  APG_REQUIRE(a && b && out);
  return guard([&] { return emit_graph(*apg::product(a->g, b->g).graph, out); });
}

int apg_coproduct(const apg_graph* a, const apg_graph* b, apg_graph** out) {
  APG_REQUIRE(a && b && out);
  return guard([&] { return emit_graph(*apg::coproduct(a->g, b->g).graph, out); });
}

int apg_equalizer(const apg_morphism* h, const apg_morphism* j, apg_graph** out) {
  APG_REQUIRE(h && j && out);
  return guard([&] { return emit_graph(*apg::equalizer(h->m, j->m).graph, out); });
}

int apg_coequalizer(const apg_morphism* h, const apg_morphism* j, apg_graph** out) {
  APG_REQUIRE(h && j && out);
  return guard([&] { return emit_graph(*apg::coequalizer(h->m, j->m).graph, out); });
}

int apg_pushout(const apg_morphism* f, const apg_morphism* g, apg_graph** out) {
  APG_REQUIRE(f && g && out);
  return guard([&] { return emit_graph(*apg::pushout(f->m, g->m).graph, out); });
}

int apg_merge(const apg_graph* a, const apg_graph* b, const char* key_path, apg_graph** out) {
  APG_REQUIRE(a && b && out);
  return guard([&] {
    std::optional<apg::ValuePath> kp;
    if (key_path) kp = split_path(key_path);
    return emit_graph(*apg::merge_by_key(a->g, b->g, kp).graph, out);
  });
}

int apg_mapping_read(const char* json, apg_mapping** out) {
  APG_REQUIRE(json && out);
  return guard([&] {
    *out = new apg_mapping{apg::read_mapping(json)};
    return APG_OK;
  });
}

int apg_mapping_read_file(const char* path, apg_mapping** out) {
  APG_REQUIRE(path && out);
  return guard([&] {
    *out = new apg_mapping{apg::read_mapping(slurp(path))};
    return APG_OK;
  });
}

void apg_mapping_free(apg_mapping* m) { delete m; }

int apg_mapping_typecheck(const apg_mapping* m, char** out_report) {
  APG_REQUIRE(m && out_report);
  return guard([&] {
    apg::ValidationReport r = apg::typecheck_mapping(m->m);
    *out_report = dup(r.to_string());
    return r.ok() ? APG_OK : fail(APG_ERR_INVALID, "mapping does not typecheck");
  });
}

int apg_migrate(const apg_mapping* m, const apg_graph* g, apg_graph** out) {
  APG_REQUIRE(m && g && out);
  return guard([&] { return emit_graph(apg::delta_migrate(m->m, *g->g), out); });
}

int apg_export_rdf(const apg_graph* g, char** out_ntriples) {
  APG_REQUIRE(g && out_ntriples);
  return guard([&] {
    *out_ntriples = dup(apg::export_rdf(*g->g));
    return APG_OK;
  });
}

int apg_export_relational(const apg_graph* g, const char* dir) {
  APG_REQUIRE(g && dir);
  return guard([&] {
    apg::write_tableset(apg::export_relational(*g->g), g->g->schema(), dir);
    return APG_OK;
  });
}

int apg_import_relational(const char* dir, apg_graph** out) {
  APG_REQUIRE(dir && out);
  return guard([&] {
    auto [tables, schema] = apg::read_tableset(dir);
    apg::Graph g = apg::import_relational(tables, schema);
    apg::ValidationReport r = apg::validate_graph(g);
    if (!r.ok()) return fail(APG_ERR_INVALID, "imported graph is invalid:\n" + r.to_string());
    return emit_graph(std::move(g), out);
  });
}

int apg_export_kv(const apg_graph* g, const char* label, char** out_tsv) {
  APG_REQUIRE(g && label && out_tsv);
  return guard([&] {
    apg::Label l = apg::Key::parse(label);
    if (!g->g->schema().has_label(l))
      throw apg::Error(apg::ErrorKind::Unknown, std::string("unknown label ") + label);
    std::string out;
    for (const auto& [k, v] : apg::export_kv(*g->g, l))
      out += apg::render_value(k) + "\t" + apg::render_value(v) + "\n";
    *out_tsv = dup(out);
    return APG_OK;
  });
}

}  // extern "C"
