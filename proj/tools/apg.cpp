// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "apg/apg.h"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct Failure {
  int code;
};

int exit_code_for(int status) {
  switch (status) {
    case APG_OK: return kOk;
    case APG_ERR_PARSE:
    case APG_ERR_IO:
    case APG_ERR_ARGUMENT:
    case APG_ERR_UNKNOWN: return kUsage;
    default: return kInvalid;
  }
}

void check(int status) {
  if (status == APG_OK) return;
  std::cerr << "apg: " << apg_last_error() << "\n";
  throw Failure{exit_code_for(status)};
}

struct GraphFree {
  void operator()(apg_graph* g) const { apg_graph_free(g); }
};
struct MorphismFree {
  void operator()(apg_morphism* m) const { apg_morphism_free(m); }
};
struct MappingFree {
  void operator()(apg_mapping* m) const { apg_mapping_free(m); }
};
struct StringFree {
  void operator()(char* s) const { apg_string_free(s); }
};
using GraphH = std::unique_ptr<apg_graph, GraphFree>;
using MorphismH = std::unique_ptr<apg_morphism, MorphismFree>;
using MappingH = std::unique_ptr<apg_mapping, MappingFree>;
using Text = std::unique_ptr<char, StringFree>;

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "apg: cannot read " << path << "\n";
    throw Failure{kUsage};
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const char* text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "apg: cannot write " << path << "\n";
    throw Failure{kUsage};
  }
  out << text;
}

GraphH load_graph(const std::string& path, bool validate = true) {
  apg_graph* g = nullptr;
  check(apg_graph_read(read_input(path).c_str(), validate ? 1 : 0, &g));
  return GraphH(g);
}

MorphismH load_morphism(const std::string& path, const GraphH& src, const GraphH& tgt) {
  apg_morphism* m = nullptr;
  check(apg_morphism_read(read_input(path).c_str(), src.get(), tgt.get(), &m));
  MorphismH h(m);
  char* report = nullptr;
  int st = apg_morphism_check(h.get(), &report);
  Text r(report);
  if (st == APG_ERR_INVALID) {
    std::cerr << "apg: " << path << " is not a morphism:\n" << r.get();
    throw Failure{kInvalid};
  }
  check(st);
  return h;
}

void emit_graph(const GraphH& g, const std::string& out) {
  char* json = nullptr;
  check(apg_graph_write(g.get(), &json));
  Text t(json);
  write_output(out, t.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic property graphs: validate, classify, combine, migrate and export."};
  app.require_subcommand(1);
  std::string out = "-";

  // validate
  auto* validate = app.add_subcommand("validate", "Check a graph against its schema");
  std::string validate_in;
  validate->add_option("graph", validate_in, "APG-JSON file, - for stdin")->required();

  // classify
  auto* classify = app.add_subcommand("classify", "Print label<TAB>classification for each label");
  std::string classify_in;
  bool strict_flag = false, general_flag = false;
  classify->add_option("graph", classify_in, "APG-JSON file")->required();
  auto* strict_opt = classify->add_flag("--strict", strict_flag, "Property data must be label-free");
  classify->add_flag("--generalized", general_flag, "Property data may mention type aliases")
      ->excludes(strict_opt);

  // op
  auto* op = app.add_subcommand("op", "Universal constructions");
  op->require_subcommand(1);
  std::string a_in, b_in;
  auto* product = op->add_subcommand("product", "Product of two graphs");
  product->add_option("a", a_in)->required();
  product->add_option("b", b_in)->required();
  product->add_option("-o,--out", out);
  auto* coproduct = op->add_subcommand("coproduct", "Coproduct of two graphs");
  coproduct->add_option("a", a_in)->required();
  coproduct->add_option("b", b_in)->required();
  coproduct->add_option("-o,--out", out);

  std::string src_in, tgt_in, h_in, j_in;
  auto* equalizer = op->add_subcommand("equalizer", "Equalizer of two parallel morphisms");
  auto* coequalizer = op->add_subcommand("coequalizer", "Coequalizer of two parallel morphisms");
  for (auto* sc : {equalizer, coequalizer}) {
    sc->add_option("--source", src_in, "Source graph")->required();
    sc->add_option("--target", tgt_in, "Target graph")->required();
    sc->add_option("--first", h_in, "First morphism file")->required();
    sc->add_option("--second", j_in, "Second morphism file")->required();
    sc->add_option("-o,--out", out);
  }

  std::string apex_in, left_in, right_in, f_in, g_in;
  auto* pushout = op->add_subcommand("pushout", "Pushout of a span left <-f- apex -g-> right");
  pushout->add_option("--apex", apex_in)->required();
  pushout->add_option("--left", left_in)->required();
  pushout->add_option("--right", right_in)->required();
  pushout->add_option("--f", f_in, "apex -> left")->required();
  pushout->add_option("--g", g_in, "apex -> right")->required();
  pushout->add_option("-o,--out", out);

  // merge
  auto* merge = app.add_subcommand("merge", "Merge two graphs on equal keys");
  std::vector<std::string> merge_pos;
  std::string merge_left, merge_right, merge_key;
  merge->add_option("graphs", merge_pos, "LEFT RIGHT")->expected(0, 2);
  merge->add_option("--left", merge_left);
  merge->add_option("--right", merge_right);
  merge->add_option("--key", merge_key, "Key path such as fst or snd.fst; default the whole value");
  merge->add_option("-o,--out", out);

  // migrate
  auto* migrate = app.add_subcommand("migrate", "Migrate a graph backwards along a schema mapping");
  std::string mapping_in, migrate_graph;
  bool check_only = false;
  migrate->add_option("mapping", mapping_in, "Mapping file")->required();
  migrate->add_option("graph,--graph", migrate_graph, "Graph on the mapping's target schema");
  migrate->add_flag("--check", check_only, "Only typecheck the mapping");
  migrate->add_option("-o,--out", out);

  // export
  auto* exp = app.add_subcommand("export", "Export to other data models");
  exp->require_subcommand(1);
  std::string export_in, export_dir, kv_label;
  auto* rdf = exp->add_subcommand("rdf", "N-Triples");
  rdf->add_option("graph", export_in)->required();
  rdf->add_option("-o,--out", out);
  auto* rel = exp->add_subcommand("relational", "One CSV per label plus manifest.json");
  rel->add_option("graph", export_in)->required();
  rel->add_option("-o,--out,--dir", export_dir, "Output directory")->required();
  auto* kv = exp->add_subcommand("kv", "key<TAB>value lines for a label with a primary key");
  kv->add_option("graph", export_in)->required();
  kv->add_option("--label", kv_label)->required();
  kv->add_option("-o,--out", out);

  // import
  auto* imp = app.add_subcommand("import", "Import from other data models");
  imp->require_subcommand(1);
  std::string import_dir;
  auto* imp_rel = imp->add_subcommand("relational", "Directory written by export relational");
  imp_rel->add_option("dir", import_dir)->required();
  imp_rel->add_option("-o,--out", out);

  // fmt
  auto* fmt = app.add_subcommand("fmt", "Rewrite a graph in canonical form");
  std::string fmt_in;
  bool no_validate = false;
  fmt->add_option("graph", fmt_in)->required();
  fmt->add_flag("--no-validate", no_validate);
  fmt->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "apg: " << e.what() << "\n";
    std::cerr << "run 'apg --help' for usage\n";
    return kUsage;
  }

  try {
    if (*validate) {
      GraphH g = load_graph(validate_in, false);
      char* report = nullptr;
      int st = apg_graph_validate(g.get(), &report);
      Text r(report);
      if (st == APG_ERR_INVALID) {
        std::cerr << r.get();
        return kInvalid;
      }
      check(st);
      std::cout << "ok\n";
    } else if (*classify) {
      GraphH g = load_graph(classify_in, false);
      char* tsv = nullptr;
      check(apg_graph_classify(g.get(), strict_flag ? 1 : general_flag ? 0 : -1, &tsv));
      Text t(tsv);
      std::cout << t.get();
    } else if (*op) {
      apg_graph* res = nullptr;
      if (*product || *coproduct) {
        GraphH a = load_graph(a_in), b = load_graph(b_in);
        check(*product ? apg_product(a.get(), b.get(), &res) : apg_coproduct(a.get(), b.get(), &res));
      } else if (*equalizer || *coequalizer) {
        GraphH s = load_graph(src_in), t = load_graph(tgt_in);
        MorphismH h = load_morphism(h_in, s, t), j = load_morphism(j_in, s, t);
        check(*equalizer ? apg_equalizer(h.get(), j.get(), &res) : apg_coequalizer(h.get(), j.get(), &res));
      } else {
        GraphH apex = load_graph(apex_in), l = load_graph(left_in), r = load_graph(right_in);
        MorphismH f = load_morphism(f_in, apex, l), g = load_morphism(g_in, apex, r);
        check(apg_pushout(f.get(), g.get(), &res));
      }
      emit_graph(GraphH(res), out);
    } else if (*merge) {
      std::vector<std::string> ins = merge_pos;
      if (!merge_left.empty()) ins.insert(ins.begin(), merge_left);
      if (!merge_right.empty()) ins.push_back(merge_right);
      if (ins.size() != 2) {
        std::cerr << "apg: merge needs exactly two graphs\n";
        return kUsage;
      }
      GraphH a = load_graph(ins[0]), b = load_graph(ins[1]);
      apg_graph* res = nullptr;
      check(apg_merge(a.get(), b.get(), merge_key.empty() ? nullptr : merge_key.c_str(), &res));
      emit_graph(GraphH(res), out);
    } else if (*migrate) {
      apg_mapping* m = nullptr;
      check(apg_mapping_read(read_input(mapping_in).c_str(), &m));
      MappingH mh(m);
      char* report = nullptr;
      int st = apg_mapping_typecheck(mh.get(), &report);
      Text r(report);
      if (st == APG_ERR_INVALID) {
        std::cerr << r.get();
        return kInvalid;
      }
      check(st);
      if (check_only) {
        std::cout << "ok\n";
        return kOk;
      }
      if (migrate_graph.empty()) {
        std::cerr << "apg: migrate needs an input graph (--graph)\n";
        return kUsage;
      }
      GraphH g = load_graph(migrate_graph);
      apg_graph* res = nullptr;
      check(apg_migrate(mh.get(), g.get(), &res));
      emit_graph(GraphH(res), out);
    } else if (*exp) {
      GraphH g = load_graph(export_in);
      if (*rdf) {
        char* nt = nullptr;
        check(apg_export_rdf(g.get(), &nt));
        Text t(nt);
        write_output(out, t.get());
      } else if (*rel) {
        check(apg_export_relational(g.get(), export_dir.c_str()));
      } else {
        char* tsv = nullptr;
        check(apg_export_kv(g.get(), kv_label.c_str(), &tsv));
        Text t(tsv);
        write_output(out, t.get());
      }
    } else if (*imp) {
      apg_graph* res = nullptr;
      check(apg_import_relational(import_dir.c_str(), &res));
      emit_graph(GraphH(res), out);
    } else if (*fmt) {
      emit_graph(load_graph(fmt_in, !no_validate), out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kOk;
}
