/* C interface to the algebraic property graph library.
 *
 * Every function returning int reports an apg_status. On failure the
 * message is available from apg_last_error() on the same thread until the
 * next call. Strings handed out through char** must be released with
 * apg_string_free; handles with their matching *_free.
 */
#ifndef APG_H
#define APG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct apg_graph apg_graph;
typedef struct apg_morphism apg_morphism;
typedef struct apg_mapping apg_mapping;

enum apg_status {
  APG_OK = 0,
  APG_ERR_PARSE = 1,
  APG_ERR_UNKNOWN = 2,
  APG_ERR_TYPE = 3,
  APG_ERR_PRECONDITION = 4,
  APG_ERR_IO = 5,
  APG_ERR_INVALID = 6, /* validation found problems; see the report */
  APG_ERR_ARGUMENT = 7,
  APG_ERR_INTERNAL = 8
};

const char* apg_last_error(void);
void apg_string_free(char* s);

/* graphs */
int apg_graph_read(const char* json, int validate, apg_graph** out);
int apg_graph_read_file(const char* path, int validate, apg_graph** out);
int apg_graph_write(const apg_graph* g, char** out_json);
void apg_graph_free(apg_graph* g);
size_t apg_graph_label_count(const apg_graph* g);
size_t apg_graph_element_count(const apg_graph* g);
/* APG_OK when valid, APG_ERR_INVALID otherwise; the report lists findings. */
int apg_graph_validate(const apg_graph* g, char** out_report);
/* One "label<TAB>classification" line per label. strict: 1, 0, or -1 to
 * read APG_STRICT_TAXONOMY from the environment. */
int apg_graph_classify(const apg_graph* g, int strict, char** out_tsv);
int apg_graph_isomorphic(const apg_graph* a, const apg_graph* b, int* out);

/* morphisms, read as {"onLabels": {...}, "onElements": {...}} */
int apg_morphism_read(const char* json, const apg_graph* source, const apg_graph* target,
                      apg_morphism** out);
void apg_morphism_free(apg_morphism* m);
int apg_morphism_check(const apg_morphism* m, char** out_report);

/* constructions; results are fresh graphs */
int apg_product(const apg_graph* a, const apg_graph* b, apg_graph** out);
int apg_coproduct(const apg_graph* a, const apg_graph* b, apg_graph** out);
int apg_equalizer(const apg_morphism* h, const apg_morphism* j, apg_graph** out);
int apg_coequalizer(const apg_morphism* h, const apg_morphism* j, apg_graph** out);
int apg_pushout(const apg_morphism* f, const apg_morphism* g, apg_graph** out);
/* key_path: NULL for the whole value, else e.g. "fst" or "snd.fst" */
int apg_merge(const apg_graph* a, const apg_graph* b, const char* key_path, apg_graph** out);

/* schema mappings */
int apg_mapping_read(const char* json, apg_mapping** out);
int apg_mapping_read_file(const char* path, apg_mapping** out);
void apg_mapping_free(apg_mapping* m);
int apg_mapping_typecheck(const apg_mapping* m, char** out_report);
int apg_migrate(const apg_mapping* m, const apg_graph* g, apg_graph** out);

/* bridges */
int apg_export_rdf(const apg_graph* g, char** out_ntriples);
int apg_export_relational(const apg_graph* g, const char* dir);
int apg_import_relational(const char* dir, apg_graph** out);
/* One "key<TAB>value" line per element of the label. */
int apg_export_kv(const apg_graph* g, const char* label, char** out_tsv);

#ifdef __cplusplus
}
#endif

#endif
