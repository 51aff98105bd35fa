#ifndef METADISC_H
#define METADISC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(METADISC_BUILDING_LIBRARY)
#    define MD_API __declspec(dllexport)
#  else
#    define MD_API __declspec(dllimport)
#  endif
#else
#  define MD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum md_status {
  MD_OK = 0,
  MD_ERR_INVALID_ARGUMENT = 1,
  MD_ERR_PARSE = 2,
  MD_ERR_VALIDATION = 3,
  MD_ERR_IO = 4,
  MD_ERR_NOT_FOUND = 5,
  MD_ERR_STATE = 6,
  MD_ERR_INTERNAL = 7
} md_status;

typedef enum md_agent {
  MD_AGENT_KEEP = -1, /* scenario overrides only */
  MD_AGENT_RANDOM = 0,
  MD_AGENT_HEURISTIC = 1
} md_agent;

/* Passed for size_t arguments that have a default. */
#define MD_DEFAULT ((size_t)-1)

typedef struct md_roster md_roster;
typedef struct md_snapshot md_snapshot;
typedef struct md_scenario md_scenario;

MD_API const char* md_version(void);
MD_API const char* md_status_name(md_status status);

/* Message for the last failed call on this thread; "" if none. */
MD_API const char* md_last_error(void);

/* Strings returned through char** belong to the caller. */
MD_API void md_string_free(char* s);

/* ---- roster ---- */

/* tier_path may be NULL. */
MD_API md_status md_roster_load(const char* roster_path, const char* tier_path, md_roster** out);
MD_API void md_roster_free(md_roster* roster);
MD_API size_t md_roster_size(const md_roster* roster);
MD_API md_status md_roster_species(const md_roster* roster, size_t index, const char** out);
MD_API md_status md_roster_index(const md_roster* roster, const char* species, size_t* out);

/* Writes roster.json and tiers.json into out_dir. lc_count may be MD_DEFAULT. */
MD_API md_status md_fixture_write(uint64_t seed, size_t size, size_t type_count, size_t lc_count, int dominant,
                                  const char* out_dir);

/* ---- battle ---- */

typedef struct md_battle_result {
  int winner; /* 0 = side A, 1 = side B */
  int turns;
  int hit_turn_cap;
} md_battle_result;

/* Team members are roster indices; 1..6 per side. */
MD_API md_status md_battle_run(const md_roster* roster, const size_t* team_a, size_t team_a_len,
                               const size_t* team_b, size_t team_b_len, md_agent agent_a, md_agent agent_b,
                               uint64_t seed, md_battle_result* out);

/* ---- scenarios ---- */

typedef struct md_overrides {
  int has_seed;
  uint64_t seed;
  md_agent agent;
  int has_battles;
  uint64_t battles;
  unsigned threads; /* 0 keeps the scenario value */
  const char* out_dir; /* NULL keeps the scenario value */
  int skip_unknown;
} md_overrides;

MD_API void md_overrides_init(md_overrides* o);

/* Loads the scenario and every input it names; overrides may be NULL. */
MD_API md_status md_scenario_load(const char* path, const md_overrides* overrides, md_scenario** out);
MD_API void md_scenario_free(md_scenario* scenario);
MD_API md_status md_scenario_output_dir(const md_scenario* scenario, const char** out);
MD_API md_status md_scenario_config_hash(const md_scenario* scenario, uint64_t* out);

typedef struct md_run_options {
  const char* checkpoint_path; /* rewritten after every stats window; may be NULL */
  const char* resume_path;     /* checkpoint to continue from; may be NULL */
  const char* battle_log_path; /* JSON lines for the first battle_log_limit battles */
  uint64_t battle_log_limit;
  int write_reports; /* nonzero: write the report set into the output directory */
} md_run_options;

MD_API void md_run_options_init(md_run_options* o);

/* Runs discovery and evaluation. options may be NULL. */
MD_API md_status md_scenario_run(md_scenario* scenario, const md_run_options* options);

typedef struct md_method_metrics {
  const char* method; /* "discovered", "naive" or "bst"; valid until the next run or free */
  int has_metrics;    /* overlap / edit distance present */
  double overlap;
  double edit_distance_delta;
  int has_rho;
  double rho;
  double p_value;
  int has_exact;
  double p_value_exact;
  size_t n;
} md_method_metrics;

MD_API size_t md_scenario_method_count(const md_scenario* scenario);
MD_API md_status md_scenario_method(const md_scenario* scenario, size_t index, md_method_metrics* out);
/* Snapshot of a method's meta; caller frees. */
MD_API md_status md_scenario_method_meta(const md_scenario* scenario, size_t index, md_snapshot** out);
/* Tier capture for BSD rows; tier names stay valid until the next run or free. */
MD_API md_status md_scenario_tier_count(const md_scenario* scenario, size_t method, size_t* out);
MD_API md_status md_scenario_tier(const md_scenario* scenario, size_t method, size_t tier, const char** name,
                                  double* capture, double* composition);
MD_API md_status md_scenario_report_text(const md_scenario* scenario, char** out);
MD_API md_status md_scenario_report_csv(const md_scenario* scenario, char** out);

/* weights holds count (c1, c2, c3) triples; NULL with count 0 selects the
   default eight-row grid. Writes grid.csv, grid.txt and manifest.json when
   out_dir is non-NULL. csv_out may be NULL. */
MD_API md_status md_gridsearch(md_scenario* scenario, const double* weights, size_t count, const char* out_dir,
                               char** csv_out);

/* ---- snapshots and metrics ---- */

/* .json or .csv; meta_size 0 keeps the file's value. */
MD_API md_status md_snapshot_load(const char* path, size_t meta_size, md_snapshot** out);
MD_API void md_snapshot_free(md_snapshot* snapshot);
MD_API size_t md_snapshot_size(const md_snapshot* snapshot);
MD_API size_t md_snapshot_meta_size(const md_snapshot* snapshot);
MD_API md_status md_snapshot_species(const md_snapshot* snapshot, size_t rank0, const char** out);

MD_API md_status md_metric_overlap(const md_snapshot* b, const md_snapshot* b_prime, double* out);
MD_API md_status md_metric_edit_distance(const md_snapshot* a, const md_snapshot* x, double* out);

/* Full comparison of a discovered meta against truth, given the pre-change meta. */
MD_API md_status md_metrics_compare(const md_snapshot* a, const md_snapshot* b, const md_snapshot* b_prime,
                                    md_method_metrics* out);

/* Tier capture of a snapshot against a species -> tier JSON file. tiers may be
   NULL (all labels in the file, sorted). Result is aligned text. */
MD_API md_status md_metric_tier_capture(const md_snapshot* b_prime, const char* tier_path, const char* const* tiers,
                                        size_t tier_count, char** out);

/* ---- ingestion ---- */

/* Averages the given usage files (tables or JSON) and renders the result as
   "text" or "json". roster_path may be NULL; with a roster, unknown species
   fail unless skip_unknown, in which case they are dropped and listed in
   warnings_out (may be NULL). */
MD_API md_status md_ingest(const char* const* paths, size_t count, const char* roster_path, int skip_unknown,
                           const char* format, char** out, char** warnings_out);

#ifdef __cplusplus
}
#endif

#endif
