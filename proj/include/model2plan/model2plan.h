#ifndef MODEL2PLAN_MODEL2PLAN_H
#define MODEL2PLAN_MODEL2PLAN_H

/*
  C interface of libmodel2plan. All objects are opaque handles owned by the
  caller and released with the matching *_free function. Strings returned
  as `const char *` live as long as their handle; `char *` results must be
  released with m2p_string_free. Every call that returns a non-OK status
  also sets a thread-local message readable with m2p_last_error().
*/

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define M2P_API __declspec(dllexport)
#else
#define M2P_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum m2p_status {
    M2P_OK = 0,
    M2P_E_IO,          /* file unreadable or unwritable */
    M2P_E_PARSE,       /* PMIF, PDDL or plan text rejected */
    M2P_E_VALIDATION,  /* blocking profile findings or no usable scope */
    M2P_E_GENERATION,  /* instance data inconsistent with the domain */
    M2P_E_TASK,        /* grounding failed (cap, unsupported numeric use) */
    M2P_E_ARGUMENT,    /* null handle or unknown option value */
    M2P_E_INTERNAL
} m2p_status;

typedef enum m2p_severity { M2P_SEVERITY_ERROR = 0, M2P_SEVERITY_WARNING = 1 } m2p_severity;

typedef struct m2p_model m2p_model;
typedef struct m2p_diagnostics m2p_diagnostics;
typedef struct m2p_generation m2p_generation;
typedef struct m2p_task m2p_task;
typedef struct m2p_plan m2p_plan;

typedef struct m2p_diagnostic {
    m2p_severity severity;
    const char *rule_id;
    const char *element_id;
    const char *message;
    int line;   /* 0 when unknown */
    int column;
} m2p_diagnostic;

M2P_API const char *m2p_version(void);
M2P_API const char *m2p_last_error(void);
M2P_API const char *m2p_status_name(m2p_status status);
M2P_API void m2p_string_free(char *text);

/* Diagnostics lists. Out-parameters of type m2p_diagnostics ** may be NULL. */
M2P_API size_t m2p_diagnostics_count(const m2p_diagnostics *list);
M2P_API size_t m2p_diagnostics_error_count(const m2p_diagnostics *list);
M2P_API m2p_status m2p_diagnostics_get(const m2p_diagnostics *list, size_t index, m2p_diagnostic *out);
/* One `severity ruleId elementId: message` per line, or the JSON array form. */
M2P_API char *m2p_diagnostics_format(const m2p_diagnostics *list, int json);
M2P_API void m2p_diagnostics_free(m2p_diagnostics *list);

/* Models (PMIF). */
M2P_API m2p_status m2p_model_load(const char *path, m2p_model **out, m2p_diagnostics **diagnostics);
M2P_API m2p_status m2p_model_parse(const char *text, size_t length, m2p_model **out,
                                   m2p_diagnostics **diagnostics);
M2P_API char *m2p_model_write(const m2p_model *model);
M2P_API void m2p_model_free(m2p_model *model);

/*
  Profile validation of the Domain package `scope_id` (NULL: the unique one).
  Findings are returned with M2P_OK; M2P_E_VALIDATION means no scope could
  be selected, with the reason in `diagnostics`.
*/
M2P_API m2p_status m2p_model_validate(const m2p_model *model, const char *scope_id,
                                      m2p_diagnostics **diagnostics);

typedef struct m2p_gen_options {
    const char *scope_id;    /* NULL: the unique Domain package */
    const char *problem;     /* NULL: every instances block of the scope */
    int trace;               /* `; from <elementId>` comments */
    int header;              /* `; generated by ...` first line */
    const char *model_file;  /* named in the header */
} m2p_gen_options;

M2P_API void m2p_gen_options_init(m2p_gen_options *options);

/*
  Validate, then generate the domain and the problems. Blocking findings
  give M2P_E_VALIDATION, inconsistent instance data M2P_E_GENERATION; both
  report through `diagnostics` and produce no generation handle.
*/
M2P_API m2p_status m2p_generate(const m2p_model *model, const m2p_gen_options *options, m2p_generation **out,
                                m2p_diagnostics **diagnostics);
M2P_API const char *m2p_generation_domain_text(const m2p_generation *generation);
M2P_API size_t m2p_generation_problem_count(const m2p_generation *generation);
M2P_API const char *m2p_generation_problem_name(const m2p_generation *generation, size_t index);
M2P_API const char *m2p_generation_problem_text(const m2p_generation *generation, size_t index);
M2P_API size_t m2p_generation_embedded_error_count(const m2p_generation *generation);
/* `types=<n> predicates=<n> functions=<n> actions=<n>` */
M2P_API const char *m2p_generation_stats(const m2p_generation *generation);
M2P_API const char *m2p_generation_report_json(const m2p_generation *generation);
M2P_API void m2p_generation_free(m2p_generation *generation);

/* Planning tasks (PDDL domain + problem). */
M2P_API m2p_status m2p_task_load(const char *domain_path, const char *problem_path, m2p_task **out,
                                 m2p_diagnostics **diagnostics);
M2P_API m2p_status m2p_task_parse(const char *domain_text, const char *problem_text, m2p_task **out,
                                  m2p_diagnostics **diagnostics);
M2P_API void m2p_task_set_ground_cap(m2p_task *task, uint64_t max_ground_actions);
M2P_API void m2p_task_free(m2p_task *task);

/* Static checks. Findings come back with M2P_OK. */
M2P_API m2p_status m2p_task_check(const m2p_task *task, m2p_diagnostics **findings);

typedef enum m2p_heuristic { M2P_HEURISTIC_BLIND = 0, M2P_HEURISTIC_HMAX = 1 } m2p_heuristic;
typedef enum m2p_search_status {
    M2P_SEARCH_SOLVED = 0,
    M2P_SEARCH_UNSOLVABLE = 1,
    M2P_SEARCH_RESOURCE_LIMIT = 2
} m2p_search_status;

typedef struct m2p_planner_config {
    m2p_heuristic heuristic;
    uint64_t max_expansions;
} m2p_planner_config;

typedef struct m2p_search_info {
    m2p_search_status status;
    uint64_t expanded;
    uint64_t generated;
} m2p_search_info;

M2P_API void m2p_planner_config_init(m2p_planner_config *config);
M2P_API m2p_status m2p_heuristic_parse(const char *name, m2p_heuristic *out);

/* `*plan` is set only when info->status is M2P_SEARCH_SOLVED. */
M2P_API m2p_status m2p_task_solve(m2p_task *task, const m2p_planner_config *config, m2p_search_info *info,
                                  m2p_plan **plan);

/* Plans. */
M2P_API m2p_status m2p_plan_parse(const char *text, m2p_plan **out, m2p_diagnostics **diagnostics);
M2P_API m2p_status m2p_plan_load(const char *path, m2p_plan **out, m2p_diagnostics **diagnostics);
M2P_API size_t m2p_plan_length(const m2p_plan *plan);
/* Exact cost as a decimal or `n/d` string; NULL if the plan declares none. */
M2P_API const char *m2p_plan_cost(const m2p_plan *plan);
M2P_API char *m2p_plan_format(const m2p_plan *plan);
M2P_API void m2p_plan_free(m2p_plan *plan);

/* Simulates the plan. `*valid` is 1 on success; findings name the failure. */
M2P_API m2p_status m2p_task_validate_plan(m2p_task *task, const m2p_plan *plan, int *valid, char **cost,
                                          m2p_diagnostics **findings);

#ifdef __cplusplus
}
#endif

#endif
