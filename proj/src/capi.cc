#include "model2plan/model2plan.h"

#include "model2plan/generator.h"
#include "model2plan/planner.h"
#include "model2plan/pmif.h"
#include "model2plan/profile.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#ifndef MODEL2PLAN_VERSION
#define MODEL2PLAN_VERSION "0.0.0"
#endif

using namespace std;
using namespace model2plan;

struct m2p_diagnostics {
    vector<Diagnostic> items;
};

struct m2p_model {
    ir::ModelDocument document;
};

struct m2p_generation {
    string domain_text;
    vector<pair<string, string>> problems;
    size_t embedded_errors = 0;
    string stats;
    string report;
};

struct m2p_task {
    pddl::Domain domain;
    pddl::Problem problem;
    plan::GroundConfig config;
    unique_ptr<plan::GroundTask> grounded;
};

struct m2p_plan {
    plan::Plan plan;
    string cost;
};

namespace {
thread_local string last_error;

char *duplicate(const string &text) {
    char *out = static_cast<char *>(malloc(text.size() + 1));
    if (out)
        memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

m2p_status fail(m2p_status status, const string &message) {
    last_error = message;
    return status;
}

void hand_out(m2p_diagnostics **out, vector<Diagnostic> items) {
    if (out)
        *out = new m2p_diagnostics{std::move(items)};
}

m2p_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::Io: return M2P_E_IO;
    case ErrorCode::XmlSyntax:
    case ErrorCode::SchemaViolation:
    case ErrorCode::DuplicateId:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnsupportedFeature:
        return M2P_E_PARSE;
    case ErrorCode::UnknownId:
    case ErrorCode::NoDomainPackage:
    case ErrorCode::AmbiguousDomain:
        return M2P_E_VALIDATION;
    case ErrorCode::ProblemGeneration: return M2P_E_GENERATION;
    case ErrorCode::GroundingExplosion:
    case ErrorCode::InvalidTask:
    case ErrorCode::InvalidPlan:
        return M2P_E_TASK;
    }
    return M2P_E_INTERNAL;
}

/*
  Runs `body` and converts exceptions into a status. Library errors hand
  their diagnostics to `diagnostics` when the caller asked for them.
*/
template<typename Body>
m2p_status guarded(m2p_diagnostics **diagnostics, Body body) {
    if (diagnostics)
        *diagnostics = nullptr;
    try {
        last_error.clear();
        return body();
    } catch (const Error &e) {
        hand_out(diagnostics, e.diagnostics());
        return fail(status_of(e.code()), e.what());
    } catch (const bad_alloc &) {
        return fail(M2P_E_INTERNAL, "out of memory");
    } catch (const exception &e) {
        return fail(M2P_E_INTERNAL, e.what());
    }
}

string read_file(const char *path) {
    ifstream in(path, ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, string("cannot read ") + path);
    stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

optional<string> optional_arg(const char *text) {
    if (!text || !*text)
        return nullopt;
    return string(text);
}

plan::GroundTask &grounded(m2p_task *task) {
    if (!task->grounded)
        task->grounded = make_unique<plan::GroundTask>(plan::ground(task->domain, task->problem, task->config));
    return *task->grounded;
}
}

extern "C" {

const char *m2p_version(void) {
    return MODEL2PLAN_VERSION;
}

const char *m2p_last_error(void) {
    return last_error.c_str();
}

const char *m2p_status_name(m2p_status status) {
    switch (status) {
    case M2P_OK: return "ok";
    case M2P_E_IO: return "io";
    case M2P_E_PARSE: return "parse";
    case M2P_E_VALIDATION: return "validation";
    case M2P_E_GENERATION: return "generation";
    case M2P_E_TASK: return "task";
    case M2P_E_ARGUMENT: return "argument";
    case M2P_E_INTERNAL: return "internal";
    }
    return "unknown";
}

void m2p_string_free(char *text) {
    free(text);
}

size_t m2p_diagnostics_count(const m2p_diagnostics *list) {
    return list ? list->items.size() : 0;
}

size_t m2p_diagnostics_error_count(const m2p_diagnostics *list) {
    return list ? count_errors(list->items) : 0;
}

m2p_status m2p_diagnostics_get(const m2p_diagnostics *list, size_t index, m2p_diagnostic *out) {
    if (!list || !out || index >= list->items.size())
        return fail(M2P_E_ARGUMENT, "diagnostic index out of range");
    const Diagnostic &d = list->items[index];
    out->severity = d.is_error() ? M2P_SEVERITY_ERROR : M2P_SEVERITY_WARNING;
    out->rule_id = d.rule_id.c_str();
    out->element_id = d.element_id.c_str();
    out->message = d.message.c_str();
    out->line = d.line;
    out->column = d.column;
    return M2P_OK;
}

char *m2p_diagnostics_format(const m2p_diagnostics *list, int json) {
    vector<Diagnostic> empty;
    const vector<Diagnostic> &items = list ? list->items : empty;
    return duplicate(json ? format_diagnostics_json(items) + "\n" : format_diagnostics_text(items));
}

void m2p_diagnostics_free(m2p_diagnostics *list) {
    delete list;
}

m2p_status m2p_model_load(const char *path, m2p_model **out, m2p_diagnostics **diagnostics) {
    if (!path || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded(diagnostics, [&] {
        *out = new m2p_model{pmif::load_pmif(path)};
        return M2P_OK;
    });
}

m2p_status m2p_model_parse(const char *text, size_t length, m2p_model **out, m2p_diagnostics **diagnostics) {
    if (!text || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded(diagnostics, [&] {
        *out = new m2p_model{pmif::parse_pmif(string_view(text, length))};
        return M2P_OK;
    });
}

char *m2p_model_write(const m2p_model *model) {
    if (!model)
        return nullptr;
    return duplicate(pmif::write_pmif(model->document));
}

void m2p_model_free(m2p_model *model) {
    delete model;
}

m2p_status m2p_model_validate(const m2p_model *model, const char *scope_id, m2p_diagnostics **diagnostics) {
    if (!model)
        return fail(M2P_E_ARGUMENT, "null model");
    return guarded(diagnostics, [&] {
        const ir::PackageElement &scope = ir::domain_scope(model->document, optional_arg(scope_id));
        hand_out(diagnostics, profile::validate(scope, model->document));
        return M2P_OK;
    });
}

void m2p_gen_options_init(m2p_gen_options *options) {
    if (!options)
        return;
    options->scope_id = nullptr;
    options->problem = nullptr;
    options->trace = 0;
    options->header = 1;
    options->model_file = nullptr;
}

m2p_status m2p_generate(const m2p_model *model, const m2p_gen_options *options, m2p_generation **out,
                        m2p_diagnostics **diagnostics) {
    if (!model || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    m2p_gen_options defaults;
    m2p_gen_options_init(&defaults);
    const m2p_gen_options &opts = options ? *options : defaults;

    return guarded(diagnostics, [&] {
        const ir::ModelDocument &document = model->document;
        const ir::PackageElement &scope = ir::domain_scope(document, optional_arg(opts.scope_id));
        vector<Diagnostic> findings = profile::validate(scope, document);
        if (profile::blocks_generation(findings)) {
            hand_out(diagnostics, std::move(findings));
            return fail(M2P_E_VALIDATION, "validation errors block generation");
        }

        pddl::EmitOptions emit;
        emit.trace = opts.trace != 0;
        if (opts.header) {
            string source = opts.model_file ? opts.model_file : document.name;
            emit.header = "; generated by model2plan " MODEL2PLAN_VERSION " from " + source;
        }

        auto generation = make_unique<m2p_generation>();
        gen::GenerationReport report = gen::create_pddl_domain(scope, document);
        generation->domain_text = pddl::emit_domain(report.domain, emit);
        generation->embedded_errors = report.embedded_errors.size();
        generation->stats = gen::format_stats(report.stats);
        generation->report = gen::report_json(report);

        vector<Diagnostic> problem_findings;
        bool selected = false;
        for (const ir::InstanceData *instances : ir::instances_for(document, scope)) {
            if (opts.problem && instances->problem_name != opts.problem)
                continue;
            selected = true;
            try {
                pddl::Problem problem = gen::create_pddl_problem(*instances, report.domain, document);
                generation->problems.push_back({problem.name, pddl::emit_problem(problem, emit)});
            } catch (const Error &e) {
                problem_findings.insert(problem_findings.end(), e.diagnostics().begin(), e.diagnostics().end());
            }
        }
        if (opts.problem && !selected)
            return fail(M2P_E_ARGUMENT, string("no instances block named '") + opts.problem + "'");
        if (!problem_findings.empty()) {
            hand_out(diagnostics, std::move(problem_findings));
            return fail(M2P_E_GENERATION, "instance data is inconsistent with the generated domain");
        }
        hand_out(diagnostics, std::move(findings));
        *out = generation.release();
        return M2P_OK;
    });
}

const char *m2p_generation_domain_text(const m2p_generation *generation) {
    return generation ? generation->domain_text.c_str() : nullptr;
}

size_t m2p_generation_problem_count(const m2p_generation *generation) {
    return generation ? generation->problems.size() : 0;
}

const char *m2p_generation_problem_name(const m2p_generation *generation, size_t index) {
    if (!generation || index >= generation->problems.size())
        return nullptr;
    return generation->problems[index].first.c_str();
}

const char *m2p_generation_problem_text(const m2p_generation *generation, size_t index) {
    if (!generation || index >= generation->problems.size())
        return nullptr;
    return generation->problems[index].second.c_str();
}

size_t m2p_generation_embedded_error_count(const m2p_generation *generation) {
    return generation ? generation->embedded_errors : 0;
}

const char *m2p_generation_stats(const m2p_generation *generation) {
    return generation ? generation->stats.c_str() : nullptr;
}

const char *m2p_generation_report_json(const m2p_generation *generation) {
    return generation ? generation->report.c_str() : nullptr;
}

void m2p_generation_free(m2p_generation *generation) {
    delete generation;
}

m2p_status m2p_task_parse(const char *domain_text, const char *problem_text, m2p_task **out,
                          m2p_diagnostics **diagnostics) {
    if (!domain_text || !problem_text || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded(diagnostics, [&] {
        auto task = make_unique<m2p_task>();
        task->domain = pddl::parse_domain(domain_text);
        task->problem = pddl::parse_problem(problem_text);
        *out = task.release();
        return M2P_OK;
    });
}

m2p_status m2p_task_load(const char *domain_path, const char *problem_path, m2p_task **out,
                         m2p_diagnostics **diagnostics) {
    if (!domain_path || !problem_path || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded(diagnostics, [&] {
        auto task = make_unique<m2p_task>();
        task->domain = pddl::parse_domain(read_file(domain_path));
        task->problem = pddl::parse_problem(read_file(problem_path));
        *out = task.release();
        return M2P_OK;
    });
}

void m2p_task_set_ground_cap(m2p_task *task, uint64_t max_ground_actions) {
    if (!task)
        return;
    task->config.max_actions = max_ground_actions;
    task->grounded.reset();
}

void m2p_task_free(m2p_task *task) {
    delete task;
}

m2p_status m2p_task_check(const m2p_task *task, m2p_diagnostics **findings) {
    if (!task)
        return fail(M2P_E_ARGUMENT, "null task");
    return guarded(findings, [&] {
        hand_out(findings, plan::check_task(task->domain, task->problem, task->config));
        return M2P_OK;
    });
}

void m2p_planner_config_init(m2p_planner_config *config) {
    if (!config)
        return;
    plan::PlannerConfig defaults;
    config->heuristic = M2P_HEURISTIC_BLIND;
    config->max_expansions = defaults.max_expansions;
}

m2p_status m2p_heuristic_parse(const char *name, m2p_heuristic *out) {
    if (!name || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    optional<plan::Heuristic> h = plan::parse_heuristic(name);
    if (!h)
        return fail(M2P_E_ARGUMENT, string("unknown heuristic '") + name + "' (expected blind or hmax)");
    *out = *h == plan::Heuristic::HMax ? M2P_HEURISTIC_HMAX : M2P_HEURISTIC_BLIND;
    return M2P_OK;
}

m2p_status m2p_task_solve(m2p_task *task, const m2p_planner_config *config, m2p_search_info *info,
                          m2p_plan **plan) {
    if (!task)
        return fail(M2P_E_ARGUMENT, "null task");
    if (plan)
        *plan = nullptr;
    return guarded(nullptr, [&] {
        plan::PlannerConfig settings;
        if (config) {
            settings.heuristic = config->heuristic == M2P_HEURISTIC_HMAX ? plan::Heuristic::HMax
                                                                         : plan::Heuristic::Blind;
            settings.max_expansions = config->max_expansions;
        }
        plan::SearchResult result = plan::search(grounded(task), settings);
        if (info) {
            info->status = result.status == plan::SearchStatus::Solved ? M2P_SEARCH_SOLVED
                           : result.status == plan::SearchStatus::Unsolvable ? M2P_SEARCH_UNSOLVABLE
                                                                             : M2P_SEARCH_RESOURCE_LIMIT;
            info->expanded = result.expanded;
            info->generated = result.generated;
        }
        if (plan && result.plan)
            *plan = new m2p_plan{*result.plan, result.plan->cost->to_string()};
        return M2P_OK;
    });
}

m2p_status m2p_plan_parse(const char *text, m2p_plan **out, m2p_diagnostics **diagnostics) {
    if (!text || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded(diagnostics, [&] {
        plan::Plan parsed = plan::parse_plan(text);
        string cost = parsed.cost ? parsed.cost->to_string() : "";
        *out = new m2p_plan{std::move(parsed), std::move(cost)};
        return M2P_OK;
    });
}

m2p_status m2p_plan_load(const char *path, m2p_plan **out, m2p_diagnostics **diagnostics) {
    if (!path || !out)
        return fail(M2P_E_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded(diagnostics, [&] {
        plan::Plan parsed = plan::parse_plan(read_file(path));
        string cost = parsed.cost ? parsed.cost->to_string() : "";
        *out = new m2p_plan{std::move(parsed), std::move(cost)};
        return M2P_OK;
    });
}

size_t m2p_plan_length(const m2p_plan *plan) {
    return plan ? plan->plan.steps.size() : 0;
}

const char *m2p_plan_cost(const m2p_plan *plan) {
    if (!plan || !plan->plan.cost)
        return nullptr;
    return plan->cost.c_str();
}

char *m2p_plan_format(const m2p_plan *plan) {
    if (!plan)
        return nullptr;
    return duplicate(plan::format_plan(plan->plan));
}

void m2p_plan_free(m2p_plan *plan) {
    delete plan;
}

m2p_status m2p_task_validate_plan(m2p_task *task, const m2p_plan *plan, int *valid, char **cost,
                                  m2p_diagnostics **findings) {
    if (!task || !plan)
        return fail(M2P_E_ARGUMENT, "null argument");
    if (valid)
        *valid = 0;
    if (cost)
        *cost = nullptr;
    return guarded(findings, [&] {
        plan::ValidationResult result = plan::validate_plan(grounded(task), plan->plan);
        if (valid)
            *valid = result.valid ? 1 : 0;
        if (cost)
            *cost = duplicate(result.cost.to_string());
        hand_out(findings, std::move(result.findings));
        return M2P_OK;
    });
}

}
